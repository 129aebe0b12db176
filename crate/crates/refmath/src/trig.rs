//! Double-double sin/cos with argument reduction, plus a pi constant whose
//! accuracy is pinned against an exact Machin-series bracket in the tests.
//!
//! Intended argument range is |x| <= ~20; that covers every quadrature angle
//! the oracles need with room to spare.

use crate::dd::Dd;

/// pi as a double-double: the binary64 nearest value plus the standard
/// correction term. Accurate to about 1.2e-32 absolute.
pub const DD_PI: Dd = Dd {
    hi: std::f64::consts::PI,
    lo: 1.2246467991473532e-16,
};

pub fn dd_pi() -> Dd {
    DD_PI
}

pub fn dd_two_pi() -> Dd {
    DD_PI * Dd::from_f64(2.0)
}

pub fn dd_half_pi() -> Dd {
    DD_PI * Dd::from_f64(0.5)
}

/// Taylor sine on |r| <= pi/4 + eps; absolute error below 1e-32.
fn sin_taylor(r: Dd) -> Dd {
    let r2 = r * r;
    let mut term = r;
    let mut sum = r;
    let mut n = 1u32;
    while n <= 29 {
        term = term * r2 / Dd::from_f64(((n + 1) * (n + 2)) as f64);
        term = -term;
        sum = sum + term;
        n += 2;
    }
    sum
}

/// Taylor cosine on |r| <= pi/4 + eps; absolute error below 1e-32.
fn cos_taylor(r: Dd) -> Dd {
    let r2 = r * r;
    let mut term = Dd::ONE;
    let mut sum = Dd::ONE;
    let mut n = 0u32;
    while n <= 30 {
        term = term * r2 / Dd::from_f64(((n + 1) * (n + 2)) as f64);
        term = -term;
        sum = sum + term;
        n += 2;
    }
    sum
}

/// Simultaneous sin and cos of a double-double argument.
pub fn dd_sin_cos(x: Dd) -> (Dd, Dd) {
    debug_assert!(x.hi.abs() < 64.0, "argument outside supported range");
    let k = (x / dd_half_pi()).to_f64().round();
    let r = x - Dd::from_f64(k) * dd_half_pi();
    let (s, c) = (sin_taylor(r), cos_taylor(r));
    match (k as i64).rem_euclid(4) {
        0 => (s, c),
        1 => (c, -s),
        2 => (-s, -c),
        _ => (-c, s),
    }
}

pub fn dd_sin(x: Dd) -> Dd {
    dd_sin_cos(x).0
}

pub fn dd_cos(x: Dd) -> Dd {
    dd_sin_cos(x).1
}
