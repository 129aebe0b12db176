//! Exact rational arithmetic over binary64 inputs.
//!
//! Every finite binary64 value converts losslessly to a `BigRational`, so
//! sums, differences, products and quotients of test operands can be compared
//! against computed interval endpoints with zero approximation error.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

/// Exact rational value of a finite binary64 number.
pub fn rat(x: f64) -> Rat {
    BigRational::from_float(x).expect("finite binary64 required")
}

pub fn rat_int(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

/// Is `v` inside the closed interval `[lo, hi]` (exact comparison)?
pub fn in_interval(lo: f64, hi: f64, v: &Rat) -> bool {
    &rat(lo) <= v && v <= &rat(hi)
}

/// Exact complex rational pair.
#[derive(Clone, Debug, PartialEq)]
pub struct CRat {
    pub re: Rat,
    pub im: Rat,
}

impl CRat {
    pub fn new(re: Rat, im: Rat) -> CRat {
        CRat { re, im }
    }

    pub fn from_f64(re: f64, im: f64) -> CRat {
        CRat {
            re: rat(re),
            im: rat(im),
        }
    }

    pub fn zero() -> CRat {
        CRat {
            re: Rat::zero(),
            im: Rat::zero(),
        }
    }

    pub fn conj(&self) -> CRat {
        CRat {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn add(&self, o: &CRat) -> CRat {
        CRat {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }

    pub fn sub(&self, o: &CRat) -> CRat {
        CRat {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }

    pub fn mul(&self, o: &CRat) -> CRat {
        CRat {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    pub fn div(&self, o: &CRat) -> CRat {
        let den = &o.re * &o.re + &o.im * &o.im;
        assert!(!den.is_zero(), "rational complex division by zero");
        let num = self.mul(&o.conj());
        CRat {
            re: num.re / den.clone(),
            im: num.im / den,
        }
    }

    pub fn abs_sq(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }
}

/// Partial sums of the alternating arctan(1/x) series bracketing the value.
fn arctan_inv_bracket(x: i64, terms: usize) -> (Rat, Rat) {
    let xr = rat_int(x);
    let x2 = &xr * &xr;
    let mut power = Rat::one() / xr; // 1/x^(2k+1)
    let mut sum = power.clone();
    let mut below = sum.clone(); // partial sum after an even number of subtractions
    let mut above = sum.clone();
    for k in 1..terms {
        power /= &x2;
        let term = &power / rat_int(2 * k as i64 + 1);
        if k % 2 == 1 {
            sum -= term;
            below = sum.clone();
        } else {
            sum += term;
            above = sum.clone();
        }
    }
    assert!(below <= above);
    (below, above)
}

/// Exact rational bracket of pi via Machin's formula
/// pi = 16 arctan(1/5) - 4 arctan(1/239), tightened to roughly
/// `digits` decimal digits.
pub fn machin_pi_bracket(digits: usize) -> (Rat, Rat) {
    // terms such that x^-(2k+1)/(2k+1) < 10^-digits
    let t5 = digits * 3 / 4 + 6;
    let t239 = digits / 4 + 4;
    let (a5_lo, a5_hi) = arctan_inv_bracket(5, t5);
    let (a239_lo, a239_hi) = arctan_inv_bracket(239, t239);
    let sixteen = rat_int(16);
    let four = rat_int(4);
    let lo = &sixteen * &a5_lo - &four * &a239_hi;
    let hi = &sixteen * &a5_hi - &four * &a239_lo;
    assert!(lo < hi);
    (lo, hi)
}

/// Parse a plain or scientific decimal string into an exact rational.
pub fn rat_from_decimal_str(s: &str) -> Option<Rat> {
    let (mant, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i64>().ok()?),
        None => (s, 0i64),
    };
    let neg = mant.starts_with('-');
    let mant = mant.trim_start_matches(['-', '+']);
    let (int_part, frac) = mant.split_once('.').unwrap_or((mant, ""));
    let digits: String = format!("{int_part}{frac}");
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let num: BigInt = digits.parse().ok()?;
    let shift = exp - frac.len() as i64;
    let ten = BigInt::from(10);
    let mut value = BigRational::from_integer(num);
    if shift >= 0 {
        value *= BigRational::from_integer(ten.pow(shift as u32));
    } else {
        value /= BigRational::from_integer(ten.pow((-shift) as u32));
    }
    Some(if neg { -value } else { value })
}

/// Exact magnitude-squared upper corner of a rectangle `[re_lo,re_hi] x
/// [im_lo,im_hi]`: max |z|^2 over the rectangle.
pub fn rect_abs_sq_max(re_lo: f64, re_hi: f64, im_lo: f64, im_hi: f64) -> Rat {
    let re = rat(re_lo).abs().max(rat(re_hi).abs());
    let im = rat(im_lo).abs().max(rat(im_hi).abs());
    &re * &re + &im * &im
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn f64_conversion_is_exact() {
        let x = 0.1f64;
        let r = rat(x);
        // 0.1 is not exactly 1/10 in binary64.
        assert_ne!(r, rat_int(1) / rat_int(10));
        assert_eq!(r.to_f64().unwrap(), 0.1);
    }

    #[test]
    fn machin_brackets_pi() {
        let (lo, hi) = machin_pi_bracket(30);
        let pi = std::f64::consts::PI;
        assert!(lo < rat(pi) + rat(1e-15));
        assert!(rat(pi) - rat(1e-15) < hi);
        assert!((&hi - &lo).to_f64().unwrap() < 1e-28);
    }

    #[test]
    fn complex_rational_division() {
        let z = CRat::from_f64(1.0, 1.0);
        let w = CRat::from_f64(2.0, -1.0);
        let q = z.div(&w);
        let back = q.mul(&w);
        assert_eq!(back, z);
    }
}
