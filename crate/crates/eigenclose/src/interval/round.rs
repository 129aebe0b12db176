//! Directed-rounding scalar primitives.
//!
//! Hardware rounding modes are not touched. Each operation runs in
//! round-to-nearest and the result is nudged one ulp outward unless an
//! error-free transformation proves the rounded result exact. Since IEEE 754
//! +, -, *, / and sqrt are correctly rounded, the true value lies strictly
//! between the two neighbours of an inexact result, so a one-ulp nudge always
//! restores the containment direction.
//!
//! Near the underflow threshold the residual terms of the transformations
//! are no longer exactly representable; operations whose residual magnitude
//! could fall below roughly 2^-969 nudge unconditionally instead.

const EFT_UNDERFLOW_GUARD: f64 = 1e-280;

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
pub fn add_down(a: f64, b: f64) -> f64 {
    let (s, e) = two_sum(a, b);
    if !s.is_finite() {
        // overflow to +inf still upper-bounds the true sum; as a lower bound
        // fall back to the largest finite value below it
        return if s == f64::INFINITY { f64::MAX } else { s };
    }
    if e < 0.0 {
        s.next_down()
    } else {
        s
    }
}

#[inline]
pub fn add_up(a: f64, b: f64) -> f64 {
    let (s, e) = two_sum(a, b);
    if !s.is_finite() {
        return if s == f64::NEG_INFINITY { f64::MIN } else { s };
    }
    if e > 0.0 {
        s.next_up()
    } else {
        s
    }
}

#[inline]
pub fn sub_down(a: f64, b: f64) -> f64 {
    add_down(a, -b)
}

#[inline]
pub fn sub_up(a: f64, b: f64) -> f64 {
    add_up(a, -b)
}

#[inline]
pub fn mul_down(a: f64, b: f64) -> f64 {
    let p = a * b;
    if !p.is_finite() {
        return if p == f64::INFINITY { f64::MAX } else { p };
    }
    if p.abs() < EFT_UNDERFLOW_GUARD {
        return if p == 0.0 && (a == 0.0 || b == 0.0) {
            0.0
        } else {
            p.next_down()
        };
    }
    let e = a.mul_add(b, -p);
    if e < 0.0 {
        p.next_down()
    } else {
        p
    }
}

#[inline]
pub fn mul_up(a: f64, b: f64) -> f64 {
    let p = a * b;
    if !p.is_finite() {
        return if p == f64::NEG_INFINITY { f64::MIN } else { p };
    }
    if p.abs() < EFT_UNDERFLOW_GUARD {
        return if p == 0.0 && (a == 0.0 || b == 0.0) {
            0.0
        } else {
            p.next_up()
        };
    }
    let e = a.mul_add(b, -p);
    if e > 0.0 {
        p.next_up()
    } else {
        p
    }
}

#[inline]
pub fn div_down(a: f64, b: f64) -> f64 {
    debug_assert!(b != 0.0);
    let q = a / b;
    if !q.is_finite() {
        return if q == f64::INFINITY { f64::MAX } else { q };
    }
    if a == 0.0 {
        return 0.0;
    }
    if q.abs() < EFT_UNDERFLOW_GUARD || a.abs() < EFT_UNDERFLOW_GUARD {
        return q.next_down();
    }
    // true - q has the sign of (a - q*b)/b
    let e = q.mul_add(b, -a); // q*b - a, exact here
    let num = -e; // a - q*b
    let true_above = (num > 0.0) == (b > 0.0);
    if e == 0.0 || true_above {
        q
    } else {
        q.next_down()
    }
}

#[inline]
pub fn div_up(a: f64, b: f64) -> f64 {
    debug_assert!(b != 0.0);
    let q = a / b;
    if !q.is_finite() {
        return if q == f64::NEG_INFINITY { f64::MIN } else { q };
    }
    if a == 0.0 {
        return 0.0;
    }
    if q.abs() < EFT_UNDERFLOW_GUARD || a.abs() < EFT_UNDERFLOW_GUARD {
        return q.next_up();
    }
    let e = q.mul_add(b, -a);
    let num = -e;
    let true_below = (num > 0.0) != (b > 0.0);
    if e == 0.0 || true_below {
        q
    } else {
        q.next_up()
    }
}

#[inline]
pub fn sqrt_down(x: f64) -> f64 {
    debug_assert!(x >= 0.0);
    if x == 0.0 {
        return 0.0;
    }
    let r = x.sqrt();
    if x < EFT_UNDERFLOW_GUARD {
        return r.next_down().max(0.0);
    }
    let e = r.mul_add(r, -x); // r^2 - x
    if e > 0.0 {
        r.next_down()
    } else {
        r
    }
}

#[inline]
pub fn sqrt_up(x: f64) -> f64 {
    debug_assert!(x >= 0.0);
    if x == 0.0 {
        return 0.0;
    }
    let r = x.sqrt();
    if x < EFT_UNDERFLOW_GUARD {
        return r.next_up();
    }
    let e = r.mul_add(r, -x);
    if e < 0.0 {
        r.next_up()
    } else {
        r
    }
}

/// x^2 rounded up.
#[inline]
pub fn sq_up(x: f64) -> f64 {
    mul_up(x, x)
}

/// Upper bound of |z| for an exact complex binary64 value.
#[inline]
pub fn cnorm_up(z: num_complex::Complex64) -> f64 {
    sqrt_up(add_up(sq_up(z.re), sq_up(z.im)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_results_stay_exact() {
        assert_eq!(add_down(1.0, 3.0), 4.0);
        assert_eq!(add_up(1.0, 3.0), 4.0);
        assert_eq!(mul_down(2.0, 8.0), 16.0);
        assert_eq!(mul_up(2.0, 8.0), 16.0);
        assert_eq!(div_down(1.0, 4.0), 0.25);
        assert_eq!(div_up(1.0, 4.0), 0.25);
        assert_eq!(sqrt_down(4.0), 2.0);
        assert_eq!(sqrt_up(4.0), 2.0);
    }

    #[test]
    fn inexact_results_bracket() {
        let lo = add_down(0.1, 0.2);
        let hi = add_up(0.1, 0.2);
        let nearest = 0.1 + 0.2;
        assert!(lo <= nearest && nearest <= hi && lo < hi);
        assert!(hi - lo <= 2.0 * f64::EPSILON);
    }

    #[test]
    fn division_brackets_one_third() {
        let q = 1.0f64 / 3.0;
        let lo = div_down(1.0, 3.0);
        let hi = div_up(1.0, 3.0);
        assert!(lo <= q && q <= hi && lo < hi);
        // fl(1/3) rounds below the true value, so only the upper side nudges.
        assert_eq!(lo, q);
        assert!(hi > q);
        // mirrored for the negative quotient
        assert_eq!(div_up(-1.0, 3.0), -q);
        assert!(div_down(-1.0, 3.0) < -q);
    }
}
