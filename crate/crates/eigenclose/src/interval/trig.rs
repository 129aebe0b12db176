//! Interval sine and cosine on a bounded argument range.
//!
//! Strategy: evaluate libm sin/cos at the endpoints, widen by 2 ulps, and
//! clamp to +-1 whenever an extremum *might* lie inside the argument interval
//! (decided conservatively with the hard-coded pi bracket, so a missed proof
//! of absence only costs tightness, never containment). With no extremum
//! inside, sin/cos are monotone and the endpoint values bracket the image.
//!
//! The 2-ulp widening assumes the platform sin/cos are accurate to better
//! than 2 ulps; glibc documents a max known error of 1 ulp for both.

use super::{RealInterval, round::*};
use crate::error::{Error, Result};

/// Correctly rounded bracket of pi: the binary64 value below pi and its
/// successor. The IEEE binary64 constant rounds below the true value; the
/// test suite re-verifies the bracket against an exact Machin-series
/// computation.
pub fn pi_bracket() -> RealInterval {
    RealInterval {
        inf: std::f64::consts::PI,
        sup: std::f64::consts::PI.next_up(),
    }
}

/// Argument range accepted by [`sin_cos`], a hair beyond [-2pi-1, 2pi+1].
const THETA_LIMIT: f64 = 7.2832;

#[inline]
fn widen2_down(x: f64) -> f64 {
    x.next_down().next_down()
}

#[inline]
fn widen2_up(x: f64) -> f64 {
    x.next_up().next_up()
}

/// Could some angle `offset_num/offset_den * pi + 2k*pi` (k integer) lie in
/// `theta`? Conservative: `true` means "cannot rule it out".
fn extremum_possible(theta: &RealInterval, offset_num: f64, offset_den: f64) -> bool {
    let pi = pi_bracket();
    // k enclosure: (theta/pi - offset) / 2
    let t_over_pi = match theta.div(&pi) {
        Ok(iv) => iv,
        Err(_) => return true,
    };
    let offset = RealInterval {
        inf: div_down(offset_num, offset_den),
        sup: div_up(offset_num, offset_den),
    };
    let k = t_over_pi.sub(&offset).scale(0.5);
    if !k.is_valid() {
        return true;
    }
    k.inf.ceil() <= k.sup.floor()
}

/// Simultaneous interval sine and cosine.
///
/// Requires `theta` valid and within [-2pi-1, 2pi+1]. The returned intervals
/// contain sin(t) and cos(t) for every t in `theta`; for argument widths
/// below 2^-20 the result width stays within the argument width plus 4 ulps.
pub fn sin_cos(theta: &RealInterval) -> Result<(RealInterval, RealInterval)> {
    if !theta.is_valid() {
        return Err(Error::InvalidInterval("sin_cos argument".into()));
    }
    if theta.inf < -THETA_LIMIT || theta.sup > THETA_LIMIT {
        return Err(Error::Domain(format!(
            "sin_cos argument [{}, {}] outside [-2pi-1, 2pi+1]",
            theta.inf, theta.sup
        )));
    }
    if theta.inf == 0.0 && theta.sup == 0.0 {
        return Ok((RealInterval::ZERO, RealInterval::ONE));
    }

    let (slo, shi) = (theta.inf.sin(), theta.sup.sin());
    let (clo, chi) = (theta.inf.cos(), theta.sup.cos());

    // sin: maxima at pi/2 + 2k pi, minima at -pi/2 + 2k pi
    let sin_sup = if extremum_possible(theta, 1.0, 2.0) {
        1.0
    } else {
        widen2_up(slo.max(shi)).min(1.0)
    };
    let sin_inf = if extremum_possible(theta, -1.0, 2.0) {
        -1.0
    } else {
        widen2_down(slo.min(shi)).max(-1.0)
    };

    // cos: maxima at 2k pi, minima at pi + 2k pi
    let cos_sup = if extremum_possible(theta, 0.0, 1.0) {
        1.0
    } else {
        widen2_up(clo.max(chi)).min(1.0)
    };
    let cos_inf = if extremum_possible(theta, 1.0, 1.0) {
        -1.0
    } else {
        widen2_down(clo.min(chi)).max(-1.0)
    };

    Ok((
        RealInterval {
            inf: sin_inf,
            sup: sin_sup,
        },
        RealInterval {
            inf: cos_inf,
            sup: cos_sup,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_is_exact() {
        let (s, c) = sin_cos(&RealInterval::ZERO).unwrap();
        assert_eq!(s, RealInterval::ZERO);
        assert_eq!(c, RealInterval::ONE);
    }

    #[test]
    fn quarter_turn_contains_unit() {
        let pi = pi_bracket();
        let half = pi.scale(0.5);
        let (s, c) = sin_cos(&half).unwrap();
        assert!(s.contains(1.0));
        assert!(c.contains(0.0));
        assert!(s.sup <= 1.0);
    }

    #[test]
    fn out_of_range_rejected() {
        let t = RealInterval::new(0.0, 8.0).unwrap();
        assert!(sin_cos(&t).is_err());
    }

    #[test]
    fn narrow_interval_width_bound() {
        for &x in &[0.3, 1.2, -2.5, 4.4, -5.9, 6.1] {
            let h = 2.0_f64.powi(-22);
            let t = RealInterval::new(x, x + h).unwrap();
            let (s, c) = sin_cos(&t).unwrap();
            let budget = t.width() + 4.0 * f64::EPSILON;
            assert!(s.width() <= budget, "sin width {} at {}", s.width(), x);
            assert!(c.width() <= budget, "cos width {} at {}", c.width(), x);
        }
    }

    #[test]
    fn wide_interval_clamps() {
        let t = RealInterval::new(0.0, 7.0).unwrap();
        let (s, c) = sin_cos(&t).unwrap();
        assert_eq!(s, RealInterval::new(-1.0, 1.0).unwrap());
        assert_eq!(c, RealInterval::new(-1.0, 1.0).unwrap());
    }

    #[test]
    fn sampling_containment() {
        for k in 0..500 {
            let a = -7.0 + 14.0 * (k as f64 / 500.0);
            let b = a + 0.37;
            if b > 7.28 {
                continue;
            }
            let t = RealInterval::new(a, b).unwrap();
            let (s, c) = sin_cos(&t).unwrap();
            for j in 0..=20 {
                let x = a + (b - a) * (j as f64 / 20.0);
                assert!(s.contains(x.sin()), "sin({x}) escaped");
                assert!(c.contains(x.cos()), "cos({x}) escaped");
            }
        }
    }
}
