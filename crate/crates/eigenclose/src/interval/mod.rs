//! Rectangular interval arithmetic with guaranteed outward rounding.
//!
//! [`RealInterval`] is a closed interval of binary64 endpoints; every
//! arithmetic operation returns an interval containing all pointwise results,
//! with endpoints rounded outward (see [`round`]). [`ComplexInterval`] is a
//! rectangle (independent real/imaginary intervals) and [`IntervalMatrix`] a
//! dense matrix of those.
//!
//! Intervals are plain immutable values; everything here is pure and safe to
//! use from any number of threads.
//!
//! Non-finite endpoints mark an interval invalid. Invalid operands poison
//! results (never silently repaired); consumers that issue rigorous claims
//! must check [`RealInterval::is_valid`] and fail loudly.

pub mod matrix;
pub mod round;
pub mod trig;

pub use matrix::IntervalMatrix;
pub use trig::{pi_bracket, sin_cos};

use crate::error::{Error, Result};
use num_complex::Complex64;
use round::*;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RealInterval {
    pub inf: f64,
    pub sup: f64,
}

/// Poison value used when an operation cannot produce a valid enclosure.
const INVALID: RealInterval = RealInterval {
    inf: f64::NAN,
    sup: f64::NAN,
};

impl RealInterval {
    pub const ZERO: RealInterval = RealInterval { inf: 0.0, sup: 0.0 };
    pub const ONE: RealInterval = RealInterval { inf: 1.0, sup: 1.0 };

    pub fn new(inf: f64, sup: f64) -> Result<RealInterval> {
        let iv = RealInterval { inf, sup };
        if iv.is_valid() {
            Ok(iv)
        } else {
            Err(Error::InvalidInterval(format!("[{inf}, {sup}]")))
        }
    }

    #[inline]
    pub fn point(x: f64) -> RealInterval {
        RealInterval { inf: x, sup: x }
    }

    #[inline]
    pub fn is_valid(&self) -> bool {
        self.inf.is_finite() && self.sup.is_finite() && self.inf <= self.sup
    }

    #[inline]
    pub fn width(&self) -> f64 {
        sub_up(self.sup, self.inf)
    }

    #[inline]
    pub fn midpoint(&self) -> f64 {
        // midpoint of a valid interval, clamped into it
        let m = 0.5 * (self.inf + self.sup);
        if m.is_finite() {
            m.clamp(self.inf, self.sup)
        } else {
            0.5 * self.inf + 0.5 * self.sup
        }
    }

    /// Upper bound of |x - midpoint| over the interval.
    pub fn radius_about(&self, mid: f64) -> f64 {
        sub_up(self.sup, mid).max(sub_up(mid, self.inf)).max(0.0)
    }

    #[inline]
    pub fn contains(&self, x: f64) -> bool {
        self.inf <= x && x <= self.sup
    }

    #[inline]
    pub fn contains_zero(&self) -> bool {
        self.inf <= 0.0 && 0.0 <= self.sup
    }

    #[inline]
    pub fn contains_interval(&self, other: &RealInterval) -> bool {
        self.inf <= other.inf && other.sup <= self.sup
    }

    /// Largest absolute value in the interval.
    #[inline]
    pub fn mag(&self) -> f64 {
        self.inf.abs().max(self.sup.abs())
    }

    /// Smallest absolute value in the interval (0 if it straddles zero).
    #[inline]
    pub fn mig(&self) -> f64 {
        if self.contains_zero() {
            0.0
        } else {
            self.inf.abs().min(self.sup.abs())
        }
    }

    pub fn hull(&self, other: &RealInterval) -> RealInterval {
        if !self.is_valid() || !other.is_valid() {
            return INVALID;
        }
        RealInterval {
            inf: self.inf.min(other.inf),
            sup: self.sup.max(other.sup),
        }
    }

    pub fn neg(&self) -> RealInterval {
        RealInterval {
            inf: -self.sup,
            sup: -self.inf,
        }
    }

    pub fn add(&self, rhs: &RealInterval) -> RealInterval {
        if !self.is_valid() || !rhs.is_valid() {
            return INVALID;
        }
        RealInterval {
            inf: add_down(self.inf, rhs.inf),
            sup: add_up(self.sup, rhs.sup),
        }
    }

    pub fn sub(&self, rhs: &RealInterval) -> RealInterval {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &RealInterval) -> RealInterval {
        if !self.is_valid() || !rhs.is_valid() {
            return INVALID;
        }
        let (a, b, c, d) = (self.inf, self.sup, rhs.inf, rhs.sup);
        let inf = mul_down(a, c)
            .min(mul_down(a, d))
            .min(mul_down(b, c))
            .min(mul_down(b, d));
        let sup = mul_up(a, c)
            .max(mul_up(a, d))
            .max(mul_up(b, c))
            .max(mul_up(b, d));
        RealInterval { inf, sup }
    }

    pub fn div(&self, rhs: &RealInterval) -> Result<RealInterval> {
        if !self.is_valid() || !rhs.is_valid() {
            return Err(Error::InvalidInterval("division operand".into()));
        }
        if rhs.contains_zero() {
            return Err(Error::DivisionByZero);
        }
        let (a, b, c, d) = (self.inf, self.sup, rhs.inf, rhs.sup);
        let inf = div_down(a, c)
            .min(div_down(a, d))
            .min(div_down(b, c))
            .min(div_down(b, d));
        let sup = div_up(a, c)
            .max(div_up(a, d))
            .max(div_up(b, c))
            .max(div_up(b, d));
        Ok(RealInterval { inf, sup })
    }

    /// Tight enclosure of { x^2 : x in self }, never negative.
    pub fn square(&self) -> RealInterval {
        if !self.is_valid() {
            return INVALID;
        }
        let lo_mag = self.mig();
        let hi_mag = self.mag();
        RealInterval {
            inf: mul_down(lo_mag, lo_mag),
            sup: mul_up(hi_mag, hi_mag),
        }
    }

    pub fn sqrt(&self) -> Result<RealInterval> {
        if !self.is_valid() || self.inf < 0.0 {
            return Err(Error::Domain("sqrt of interval below zero".into()));
        }
        Ok(RealInterval {
            inf: sqrt_down(self.inf),
            sup: sqrt_up(self.sup),
        })
    }

    pub fn abs(&self) -> RealInterval {
        if !self.is_valid() {
            return INVALID;
        }
        RealInterval {
            inf: self.mig(),
            sup: self.mag(),
        }
    }

    pub fn scale(&self, s: f64) -> RealInterval {
        self.mul(&RealInterval::point(s))
    }
}

impl std::ops::Add for RealInterval {
    type Output = RealInterval;
    fn add(self, rhs: RealInterval) -> RealInterval {
        RealInterval::add(&self, &rhs)
    }
}

impl std::ops::Sub for RealInterval {
    type Output = RealInterval;
    fn sub(self, rhs: RealInterval) -> RealInterval {
        RealInterval::sub(&self, &rhs)
    }
}

impl std::ops::Mul for RealInterval {
    type Output = RealInterval;
    fn mul(self, rhs: RealInterval) -> RealInterval {
        RealInterval::mul(&self, &rhs)
    }
}

impl std::ops::Neg for RealInterval {
    type Output = RealInterval;
    fn neg(self) -> RealInterval {
        RealInterval::neg(&self)
    }
}

/// Rectangle in the complex plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexInterval {
    pub re: RealInterval,
    pub im: RealInterval,
}

impl ComplexInterval {
    pub const ZERO: ComplexInterval = ComplexInterval {
        re: RealInterval::ZERO,
        im: RealInterval::ZERO,
    };
    pub const ONE: ComplexInterval = ComplexInterval {
        re: RealInterval::ONE,
        im: RealInterval::ZERO,
    };

    #[inline]
    pub fn new(re: RealInterval, im: RealInterval) -> ComplexInterval {
        ComplexInterval { re, im }
    }

    #[inline]
    pub fn point(z: Complex64) -> ComplexInterval {
        ComplexInterval {
            re: RealInterval::point(z.re),
            im: RealInterval::point(z.im),
        }
    }

    #[inline]
    pub fn real(iv: RealInterval) -> ComplexInterval {
        ComplexInterval {
            re: iv,
            im: RealInterval::ZERO,
        }
    }

    #[inline]
    pub fn is_valid(&self) -> bool {
        self.re.is_valid() && self.im.is_valid()
    }

    pub fn contains(&self, z: Complex64) -> bool {
        self.re.contains(z.re) && self.im.contains(z.im)
    }

    pub fn midpoint(&self) -> Complex64 {
        Complex64::new(self.re.midpoint(), self.im.midpoint())
    }

    pub fn conj(&self) -> ComplexInterval {
        ComplexInterval {
            re: self.re,
            im: self.im.neg(),
        }
    }

    pub fn neg(&self) -> ComplexInterval {
        ComplexInterval {
            re: self.re.neg(),
            im: self.im.neg(),
        }
    }

    pub fn add(&self, rhs: &ComplexInterval) -> ComplexInterval {
        ComplexInterval {
            re: self.re.add(&rhs.re),
            im: self.im.add(&rhs.im),
        }
    }

    pub fn sub(&self, rhs: &ComplexInterval) -> ComplexInterval {
        ComplexInterval {
            re: self.re.sub(&rhs.re),
            im: self.im.sub(&rhs.im),
        }
    }

    pub fn mul(&self, rhs: &ComplexInterval) -> ComplexInterval {
        let ac = self.re.mul(&rhs.re);
        let bd = self.im.mul(&rhs.im);
        let ad = self.re.mul(&rhs.im);
        let bc = self.im.mul(&rhs.re);
        ComplexInterval {
            re: ac.sub(&bd),
            im: ad.add(&bc),
        }
    }

    pub fn div(&self, rhs: &ComplexInterval) -> Result<ComplexInterval> {
        let den = rhs.re.square().add(&rhs.im.square());
        if den.contains_zero() {
            return Err(Error::DivisionByZero);
        }
        let num = self.mul(&rhs.conj());
        Ok(ComplexInterval {
            re: num.re.div(&den)?,
            im: num.im.div(&den)?,
        })
    }

    /// Upper bound on |z| over the rectangle.
    pub fn mag(&self) -> f64 {
        let r = self.re.mag();
        let i = self.im.mag();
        sqrt_up(add_up(sq_up(r), sq_up(i)))
    }

    /// z * real interval.
    pub fn scale_real(&self, s: &RealInterval) -> ComplexInterval {
        ComplexInterval {
            re: self.re.mul(s),
            im: self.im.mul(s),
        }
    }

    pub fn hull(&self, rhs: &ComplexInterval) -> ComplexInterval {
        ComplexInterval {
            re: self.re.hull(&rhs.re),
            im: self.im.hull(&rhs.im),
        }
    }

    /// Widen by a nonnegative radius on both parts (encloses the disc of that
    /// radius around every member).
    pub fn inflate(&self, r: f64) -> ComplexInterval {
        debug_assert!(r >= 0.0);
        ComplexInterval {
            re: RealInterval {
                inf: sub_down(self.re.inf, r),
                sup: add_up(self.re.sup, r),
            },
            im: RealInterval {
                inf: sub_down(self.im.inf, r),
                sup: add_up(self.im.sup, r),
            },
        }
    }

    pub fn powi(&self, n: u32) -> ComplexInterval {
        let mut acc = ComplexInterval::ONE;
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_endpoints_are_exact() {
        let a = RealInterval::new(1.0, 2.0).unwrap();
        let b = RealInterval::new(3.0, 4.0).unwrap();
        assert_eq!(a + b, RealInterval { inf: 4.0, sup: 6.0 });
    }

    #[test]
    fn symmetric_product() {
        let s = RealInterval::new(-1.0, 1.0).unwrap();
        assert_eq!(s * s, RealInterval {
            inf: -1.0,
            sup: 1.0
        });
        // while the square never goes negative
        assert_eq!(s.square(), RealInterval { inf: 0.0, sup: 1.0 });
    }

    #[test]
    fn point_sum_width_two_ulps() {
        let x = RealInterval::point(0.1);
        let y = RealInterval::point(0.2);
        let s = x + y;
        assert!(s.contains(0.1 + 0.2));
        assert!(s.width() <= 2.0 * f64::EPSILON);
    }

    #[test]
    fn division_by_zero_interval_rejected() {
        let a = RealInterval::new(1.0, 2.0).unwrap();
        let z = RealInterval::new(-1.0, 1.0).unwrap();
        assert!(a.div(&z).is_err());
    }

    #[test]
    fn invalid_poison_propagates() {
        let bad = RealInterval {
            inf: f64::NAN,
            sup: f64::NAN,
        };
        let good = RealInterval::ONE;
        assert!(!(bad + good).is_valid());
        assert!(!(bad * good).is_valid());
    }

    #[test]
    fn complex_mag_345() {
        let z = ComplexInterval::new(RealInterval::point(3.0), RealInterval::point(4.0));
        let m = z.mag();
        assert!(m >= 5.0);
        assert!(m <= 5.0 + 5.0 * f64::EPSILON);

        let z2 = ComplexInterval::new(RealInterval::new(-1.0, 2.0).unwrap(), RealInterval::ZERO);
        assert_eq!(z2.mag(), 2.0);
    }

    #[test]
    fn complex_division_recovers() {
        let z = ComplexInterval::point(Complex64::new(1.0, 1.0));
        let w = ComplexInterval::point(Complex64::new(2.0, -1.0));
        let q = z.div(&w).unwrap();
        let back = q.mul(&w);
        assert!(back.contains(Complex64::new(1.0, 1.0)));
    }
}
