//! Double-double arithmetic (about 32 significant digits).
//!
//! Used where generalized Vandermonde conditioning makes plain `f64` lose
//! every digit: the design kernel solve and evaluation of Melnikov series
//! near their zeros.

use std::cmp::Ordering;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::poly::{rational_to_f64, Rational};

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    pub fn new(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    pub fn is_zero(self) -> bool {
        self.hi == 0.0
    }

    pub fn signum(self) -> f64 {
        if self.hi > 0.0 {
            1.0
        } else if self.hi < 0.0 {
            -1.0
        } else {
            0.0
        }
    }

    pub fn from_rational(r: &Rational) -> Self {
        let hi = rational_to_f64(r);
        if !hi.is_finite() || hi == 0.0 {
            return Dd::new(hi);
        }
        let rest = r - BigRational::from_float(hi).expect("finite");
        let lo = rational_to_f64(&rest);
        let (hi, lo) = quick_two_sum(hi, lo);
        Dd { hi, lo }
    }

    /// Exact value of `hi + lo`.
    pub fn to_rational(self) -> Rational {
        let mut r = BigRational::from_integer(BigInt::zero());
        for part in [self.hi, self.lo] {
            if part != 0.0 {
                r += BigRational::from_float(part).expect("finite double-double");
            }
        }
        r
    }

    pub fn powi(self, e: i32) -> Self {
        let mut base = if e < 0 { Dd::ONE / self } else { self };
        let mut k = e.unsigned_abs();
        let mut acc = Dd::ONE;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            k >>= 1;
        }
        acc
    }

    /// Positive real `q`-th root of a positive value, by Newton polishing of
    /// the `f64` estimate.
    pub fn root(self, q: u32) -> Self {
        assert!(q > 0);
        if q == 1 {
            return self;
        }
        let mut r = Dd::new(self.to_f64().powf(1.0 / q as f64));
        let qd = Dd::new(q as f64);
        for _ in 0..3 {
            let rq1 = r.powi(q as i32 - 1);
            let f = rq1 * r - self;
            r = r - f / (qd * rq1);
        }
        r
    }

    /// `self^(p/q)` for a positive base.
    pub fn pow_rational(self, e: &Rational) -> Self {
        use num_traits::ToPrimitive;
        let p = e.numer().to_i32().expect("exponent numerator fits i32");
        let q = e.denom().to_u32().expect("exponent denominator fits u32");
        self.root(q).powi(p)
    }
}

impl From<f64> for Dd {
    fn from(x: f64) -> Self {
        Dd::new(x)
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, b: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, b: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self - b * Dd::new(q1);
        let q2 = r.hi / b.hi;
        let r = r - b * Dd::new(q2);
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo } + Dd::new(q3)
    }
}

impl PartialOrd for Dd {
    fn partial_cmp(&self, other: &Dd) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&other.lo),
            o => o,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[test]
    fn one_third_round_trips_to_32_digits() {
        let third = Dd::ONE / Dd::new(3.0);
        let back = third * Dd::new(3.0) - Dd::ONE;
        assert!(back.to_f64().abs() < 1e-31);
        let r = third.to_rational() - rat(1, 3);
        assert!(rational_to_f64(&r).abs() < 1e-32);
    }

    #[test]
    fn rational_roots() {
        let two = Dd::new(2.0);
        let r = two.root(4);
        let back = r.powi(4) - two;
        assert!(back.to_f64().abs() < 1e-30);
        let p = Dd::new(16.0).pow_rational(&rat(-1, 4));
        assert!((p - Dd::new(0.5)).to_f64().abs() < 1e-31);
    }

    #[test]
    fn from_rational_keeps_the_tail() {
        let r = rat(1, 10);
        let d = Dd::from_rational(&r);
        let err = d.to_rational() - r;
        assert!(rational_to_f64(&err).abs() < 1e-33);
    }
}
