//! Closed intervals with rational endpoints and exact interval arithmetic.

use num_traits::{Signed, Zero};

use super::IntPoly;
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl RatInterval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        debug_assert!(lo <= hi);
        RatInterval { lo, hi }
    }

    pub fn point(x: Rational) -> Self {
        RatInterval { lo: x.clone(), hi: x }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// Whether the whole interval lies strictly inside `(a, b)`.
    pub fn strictly_inside(&self, a: &Rational, b: &Rational) -> bool {
        a < &self.lo && &self.hi < b
    }

    pub fn add(&self, o: &RatInterval) -> RatInterval {
        RatInterval::new(&self.lo + &o.lo, &self.hi + &o.hi)
    }

    pub fn sub(&self, o: &RatInterval) -> RatInterval {
        RatInterval::new(&self.lo - &o.hi, &self.hi - &o.lo)
    }

    pub fn neg(&self) -> RatInterval {
        RatInterval::new(-&self.hi, -&self.lo)
    }

    pub fn mul(&self, o: &RatInterval) -> RatInterval {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        RatInterval::new(lo, hi)
    }

    pub fn scale(&self, k: &Rational) -> RatInterval {
        if k.is_negative() {
            RatInterval::new(&self.hi * k, &self.lo * k)
        } else {
            RatInterval::new(&self.lo * k, &self.hi * k)
        }
    }

    /// `1/x`, or `None` when the interval contains zero.
    pub fn recip(&self) -> Option<RatInterval> {
        if self.contains_zero() {
            return None;
        }
        Some(RatInterval::new(self.hi.recip(), self.lo.recip()))
    }

    pub fn div(&self, o: &RatInterval) -> Option<RatInterval> {
        Some(self.mul(&o.recip()?))
    }

    /// Interval hull of both.
    pub fn hull(&self, o: &RatInterval) -> RatInterval {
        RatInterval::new(self.lo.clone().min(o.lo.clone()), self.hi.clone().max(o.hi.clone()))
    }
}

/// Enclosure of `{p(x) : x ∈ I}` by interval Horner evaluation.
pub fn eval_poly(p: &IntPoly, x: &RatInterval) -> RatInterval {
    if x.lo == x.hi {
        return RatInterval::point(p.eval_rational(&x.lo));
    }
    let mut acc = RatInterval::point(Rational::zero());
    for c in p.coeffs().iter().rev() {
        let c = Rational::from_integer(c.clone());
        let m = acc.mul(x);
        acc = RatInterval::new(m.lo + &c, m.hi + &c);
    }
    acc
}
