//! Real rational self-maps of the projective line ℝ ∪ {∞}.

mod fixed;
mod floatguide;
mod multiplier;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::exactpoly::intpoly::{hom_compose_with, powers, remove_joint_content};
use crate::exactpoly::{parse_coefficients, parse_rational, poly_gcd, IntPoly};
use crate::Rational;

pub use fixed::{fixed_point_data, fixed_point_data_of_iterate, FixedPointData};
pub use multiplier::{
    classify_multiplier, classify_multiplier_of_iterate, multiplier_at_infinity, multiplier_at_infinity_of_iterate,
    MultiplierClass, MultiplierVerdict,
};

/// A point of ℝ ∪ {∞}.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ProjPoint {
    Finite(Rational),
    Infinity,
}

impl ProjPoint {
    pub fn finite(x: Rational) -> Self {
        ProjPoint::Finite(x)
    }

    pub fn from_i64(n: i64) -> Self {
        ProjPoint::Finite(Rational::from_integer(n.into()))
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, ProjPoint::Infinity)
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjPoint::Finite(x) => write!(f, "{x}"),
            ProjPoint::Infinity => write!(f, "inf"),
        }
    }
}

impl FromStr for ProjPoint {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "∞" | "+inf" | "-inf" => Ok(ProjPoint::Infinity),
            t => Ok(ProjPoint::Finite(parse_rational(t)?)),
        }
    }
}

/// `f = p/q` with `gcd(p, q) = 1` and no common integer content. The leading
/// coefficient of `q` is positive (that of `p` when `q = 0`).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalMap {
    p: IntPoly,
    q: IntPoly,
}

impl RationalMap {
    /// Normalizes `p/q`: removes the polynomial gcd and the joint content and
    /// fixes the sign.
    pub fn new(p: IntPoly, q: IntPoly) -> Result<Self> {
        match (p.is_zero(), q.is_zero()) {
            (true, true) => return Err(Error::UndefinedMap),
            (false, true) => {
                return Ok(RationalMap {
                    p: IntPoly::one(),
                    q: IntPoly::zero(),
                })
            }
            (true, false) => {
                return Ok(RationalMap {
                    p: IntPoly::zero(),
                    q: IntPoly::one(),
                })
            }
            _ => {}
        }
        let g = poly_gcd(&p, &q)?;
        let (p, q) = if g.is_constant() {
            (p, q)
        } else {
            (
                p.div_exact(&g).expect("gcd divides p"),
                q.div_exact(&g).expect("gcd divides q"),
            )
        };
        let (p, q) = remove_joint_content(p, q);
        if q.leading_sign() == Ordering::Less {
            Ok(RationalMap { p: -p, q: -q })
        } else {
            Ok(RationalMap { p, q })
        }
    }

    /// The polynomial map `p`.
    pub fn polynomial(p: IntPoly) -> Result<Self> {
        Self::new(p, IntPoly::one())
    }

    /// `p/q` from rational coefficient lists (constant term first).
    pub fn from_rationals(p: &[Rational], q: &[Rational]) -> Result<Self> {
        let lcm = p.iter().chain(q).fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let clear = |cs: &[Rational]| IntPoly::new(cs.iter().map(|c| c.numer() * (&lcm / c.denom())).collect());
        Self::new(clear(p), clear(q))
    }

    /// Parses `"p | q"` or `"p"`, each side in the coefficient text format.
    pub fn parse(text: &str) -> Result<Self> {
        let mut parts = text.split('|');
        let p = parse_coefficients(parts.next().unwrap_or(""))?;
        let q = match parts.next() {
            Some(t) => parse_coefficients(t)?,
            None => vec![Rational::one()],
        };
        if parts.next().is_some() {
            return Err(Error::Parse("map text has more than one '|'".into()));
        }
        Self::from_rationals(&p, &q)
    }

    pub fn p(&self) -> &IntPoly {
        &self.p
    }

    pub fn q(&self) -> &IntPoly {
        &self.q
    }

    /// `max(deg p, deg q)`.
    pub fn degree(&self) -> usize {
        self.p.deg().max(self.q.deg())
    }

    /// `q` is a nonzero constant.
    pub fn is_polynomial(&self) -> bool {
        self.q.deg() == 0 && !self.q.is_zero()
    }

    /// The map text `"p | q"`, or just `"p"` when `q = 1`.
    pub fn to_text(&self) -> String {
        if self.q == IntPoly::one() {
            self.p.to_string()
        } else {
            format!("{} | {}", self.p, self.q)
        }
    }

    pub fn eval(&self, x: &ProjPoint) -> ProjPoint {
        match x {
            ProjPoint::Finite(x) => self.eval_rational(x),
            ProjPoint::Infinity => self.value_at_infinity(),
        }
    }

    pub fn eval_rational(&self, x: &Rational) -> ProjPoint {
        let den = self.q.eval_rational(x);
        if den.is_zero() {
            ProjPoint::Infinity
        } else {
            ProjPoint::Finite(self.p.eval_rational(x) / den)
        }
    }

    /// `lim_{z→∞} p(z)/q(z)`.
    pub fn value_at_infinity(&self) -> ProjPoint {
        if self.q.is_zero() {
            return ProjPoint::Infinity;
        }
        if self.p.is_zero() {
            return ProjPoint::Finite(Rational::zero());
        }
        match self.p.deg().cmp(&self.q.deg()) {
            Ordering::Greater => ProjPoint::Infinity,
            Ordering::Less => ProjPoint::Finite(Rational::zero()),
            Ordering::Equal => ProjPoint::Finite(Rational::new(
                self.p.leading().unwrap().clone(),
                self.q.leading().unwrap().clone(),
            )),
        }
    }

    /// Whether ∞ is a fixed point.
    pub fn fixes_infinity(&self) -> bool {
        self.value_at_infinity().is_infinity()
    }

    /// `self ∘ inner`, by homogeneous substitution so that the degree law
    /// `deg(f∘g) = deg f · deg g` holds exactly.
    pub fn compose(&self, inner: &RationalMap) -> Result<RationalMap> {
        let d = self.degree();
        let qp = powers(&inner.q, d);
        let num = hom_compose_with(&self.p, d, &inner.p, &qp);
        let den = hom_compose_with(&self.q, d, &inner.p, &qp);
        RationalMap::new(num, den)
    }

    /// `f^k = f ∘ f^{k−1}`, re-normalized after every composition.
    pub fn iterate(&self, k: u32, budget: &Budget) -> Result<RationalMap> {
        if k == 0 {
            return Err(Error::Precondition("iterate index k must be at least 1".into()));
        }
        budget.iterate_degree(self.degree() as u64, k)?;
        let mut g = self.clone();
        for _ in 1..k {
            g = self.compose(&g)?;
            budget.check_bits(g.max_coeff_bits())?;
        }
        Ok(g)
    }

    pub fn max_coeff_bits(&self) -> u64 {
        self.p.max_coeff_bits().max(self.q.max_coeff_bits())
    }

    /// `f′ = (p′q − pq′)/q²`.
    pub fn derivative(&self) -> RationalMap {
        if self.q.is_zero() {
            return RationalMap {
                p: IntPoly::zero(),
                q: IntPoly::one(),
            };
        }
        let num = &(&self.p.derivative() * &self.q) - &(&self.p * &self.q.derivative());
        let den = &self.q * &self.q;
        RationalMap::new(num, den).expect("q is nonzero")
    }

    /// `p − z·q` without content removal; its roots are the finite fixed points.
    pub fn fixed_point_polynomial(&self) -> IntPoly {
        &self.p - &self.q.shift(1)
    }

    /// `c·f`.
    pub fn scaled(&self, c: &Rational) -> Result<RationalMap> {
        RationalMap::new(self.p.scale(c.numer()), self.q.scale(c.denom()))
    }

    /// `φ ∘ f ∘ φ⁻¹` for `φ(z) = (a z + b)/(c z + e)`.
    pub fn conjugate(&self, a: &Rational, b: &Rational, c: &Rational, e: &Rational) -> Result<RationalMap> {
        if (a * e - b * c).is_zero() {
            return Err(Error::SingularTransform);
        }
        let lcm = [a, b, c, e].iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let int = |x: &Rational| x.numer() * (&lcm / x.denom());
        let (a, b, c, e) = (int(a), int(b), int(c), int(e));
        // φ⁻¹(z) = (e z − b)/(−c z + a)
        let u = IntPoly::new(vec![-b.clone(), e.clone()]);
        let v = IntPoly::new(vec![a.clone(), -c.clone()]);
        let d = self.degree();
        let vp = powers(&v, d);
        let n1 = hom_compose_with(&self.p, d, &u, &vp);
        let d1 = hom_compose_with(&self.q, d, &u, &vp);
        let num = &n1.scale(&a) + &d1.scale(&b);
        let den = &n1.scale(&c) + &d1.scale(&e);
        RationalMap::new(num, den)
    }

    /// Sign of the leading coefficient of `p` (used by the polynomial criteria).
    pub fn leading_sign(&self) -> Ordering {
        let s = self.p.leading_sign();
        if self.q.leading().is_some_and(|c| c.is_negative()) {
            s.reverse()
        } else {
            s
        }
    }
}

impl fmt::Display for RationalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for RationalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalMap({})", self.to_text())
    }
}

impl FromStr for RationalMap {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        RationalMap::parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn map(text: &str) -> RationalMap {
        RationalMap::parse(text).unwrap()
    }

    #[test]
    fn construction_examples() {
        let f = RationalMap::polynomial(p(&[-1, 0, 2])).unwrap();
        assert_eq!(f.degree(), 2);
        let g = RationalMap::new(p(&[-1, 0, 1]), p(&[0, 1])).unwrap();
        assert_eq!((g.p(), g.q(), g.degree()), (&p(&[-1, 0, 1]), &p(&[0, 1]), 2));
        let h = RationalMap::new(p(&[-1, 0, 1]), p(&[-1, 1])).unwrap();
        assert_eq!((h.p(), h.q(), h.degree()), (&p(&[1, 1]), &p(&[1]), 1));
        assert_eq!(RationalMap::new(p(&[]), p(&[])), Err(Error::UndefinedMap));
        let c = RationalMap::new(p(&[3]), p(&[])).unwrap();
        assert_eq!(c.degree(), 0);
        assert_eq!(c.eval(&ProjPoint::from_i64(5)), ProjPoint::Infinity);
    }

    #[test]
    fn sign_and_content_normalization() {
        let f = RationalMap::new(p(&[2, 0, -4]), p(&[0, -2])).unwrap();
        assert_eq!(f.p(), &p(&[-1, 0, 2]));
        assert_eq!(f.q(), &p(&[0, 1]));
        assert_eq!(map("-1/2,0,1 | 1/2"), map("-1,0,2"));
    }

    #[test]
    fn parse_and_print() {
        let f = map("-1,0,1 | 0,1");
        assert_eq!(f.to_text(), "-1,0,1 | 0,1");
        assert_eq!(map("-1,0,2").to_text(), "-1,0,2");
        assert!(RationalMap::parse("").is_err());
        assert!(RationalMap::parse("1 | 2 | 3").is_err());
        assert!(RationalMap::parse("1/0").is_err());
    }

    #[test]
    fn eval_examples() {
        let f = map("-1,0,1 | 0,1");
        assert_eq!(f.eval(&ProjPoint::from_i64(0)), ProjPoint::Infinity);
        assert_eq!(map("-1,0,2").eval(&ProjPoint::Infinity), ProjPoint::Infinity);
        assert_eq!(map("0,-12,0,8").eval(&ProjPoint::from_i64(1)), ProjPoint::from_i64(-4));
        assert_eq!(map("1 | 0,1").eval(&ProjPoint::Infinity), ProjPoint::from_i64(0));
        assert_eq!(map("1,3 | 1,2").eval(&ProjPoint::Infinity), ProjPoint::Finite(q(3, 2)));
    }

    #[test]
    fn iterate_examples() {
        let b = Budget::default();
        let t2 = map("-1,0,2");
        assert_eq!(t2.iterate(2, &b).unwrap(), map("1,0,-8,0,8"));
        assert_eq!(t2.iterate(1, &b).unwrap(), t2);
        // T₈ = 128z⁸ − 256z⁶ + 160z⁴ − 32z² + 1
        assert_eq!(t2.iterate(3, &b).unwrap(), map("1,0,-32,0,160,0,-256,0,128"));
        assert!(t2.iterate(0, &b).is_err());
        let small = Budget {
            max_degree: 100,
            ..Budget::default()
        };
        assert!(matches!(t2.iterate(7, &small), Err(Error::Budget(_))));
    }

    #[test]
    fn iterate_of_rational_map_keeps_degree() {
        let b = Budget::default();
        let f = map("-1,0,1 | 0,1");
        for k in 1..=4 {
            assert_eq!(f.iterate(k, &b).unwrap().degree(), 2usize.pow(k));
        }
        let g = map("1,0,-3,1 | 2,1,1");
        assert_eq!(g.iterate(3, &b).unwrap().degree(), 27);
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(map("-1,0,2").derivative(), map("0,4"));
        assert_eq!(map("-1,0,1 | 0,1").derivative(), map("1,0,1 | 0,0,1"));
        assert_eq!(map("7/3").derivative(), map("0"));
    }

    #[test]
    fn conjugation_examples() {
        let f = map("-1,0,2");
        let one = q(1, 1);
        let zero = q(0, 1);
        assert_eq!(f.conjugate(&one, &zero, &zero, &one).unwrap(), f);
        // z ↦ z + 1 moves the fixed points −1/2, 1 to 1/2, 2.
        let g = f.conjugate(&one, &one, &zero, &one).unwrap();
        let fp = g.fixed_point_polynomial();
        assert!(fp.eval_rational(&q(1, 2)).is_zero());
        assert!(fp.eval_rational(&q(2, 1)).is_zero());
        // z ↦ 1/z moves them to −2 and 1.
        let h = f.conjugate(&zero, &one, &one, &zero).unwrap();
        let fp = h.fixed_point_polynomial();
        assert!(fp.eval_rational(&q(-2, 1)).is_zero());
        assert!(fp.eval_rational(&q(1, 1)).is_zero());
        assert_eq!(h.degree(), 2);
        assert_eq!(f.conjugate(&one, &one, &one, &one), Err(Error::SingularTransform));
    }

    #[test]
    fn proj_point_parsing() {
        assert_eq!("inf".parse::<ProjPoint>().unwrap(), ProjPoint::Infinity);
        assert_eq!("-3/6".parse::<ProjPoint>().unwrap(), ProjPoint::Finite(q(-1, 2)));
        assert_eq!(ProjPoint::Finite(q(-1, 2)).to_string(), "-1/2");
    }
}
