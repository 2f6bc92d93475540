//! Certified classification of the multiplier `λ = (f^k)′(z₀)` at a real
//! fixed point of `f^k`.
//!
//! Indifference is decided exactly: `λ = 1` exactly when `z₀` is a multiple
//! root of `F_k = P − zQ`, and `λ = −1` exactly when `z₀` is a root of
//! `P′Q − PQ′ + Q²`. Away from `±1` an interval enclosure of `λ` is refined
//! until it lies inside `(−1, 1)` or outside `[−1, 1]`.

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};

use super::RationalMap;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::exactpoly::interval::{eval_poly, RatInterval};
use crate::exactpoly::{IntPoly, IsolatingInterval};
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MultiplierVerdict {
    /// `|λ| < 1`, including the superattracting case `λ = 0`.
    Attracting,
    /// `|λ| > 1`.
    Repelling,
    /// `λ = +1` exactly.
    IndifferentPlus,
    /// `λ = −1` exactly.
    IndifferentMinus,
}

impl MultiplierVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            MultiplierVerdict::Attracting => "attracting",
            MultiplierVerdict::Repelling => "repelling",
            MultiplierVerdict::IndifferentPlus => "indifferent_plus",
            MultiplierVerdict::IndifferentMinus => "indifferent_minus",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplierClass {
    pub verdict: MultiplierVerdict,
    /// Closed rational interval containing `λ`; a single point when `λ` is
    /// known exactly.
    pub lambda_bounds: Option<(Rational, Rational)>,
}

impl MultiplierClass {
    fn exact(lambda: Rational) -> Self {
        let verdict = match lambda.abs().cmp(&Rational::one()) {
            Ordering::Less => MultiplierVerdict::Attracting,
            Ordering::Greater => MultiplierVerdict::Repelling,
            Ordering::Equal if lambda.is_positive() => MultiplierVerdict::IndifferentPlus,
            Ordering::Equal => MultiplierVerdict::IndifferentMinus,
        };
        MultiplierClass {
            verdict,
            lambda_bounds: Some((lambda.clone(), lambda)),
        }
    }

    pub fn is_attracting(&self) -> bool {
        self.verdict == MultiplierVerdict::Attracting
    }

    pub fn is_repelling(&self) -> bool {
        self.verdict == MultiplierVerdict::Repelling
    }

    pub fn is_indifferent(&self) -> bool {
        matches!(
            self.verdict,
            MultiplierVerdict::IndifferentPlus | MultiplierVerdict::IndifferentMinus
        )
    }

    /// `|λ| ≤ 1`.
    pub fn is_nonrepelling(&self) -> bool {
        !self.is_repelling()
    }
}

/// Multiplier of `f^k` at a real fixed point of `f^k` (finite or ∞).
pub fn classify_multiplier(
    f: &RationalMap,
    root: &IsolatingInterval,
    k: u32,
    budget: &Budget,
) -> Result<MultiplierClass> {
    let g = f.iterate(k, budget)?;
    classify_multiplier_of_iterate(f, &g, root, k, budget)
}

/// Same as [`classify_multiplier`] when `g = f^k` is already known.
pub fn classify_multiplier_of_iterate(
    f: &RationalMap,
    g: &RationalMap,
    root: &IsolatingInterval,
    k: u32,
    budget: &Budget,
) -> Result<MultiplierClass> {
    if root.is_infinity() {
        return multiplier_at_infinity_of_iterate(g);
    }
    let fk = g.fixed_point_polynomial();
    if fk.is_zero() {
        return Err(Error::IdentityMap);
    }
    if !root.is_root_of(&fk)? {
        return Err(Error::NotARoot);
    }
    let (p, q) = (g.p(), g.q());
    let n = &(&p.derivative() * q) - &(p * &q.derivative());
    let q2 = q * q;
    if let Some(x) = root.as_rational() {
        return Ok(MultiplierClass::exact(n.eval_rational(x) / q2.eval_rational(x)));
    }
    if root.multiplicity() > 1 || root.is_root_of(&fk.derivative())? {
        return Ok(MultiplierClass::exact(Rational::one()));
    }
    if root.is_root_of(&(&n + &q2))? {
        return Ok(MultiplierClass::exact(-Rational::one()));
    }
    refine_enclosure(f, k, &n, &q2, root, budget)
}

/// Bisects until an enclosure of `λ` avoids `±1`. Two enclosures are tried
/// at every step: the chain rule along the orbit under `f`, which stays tight
/// for high iterates, and `N/Q²` for `f^k` directly, which also works when the
/// orbit passes through ∞.
fn refine_enclosure(
    f: &RationalMap,
    k: u32,
    n: &IntPoly,
    q2: &IntPoly,
    root: &IsolatingInterval,
    budget: &Budget,
) -> Result<MultiplierClass> {
    let one = Rational::one();
    let limit = Rational::new(
        num_bigint::BigInt::one(),
        num_bigint::BigInt::one() << budget.refine_depth as usize,
    );
    let fd = (
        &(&f.p().derivative() * f.q()) - &(f.p() * &f.q().derivative()),
        f.q() * f.q(),
    );
    let mut iv = root.clone();
    loop {
        let x = RatInterval::new(iv.lower().clone(), iv.upper().clone());
        let chain = orbit_enclosure(f, &fd, k, &x);
        let direct = eval_poly(n, &x).div(&eval_poly(q2, &x));
        for lam in chain.into_iter().chain(direct) {
            let verdict = if lam.hi < -&one || lam.lo > one {
                Some(MultiplierVerdict::Repelling)
            } else if -&one < lam.lo && lam.hi < one {
                Some(MultiplierVerdict::Attracting)
            } else {
                None
            };
            if let Some(verdict) = verdict {
                return Ok(MultiplierClass {
                    verdict,
                    lambda_bounds: Some((lam.lo, lam.hi)),
                });
            }
        }
        if iv.is_exact() || iv.width() <= limit {
            return Err(Error::Budget(format!(
                "multiplier not separated from ±1 at refinement depth {}",
                budget.refine_depth
            )));
        }
        iv.bisect();
    }
}

/// `Π f′(f^j(x))` over `j < k` for `x` ranging over an interval, or `None`
/// when some orbit enclosure meets a pole.
fn orbit_enclosure(f: &RationalMap, fd: &(IntPoly, IntPoly), k: u32, x: &RatInterval) -> Option<RatInterval> {
    let mut z = x.clone();
    let mut lam = RatInterval::point(Rational::one());
    for j in 0..k {
        let d = eval_poly(&fd.0, &z).div(&eval_poly(&fd.1, &z))?;
        lam = lam.mul(&d);
        if j + 1 < k {
            z = eval_poly(f.p(), &z).div(&eval_poly(f.q(), &z))?;
        }
    }
    Some(lam)
}

/// Multiplier of `f^k` at ∞ when ∞ is fixed by `f^k`.
pub fn multiplier_at_infinity(f: &RationalMap, k: u32, budget: &Budget) -> Result<MultiplierClass> {
    let g = f.iterate(k, budget)?;
    multiplier_at_infinity_of_iterate(&g)
}

/// Multiplier at ∞ of `g = P/Q`: in the coordinate `w = 1/z`, `λ = 0` when
/// `deg P ≥ deg Q + 2` and `λ = lc(Q)/lc(P)` when `deg P = deg Q + 1`.
pub fn multiplier_at_infinity_of_iterate(g: &RationalMap) -> Result<MultiplierClass> {
    if !g.fixes_infinity() || g.q().is_zero() {
        return Err(Error::InfinityNotFixed);
    }
    let (dp, dq) = (g.p().deg(), g.q().deg());
    if dp >= dq + 2 {
        return Ok(MultiplierClass::exact(Rational::zero()));
    }
    Ok(MultiplierClass::exact(Rational::new(
        g.q().leading().unwrap().clone(),
        g.p().leading().unwrap().clone(),
    )))
}
