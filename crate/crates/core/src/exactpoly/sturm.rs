//! Sturm sequences over ℤ[z] and exact real-root counting.

use std::cmp::Ordering;

use super::IntPoly;
use crate::error::{Error, Result};
use crate::Rational;

/// A point of the extended real line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    NegInf,
    Finite(Rational),
    PosInf,
}

impl Bound {
    fn rank(&self) -> u8 {
        match self {
            Bound::NegInf => 0,
            Bound::Finite(_) => 1,
            Bound::PosInf => 2,
        }
    }
}

impl PartialOrd for Bound {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Bound {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Bound::Finite(a), Bound::Finite(b)) => a.cmp(b),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl From<Rational> for Bound {
    fn from(x: Rational) -> Self {
        Bound::Finite(x)
    }
}

/// Sturm sequence `s₀ = a, s₁ = a′, sᵢ₊₁ ∝ −rem(sᵢ₋₁, sᵢ)` kept in ℤ[z] with
/// positive rescalings only, so every sign pattern matches the classical
/// sequence over ℚ.
#[derive(Clone, Debug)]
pub struct SturmSequence {
    chain: Vec<IntPoly>,
}

impl SturmSequence {
    /// Builds the sequence; fails unless `a` is nonzero and squarefree.
    pub fn new(a: &IntPoly) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut chain = vec![a.primitive_part()];
        if a.deg() == 0 {
            return Ok(SturmSequence { chain });
        }
        chain.push(a.derivative().primitive_part());
        loop {
            let n = chain.len();
            let (prev, cur) = (&chain[n - 2], &chain[n - 1]);
            if cur.deg() == 0 {
                break;
            }
            let (r, m) = prev.pseudo_rem(cur);
            if r.is_zero() {
                // The last nonzero element is gcd(a, a′), which is not constant.
                return Err(Error::NotSquarefree);
            }
            // lc(cur)^m · prev = q·cur + r, so the true remainder is r / lc(cur)^m.
            let flip = cur.leading_sign() == Ordering::Less && m % 2 == 1;
            let next = if flip { r } else { -r };
            chain.push(next.primitive_part());
        }
        Ok(SturmSequence { chain })
    }

    pub fn polys(&self) -> &[IntPoly] {
        &self.chain
    }

    /// Number of sign changes of the sequence at `x`, zeros skipped.
    pub fn variations(&self, x: &Bound) -> usize {
        let signs = self.chain.iter().map(|s| match x {
            Bound::NegInf => s.sign_at_infinity(false),
            Bound::PosInf => s.sign_at_infinity(true),
            Bound::Finite(v) => s.eval_sign(v),
        });
        count_variations(signs)
    }

    /// Distinct real roots in `(lo, hi]`.
    pub fn count(&self, lo: &Bound, hi: &Bound) -> usize {
        if lo >= hi {
            return 0;
        }
        self.variations(lo).saturating_sub(self.variations(hi))
    }

    /// Distinct real roots on the whole line.
    pub fn count_all(&self) -> usize {
        self.count(&Bound::NegInf, &Bound::PosInf)
    }
}

pub(crate) fn count_variations(signs: impl Iterator<Item = Ordering>) -> usize {
    let mut last = Ordering::Equal;
    let mut n = 0;
    for s in signs {
        if s == Ordering::Equal {
            continue;
        }
        if last != Ordering::Equal && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

/// Number of distinct real roots of the squarefree polynomial `a` in `(lo, hi]`.
pub fn sturm_count(a: &IntPoly, lo: &Bound, hi: &Bound) -> Result<usize> {
    if lo >= hi {
        return Err(Error::Precondition("sturm_count needs lo < hi".into()));
    }
    Ok(SturmSequence::new(a)?.count(lo, hi))
}
