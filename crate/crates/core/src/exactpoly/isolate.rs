//! Certified isolating intervals and Sturm-bisection root isolation.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::gcd::{poly_gcd, squarefree_decomposition, squarefree_part};
use super::sturm::{Bound, SturmSequence};
use super::IntPoly;
use crate::error::{Error, Result};
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RootKind {
    /// The root lies strictly inside `(lower, upper)`.
    Open,
    /// The root is the rational `lower = upper`.
    Exact,
    /// The point at infinity of the projective line.
    Infinity,
}

/// A real algebraic number given by a rational interval and a squarefree
/// witness polynomial with exactly one root in it, or the point at infinity.
///
/// For `Infinity` the endpoints are zero and the witness is the constant 1.
#[derive(Clone, PartialEq, Eq)]
pub struct IsolatingInterval {
    lower: Rational,
    upper: Rational,
    kind: RootKind,
    witness: Arc<IntPoly>,
    multiplicity: u32,
    /// Sign of the witness at `lower` (open intervals only).
    lower_sign: Ordering,
}

impl IsolatingInterval {
    /// The exact rational root `x` of `witness`.
    pub fn exact(x: Rational, witness: Arc<IntPoly>, multiplicity: u32) -> Self {
        IsolatingInterval {
            lower: x.clone(),
            upper: x,
            kind: RootKind::Exact,
            witness,
            multiplicity,
            lower_sign: Ordering::Equal,
        }
    }

    /// A rational number as a point, with its linear witness.
    pub fn rational(x: Rational) -> Self {
        let w = Arc::new(IntPoly::linear_root(&x));
        Self::exact(x, w, 1)
    }

    pub fn infinity(multiplicity: u32) -> Self {
        IsolatingInterval {
            lower: Rational::zero(),
            upper: Rational::zero(),
            kind: RootKind::Infinity,
            witness: Arc::new(IntPoly::one()),
            multiplicity,
            lower_sign: Ordering::Equal,
        }
    }

    /// Checked constructor for an open isolating interval: `witness` must be
    /// squarefree with exactly one root in `(lower, upper)` and nonzero at
    /// both endpoints.
    pub fn open(lower: Rational, upper: Rational, witness: Arc<IntPoly>, multiplicity: u32) -> Result<Self> {
        if lower >= upper {
            return Err(Error::Precondition("isolating interval needs lower < upper".into()));
        }
        let sl = witness.eval_sign(&lower);
        let su = witness.eval_sign(&upper);
        if sl == Ordering::Equal || su == Ordering::Equal {
            return Err(Error::Precondition("witness vanishes at an endpoint".into()));
        }
        let seq = SturmSequence::new(&witness)?;
        if seq.count(&Bound::Finite(lower.clone()), &Bound::Finite(upper.clone())) != 1 {
            return Err(Error::NotARoot);
        }
        Ok(Self::open_unchecked(lower, upper, witness, multiplicity, sl))
    }

    /// Open interval whose validity the caller has already established.
    pub(crate) fn open_unchecked(
        lower: Rational,
        upper: Rational,
        witness: Arc<IntPoly>,
        multiplicity: u32,
        lower_sign: Ordering,
    ) -> Self {
        debug_assert!(lower < upper);
        IsolatingInterval {
            lower,
            upper,
            kind: RootKind::Open,
            witness,
            multiplicity,
            lower_sign,
        }
    }

    pub fn lower(&self) -> &Rational {
        &self.lower
    }

    pub fn upper(&self) -> &Rational {
        &self.upper
    }

    pub fn kind(&self) -> RootKind {
        self.kind
    }

    pub fn witness(&self) -> &Arc<IntPoly> {
        &self.witness
    }

    pub fn multiplicity(&self) -> u32 {
        self.multiplicity
    }

    pub fn with_multiplicity(mut self, m: u32) -> Self {
        self.multiplicity = m;
        self
    }

    pub fn is_exact(&self) -> bool {
        self.kind == RootKind::Exact
    }

    pub fn is_infinity(&self) -> bool {
        self.kind == RootKind::Infinity
    }

    /// The rational value of an exact point.
    pub fn as_rational(&self) -> Option<&Rational> {
        (self.kind == RootKind::Exact).then_some(&self.lower)
    }

    pub fn width(&self) -> Rational {
        &self.upper - &self.lower
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lower + &self.upper) / Rational::from_integer(2.into())
    }

    /// Floating-point approximation (midpoint); `inf` for the point at infinity.
    pub fn to_f64(&self) -> f64 {
        if self.is_infinity() {
            return f64::INFINITY;
        }
        rational_to_f64(&self.midpoint())
    }

    /// Closed-interval containment of a rational.
    pub fn encloses(&self, x: &Rational) -> bool {
        self.kind != RootKind::Infinity && &self.lower <= x && x <= &self.upper
    }

    /// Halves an open interval, keeping the half with the root. May turn the
    /// interval into an exact point when the midpoint is the root.
    pub fn bisect(&mut self) {
        if self.kind != RootKind::Open {
            return;
        }
        let mid = self.midpoint();
        let s = self.witness.eval_sign(&mid);
        if s == Ordering::Equal {
            self.lower = mid.clone();
            self.upper = mid;
            self.kind = RootKind::Exact;
            self.lower_sign = Ordering::Equal;
        } else if s == self.lower_sign {
            self.lower = mid;
        } else {
            self.upper = mid;
        }
    }

    /// Bisects until the width is at most `width_bound`.
    pub fn refine_to(&mut self, width_bound: &Rational) {
        while self.kind == RootKind::Open && &self.width() > width_bound {
            self.bisect();
        }
    }

    /// Bisects until the width is at most `2^-bits`.
    pub fn refine_to_bits(&mut self, bits: u32) {
        let bound = Rational::new(BigInt::one(), BigInt::one() << bits as usize);
        self.refine_to(&bound);
    }

    /// Whether this number is a root of `g`. For open intervals this reduces
    /// to a sign change of `gcd(witness, g)` across the interval, which is exact
    /// because that gcd divides the witness.
    pub fn is_root_of(&self, g: &IntPoly) -> Result<bool> {
        match self.kind {
            RootKind::Infinity => Err(Error::Precondition("root test at infinity".into())),
            RootKind::Exact => Ok(g.eval_sign(&self.lower) == Ordering::Equal),
            RootKind::Open => {
                if g.is_zero() || g.div_exact(&self.witness).is_some() {
                    return Ok(true);
                }
                let h = poly_gcd(&self.witness, g)?;
                if h.is_constant() {
                    return Ok(false);
                }
                let a = h.eval_sign(&self.lower);
                let b = h.eval_sign(&self.upper);
                Ok(a != Ordering::Equal && b != Ordering::Equal && a != b)
            }
        }
    }
}

/// `[lower, upper]` with the witness and kind; infinity prints as `inf`.
impl fmt::Debug for IsolatingInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            RootKind::Infinity => write!(f, "inf(x{})", self.multiplicity),
            RootKind::Exact => write!(f, "{{{}}}(x{})", self.lower, self.multiplicity),
            RootKind::Open => write!(
                f,
                "({}, {})(x{}) root of [{}]",
                self.lower, self.upper, self.multiplicity, self.witness
            ),
        }
    }
}

pub(crate) fn rational_to_f64(x: &Rational) -> f64 {
    let n = x.numer();
    let d = x.denom();
    let shift = (n.bits() as i64).max(d.bits() as i64) - 60;
    if shift <= 0 {
        return super::intpoly::bigint_to_f64(n) / super::intpoly::bigint_to_f64(d);
    }
    // Scale both down to keep the quotient representable.
    let s = shift as usize;
    let nn = n >> s.min(n.bits() as usize);
    let dd = d >> s.min(d.bits() as usize);
    let ln = n.bits() as i64 - nn.bits() as i64;
    let ld = d.bits() as i64 - dd.bits() as i64;
    let q = super::intpoly::bigint_to_f64(&nn) / super::intpoly::bigint_to_f64(&dd);
    q * 2f64.powi((ln - ld) as i32)
}

/// A power of two strictly larger than the absolute value of every root.
pub fn cauchy_bound(a: &IntPoly) -> Rational {
    let lc = a.leading().map(|c| c.abs()).unwrap_or_else(BigInt::one);
    let max = a.coeffs().iter().map(|c| c.abs()).max().unwrap_or_default();
    let ratio = max.div_ceil(&lc) + BigInt::one();
    Rational::from_integer(BigInt::one() << ratio.bits() as usize)
}

/// Sorted, pairwise disjoint isolating intervals for the distinct real roots
/// of `a`, each tagged with its multiplicity in `a`. The witness of every
/// interval is the squarefree part of `a`.
pub fn isolate_real_roots(a: &IntPoly) -> Result<Vec<IsolatingInterval>> {
    if a.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if a.deg() == 0 {
        return Ok(Vec::new());
    }
    let sqf = Arc::new(squarefree_part(a)?);
    let mut out = isolate_squarefree(&sqf)?;
    if out.is_empty() {
        return Ok(out);
    }
    if sqf.leading().is_some_and(|c| c.bits() <= SNAP_LC_BITS) {
        for iv in out.iter_mut() {
            snap_rational(iv);
        }
    }
    if sqf.deg() < a.deg() {
        let factors = squarefree_decomposition(a)?;
        for iv in out.iter_mut() {
            iv.multiplicity = factors
                .iter()
                .find(|(g, _)| match iv.kind {
                    RootKind::Exact => g.eval_sign(&iv.lower) == Ordering::Equal,
                    _ => g.eval_sign(&iv.lower) != g.eval_sign(&iv.upper),
                })
                .map_or(1, |(_, m)| *m);
        }
    }
    Ok(out)
}

/// Rational roots are recognized only when the leading coefficient of the
/// witness has at most this many bits.
const SNAP_LC_BITS: u64 = 64;

/// Turns an open interval into an exact point when its root is rational.
///
/// A rational root `a/b` of a primitive witness has `b | lc`. Once the width
/// is below `1/lc²` the interval holds no other rational with denominator at
/// most `|lc|`, so the candidate is the simplest rational in the interval.
fn snap_rational(iv: &mut IsolatingInterval) {
    if iv.kind != RootKind::Open {
        return;
    }
    let lc = iv.witness.leading().expect("witness is nonzero").abs();
    let mut t = iv.clone();
    t.refine_to(&Rational::new(BigInt::one(), &lc * &lc * 2));
    if t.kind == RootKind::Exact {
        *iv = t;
        return;
    }
    let s = simplest_between(t.lower(), t.upper());
    if s.denom() <= &lc && iv.witness.eval_sign(&s) == Ordering::Equal {
        *iv = IsolatingInterval::exact(s, iv.witness.clone(), iv.multiplicity);
    }
}

/// The rational with the smallest denominator in the open interval `(a, b)`,
/// `a < b` (the smallest in absolute value among those).
pub fn simplest_between(a: &Rational, b: &Rational) -> Rational {
    debug_assert!(a < b);
    if a.is_negative() && b.is_positive() {
        return Rational::zero();
    }
    if !b.is_positive() {
        return -simplest_above(&-b, Some(&-a));
    }
    simplest_above(a, Some(b))
}

/// Simplest rational in `(a, b)` for `0 ≤ a < b`, with `b = None` meaning `+∞`.
fn simplest_above(a: &Rational, b: Option<&Rational>) -> Rational {
    let fl = a.floor();
    let next = &fl + Rational::one();
    if b.is_none_or(|b| &next < b) {
        return next;
    }
    // No integer in (a, b): both lie in [fl, fl + 1] and a ≥ fl.
    let b = b.unwrap();
    let lo = Rational::one() / (b - &fl);
    let hi = if *a == fl {
        None
    } else {
        Some(Rational::one() / (a - &fl))
    };
    fl + Rational::one() / simplest_above(&lo, hi.as_ref())
}

/// Isolation for a squarefree polynomial, which becomes the witness.
pub fn isolate_squarefree(sqf: &Arc<IntPoly>) -> Result<Vec<IsolatingInterval>> {
    let seq = SturmSequence::new(sqf)?;
    let b = cauchy_bound(sqf);
    let lo = Bound::Finite(-b.clone());
    let hi = Bound::Finite(b.clone());
    let (vlo, vhi) = (seq.variations(&lo), seq.variations(&hi));
    let mut out = Vec::new();
    // Explicit stack of (lo, V(lo), hi, V(hi)); right halves are pushed first
    // so roots come out in increasing order.
    let mut stack = vec![(-b.clone(), vlo, b, vhi)];
    while let Some((lo, vlo, hi, vhi)) = stack.pop() {
        let c = vlo.saturating_sub(vhi);
        if c == 0 {
            continue;
        }
        if c == 1 {
            if sqf.eval_sign(&hi) == Ordering::Equal {
                out.push(IsolatingInterval::exact(hi, sqf.clone(), 1));
                continue;
            }
            let sl = sqf.eval_sign(&lo);
            if sl != Ordering::Equal {
                out.push(IsolatingInterval::open_unchecked(lo, hi, sqf.clone(), 1, sl));
                continue;
            }
        }
        let mid = (&lo + &hi) / Rational::from_integer(2.into());
        let vmid = seq.variations(&Bound::Finite(mid.clone()));
        stack.push((mid.clone(), vmid, hi, vhi));
        stack.push((lo, vlo, mid, vmid));
    }
    Ok(out)
}

/// Returns an isolating interval for the same root of width at most
/// `width_bound`. Exact points and infinity are returned unchanged.
pub fn refine_interval(iv: &IsolatingInterval, width_bound: &Rational) -> Result<IsolatingInterval> {
    if !width_bound.is_positive() {
        return Err(Error::Precondition("width bound must be positive".into()));
    }
    let mut out = iv.clone();
    out.refine_to(width_bound);
    Ok(out)
}

/// The simplest dyadic rational strictly between `a` and `b` (`a < b`):
/// smallest denominator power of two, then smallest absolute value.
pub fn dyadic_between(a: &Rational, b: &Rational) -> Rational {
    debug_assert!(a < b);
    let zero = Rational::zero();
    if a < &zero && &zero < b {
        return zero;
    }
    // Integers first, then halves, quarters, ...
    let mut scale = BigInt::one();
    loop {
        let s = Rational::from_integer(scale.clone());
        let lo = (a * &s).floor().to_integer() + BigInt::one();
        let hi = (b * &s).ceil().to_integer() - BigInt::one();
        if lo <= hi {
            // Smallest absolute value inside [lo, hi].
            let m = if lo.is_positive() {
                lo
            } else if hi.is_negative() {
                hi
            } else {
                BigInt::zero()
            };
            return Rational::new(m, scale);
        }
        scale <<= 1;
    }
}
