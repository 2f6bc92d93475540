//! Finite unions of closed arcs on the real projective line ℝ ∪ {∞}, exact
//! preimages under rational maps, and backward invariance.
//!
//! A set is stored in linear coordinates: the circle is cut open at ∞, giving
//! the extended line `[−∞, +∞]` whose two ends are the same point. Pieces are
//! sorted, pairwise disjoint, non-adjacent closed intervals of that line; an
//! arc through ∞ appears as a piece ending at `+∞` together with one starting
//! at `−∞`. The point ∞ on its own is a separate flag. Finite endpoints are
//! exact algebraic numbers (isolating intervals), so all comparisons are
//! exact.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::exactpoly::intpoly::{hom_compose_with, powers};
use crate::exactpoly::{
    compare, compare_rational, dyadic_between, image_equals, isolate_real_roots, parse_coefficients, parse_rational,
    IntPoly, IsolatingInterval,
};
use crate::ratmap::{classify_multiplier_of_iterate, fixed_point_data, MultiplierClass, ProjPoint, RationalMap};
use crate::Rational;

/// Algebraic cut points produced by [`preimage`] are refined to this many
/// bits before being stored.
pub const CUT_POINT_BITS: u32 = 20;

/// Bisection rounds allowed when separating two neighbouring cut points.
const SEPARATE_LIMIT: usize = 4096;

/// An endpoint in linear coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Endpoint {
    NegInf,
    Finite(IsolatingInterval),
    PosInf,
}

/// An endpoint of a user-facing arc on the circle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArcEnd {
    /// `−∞`: as a lower end, the arc starts at ∞.
    NegInf,
    /// `+∞`: as an upper end, the arc ends at ∞.
    PosInf,
    /// Unsigned ∞ (same point; used for the degenerate arc `[∞, ∞]`).
    Inf,
    Finite(IsolatingInterval),
}

impl ArcEnd {
    pub fn rational(x: Rational) -> Self {
        ArcEnd::Finite(IsolatingInterval::rational(x))
    }

    fn is_infinite(&self) -> bool {
        !matches!(self, ArcEnd::Finite(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CircleSet {
    pieces: Vec<(Endpoint, Endpoint)>,
    infinity_point: bool,
}

fn cmp_end(a: &Endpoint, b: &Endpoint) -> Result<Ordering> {
    use Endpoint::*;
    Ok(match (a, b) {
        (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
        (NegInf, _) | (_, PosInf) => Ordering::Less,
        (_, NegInf) | (PosInf, _) => Ordering::Greater,
        (Finite(x), Finite(y)) => compare(x, y)?,
    })
}

/// Sorts with a fallible comparator, reporting the first failure.
fn try_sort_by<T>(v: &mut [T], mut cmp: impl FnMut(&T, &T) -> Result<Ordering>) -> Result<()> {
    let mut err = None;
    v.sort_by(|a, b| match cmp(a, b) {
        Ok(o) => o,
        Err(e) => {
            err.get_or_insert(e);
            Ordering::Equal
        }
    });
    err.map_or(Ok(()), Err)
}

impl CircleSet {
    pub fn empty() -> Self {
        CircleSet::default()
    }

    /// All of ℝ ∪ {∞}.
    pub fn full() -> Self {
        CircleSet {
            pieces: vec![(Endpoint::NegInf, Endpoint::PosInf)],
            infinity_point: false,
        }
    }

    /// The closed interval `[a, b]` of rationals (`a ≤ b`).
    pub fn interval(a: Rational, b: Rational) -> Result<Self> {
        Self::from_arcs(vec![(ArcEnd::rational(a), ArcEnd::rational(b))])
    }

    /// `[x₀, x₁]` for algebraic endpoints.
    pub fn algebraic_interval(a: IsolatingInterval, b: IsolatingInterval) -> Result<Self> {
        Self::from_arcs(vec![(ArcEnd::Finite(a), ArcEnd::Finite(b))])
    }

    /// Normalizes a list of arcs. A finite arc with `lower > upper` runs from
    /// `lower` through ∞ to `upper`; `[∞, ∞]` is the single point ∞; an
    /// infinite lower end starts the arc at ∞ and an infinite upper end
    /// finishes it there; `[−∞, +∞]` is the whole circle.
    pub fn from_arcs(arcs: Vec<(ArcEnd, ArcEnd)>) -> Result<Self> {
        let mut pieces = Vec::new();
        let mut infinity_point = false;
        for (lo, hi) in arcs {
            match (lo, hi) {
                (ArcEnd::NegInf, ArcEnd::PosInf) => return Ok(Self::full()),
                (l, h) if l.is_infinite() && h.is_infinite() => infinity_point = true,
                (l, ArcEnd::Finite(b)) if l.is_infinite() => pieces.push((Endpoint::NegInf, Endpoint::Finite(b))),
                (ArcEnd::Finite(a), h) if h.is_infinite() => pieces.push((Endpoint::Finite(a), Endpoint::PosInf)),
                (ArcEnd::Finite(a), ArcEnd::Finite(b)) => {
                    if a.is_infinity() || b.is_infinity() {
                        return Err(Error::Precondition("arc endpoint must be finite".into()));
                    }
                    if compare(&a, &b)? == Ordering::Greater {
                        pieces.push((Endpoint::Finite(a), Endpoint::PosInf));
                        pieces.push((Endpoint::NegInf, Endpoint::Finite(b)));
                    } else {
                        pieces.push((Endpoint::Finite(a), Endpoint::Finite(b)));
                    }
                }
                _ => unreachable!("all endpoint combinations are covered"),
            }
        }
        Self::normalize(pieces, infinity_point)
    }

    fn normalize(mut pieces: Vec<(Endpoint, Endpoint)>, infinity_point: bool) -> Result<Self> {
        try_sort_by(&mut pieces, |a, b| cmp_end(&a.0, &b.0))?;
        let mut out: Vec<(Endpoint, Endpoint)> = Vec::with_capacity(pieces.len());
        for (lo, hi) in pieces {
            if let Some(last) = out.last_mut() {
                if cmp_end(&lo, &last.1)? != Ordering::Greater {
                    if cmp_end(&hi, &last.1)? == Ordering::Greater {
                        last.1 = hi;
                    }
                    continue;
                }
            }
            out.push((lo, hi));
        }
        let mut set = CircleSet {
            pieces: out,
            infinity_point,
        };
        if set.touches_infinity() {
            set.infinity_point = false;
        }
        Ok(set)
    }

    fn touches_infinity(&self) -> bool {
        self.pieces.first().is_some_and(|p| p.0 == Endpoint::NegInf)
            || self.pieces.last().is_some_and(|p| p.1 == Endpoint::PosInf)
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty() && !self.infinity_point
    }

    pub fn is_full(&self) -> bool {
        self.pieces.len() == 1 && self.pieces[0] == (Endpoint::NegInf, Endpoint::PosInf)
    }

    pub fn contains_infinity(&self) -> bool {
        self.infinity_point || self.touches_infinity()
    }

    /// The pieces in linear coordinates.
    pub fn pieces(&self) -> &[(Endpoint, Endpoint)] {
        &self.pieces
    }

    /// Canonical arcs: in circular order from −∞, with an arc through ∞
    /// written as `[lower, upper]` with `lower > upper` and listed last.
    pub fn arcs(&self) -> Vec<(ArcEnd, ArcEnd)> {
        let conv = |e: &Endpoint| match e {
            Endpoint::NegInf => ArcEnd::NegInf,
            Endpoint::PosInf => ArcEnd::PosInf,
            Endpoint::Finite(x) => ArcEnd::Finite(x.clone()),
        };
        if self.is_full() {
            return vec![(ArcEnd::NegInf, ArcEnd::PosInf)];
        }
        let n = self.pieces.len();
        let wraps = n >= 2 && self.pieces[0].0 == Endpoint::NegInf && self.pieces[n - 1].1 == Endpoint::PosInf;
        let mut out = Vec::new();
        let inner = if wraps {
            &self.pieces[1..n - 1]
        } else {
            &self.pieces[..]
        };
        for (lo, hi) in inner {
            out.push((conv(lo), conv(hi)));
        }
        if wraps {
            out.push((conv(&self.pieces[n - 1].0), conv(&self.pieces[0].1)));
        }
        if self.infinity_point {
            out.push((ArcEnd::Inf, ArcEnd::Inf));
        }
        out
    }

    /// Finite endpoints of the pieces, in order and without repeats.
    pub fn finite_endpoints(&self) -> Vec<IsolatingInterval> {
        let mut out: Vec<IsolatingInterval> = Vec::new();
        for (lo, hi) in &self.pieces {
            for e in [lo, hi] {
                if let Endpoint::Finite(x) = e {
                    if out.last() != Some(x) {
                        out.push(x.clone());
                    }
                }
            }
        }
        out
    }

    /// Whether the real algebraic number `x` (or ∞) lies in the set.
    pub fn contains(&self, x: &IsolatingInterval) -> Result<bool> {
        if x.is_infinity() {
            return Ok(self.contains_infinity());
        }
        let e = Endpoint::Finite(x.clone());
        for (lo, hi) in &self.pieces {
            if cmp_end(lo, &e)? != Ordering::Greater && cmp_end(&e, hi)? != Ordering::Greater {
                return Ok(true);
            }
        }
        Ok(false)
    }

    pub fn contains_rational(&self, x: &Rational) -> bool {
        self.pieces.iter().any(|(lo, hi)| {
            let above_lo = match lo {
                Endpoint::NegInf => true,
                Endpoint::PosInf => false,
                Endpoint::Finite(a) => compare_rational(a, x) != Ordering::Greater,
            };
            let below_hi = match hi {
                Endpoint::PosInf => true,
                Endpoint::NegInf => false,
                Endpoint::Finite(b) => compare_rational(b, x) != Ordering::Less,
            };
            above_lo && below_hi
        })
    }

    pub fn contains_point(&self, x: &ProjPoint) -> bool {
        match x {
            ProjPoint::Infinity => self.contains_infinity(),
            ProjPoint::Finite(r) => self.contains_rational(r),
        }
    }

    /// Whether `x` is a boundary point of the set.
    pub fn is_boundary_point(&self, x: &IsolatingInterval) -> Result<bool> {
        if self.is_full() {
            return Ok(false);
        }
        if x.is_infinity() {
            return Ok(self.infinity_point
                || (self.touches_infinity()
                    && !(self.pieces.first().is_some_and(|p| p.0 == Endpoint::NegInf)
                        && self.pieces.last().is_some_and(|p| p.1 == Endpoint::PosInf))));
        }
        for e in self.finite_endpoints() {
            if compare(&e, x)? == Ordering::Equal {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// `self ⊆ other`, decided exactly.
    pub fn is_subset(&self, other: &CircleSet) -> Result<bool> {
        if self.contains_infinity() && !other.contains_infinity() {
            return Ok(false);
        }
        'pieces: for (lo, hi) in &self.pieces {
            for (olo, ohi) in &other.pieces {
                if cmp_end(olo, lo)? != Ordering::Greater && cmp_end(hi, ohi)? != Ordering::Greater {
                    continue 'pieces;
                }
            }
            return Ok(false);
        }
        Ok(true)
    }

    /// Exact set equality.
    pub fn set_eq(&self, other: &CircleSet) -> Result<bool> {
        Ok(self.is_subset(other)? && other.is_subset(self)?)
    }

    pub fn union(&self, other: &CircleSet) -> Result<CircleSet> {
        let pieces = self.pieces.iter().chain(&other.pieces).cloned().collect();
        Self::normalize(pieces, self.infinity_point || other.infinity_point)
    }

    /// Narrows every irrational endpoint enclosure to width at most `2^-bits`.
    pub fn refine_endpoints(&mut self, bits: u32) {
        for (lo, hi) in &mut self.pieces {
            for e in [lo, hi] {
                if let Endpoint::Finite(x) = e {
                    x.refine_to_bits(bits);
                }
            }
        }
    }

    /// JSON: a list of `[lo, hi]` arcs (see [`CircleSet::arcs`]).
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.arcs()
                .iter()
                .map(|(a, b)| json!([arc_end_json(a), arc_end_json(b)]))
                .collect(),
        )
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::Parse("circle set must be a JSON list of arcs".into()))?;
        let mut arcs = Vec::with_capacity(arr.len());
        for arc in arr {
            match arc.as_array().map(Vec::as_slice) {
                Some([a, b]) => arcs.push((arc_end_from_json(a)?, arc_end_from_json(b)?)),
                _ => return Err(Error::Parse("each arc must be a pair [lo, hi]".into())),
            }
        }
        Self::from_arcs(arcs)
    }

    /// Parses the JSON text form.
    pub fn parse(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json(&v)
    }
}

impl fmt::Display for CircleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_json())
    }
}

/// JSON for a finite algebraic number: a rational string when exact, else
/// `{"poly": coefficients, "enclosure": [lo, hi]}`.
pub fn algebraic_json(x: &IsolatingInterval) -> Value {
    if x.is_infinity() {
        return json!("inf");
    }
    match x.as_rational() {
        Some(r) => json!(r.to_string()),
        None => json!({
            "poly": x.witness().to_string(),
            "enclosure": [x.lower().to_string(), x.upper().to_string()],
        }),
    }
}

/// Inverse of [`algebraic_json`]; the enclosure is checked.
pub fn algebraic_from_json(v: &Value) -> Result<IsolatingInterval> {
    match v {
        Value::String(s) if s == "inf" => Ok(IsolatingInterval::infinity(1)),
        Value::String(s) => Ok(IsolatingInterval::rational(parse_rational(s)?)),
        Value::Number(n) => Ok(IsolatingInterval::rational(parse_rational(&n.to_string())?)),
        Value::Object(m) => {
            let poly = m
                .get("poly")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::Parse("algebraic endpoint needs \"poly\"".into()))?;
            let enc = m
                .get("enclosure")
                .and_then(Value::as_array)
                .filter(|a| a.len() == 2)
                .ok_or_else(|| Error::Parse("algebraic endpoint needs \"enclosure\": [lo, hi]".into()))?;
            let text = |v: &Value| match v {
                Value::String(s) => parse_rational(s),
                Value::Number(n) => parse_rational(&n.to_string()),
                _ => Err(Error::Parse("enclosure bounds must be rationals".into())),
            };
            let (lo, hi) = (text(&enc[0])?, text(&enc[1])?);
            let (w, _) = IntPoly::from_rationals(&parse_coefficients(poly)?);
            let w = crate::exactpoly::squarefree_part(&w)?;
            if lo == hi {
                if !w.eval_rational(&lo).is_zero() {
                    return Err(Error::NotARoot);
                }
                return Ok(IsolatingInterval::rational(lo));
            }
            IsolatingInterval::open(lo, hi, std::sync::Arc::new(w), 1)
        }
        _ => Err(Error::Parse("unrecognized endpoint".into())),
    }
}

fn arc_end_json(e: &ArcEnd) -> Value {
    match e {
        ArcEnd::NegInf => json!("-inf"),
        ArcEnd::PosInf => json!("+inf"),
        ArcEnd::Inf => json!("inf"),
        ArcEnd::Finite(x) => algebraic_json(x),
    }
}

fn arc_end_from_json(v: &Value) -> Result<ArcEnd> {
    match v.as_str() {
        Some("-inf") => Ok(ArcEnd::NegInf),
        Some("+inf") => Ok(ArcEnd::PosInf),
        Some("inf") => Ok(ArcEnd::Inf),
        _ => Ok(ArcEnd::Finite(algebraic_from_json(v)?)),
    }
}

/// A cut point of the preimage computation and whether it maps into `S`.
struct Cut {
    point: IsolatingInterval,
    in_set: bool,
}

/// Real `z` with `f(z) = e`, for a finite algebraic `e`.
pub(crate) fn solutions_of(f: &RationalMap, e: &IsolatingInterval) -> Result<Vec<IsolatingInterval>> {
    let w = e.witness();
    let n = w.deg();
    let r = hom_compose_with(w, n, f.p(), &powers(f.q(), n));
    if r.is_zero() {
        return Err(Error::Precondition("map is constant".into()));
    }
    let roots = isolate_real_roots(&r)?;
    if n == 1 {
        return Ok(roots);
    }
    let mut out = Vec::new();
    for z in roots {
        if image_equals(f.p(), f.q(), &z, e)? {
            out.push(z);
        }
    }
    Ok(out)
}

/// Makes the isolating intervals of two distinct numbers `a < b` disjoint.
fn separate(a: &mut IsolatingInterval, b: &mut IsolatingInterval) -> Result<()> {
    for _ in 0..SEPARATE_LIMIT {
        if a.upper() < b.lower() {
            return Ok(());
        }
        a.bisect();
        b.bisect();
    }
    Err(Error::Budget("cut points could not be separated".into()))
}

/// The exact preimage `f⁻¹(S)`.
///
/// Cut points are the real solutions of `f(z) = e` for each finite endpoint
/// `e` of `S` and the real poles of `f`. Between consecutive cut points
/// membership is constant and is decided at one exact dyadic sample; each cut
/// point is decided by where it maps.
pub fn preimage(f: &RationalMap, s: &CircleSet) -> Result<CircleSet> {
    if f.degree() == 0 {
        return Err(Error::Precondition("preimage needs a nonconstant map".into()));
    }
    if s.is_empty() || s.is_full() {
        return Ok(s.clone());
    }
    let mut cuts = Vec::new();
    for e in s.finite_endpoints() {
        for z in solutions_of(f, &e)? {
            cuts.push(Cut { point: z, in_set: true });
        }
    }
    if !f.q().is_constant() {
        let poles_in = s.contains_infinity();
        for z in isolate_real_roots(f.q())? {
            cuts.push(Cut {
                point: z,
                in_set: poles_in,
            });
        }
    }
    try_sort_by(&mut cuts, |a, b| compare(&a.point, &b.point))?;
    let n = cuts.len();
    for i in 1..n {
        let (left, right) = cuts.split_at_mut(i);
        separate(&mut left[i - 1].point, &mut right[0].point)?;
    }

    // Gap i lies between cut i−1 and cut i.
    let one = Rational::one();
    let samples: Vec<Rational> = if n == 0 {
        vec![Rational::zero()]
    } else {
        let mut v = Vec::with_capacity(n + 1);
        v.push(cuts[0].point.lower().floor() - &one);
        for w in cuts.windows(2) {
            v.push(dyadic_between(w[0].point.upper(), w[1].point.lower()));
        }
        v.push(cuts[n - 1].point.upper().ceil() + &one);
        v
    };
    let gap_in: Vec<bool> = samples.iter().map(|x| s.contains_point(&f.eval_rational(x))).collect();

    let mut pieces = Vec::new();
    let mut start = gap_in[0].then_some(Endpoint::NegInf);
    for (i, cut) in cuts.into_iter().enumerate() {
        let mut p = match cut.point.as_rational() {
            Some(x) => IsolatingInterval::rational(x.clone()),
            None => cut.point,
        };
        p.refine_to_bits(CUT_POINT_BITS);
        let right_in = gap_in[i + 1];
        match start.take() {
            Some(st) if !right_in => pieces.push((st, Endpoint::Finite(p))),
            Some(st) => start = Some(st),
            None if right_in => start = Some(Endpoint::Finite(p)),
            None if cut.in_set => pieces.push((Endpoint::Finite(p.clone()), Endpoint::Finite(p))),
            None => {}
        }
    }
    if let Some(st) = start {
        pieces.push((st, Endpoint::PosInf));
    }
    let infinity_point = s.contains_point(&f.value_at_infinity());
    CircleSet::normalize(pieces, infinity_point)
}

/// `f⁻¹(S) ⊆ S`.
pub fn is_backward_invariant(f: &RationalMap, s: &CircleSet) -> Result<bool> {
    preimage(f, s)?.is_subset(s)
}

/// The first real fixed point of `f` lying in `S` whose multiplier is
/// repelling or indifferent. Fixed points on the boundary of `S` are tried
/// first, then the rest; within each group finite points go in increasing
/// order and ∞ last.
pub fn contains_nonattracting_fixed_point(
    f: &RationalMap,
    s: &CircleSet,
    budget: &Budget,
) -> Result<Option<(IsolatingInterval, MultiplierClass)>> {
    let fp = fixed_point_data(f, 1, budget)?;
    let mut points = fp.roots.clone();
    if fp.infinity_multiplicity > 0 {
        points.push(IsolatingInterval::infinity(fp.infinity_multiplicity));
    }
    let mut boundary = Vec::new();
    let mut interior = Vec::new();
    for x in points {
        if !s.contains(&x)? {
            continue;
        }
        if s.is_boundary_point(&x)? {
            boundary.push(x);
        } else {
            interior.push(x);
        }
    }
    for x in boundary.into_iter().chain(interior) {
        let class = classify_multiplier_of_iterate(f, &fp.iterate, &x, 1, budget)?;
        if !class.is_attracting() {
            return Ok(Some((x, class)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn iv(a: i64, b: i64) -> CircleSet {
        CircleSet::interval(q(a, 1), q(b, 1)).unwrap()
    }

    fn map(text: &str) -> RationalMap {
        RationalMap::parse(text).unwrap()
    }

    #[test]
    fn normalization() {
        let s = CircleSet::parse(r#"[["0","1"],["1","2"]]"#).unwrap();
        assert_eq!(s, iv(0, 2));
        assert_eq!(iv(-1, 1).to_json(), json!([["-1", "1"]]));
        let s = CircleSet::parse(r#"[["0","1"],["2","-3"]]"#).unwrap();
        assert_eq!(s.to_json(), json!([["0", "1"], ["2", "-3"]]));
        assert!(s.contains_infinity());
        assert!(s.contains_rational(&q(-5, 1)) && !s.contains_rational(&q(3, 2)));
        let s = CircleSet::parse(r#"[["inf","inf"],["3","+inf"]]"#).unwrap();
        assert_eq!(s.to_json(), json!([["3", "+inf"]]));
        let s = CircleSet::parse(r#"[["inf","inf"]]"#).unwrap();
        assert_eq!(s.to_json(), json!([["inf", "inf"]]));
        assert!(CircleSet::parse(r#"[["-inf","+inf"]]"#).unwrap().is_full());
    }

    #[test]
    fn chebyshev_square_preimages() {
        let f = map("-1,0,2");
        let s = iv(-1, 1);
        let pre = preimage(&f, &s).unwrap();
        assert_eq!(pre, s);
        assert!(is_backward_invariant(&f, &s).unwrap());

        let s = iv(0, 1);
        let pre = preimage(&f, &s).unwrap();
        let arcs = pre.arcs();
        assert_eq!(arcs.len(), 2);
        // [−1, −√½] ∪ [√½, 1]
        let half = q(1, 2);
        match (&arcs[0], &arcs[1]) {
            ((ArcEnd::Finite(a), ArcEnd::Finite(b)), (ArcEnd::Finite(c), ArcEnd::Finite(d))) => {
                assert_eq!(a.as_rational(), Some(&q(-1, 1)));
                assert_eq!(d.as_rational(), Some(&q(1, 1)));
                for x in [b, c] {
                    assert!(x.width() <= q(1, 1 << 20));
                    assert!((x.lower() * x.lower() < half) != (x.upper() * x.upper() < half));
                    assert_eq!(*x.witness().as_ref(), IntPoly::from_i64s(&[-1, 0, 2]));
                }
            }
            _ => panic!("unexpected arcs {arcs:?}"),
        }
        assert!(!is_backward_invariant(&f, &s).unwrap());
    }

    #[test]
    fn full_circle_is_fixed() {
        let f = map("-1,0,1 | 0,1");
        assert!(preimage(&f, &CircleSet::full()).unwrap().is_full());
        assert!(is_backward_invariant(&map("3,1,4,1"), &CircleSet::full()).unwrap());
    }

    #[test]
    fn poles_and_infinity() {
        // f = 1/z maps [1, 2] back to [1/2, 1] and [2, −2] (through ∞) to [−1/2, 1/2].
        let f = map("1 | 0,1");
        let pre = preimage(&f, &iv(1, 2)).unwrap();
        assert_eq!(pre, CircleSet::interval(q(1, 2), q(1, 1)).unwrap());
        let s = CircleSet::parse(r#"[["2","-2"]]"#).unwrap();
        let pre = preimage(&f, &s).unwrap();
        assert_eq!(pre, CircleSet::interval(q(-1, 2), q(1, 2)).unwrap());
        let pre = preimage(&f, &CircleSet::parse(r#"[["inf","inf"]]"#).unwrap()).unwrap();
        assert_eq!(pre.to_json(), json!([["0", "0"]]));
        let pre = preimage(&f, &CircleSet::parse(r#"[["0","0"]]"#).unwrap()).unwrap();
        assert_eq!(pre.to_json(), json!([["inf", "inf"]]));
    }

    #[test]
    fn nonattracting_fixed_points() {
        let b = Budget::default();
        let (x, c) = contains_nonattracting_fixed_point(&map("-1,0,2"), &iv(-1, 1), &b)
            .unwrap()
            .unwrap();
        assert_eq!(x.as_rational(), Some(&q(1, 1)));
        assert_eq!(c.lambda_bounds, Some((q(4, 1), q(4, 1))));
        let (x, c) = contains_nonattracting_fixed_point(&map("-1,0,2 | 0,1"), &iv(-2, 2), &b)
            .unwrap()
            .unwrap();
        assert_eq!(x.as_rational(), Some(&q(-1, 1)));
        assert!(c.is_repelling());
        assert!(contains_nonattracting_fixed_point(&map("-1,0,2"), &iv(5, 6), &b)
            .unwrap()
            .is_none());
    }

    #[test]
    fn json_roundtrip_with_algebraic_endpoints() {
        let f = map("-1,0,2");
        let pre = preimage(&f, &iv(0, 1)).unwrap();
        let back = CircleSet::from_json(&pre.to_json()).unwrap();
        assert!(back.set_eq(&pre).unwrap());
    }
}
