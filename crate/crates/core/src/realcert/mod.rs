//! Certificates that a real rational map has only real periodic points, or
//! that it does not.
//!
//! Each certifier returns a [`Certificate`] recording the verdict, the rule
//! that produced it, and the exact objects that justify it. Failed hypotheses
//! give `inconclusive`, never a guess.

use std::cmp::Ordering;
use std::fmt;

use num_traits::One;
use serde_json::{json, Map, Value};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::exactpoly::{
    compare, image_cmp, isolate_real_roots, poly_value, squarefree_part, Bound, IntPoly, IsolatingInterval,
    SturmSequence,
};
use crate::invariants::{
    algebraic_json, contains_nonattracting_fixed_point, is_backward_invariant, solutions_of, CircleSet,
};
use crate::ratmap::{
    classify_multiplier_of_iterate, fixed_point_data, fixed_point_data_of_iterate, FixedPointData, MultiplierClass,
    RationalMap,
};
use crate::Rational;

/// Enclosures written into evidence are refined to this many bits.
pub const EVIDENCE_BITS: u32 = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    CertifiedInRd,
    CertifiedNotInRd,
    BoundaryIndifferent,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::CertifiedInRd => "certified_in_Rd",
            Verdict::CertifiedNotInRd => "certified_not_in_Rd",
            Verdict::BoundaryIndifferent => "boundary_indifferent",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Criterion {
    ThmMain2,
    ThmRf,
    CorOdd,
    CorEven,
    Scan,
}

impl Criterion {
    pub fn as_str(self) -> &'static str {
        match self {
            Criterion::ThmMain2 => "thm_main_2",
            Criterion::ThmRf => "thm_rf",
            Criterion::CorOdd => "cor_odd",
            Criterion::CorEven => "cor_even",
            Criterion::Scan => "scan",
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The objects behind a verdict. Absent fields are omitted from JSON.
#[derive(Clone, Debug, Default)]
pub struct Evidence {
    /// The backward-invariant set.
    pub s: Option<CircleSet>,
    /// A nonrepelling real cycle of length 1 or 2 and its multiplier.
    pub cycle: Option<(Vec<IsolatingInterval>, MultiplierClass)>,
    /// A nonattracting (repelling or indifferent) fixed point and its multiplier.
    pub nonattracting_fixed_point: Option<(IsolatingInterval, MultiplierClass)>,
    /// An indifferent fixed point, for boundary verdicts.
    pub indifferent_fixed_point: Option<(IsolatingInterval, MultiplierClass)>,
    pub x0: Option<IsolatingInterval>,
    pub x1: Option<IsolatingInterval>,
    /// Zeros of `f′`, increasing.
    pub critical_points: Vec<IsolatingInterval>,
    /// `f` at each critical point.
    pub critical_values: Vec<IsolatingInterval>,
    /// Least `k` for which `F_k` has a nonreal root.
    pub first_nonreal_k: Option<u32>,
    /// The hypothesis that failed, for inconclusive verdicts.
    pub failed_clause: Option<String>,
    /// Resource limit that stopped a scan.
    pub budget_exhausted: Option<String>,
}

#[derive(Clone, Debug)]
pub struct Certificate {
    pub subject: RationalMap,
    pub verdict: Verdict,
    pub criterion: Criterion,
    pub evidence: Evidence,
    pub k_scanned: u32,
}

fn refined_json(x: &IsolatingInterval) -> Value {
    let mut x = x.clone();
    x.refine_to_bits(EVIDENCE_BITS);
    algebraic_json(&x)
}

/// `{"verdict": ..., "lambda_bounds": [lo, hi]}`.
pub fn multiplier_json(c: &MultiplierClass) -> Value {
    let mut m = Map::new();
    m.insert("verdict".into(), json!(c.verdict.as_str()));
    if let Some((lo, hi)) = &c.lambda_bounds {
        m.insert("lambda_bounds".into(), json!([lo.to_string(), hi.to_string()]));
    }
    Value::Object(m)
}

impl Evidence {
    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        if let Some(s) = &self.s {
            let mut s = s.clone();
            s.refine_endpoints(EVIDENCE_BITS);
            m.insert("S".into(), s.to_json());
        }
        if let Some((pts, c)) = &self.cycle {
            m.insert("cycle".into(), Value::Array(pts.iter().map(refined_json).collect()));
            m.insert("cycle_multiplier".into(), multiplier_json(c));
        }
        if let Some((x, c)) = &self.nonattracting_fixed_point {
            m.insert("nonattracting_fixed_point".into(), refined_json(x));
            m.insert("nonattracting_multiplier".into(), multiplier_json(c));
        }
        if let Some((x, c)) = &self.indifferent_fixed_point {
            m.insert("indifferent_fixed_point".into(), refined_json(x));
            m.insert("indifferent_multiplier".into(), multiplier_json(c));
        }
        if let Some(x) = &self.x0 {
            m.insert("x0".into(), refined_json(x));
        }
        if let Some(x) = &self.x1 {
            m.insert("x1".into(), refined_json(x));
        }
        if !self.critical_points.is_empty() {
            let v = self.critical_points.iter().map(refined_json).collect();
            m.insert("critical_points".into(), Value::Array(v));
        }
        if !self.critical_values.is_empty() {
            let v = self.critical_values.iter().map(refined_json).collect();
            m.insert("critical_values".into(), Value::Array(v));
        }
        if let Some(k) = self.first_nonreal_k {
            m.insert("first_nonreal_k".into(), json!(k));
        }
        if let Some(c) = &self.failed_clause {
            m.insert("failed_clause".into(), json!(c));
        }
        if let Some(c) = &self.budget_exhausted {
            m.insert("budget_exhausted".into(), json!(c));
        }
        Value::Object(m)
    }
}

impl Certificate {
    fn new(f: &RationalMap, verdict: Verdict, criterion: Criterion, k_scanned: u32) -> Self {
        Certificate {
            subject: f.clone(),
            verdict,
            criterion,
            evidence: Evidence::default(),
            k_scanned,
        }
    }

    fn inconclusive(f: &RationalMap, criterion: Criterion, clause: &str) -> Self {
        let mut c = Certificate::new(f, Verdict::Inconclusive, criterion, 0);
        c.evidence.failed_clause = Some(clause.to_string());
        c
    }

    pub fn to_json(&self) -> Value {
        json!({
            "subject": self.subject.to_text(),
            "verdict": self.verdict.as_str(),
            "criterion": self.criterion.as_str(),
            "k_scanned": self.k_scanned,
            "evidence": self.evidence.to_json(),
        })
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = serde_json::to_string_pretty(&self.to_json()).map_err(|_| fmt::Error)?;
        f.write_str(&text)
    }
}

/// Every complex root of `a` is real.
pub fn all_roots_real(a: &IntPoly) -> Result<bool> {
    if a.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let s = squarefree_part(a)?;
    if s.deg() == 0 {
        return Ok(true);
    }
    let seq = SturmSequence::new(&s)?;
    Ok(seq.count(&Bound::NegInf, &Bound::PosInf) == s.deg())
}

/// Fixed-point data of `f, f², f³, …`, each iterate built from the previous
/// one. Yields `(k, result)`; after the first error nothing more is yielded.
pub struct IterateScan<'a> {
    f: &'a RationalMap,
    budget: &'a Budget,
    k: u32,
    max_k: u32,
    current: Option<RationalMap>,
    stopped: bool,
}

impl<'a> IterateScan<'a> {
    pub fn new(f: &'a RationalMap, max_k: u32, budget: &'a Budget) -> Self {
        IterateScan {
            f,
            budget,
            k: 0,
            max_k,
            current: None,
            stopped: false,
        }
    }

    fn step(&mut self) -> Result<FixedPointData> {
        let k = self.k;
        if self.f.degree() < 2 {
            return Err(Error::Precondition("scan needs degree at least 2".into()));
        }
        self.budget.iterate_degree(self.f.degree() as u64, k)?;
        let g = match self.current.take() {
            None => self.f.clone(),
            Some(prev) => self.f.compose(&prev)?,
        };
        self.budget.check_bits(g.max_coeff_bits())?;
        let fp = fixed_point_data_of_iterate(self.f, &g, k, self.budget)?;
        self.current = Some(g);
        Ok(fp)
    }
}

impl Iterator for IterateScan<'_> {
    type Item = (u32, Result<FixedPointData>);

    fn next(&mut self) -> Option<Self::Item> {
        if self.stopped || self.k >= self.max_k {
            return None;
        }
        self.k += 1;
        let r = self.step();
        if r.is_err() {
            self.stopped = true;
        }
        Some((self.k, r))
    }
}

/// Checks `F_1, …, F_K` for nonreal roots. A nonreal root refutes membership;
/// otherwise the scan is inconclusive. A resource limit ends the scan early
/// and is recorded in the evidence.
pub fn scan_real_periodic(f: &RationalMap, max_k: u32, budget: &Budget) -> Result<Certificate> {
    if f.degree() < 2 {
        return Err(Error::Precondition("scan needs degree at least 2".into()));
    }
    let mut scanned = 0;
    for (k, r) in IterateScan::new(f, max_k, budget) {
        match r {
            Ok(fp) if !fp.all_real => {
                let mut c = Certificate::new(f, Verdict::CertifiedNotInRd, Criterion::Scan, k);
                c.evidence.first_nonreal_k = Some(k);
                return Ok(c);
            }
            Ok(_) => scanned = k,
            Err(Error::Budget(msg)) => {
                let mut c = Certificate::new(f, Verdict::Inconclusive, Criterion::Scan, scanned);
                c.evidence.budget_exhausted = Some(msg);
                return Ok(c);
            }
            Err(e) => return Err(e),
        }
    }
    Ok(Certificate::new(f, Verdict::Inconclusive, Criterion::Scan, scanned))
}

/// Real roots of `a` if they are all real and simple.
fn real_simple_roots(a: &IntPoly) -> Result<Option<Vec<IsolatingInterval>>> {
    if a.deg() == 0 {
        return Ok(Some(Vec::new()));
    }
    let roots = isolate_real_roots(a)?;
    if roots.len() == a.deg() {
        Ok(Some(roots))
    } else {
        Ok(None)
    }
}

/// `f = p/q` with `p` and `q` having only real simple zeros that strictly
/// interlace, and `|deg p − deg q| ≤ 1`.
pub fn is_real_fibered(f: &RationalMap) -> Result<bool> {
    let (p, q) = (f.p(), f.q());
    if p.is_zero() || q.is_zero() || p.deg().abs_diff(q.deg()) > 1 || f.degree() == 0 {
        return Ok(false);
    }
    let (Some(rp), Some(rq)) = (real_simple_roots(p)?, real_simple_roots(q)?) else {
        return Ok(false);
    };
    let mut merged: Vec<(IsolatingInterval, bool)> = rp
        .into_iter()
        .map(|r| (r, true))
        .chain(rq.into_iter().map(|r| (r, false)))
        .collect();
    let mut err = None;
    merged.sort_by(|a, b| {
        compare(&a.0, &b.0).unwrap_or_else(|e| {
            err.get_or_insert(e);
            Ordering::Equal
        })
    });
    if let Some(e) = err {
        return Err(e);
    }
    Ok(merged.windows(2).all(|w| w[0].1 != w[1].1))
}

/// Real fixed points of `f` in order (∞ last) with their multipliers.
fn classified_fixed_points(f: &RationalMap, budget: &Budget) -> Result<Vec<(IsolatingInterval, MultiplierClass)>> {
    let fp = fixed_point_data(f, 1, budget)?;
    let mut points = fp.roots.clone();
    if fp.infinity_multiplicity > 0 {
        points.push(IsolatingInterval::infinity(fp.infinity_multiplicity));
    }
    points
        .into_iter()
        .map(|x| {
            let c = classify_multiplier_of_iterate(f, &fp.iterate, &x, 1, budget)?;
            Ok((x, c))
        })
        .collect()
}

/// The `f²` test for real fibered maps: `f` has only real periodic points
/// exactly when `F_2` has only real roots, and lies on the boundary of that
/// set when it has an indifferent fixed point.
pub fn certify_rf(f: &RationalMap, budget: &Budget) -> Result<Certificate> {
    if f.degree() < 2 {
        return Err(Error::Precondition("certify_rf needs degree at least 2".into()));
    }
    if !is_real_fibered(f)? {
        return Err(Error::Precondition("not real fibered".into()));
    }
    let fp2 = fixed_point_data(f, 2, budget)?;
    if !fp2.all_real {
        let mut c = Certificate::new(f, Verdict::CertifiedNotInRd, Criterion::ThmRf, 2);
        c.evidence.first_nonreal_k = Some(2);
        return Ok(c);
    }
    let fixed = classified_fixed_points(f, budget)?;
    if let Some((x, class)) = fixed.iter().find(|(_, c)| c.is_indifferent()) {
        let mut c = Certificate::new(f, Verdict::BoundaryIndifferent, Criterion::ThmRf, 2);
        c.evidence.indifferent_fixed_point = Some((x.clone(), class.clone()));
        return Ok(c);
    }
    match fixed.into_iter().find(|(_, c)| c.is_attracting()) {
        Some((x, class)) => {
            let mut c = Certificate::new(f, Verdict::CertifiedInRd, Criterion::ThmRf, 2);
            c.evidence.cycle = Some((vec![x], class));
            Ok(c)
        }
        None => {
            let mut c = Certificate::inconclusive(f, Criterion::ThmRf, "no nonrepelling real fixed point");
            c.k_scanned = 2;
            Ok(c)
        }
    }
}

/// Number of real fixed points of `f` (finite or ∞) whose multiplier is
/// exactly `±1`.
pub fn indifferent_fixed_point_count(f: &RationalMap, budget: &Budget) -> Result<usize> {
    Ok(classified_fixed_points(f, budget)?
        .iter()
        .filter(|(_, c)| c.is_indifferent())
        .count())
}

/// The first nonrepelling real cycle of length at most 2: fixed points in
/// increasing order with ∞ last, then 2-cycles ordered by their smaller
/// element (a cycle through ∞ last).
pub fn find_nonrepelling_short_cycle(
    f: &RationalMap,
    budget: &Budget,
) -> Result<Option<(Vec<IsolatingInterval>, MultiplierClass)>> {
    if f.degree() < 2 {
        return Err(Error::Precondition("cycle search needs degree at least 2".into()));
    }
    for (x, c) in classified_fixed_points(f, budget)? {
        if c.is_nonrepelling() {
            return Ok(Some((vec![x], c)));
        }
    }
    let fp1 = fixed_point_data(f, 1, budget)?;
    let fp2 = fixed_point_data(f, 2, budget)?;
    let mut points = Vec::new();
    for z in &fp2.roots {
        if !z.is_root_of(&fp1.f_poly)? {
            points.push(z.clone());
        }
    }
    let infinity_in_cycle = fp2.infinity_multiplicity > 0 && fp1.infinity_multiplicity == 0;
    let (p, q) = (f.p(), f.q());
    let mut used = vec![false; points.len()];
    for i in 0..points.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let z = &points[i];
        let partner = if infinity_in_cycle && z.is_root_of(q)? {
            Some(IsolatingInterval::infinity(1))
        } else {
            let mut found = None;
            for j in i + 1..points.len() {
                if !used[j] && image_cmp(p, q, z, &points[j])? == Ordering::Equal {
                    used[j] = true;
                    found = Some(points[j].clone());
                    break;
                }
            }
            found
        };
        let Some(w) = partner else { continue };
        let c = classify_multiplier_of_iterate(f, &fp2.iterate, z, 2, budget)?;
        if c.is_nonrepelling() {
            return Ok(Some((vec![z.clone(), w], c)));
        }
    }
    Ok(None)
}

/// Hypothesis checks shared by the polynomial criteria. The map must be a
/// polynomial of the right degree parity with positive leading coefficient,
/// and its critical points must be real and simple. Returns those critical
/// points, or an inconclusive certificate naming the failed clause.
fn polynomial_setup(
    f: &RationalMap,
    odd: bool,
    criterion: Criterion,
) -> Result<std::result::Result<Vec<IsolatingInterval>, Certificate>> {
    let d = f.degree();
    let parity_ok = if odd {
        !d.is_multiple_of(2) && d >= 3
    } else {
        d.is_multiple_of(2) && d >= 2
    };
    if !f.is_polynomial() || !parity_ok || f.leading_sign() != Ordering::Greater {
        let what = if odd { "odd degree ≥ 3" } else { "even degree ≥ 2" };
        return Err(Error::Precondition(format!(
            "needs a polynomial of {what} with positive leading coefficient"
        )));
    }
    let dp = f.p().derivative();
    let crit = isolate_real_roots(&dp)?;
    let count: usize = crit.iter().map(|c| c.multiplicity() as usize).sum();
    if count != dp.deg() {
        return Ok(Err(Certificate::inconclusive(
            f,
            criterion,
            "critical zeros not all real",
        )));
    }
    if crit.len() != dp.deg() {
        return Ok(Err(Certificate::inconclusive(
            f,
            criterion,
            "critical zeros not simple",
        )));
    }
    Ok(Ok(crit))
}

fn critical_values(f: &RationalMap, crit: &[IsolatingInterval]) -> Result<Vec<IsolatingInterval>> {
    let den = f.q().leading().expect("polynomial map").clone();
    crit.iter().map(|z| poly_value(f.p(), &den, z)).collect()
}

/// `f(z) ≤ y` (`upper`: `f(z) ≥ y`), exactly.
fn value_bound(f: &RationalMap, z: &IsolatingInterval, y: &IsolatingInterval, upper: bool) -> Result<bool> {
    let o = image_cmp(f.p(), f.q(), z, y)?;
    Ok(if upper {
        o != Ordering::Less
    } else {
        o != Ordering::Greater
    })
}

/// The odd-degree polynomial criterion: real simple critical points
/// `z₁ < … < z₂ₘ`, extreme real fixed points `x₀ < z₁` and `x₁ > z₂ₘ` with
/// `f(z₂ᵢ) ≤ x₀` and `f(z₂ᵢ₋₁) ≥ x₁`; `[x₀, x₁]` is also checked to be
/// backward invariant directly.
pub fn check_cor_odd(f: &RationalMap, budget: &Budget) -> Result<Certificate> {
    let crit = match polynomial_setup(f, true, Criterion::CorOdd)? {
        Ok(c) => c,
        Err(cert) => return Ok(cert),
    };
    let fp = fixed_point_data(f, 1, budget)?;
    let (Some(x0), Some(x1)) = (fp.roots.first().cloned(), fp.roots.last().cloned()) else {
        return Ok(Certificate::inconclusive(f, Criterion::CorOdd, "no real fixed points"));
    };
    let m2 = crit.len();
    if compare(&x0, &crit[0])? != Ordering::Less {
        return Ok(Certificate::inconclusive(f, Criterion::CorOdd, "x0 < z1 fails"));
    }
    if compare(&x1, &crit[m2 - 1])? != Ordering::Greater {
        return Ok(Certificate::inconclusive(f, Criterion::CorOdd, "x1 > z_2m fails"));
    }
    for (i, z) in crit.iter().enumerate() {
        // 1-based index i + 1: even indices must map to ≤ x₀, odd to ≥ x₁.
        let ok = if (i + 1) % 2 == 0 {
            value_bound(f, z, &x0, false)?
        } else {
            value_bound(f, z, &x1, true)?
        };
        if !ok {
            let clause = if (i + 1) % 2 == 0 {
                format!("f(z_{}) <= x0 fails", i + 1)
            } else {
                format!("f(z_{}) >= x1 fails", i + 1)
            };
            return Ok(Certificate::inconclusive(f, Criterion::CorOdd, &clause));
        }
    }
    let s = CircleSet::algebraic_interval(x0.clone(), x1.clone())?;
    if !is_backward_invariant(f, &s)? {
        return Ok(Certificate::inconclusive(
            f,
            Criterion::CorOdd,
            "f^-1([x0,x1]) not contained in [x0,x1]",
        ));
    }
    let mut c = Certificate::new(f, Verdict::CertifiedInRd, Criterion::CorOdd, 0);
    c.evidence.critical_values = critical_values(f, &crit)?;
    c.evidence.critical_points = crit;
    c.evidence.x0 = Some(x0);
    c.evidence.x1 = Some(x1);
    c.evidence.s = Some(s);
    Ok(c)
}

/// Candidates for `x₀` in the even-degree criterion, in the order tried: the
/// leftmost real solution of `f(z) = x₁`, then the largest critical value at
/// an odd-index critical point, then rationals below it stepping down
/// geometrically to the root bound.
fn even_x0_candidates(
    f: &RationalMap,
    x1: &IsolatingInterval,
    odd_values: &[IsolatingInterval],
) -> Result<Vec<IsolatingInterval>> {
    let mut out = Vec::new();
    if let Some(first) = solutions_of(f, x1)?.into_iter().next() {
        out.push(first);
    }
    let mut top: Option<IsolatingInterval> = None;
    for v in odd_values {
        if top
            .as_ref()
            .map_or(Ok(true), |t| compare(v, t).map(|o| o == Ordering::Greater))?
        {
            top = Some(v.clone());
        }
    }
    if let Some(top) = top {
        let start = top.lower().floor();
        out.push(top);
        let bound = crate::exactpoly::cauchy_bound(&f.fixed_point_polynomial());
        let mut step = Rational::one();
        loop {
            let x = &start - &step;
            if x < -&bound {
                break;
            }
            out.push(IsolatingInterval::rational(x));
            step *= Rational::from_integer(2.into());
        }
    }
    Ok(out)
}

/// The even-degree polynomial criterion: real simple critical points
/// `z₁ < … < z₂ₘ₋₁`, a point `x₀ < z₁` with `f(z₂ᵢ₋₁) ≤ x₀`, and a fixed point
/// `x₁ > z₂ₘ₋₁` (the largest real one) with `f(z₂ᵢ) ≥ x₁`; `[x₀, x₁]` is also
/// checked to be backward invariant directly.
pub fn check_cor_even(f: &RationalMap, budget: &Budget) -> Result<Certificate> {
    let crit = match polynomial_setup(f, false, Criterion::CorEven)? {
        Ok(c) => c,
        Err(cert) => return Ok(cert),
    };
    let fp = fixed_point_data(f, 1, budget)?;
    let Some(x1) = fp.roots.last().cloned() else {
        return Ok(Certificate::inconclusive(f, Criterion::CorEven, "no real fixed points"));
    };
    let last = crit.len() - 1;
    if compare(&x1, &crit[last])? != Ordering::Greater {
        return Ok(Certificate::inconclusive(f, Criterion::CorEven, "x1 > z_(2m-1) fails"));
    }
    for (i, z) in crit.iter().enumerate() {
        if (i + 1) % 2 == 0 && !value_bound(f, z, &x1, true)? {
            let clause = format!("f(z_{}) >= x1 fails", i + 1);
            return Ok(Certificate::inconclusive(f, Criterion::CorEven, &clause));
        }
    }
    let values = critical_values(f, &crit)?;
    let odd_values: Vec<IsolatingInterval> = values.iter().step_by(2).cloned().collect();
    let mut clause = String::from("no admissible x0");
    for x0 in even_x0_candidates(f, &x1, &odd_values)? {
        if compare(&x0, &crit[0])? != Ordering::Less {
            clause = "x0 < z1 fails".into();
            continue;
        }
        let mut ok = true;
        for z in crit.iter().step_by(2) {
            if !value_bound(f, z, &x0, false)? {
                ok = false;
                break;
            }
        }
        if !ok {
            clause = "f(z_(2i-1)) <= x0 fails".into();
            continue;
        }
        let s = CircleSet::algebraic_interval(x0.clone(), x1.clone())?;
        if !is_backward_invariant(f, &s)? {
            clause = "f^-1([x0,x1]) not contained in [x0,x1]".into();
            continue;
        }
        let mut c = Certificate::new(f, Verdict::CertifiedInRd, Criterion::CorEven, 0);
        c.evidence.critical_points = crit;
        c.evidence.critical_values = values;
        c.evidence.x0 = Some(x0);
        c.evidence.x1 = Some(x1);
        c.evidence.s = Some(s);
        return Ok(c);
    }
    Ok(Certificate::inconclusive(f, Criterion::CorEven, &clause))
}

/// The general criterion: a nonrepelling real cycle of length ≤ 2, a
/// nonattracting fixed point in `S`, and `f⁻¹(S) ⊆ S`.
pub fn certify_main(f: &RationalMap, s: &CircleSet, budget: &Budget) -> Result<Certificate> {
    if f.degree() < 2 {
        return Err(Error::Precondition("certify_main needs degree at least 2".into()));
    }
    if s.is_empty() {
        return Err(Error::Precondition("S must be nonempty".into()));
    }
    let Some(cycle) = find_nonrepelling_short_cycle(f, budget)? else {
        return Ok(Certificate::inconclusive(
            f,
            Criterion::ThmMain2,
            "no nonrepelling real cycle of length at most 2",
        ));
    };
    let Some(fixed) = contains_nonattracting_fixed_point(f, s, budget)? else {
        let mut c = Certificate::inconclusive(f, Criterion::ThmMain2, "S contains no nonattracting fixed point");
        c.evidence.cycle = Some(cycle);
        return Ok(c);
    };
    if !is_backward_invariant(f, s)? {
        let mut c = Certificate::inconclusive(f, Criterion::ThmMain2, "f^-1(S) not contained in S");
        c.evidence.cycle = Some(cycle);
        c.evidence.nonattracting_fixed_point = Some(fixed);
        return Ok(c);
    }
    let mut c = Certificate::new(f, Verdict::CertifiedInRd, Criterion::ThmMain2, 0);
    c.evidence.s = Some(s.clone());
    c.evidence.cycle = Some(cycle);
    c.evidence.nonattracting_fixed_point = Some(fixed);
    Ok(c)
}

/// Picks a certifier: `certify_main` when `S` is given; the `f²` test for
/// real fibered maps; the polynomial corollaries for polynomials with
/// positive leading coefficient; and a scan up to `max_k` when those are
/// inconclusive or do not apply.
pub fn certify_auto(f: &RationalMap, s: Option<&CircleSet>, max_k: u32, budget: &Budget) -> Result<Certificate> {
    if let Some(s) = s {
        return certify_main(f, s, budget);
    }
    if f.degree() >= 2 && is_real_fibered(f)? {
        return certify_rf(f, budget);
    }
    let d = f.degree();
    if f.is_polynomial() && d >= 2 && f.leading_sign() == Ordering::Greater {
        let c = if d % 2 == 1 {
            check_cor_odd(f, budget)?
        } else {
            check_cor_even(f, budget)?
        };
        if c.verdict != Verdict::Inconclusive {
            return Ok(c);
        }
    }
    scan_real_periodic(f, max_k, budget)
}

/// Largest `k` with `dᵏ` within the degree budget (at least 1).
pub fn default_scan_k(d: usize, budget: &Budget) -> u32 {
    let mut k = 1;
    while budget.iterate_degree(d as u64, k + 1).is_ok() {
        k += 1;
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;

    fn map(text: &str) -> RationalMap {
        RationalMap::parse(text).unwrap()
    }

    fn b() -> Budget {
        Budget::default()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn all_roots_real_examples() {
        assert!(all_roots_real(&IntPoly::from_i64s(&[0, -1, 0, 1])).unwrap());
        assert!(!all_roots_real(&IntPoly::from_i64s(&[1, 0, 1])).unwrap());
        assert!(all_roots_real(&IntPoly::from_i64s(&[1, 0, -8, 0, 8])).unwrap());
        assert!(all_roots_real(&IntPoly::zero()).is_err());
    }

    #[test]
    fn scan_examples() {
        let c = scan_real_periodic(&map("-1,0,2"), 3, &b()).unwrap();
        assert_eq!((c.verdict, c.k_scanned), (Verdict::Inconclusive, 3));
        let c = scan_real_periodic(&map("1,0,1"), 1, &b()).unwrap();
        assert_eq!(c.verdict, Verdict::CertifiedNotInRd);
        assert_eq!(c.evidence.first_nonreal_k, Some(1));
        let c = scan_real_periodic(&map("-1/2,0,3/2"), 6, &b()).unwrap();
        assert_eq!(c.verdict, Verdict::CertifiedNotInRd);
        let c = scan_real_periodic(&map("-1,0,2"), 20, &b()).unwrap();
        assert_eq!(c.verdict, Verdict::Inconclusive);
        assert_eq!(c.k_scanned, 12);
        assert!(c.evidence.budget_exhausted.is_some());
    }

    #[test]
    fn real_fibered_examples() {
        assert!(is_real_fibered(&map("-1,0,2 | 0,1")).unwrap());
        assert!(is_real_fibered(&map("-1,0,1 | 0,1")).unwrap());
        assert!(!is_real_fibered(&map("-1,0,2")).unwrap());
        assert!(!is_real_fibered(&map("1,0,1 | 0,1")).unwrap());
        // zeros −2, 2 of p against 3 of q do not interlace
        assert!(!is_real_fibered(&map("-4,0,1 | -3,1")).unwrap());
    }

    #[test]
    fn rf_examples() {
        let c = certify_rf(&map("-1,0,2 | 0,1"), &b()).unwrap();
        assert_eq!(c.verdict, Verdict::CertifiedInRd);
        let (pts, class) = c.evidence.cycle.unwrap();
        assert!(pts[0].is_infinity());
        assert_eq!(class.lambda_bounds, Some((q(1, 2), q(1, 2))));
        let c = certify_rf(&map("-1,0,1 | 0,1"), &b()).unwrap();
        assert_eq!(c.verdict, Verdict::BoundaryIndifferent);
        assert!(c.evidence.indifferent_fixed_point.unwrap().0.is_infinity());
        assert!(certify_rf(&map("1,0,1 | 0,1"), &b()).is_err());
    }

    #[test]
    fn short_cycles() {
        let (pts, c) = find_nonrepelling_short_cycle(&map("-1,0,2"), &b()).unwrap().unwrap();
        assert!(pts[0].is_infinity() && c.is_attracting());
        let (pts, c) = find_nonrepelling_short_cycle(&map("-1,0,2 | 0,1"), &b())
            .unwrap()
            .unwrap();
        assert!(pts[0].is_infinity());
        assert_eq!(c.lambda_bounds, Some((q(1, 2), q(1, 2))));
        let (pts, _) = find_nonrepelling_short_cycle(&map("1,1,1"), &b()).unwrap().unwrap();
        assert!(pts[0].is_infinity());
    }

    #[test]
    fn cor_odd_examples() {
        let c = check_cor_odd(&map("0,-12,0,8"), &b()).unwrap();
        assert_eq!(c.verdict, Verdict::CertifiedInRd);
        let c = check_cor_odd(&map("0,-3,0,4"), &b()).unwrap();
        assert_eq!(c.verdict, Verdict::CertifiedInRd);
        assert_eq!(c.evidence.x0.unwrap().as_rational(), Some(&q(-1, 1)));
        assert_eq!(c.evidence.x1.unwrap().as_rational(), Some(&q(1, 1)));
        let c = check_cor_odd(&map("0,1,0,1"), &b()).unwrap();
        assert_eq!(c.verdict, Verdict::Inconclusive);
        assert_eq!(c.evidence.failed_clause.as_deref(), Some("critical zeros not all real"));
    }

    #[test]
    fn cor_even_examples() {
        let c = check_cor_even(&map("12,0,-48,0,16"), &b()).unwrap();
        assert_eq!(c.verdict, Verdict::CertifiedInRd);
        let vals: Vec<_> = c
            .evidence
            .critical_values
            .iter()
            .map(|v| v.as_rational().cloned())
            .collect();
        assert_eq!(vals, vec![Some(q(-24, 1)), Some(q(12, 1)), Some(q(-24, 1))]);
        let c = check_cor_even(&map("-1,0,2"), &b()).unwrap();
        assert_eq!(c.verdict, Verdict::CertifiedInRd);
        assert_eq!(c.evidence.x0.unwrap().as_rational(), Some(&q(-1, 1)));
        assert_eq!(c.evidence.x1.unwrap().as_rational(), Some(&q(1, 1)));
        let c = check_cor_even(&map("1,0,1"), &b()).unwrap();
        assert_eq!(c.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn main_criterion_examples() {
        let s = CircleSet::interval(q(-1, 1), q(1, 1)).unwrap();
        let c = certify_main(&map("-1,0,2"), &s, &b()).unwrap();
        assert_eq!(c.verdict, Verdict::CertifiedInRd);
        let (x, _) = c.evidence.nonattracting_fixed_point.clone().unwrap();
        assert_eq!(x.as_rational(), Some(&q(1, 1)));
        let s = CircleSet::interval(q(0, 1), q(2, 1)).unwrap();
        let c = certify_main(&map("1,0,1"), &s, &b()).unwrap();
        assert_eq!(c.verdict, Verdict::Inconclusive);
        assert_eq!(
            c.evidence.failed_clause.as_deref(),
            Some("S contains no nonattracting fixed point")
        );
        let odd = check_cor_odd(&map("0,-12,0,8"), &b()).unwrap();
        let s = odd.evidence.s.unwrap();
        let c = certify_main(&map("0,-12,0,8"), &s, &b()).unwrap();
        assert_eq!(c.verdict, Verdict::CertifiedInRd);
    }

    #[test]
    fn auto_dispatch() {
        let c = certify_auto(&map("0,-3,0,4"), None, 5, &b()).unwrap();
        assert_eq!((c.verdict, c.criterion), (Verdict::CertifiedInRd, Criterion::CorOdd));
        let c = certify_auto(&map("-1,0,1 | 0,1"), None, 5, &b()).unwrap();
        assert_eq!(c.verdict, Verdict::BoundaryIndifferent);
        let c = certify_auto(&map("1,0,1"), None, 5, &b()).unwrap();
        assert_eq!(
            (c.verdict, c.evidence.first_nonreal_k),
            (Verdict::CertifiedNotInRd, Some(1))
        );
        assert_eq!(default_scan_k(2, &b()), 12);
    }

    #[test]
    fn certificate_json_shape() {
        let c = certify_auto(&map("1,0,1"), None, 5, &b()).unwrap();
        let v = c.to_json();
        assert_eq!(v["subject"], "1,0,1");
        assert_eq!(v["verdict"], "certified_not_in_Rd");
        assert_eq!(v["criterion"], "scan");
        assert_eq!(v["k_scanned"], 1);
        assert_eq!(v["evidence"], json!({"first_nonreal_k": 1}));
    }
}
