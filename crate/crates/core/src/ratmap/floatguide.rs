//! Certificate that every root of a high-degree fixed-point polynomial is real.
//!
//! Floating point only proposes sample points. A double-precision sweep over
//! the laps of `f^k` locates approximate fixed points; a dyadic rational is
//! placed between consecutive ones; the sign of `F_k` at each sample is then
//! computed exactly by iterating `f` in homogeneous integer coordinates. If
//! `deg F_k + 1` samples alternate in sign, `F_k` has `deg F_k` simple real
//! roots, one between each pair of consecutive samples. Any failure simply
//! returns `None` and the caller falls back to exact Sturm isolation.

use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::RationalMap;
use crate::exactpoly::intpoly::bigint_to_f64;
use crate::exactpoly::{cauchy_bound, dyadic_between, IntPoly, IsolatingInterval};
use crate::Rational;

/// Real roots of a double-precision polynomial (constant term first), found
/// by bracketing between the real roots of its derivative.
pub(crate) fn real_roots_f64(c: &[f64]) -> Vec<f64> {
    let mut c = c.to_vec();
    while c.last() == Some(&0.0) {
        c.pop();
    }
    let n = c.len().saturating_sub(1);
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![-c[0] / c[1]];
    }
    let lead = c[n].abs();
    let bound = 1.0 + c[..n].iter().map(|x| x.abs() / lead).fold(0.0, f64::max);
    if !bound.is_finite() {
        return Vec::new();
    }
    let dc: Vec<f64> = c.iter().enumerate().skip(1).map(|(i, x)| x * i as f64).collect();
    let mut pts = vec![-bound];
    pts.extend(real_roots_f64(&dc).into_iter().filter(|x| x.abs() < bound));
    pts.push(bound);
    let eval = |x: f64| c.iter().rev().fold(0.0, |acc, a| acc * x + a);
    let mut roots = Vec::new();
    for w in pts.windows(2) {
        let (a, b) = (w[0], w[1]);
        if let Some(r) = bracket_root(&eval, a, b) {
            if roots.last() != Some(&r) {
                roots.push(r);
            }
        }
    }
    roots
}

/// A root in `[a, b]` if the function changes sign (or vanishes) there.
fn bracket_root(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> Option<f64> {
    let (mut a, mut b) = (a, b);
    let (mut fa, fb) = (f(a), f(b));
    if fa == 0.0 {
        return Some(a);
    }
    if fb == 0.0 {
        return Some(b);
    }
    if fa.signum() == fb.signum() || fa.is_nan() || fb.is_nan() {
        return None;
    }
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let fm = f(m);
        if fm == 0.0 {
            return Some(m);
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Some(0.5 * (a + b))
}

/// `f` in double precision, iterated in normalized homogeneous coordinates.
struct FloatMap {
    p: Vec<f64>,
    q: Vec<f64>,
    d: usize,
}

impl FloatMap {
    fn new(f: &RationalMap) -> Option<Self> {
        let p = f.p().to_f64_coeffs();
        let q = f.q().to_f64_coeffs();
        if p.iter().chain(&q).any(|x| !x.is_finite()) {
            return None;
        }
        Some(FloatMap { p, q, d: f.degree() })
    }

    fn hom(c: &[f64], d: usize, x: f64, ypow: &[f64]) -> f64 {
        let mut acc = 0.0;
        for (i, a) in c.iter().enumerate().rev() {
            acc = acc * x + a * ypow[d - i];
        }
        acc
    }

    /// Value proportional, with a positive factor, to `F_k(x)` up to the
    /// sign convention shared by every sample.
    fn residual(&self, x: f64, k: u32) -> f64 {
        let s = x.abs().max(1.0);
        let (mut xx, mut yy) = (x / s, 1.0 / s);
        let mut ypow = vec![1.0; self.d + 1];
        for _ in 0..k {
            for j in 1..=self.d {
                ypow[j] = ypow[j - 1] * yy;
            }
            let nx = Self::hom(&self.p, self.d, xx, &ypow);
            let ny = Self::hom(&self.q, self.d, xx, &ypow);
            let s = nx.abs().max(ny.abs());
            if s == 0.0 || !s.is_finite() {
                return f64::NAN;
            }
            xx = nx / s;
            yy = ny / s;
        }
        xx - x * yy
    }

    /// Real solutions of `f(x) = y`.
    fn preimages(&self, y: f64) -> Vec<f64> {
        let n = self.p.len().max(self.q.len());
        let c: Vec<f64> = (0..n)
            .map(|i| self.p.get(i).unwrap_or(&0.0) - y * self.q.get(i).unwrap_or(&0.0))
            .collect();
        real_roots_f64(&c)
    }
}

/// Approximate real fixed points of `f^k`, sorted, or `None` if the sweep
/// could not find `expected` of them.
fn approximate_fixed_points(f: &RationalMap, k: u32, expected: usize, log2_bound: i64) -> Option<Vec<f64>> {
    let fm = FloatMap::new(f)?;
    // Laps of f^k end at preimages, of depth < k, of critical points and poles.
    let crit_num = &(&f.p().derivative() * f.q()) - &(f.p() * &f.q().derivative());
    let mut level: Vec<f64> = real_roots_f64(&crit_num.to_f64_coeffs());
    level.extend(real_roots_f64(&f.q().to_f64_coeffs()));
    let mut breaks = level.clone();
    for _ in 1..k {
        let next: Vec<f64> = level.iter().flat_map(|&y| fm.preimages(y)).collect();
        breaks.extend(&next);
        if breaks.len() > 400_000 {
            return None;
        }
        level = next;
    }
    let top = log2_bound.clamp(1, 1000) as i32;
    for j in -8..=top {
        let t = 2f64.powi(j);
        breaks.push(t);
        breaks.push(-t);
    }
    breaks.push(0.0);
    breaks.retain(|x| x.is_finite());
    breaks.sort_by(|a, b| a.partial_cmp(b).unwrap());
    breaks.dedup();

    for interior in [3usize, 15, 63] {
        let mut grid = Vec::with_capacity(breaks.len() * (interior + 1));
        for w in breaks.windows(2) {
            let (a, b) = (w[0], w[1]);
            for i in 0..=interior {
                grid.push(a + (b - a) * (i as f64) / ((interior + 1) as f64));
            }
        }
        grid.push(*breaks.last()?);
        grid.dedup();
        let vals: Vec<f64> = grid.iter().map(|&x| fm.residual(x, k)).collect();
        if vals.iter().any(|v| v.is_nan()) {
            return None;
        }
        let mut roots = Vec::new();
        for i in 0..grid.len() {
            if vals[i] == 0.0 {
                roots.push(grid[i]);
                continue;
            }
            if i + 1 < grid.len() && vals[i + 1] != 0.0 && vals[i].signum() != vals[i + 1].signum() {
                let r = bracket_root(&|x| fm.residual(x, k), grid[i], grid[i + 1])?;
                roots.push(r);
            }
        }
        roots.dedup();
        if roots.len() == expected {
            return Some(roots);
        }
        if roots.len() > expected {
            return None;
        }
    }
    None
}

/// `Σ cᵢ xⁱ y^{d−i}` for integer inputs, with `ypow[j] = yʲ`.
fn hom_eval_int(c: &IntPoly, d: usize, x: &BigInt, ypow: &[BigInt]) -> BigInt {
    let mut acc = BigInt::zero();
    for (i, a) in c.coeffs().iter().enumerate().rev() {
        acc = acc * x + a * &ypow[d - i];
    }
    acc
}

/// Sign of `c·F_k(s)`, with `c` a nonzero constant independent of `s`: the
/// homogeneous iterate `(X, Y)` of `(num s, den s)` satisfies
/// `den·X − num·Y = (positive) · c · F_k(s)`.
fn exact_residual_sign(f: &RationalMap, k: u32, s: &Rational) -> Ordering {
    let d = f.degree();
    let (mut x, mut y) = (s.numer().clone(), s.denom().clone());
    for _ in 0..k {
        let mut ypow = Vec::with_capacity(d + 1);
        ypow.push(BigInt::from(1));
        for j in 1..=d {
            let next = &ypow[j - 1] * &y;
            ypow.push(next);
        }
        let nx = hom_eval_int(f.p(), d, &x, &ypow);
        let ny = hom_eval_int(f.q(), d, &x, &ypow);
        x = nx;
        y = ny;
    }
    let r = s.denom() * x - s.numer() * y;
    if r.is_zero() {
        Ordering::Equal
    } else if r.is_positive() {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

#[cfg(feature = "parallel")]
fn signs(f: &RationalMap, k: u32, samples: &[Rational]) -> Vec<Ordering> {
    use rayon::prelude::*;
    samples.par_iter().map(|s| exact_residual_sign(f, k, s)).collect()
}

#[cfg(not(feature = "parallel"))]
fn signs(f: &RationalMap, k: u32, samples: &[Rational]) -> Vec<Ordering> {
    samples.iter().map(|s| exact_residual_sign(f, k, s)).collect()
}

fn rat(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

/// Isolating intervals for all `deg F_k` roots of `fk` when a sign-alternation
/// certificate can be produced; `None` otherwise.
pub(crate) fn certify_all_real(f: &RationalMap, k: u32, fk: &Arc<IntPoly>) -> Option<Vec<IsolatingInterval>> {
    let n = fk.deg();
    let log2_bound = cauchy_bound(fk).numer().bits() as i64;
    let roots = approximate_fixed_points(f, k, n, log2_bound)?;
    let mut lows: Vec<Rational> = Vec::with_capacity(n + 1);
    let mut samples: Vec<Rational> = Vec::with_capacity(n + 1);
    let first = roots[0];
    let lo = rat(first - 2.0 * (1.0 + first.abs()))?;
    let hi = rat(first - 0.5 * (1.0 + first.abs()))?;
    lows.push(lo.clone());
    samples.push(dyadic_between(&lo, &hi));
    for w in roots.windows(2) {
        let gap = w[1] - w[0];
        let (a, b) = (w[0] + gap / 3.0, w[1] - gap / 3.0);
        if a.partial_cmp(&b) != Some(Ordering::Less) {
            return None;
        }
        let (a, b) = (rat(a)?, rat(b)?);
        samples.push(dyadic_between(&a, &b));
        lows.push(a);
    }
    let last = roots[n - 1];
    let lo = rat(last + 0.5 * (1.0 + last.abs()))?;
    let hi = rat(last + 2.0 * (1.0 + last.abs()))?;
    samples.push(dyadic_between(&lo, &hi));
    lows.push(lo);

    let mut sg = signs(f, k, &samples);
    for i in 0..sg.len() {
        // A sample that happens to be a root is replaced by another dyadic
        // from the same gap.
        let mut tries = 0;
        while sg[i] == Ordering::Equal {
            tries += 1;
            if tries > 4 {
                return None;
            }
            samples[i] = dyadic_between(&lows[i], &samples[i]);
            sg[i] = exact_residual_sign(f, k, &samples[i]);
        }
    }
    if sg.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    // Left of every root F_k has its sign at −∞.
    let mut s = fk.sign_at_infinity(false);
    let mut out = Vec::with_capacity(n);
    for w in samples.windows(2) {
        out.push(IsolatingInterval::open_unchecked(
            w[0].clone(),
            w[1].clone(),
            fk.clone(),
            1,
            s,
        ));
        s = s.reverse();
    }
    Some(out)
}

#[allow(dead_code)]
pub(crate) fn to_f64(x: &BigInt) -> f64 {
    bigint_to_f64(x)
}
