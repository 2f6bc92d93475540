//! Exact comparisons between real algebraic numbers given by isolating
//! intervals, and algebraic values of polynomials and rational functions at
//! such numbers.
//!
//! Enclosure refinement decides strict inequalities. Equality is never
//! inferred from shrinking enclosures: it is proved by a gcd sign-change test
//! on the witnesses, or by showing the value is a root of the other
//! witness and lies inside its isolating interval.

use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::gcd::poly_gcd;
use super::interval::{eval_poly, RatInterval};
use super::intpoly::{hom_compose_with, powers};
use super::isolate::{isolate_real_roots, IsolatingInterval, RootKind};
use super::IntPoly;
use crate::error::{Error, Result};
use crate::Rational;

/// Bisection rounds allowed before a comparison gives up. Distinct algebraic
/// numbers of the sizes met here separate long before this.
const COMPARE_LIMIT: usize = 4096;

fn finite(a: &IsolatingInterval) -> Result<()> {
    if a.is_infinity() {
        Err(Error::Precondition("comparison involving the point at infinity".into()))
    } else {
        Ok(())
    }
}

fn limit_error() -> Error {
    Error::Budget("algebraic comparison did not separate within the refinement limit".into())
}

/// Orders the root isolated by `a` against the rational `x`.
pub fn compare_rational(a: &IsolatingInterval, x: &Rational) -> Ordering {
    match a.kind() {
        RootKind::Exact | RootKind::Infinity => a.lower().cmp(x),
        RootKind::Open => {
            if x <= a.lower() {
                return Ordering::Greater;
            }
            if x >= a.upper() {
                return Ordering::Less;
            }
            let s = a.witness().eval_sign(x);
            if s == Ordering::Equal {
                Ordering::Equal
            } else if s == a.witness().eval_sign(a.lower()) {
                // No sign change on (lower, x], so the root is beyond x.
                Ordering::Greater
            } else {
                Ordering::Less
            }
        }
    }
}

/// Exact order of two finite real algebraic numbers.
pub fn compare(a: &IsolatingInterval, b: &IsolatingInterval) -> Result<Ordering> {
    finite(a)?;
    finite(b)?;
    if let Some(x) = b.as_rational() {
        return Ok(compare_rational(a, x));
    }
    if let Some(x) = a.as_rational() {
        return Ok(compare_rational(b, x).reverse());
    }
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut tie_checked = false;
    for _ in 0..COMPARE_LIMIT {
        if a.is_exact() || b.is_exact() {
            return compare(&a, &b);
        }
        if a.upper() <= b.lower() {
            return Ok(Ordering::Less);
        }
        if b.upper() <= a.lower() {
            return Ok(Ordering::Greater);
        }
        if !tie_checked {
            tie_checked = true;
            if same_root_in_overlap(&a, &b)? {
                return Ok(Ordering::Equal);
            }
        }
        a.bisect();
        b.bisect();
    }
    Err(limit_error())
}

/// For overlapping open intervals: the two roots coincide iff the gcd of the
/// witnesses changes sign across the overlap. The gcd divides both witnesses,
/// so it is nonzero at every endpoint and has at most one root in the overlap.
fn same_root_in_overlap(a: &IsolatingInterval, b: &IsolatingInterval) -> Result<bool> {
    let g = if Arc::ptr_eq(a.witness(), b.witness()) {
        (**a.witness()).clone()
    } else {
        poly_gcd(a.witness(), b.witness())?
    };
    if g.is_constant() {
        return Ok(false);
    }
    let lo = a.lower().max(b.lower());
    let hi = a.upper().min(b.upper());
    let sl = g.eval_sign(lo);
    let sh = g.eval_sign(hi);
    Ok(sl != Ordering::Equal && sh != Ordering::Equal && sl != sh)
}

/// Enclosure of `p(z)/q(z)` over the interval of `z`, or `None` if the
/// enclosure of `q` still contains zero.
pub fn enclose_ratfunc(p: &IntPoly, q: &IntPoly, z: &IsolatingInterval) -> Option<RatInterval> {
    let iv = RatInterval::new(z.lower().clone(), z.upper().clone());
    let num = eval_poly(p, &iv);
    let den = eval_poly(q, &iv);
    num.div(&den)
}

/// Orders `p(z)/q(z)` against the finite algebraic number `y`; requires
/// `q(z) ≠ 0`.
pub fn image_cmp(p: &IntPoly, q: &IntPoly, z: &IsolatingInterval, y: &IsolatingInterval) -> Result<Ordering> {
    finite(z)?;
    finite(y)?;
    if let Some(x) = z.as_rational() {
        let den = q.eval_rational(x);
        if den.is_zero() {
            return Err(Error::Precondition("image of a pole".into()));
        }
        let v = p.eval_rational(x) / den;
        return Ok(compare_rational(y, &v).reverse());
    }
    // Is p(z)/q(z) a root of y's witness?
    let candidate = match y.as_rational() {
        Some(v) => {
            let g = &p.scale(v.denom()) - &q.scale(v.numer());
            if z.is_root_of(&g)? {
                return Ok(Ordering::Equal);
            }
            false
        }
        None => {
            let w = y.witness();
            let n = w.deg();
            let r = hom_compose_with(w, n, p, &powers(q, n));
            z.is_root_of(&r)?
        }
    };
    let y_rational = y.is_exact();
    let (mut z, mut y) = (z.clone(), y.clone());
    for _ in 0..COMPARE_LIMIT {
        if z.is_exact() {
            return image_cmp(p, q, &z, &y);
        }
        if y.is_exact() && !y_rational {
            // y collapsed to a rational: rerun with the exact equality test.
            return image_cmp(p, q, &z, &y);
        }
        let mut refine_y = !candidate;
        if let Some(e) = enclose_ratfunc(p, q, &z) {
            // Keep y's interval no narrower than the enclosure, so an equal
            // value eventually fits strictly inside it.
            refine_y &= y.width() > e.width();
            if y_rational {
                match (e.hi.cmp(y.lower()), e.lo.cmp(y.lower())) {
                    (Ordering::Less, _) => return Ok(Ordering::Less),
                    (_, Ordering::Greater) => return Ok(Ordering::Greater),
                    _ => {}
                }
            } else if &e.hi <= y.lower() {
                return Ok(Ordering::Less);
            }
            if &e.lo >= y.upper() {
                return Ok(Ordering::Greater);
            }
            if candidate && e.strictly_inside(y.lower(), y.upper()) {
                return Ok(Ordering::Equal);
            }
        }
        z.bisect();
        if refine_y {
            y.bisect();
        }
    }
    Err(limit_error())
}

/// Whether `p(z)/q(z) = y` exactly.
pub fn image_equals(p: &IntPoly, q: &IntPoly, z: &IsolatingInterval, y: &IsolatingInterval) -> Result<bool> {
    Ok(image_cmp(p, q, z, y)? == Ordering::Equal)
}

/// The algebraic number `p(z)/denom` as an isolating interval whose witness
/// is the squarefree part of the characteristic polynomial of multiplication
/// by `p/denom` in `ℚ[t]/(w)`, `w` being the witness of `z`.
pub fn poly_value(p: &IntPoly, denom: &BigInt, z: &IsolatingInterval) -> Result<IsolatingInterval> {
    finite(z)?;
    if denom.is_zero() {
        return Err(Error::Precondition("zero denominator".into()));
    }
    let d = Rational::from_integer(denom.clone());
    if let Some(x) = z.as_rational() {
        return Ok(IsolatingInterval::rational(p.eval_rational(x) / d));
    }
    let w = z.witness();
    let r: Vec<Rational> = p.rem_rational(w).into_iter().map(|c| c / &d).collect();
    if r.len() <= 1 {
        let c = r.into_iter().next().unwrap_or_else(Rational::zero);
        return Ok(IsolatingInterval::rational(c));
    }
    let charpoly = IntPoly::from_rationals(&charpoly_of_multiplication(&r, w)).0;
    let mut cands = isolate_real_roots(&charpoly)?;
    let mut z = z.clone();
    for _ in 0..COMPARE_LIMIT {
        if let Some(x) = z.as_rational() {
            let v = p.eval_rational(x) / &d;
            return Ok(IsolatingInterval::rational(v));
        }
        let iv = RatInterval::new(z.lower().clone(), z.upper().clone());
        let e = eval_poly(p, &iv).scale(&d.recip());
        cands.retain(|c| match c.as_rational() {
            Some(x) => e.contains(x),
            None => !(&e.hi <= c.lower() || &e.lo >= c.upper()),
        });
        match cands.len() {
            0 => return Err(Error::Precondition("value not found among conjugates".into())),
            1 => return Ok(cands.pop().unwrap().with_multiplicity(1)),
            _ => {}
        }
        z.bisect();
        for c in cands.iter_mut() {
            c.bisect();
        }
    }
    Err(limit_error())
}

/// Characteristic polynomial `det(yI − M)` of multiplication by `r` on
/// `ℚ[t]/(w)` in the monomial basis, by the Faddeev–LeVerrier recurrence.
/// Coefficients are returned from the constant term upward.
#[allow(clippy::needless_range_loop)]
pub fn charpoly_of_multiplication(r: &[Rational], w: &IntPoly) -> Vec<Rational> {
    let n = w.deg();
    let lc = Rational::from_integer(w.leading().unwrap().clone());
    let wq: Vec<Rational> = w
        .coeffs()
        .iter()
        .map(|c| Rational::from_integer(c.clone()) / &lc)
        .collect();
    // Columns of M: r·tʲ mod w.
    let mut col: Vec<Rational> = (0..n)
        .map(|i| r.get(i).cloned().unwrap_or_else(Rational::zero))
        .collect();
    let mut m = vec![vec![Rational::zero(); n]; n];
    for j in 0..n {
        for i in 0..n {
            m[i][j] = col[i].clone();
        }
        let top = col[n - 1].clone();
        for i in (1..n).rev() {
            col[i] = &col[i - 1] - &top * &wq[i];
        }
        col[0] = -(&top * &wq[0]);
    }
    let matmul = |a: &Vec<Vec<Rational>>, b: &Vec<Vec<Rational>>| {
        let mut out = vec![vec![Rational::zero(); n]; n];
        for i in 0..n {
            for k in 0..n {
                if a[i][k].is_zero() {
                    continue;
                }
                for j in 0..n {
                    out[i][j] += &a[i][k] * &b[k][j];
                }
            }
        }
        out
    };
    let mut c = vec![Rational::zero(); n + 1];
    c[n] = Rational::one();
    let mut mk = vec![vec![Rational::zero(); n]; n];
    for k in 1..=n {
        let mut next = matmul(&m, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &c[n - k + 1];
        }
        mk = next;
        let prod = matmul(&m, &mk);
        let trace: Rational = (0..n).map(|i| prod[i][i].clone()).sum();
        c[n - k] = -trace / Rational::from_integer(BigInt::from(k));
    }
    c
}
