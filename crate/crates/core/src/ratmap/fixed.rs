//! Fixed points of iterates: the polynomial `F_k = P − z·Q` of `f^k = P/Q`,
//! the multiplicity of ∞, and certified isolation of the real roots.

use std::sync::Arc;

use super::floatguide::certify_all_real;
use super::RationalMap;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::exactpoly::{isolate_real_roots, IntPoly, IsolatingInterval};

/// Below this degree exact Sturm isolation is cheap enough to use directly.
const SMALL_DEGREE: usize = 24;

#[derive(Clone, Debug)]
pub struct FixedPointData {
    /// Iterate index.
    pub k: u32,
    /// Finite fixed-point polynomial of `f^k`: primitive, positive leading
    /// coefficient.
    pub f_poly: Arc<IntPoly>,
    /// Multiplicity of ∞ as a fixed point of `f^k` (0 if not fixed).
    pub infinity_multiplicity: u32,
    /// Isolating intervals of the distinct real roots of `f_poly`, in
    /// increasing order, each with its multiplicity.
    pub roots: Vec<IsolatingInterval>,
    /// Every complex root of `f_poly` is real.
    pub all_real: bool,
    /// `f^k` itself.
    pub iterate: RationalMap,
}

impl FixedPointData {
    /// Number of real roots of `f_poly` counted with multiplicity.
    pub fn real_count_with_multiplicity(&self) -> usize {
        self.roots.iter().map(|r| r.multiplicity() as usize).sum()
    }

    pub fn degree(&self) -> usize {
        self.f_poly.deg()
    }
}

/// Fixed-point data of `f^k`.
pub fn fixed_point_data(f: &RationalMap, k: u32, budget: &Budget) -> Result<FixedPointData> {
    if f.degree() < 2 {
        return Err(Error::Precondition("fixed-point data needs degree at least 2".into()));
    }
    let g = f.iterate(k, budget)?;
    fixed_point_data_of_iterate(f, &g, k, budget)
}

/// Same as [`fixed_point_data`] when `g = f^k` is already known.
pub fn fixed_point_data_of_iterate(
    f: &RationalMap,
    g: &RationalMap,
    k: u32,
    budget: &Budget,
) -> Result<FixedPointData> {
    let raw = g.fixed_point_polynomial();
    if raw.is_zero() {
        return Err(Error::IdentityMap);
    }
    let fk = Arc::new(raw.normalized());
    let n = fk.deg();
    let infinity_multiplicity = (g.degree() + 1 - n) as u32;
    let (roots, all_real) = if n == 0 {
        (Vec::new(), true)
    } else if n <= SMALL_DEGREE {
        exact_roots(&fk)?
    } else if let Some(roots) = certify_all_real(f, k, &fk) {
        (roots, true)
    } else if n <= budget.max_exact_degree {
        exact_roots(&fk)?
    } else {
        return Err(Error::Budget(format!(
            "fixed-point polynomial of degree {n} could not be certified all-real and exceeds \
             max_exact_degree {}",
            budget.max_exact_degree
        )));
    };
    Ok(FixedPointData {
        k,
        f_poly: fk,
        infinity_multiplicity,
        roots,
        all_real,
        iterate: g.clone(),
    })
}

fn exact_roots(fk: &IntPoly) -> Result<(Vec<IsolatingInterval>, bool)> {
    let roots = isolate_real_roots(fk)?;
    let count: usize = roots.iter().map(|r| r.multiplicity() as usize).sum();
    let all_real = count == fk.deg();
    Ok((roots, all_real))
}
