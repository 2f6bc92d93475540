#![allow(dead_code)]

use std::cmp::Ordering;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use realperiodic::exactpoly::{IntPoly, RatInterval};
use realperiodic::ratmap::{classify_multiplier_of_iterate, fixed_point_data, MultiplierVerdict};
use realperiodic::{Budget, IsolatingInterval, Rational, RationalMap, Result};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn map(text: &str) -> RationalMap {
    RationalMap::parse(text).unwrap()
}

/// A map of degree exactly `d` with integer coefficients in `[-bound, bound]`.
pub fn random_map(rng: &mut ChaCha8Rng, d: usize, bound: i64) -> RationalMap {
    loop {
        let p: Vec<i64> = (0..=d).map(|_| rng.random_range(-bound..=bound)).collect();
        let qc: Vec<i64> = (0..=d).map(|_| rng.random_range(-bound..=bound)).collect();
        let p = IntPoly::from_i64s(&p);
        let qp = IntPoly::from_i64s(&qc);
        if p.is_zero() || qp.is_zero() {
            continue;
        }
        if let Ok(f) = RationalMap::new(p, qp) {
            if f.degree() == d {
                return f;
            }
        }
    }
}

/// A real Möbius transform `(a z + b)/(c z + e)` with small integer
/// coefficients and `ae − bc ≠ 0`.
pub fn random_mobius(rng: &mut ChaCha8Rng) -> [Rational; 4] {
    loop {
        let m: Vec<i64> = (0..4).map(|_| rng.random_range(-4..=4)).collect();
        if m[0] * m[3] - m[1] * m[2] != 0 {
            return [q(m[0], 1), q(m[1], 1), q(m[2], 1), q(m[3], 1)];
        }
    }
}

/// Where a point of the circle goes under a Möbius transform: ∞, or an
/// interval enclosure of a finite image.
#[derive(Debug)]
pub enum Image {
    Infinity,
    Finite(RatInterval),
}

/// Image of a real algebraic point under `(a z + b)/(c z + e)`; refines
/// open intervals until the pole is excluded.
pub fn mobius_image(m: &[Rational; 4], x: &IsolatingInterval) -> Image {
    let [a, b, c, e] = m;
    let phi = |z: &Rational| -> Option<Rational> {
        let den = c * z + e;
        (!den.is_zero()).then(|| (a * z + b) / den)
    };
    if x.is_infinity() {
        return if c.is_zero() {
            Image::Infinity
        } else {
            Image::Finite(RatInterval::point(a / c))
        };
    }
    if let Some(r) = x.as_rational() {
        return match phi(r) {
            None => Image::Infinity,
            Some(v) => Image::Finite(RatInterval::point(v)),
        };
    }
    let mut x = x.clone();
    loop {
        let dl = c * x.lower() + e;
        let du = c * x.upper() + e;
        if dl.signum() == du.signum() && !dl.is_zero() {
            let u = phi(x.lower()).unwrap();
            let v = phi(x.upper()).unwrap();
            let (lo, hi) = if u <= v { (u, v) } else { (v, u) };
            return Image::Finite(RatInterval::new(lo, hi));
        }
        x.bisect();
    }
}

/// Index of the point of `roots` (with `None` standing for ∞) that the image
/// designates, refining until exactly one candidate remains.
pub fn locate(
    image: &Image,
    roots: &[IsolatingInterval],
    has_infinity: bool,
    m: &[Rational; 4],
    src: &IsolatingInterval,
) -> Option<Option<usize>> {
    match image {
        Image::Infinity => has_infinity.then_some(None),
        Image::Finite(_) => {
            let mut src = src.clone();
            let mut roots = roots.to_vec();
            for _ in 0..200 {
                let Image::Finite(iv) = mobius_image(m, &src) else {
                    unreachable!()
                };
                let hits: Vec<usize> = roots
                    .iter()
                    .enumerate()
                    .filter(|(_, r)| r.lower() <= &iv.hi && &iv.lo <= r.upper())
                    .map(|(i, _)| i)
                    .collect();
                match hits.len() {
                    0 => return None,
                    1 => return Some(Some(hits[0])),
                    _ => {
                        if !src.is_exact() && !src.is_infinity() {
                            src.bisect();
                        }
                        for r in roots.iter_mut() {
                            r.bisect();
                        }
                    }
                }
            }
            None
        }
    }
}

/// Compares `f` with `φ ∘ f ∘ φ⁻¹` for `φ = m`: realness of `F_k` and the
/// multiplier verdict at every real fixed point of `f^k` and its image.
pub fn conjugation_agrees(f: &RationalMap, m: &[Rational; 4], k: u32, budget: &Budget) -> Result<bool> {
    let g = f.conjugate(&m[0], &m[1], &m[2], &m[3])?;
    let a = fixed_point_data(f, k, budget)?;
    let b = fixed_point_data(&g, k, budget)?;
    if a.all_real != b.all_real {
        return Ok(false);
    }
    let mut pa = a.roots.clone();
    if a.infinity_multiplicity > 0 {
        pa.push(IsolatingInterval::infinity(a.infinity_multiplicity));
    }
    let nb = b.roots.len() + usize::from(b.infinity_multiplicity > 0);
    if pa.len() != nb {
        return Ok(false);
    }
    for x in &pa {
        let image = mobius_image(m, x);
        let Some(idx) = locate(&image, &b.roots, b.infinity_multiplicity > 0, m, x) else {
            return Ok(false);
        };
        let y = match idx {
            None => IsolatingInterval::infinity(b.infinity_multiplicity),
            Some(i) => b.roots[i].clone(),
        };
        let va = classify_multiplier_of_iterate(f, &a.iterate, x, k, budget)?.verdict;
        let vb = classify_multiplier_of_iterate(&g, &b.iterate, &y, k, budget)?.verdict;
        if va != vb {
            return Ok(false);
        }
        if x.multiplicity() != y.multiplicity() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Number of distinct real roots found by the eigenvalues of the companion
/// matrix, in floating point. Roots at zero are divided out exactly first.
/// Eigenvalues within `tol` of the real axis count as real; real values
/// within `tol` of each other are merged. Returns `None` when the nonreal
/// eigenvalues do not pair up into conjugates.
pub fn float_real_root_count(a: &IntPoly, tol: f64) -> Option<usize> {
    let mut c: Vec<f64> = a.coeffs().iter().map(|x| x.to_f64().unwrap()).collect();
    let mut zero_root = false;
    while c.len() > 1 && c[0] == 0.0 {
        c.remove(0);
        zero_root = true;
    }
    let n = c.len() - 1;
    let mut reals: Vec<f64> = Vec::new();
    if zero_root {
        reals.push(0.0);
    }
    if n > 0 {
        let lead = c[n];
        let mut mat = DMatrix::<f64>::zeros(n, n);
        for i in 1..n {
            mat[(i, i - 1)] = 1.0;
        }
        for i in 0..n {
            mat[(i, n - 1)] = -c[i] / lead;
        }
        let eig = mat.complex_eigenvalues();
        let mut upper = Vec::new();
        let mut lower = Vec::new();
        for z in eig.iter() {
            let scale = z.norm().max(1.0);
            if z.im.abs() <= tol * scale {
                reals.push(z.re);
            } else if z.im > 0.0 {
                upper.push(*z);
            } else {
                lower.push(z.conj());
            }
        }
        if upper.len() != lower.len() {
            return None;
        }
        let key = |z: &nalgebra::Complex<f64>| (z.re, z.im);
        upper.sort_by(|x, y| key(x).partial_cmp(&key(y)).unwrap());
        lower.sort_by(|x, y| key(x).partial_cmp(&key(y)).unwrap());
        for (u, l) in upper.iter().zip(&lower) {
            if (u - l).norm() > 1e-6 * u.norm().max(1.0) {
                return None;
            }
        }
    }
    reals.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let mut count = 0;
    let mut last: Option<f64> = None;
    for r in reals {
        if last.is_none_or(|l| (r - l).abs() > tol * r.abs().max(1.0)) {
            count += 1;
        }
        last = Some(r);
    }
    Some(count)
}

/// Resultant of two integer polynomials: the determinant of their Sylvester
/// matrix, by fraction-free elimination.
pub fn resultant(a: &IntPoly, b: &IntPoly) -> BigInt {
    let (m, n) = (a.deg(), b.deg());
    let size = m + n;
    if size == 0 {
        return BigInt::one();
    }
    let mut s = vec![vec![BigInt::zero(); size]; size];
    for i in 0..n {
        for (j, c) in a.coeffs().iter().rev().enumerate() {
            s[i][i + j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in b.coeffs().iter().rev().enumerate() {
            s[n + i][i + j] = c.clone();
        }
    }
    bareiss_det(s)
}

fn bareiss_det(mut s: Vec<Vec<BigInt>>) -> BigInt {
    let n = s.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if s[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !s[r][k].is_zero()) else {
                return BigInt::zero();
            };
            s.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &s[i][j] * &s[k][k] - &s[i][k] * &s[k][j];
                s[i][j] = v / &prev;
            }
        }
        prev = s[k][k].clone();
    }
    sign * &s[n - 1][n - 1]
}

/// `lo ≤ x ≤ hi` for `x = ±√(num/den)` with the given sign.
pub fn encloses_signed_sqrt(iv: &IsolatingInterval, num: i64, den: i64, negative: bool) -> bool {
    let target = q(num, den);
    let (lo, hi) = if negative {
        (-iv.upper().clone(), -iv.lower().clone())
    } else {
        (iv.lower().clone(), iv.upper().clone())
    };
    if lo.is_negative() {
        return false;
    }
    &lo * &lo <= target && target <= &hi * &hi
}

pub fn verdict_is_exact_pm1(v: MultiplierVerdict) -> Option<Ordering> {
    match v {
        MultiplierVerdict::IndifferentPlus => Some(Ordering::Greater),
        MultiplierVerdict::IndifferentMinus => Some(Ordering::Less),
        _ => None,
    }
}
