//! Polynomial gcd over ℤ with a modular coprimality shortcut, plus
//! squarefree parts and Yun's squarefree decomposition.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::IntPoly;
use crate::error::{Error, Result};

/// Primes below 2⁶³ used for the modular coprimality test.
const PRIMES: [u64; 3] = [
    2_305_843_009_213_693_951,
    4_611_686_018_427_387_847,
    9_223_372_036_854_775_783,
];

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, m);
        }
        a = mulmod(a, a, m);
        e >>= 1;
    }
    r
}

fn reduce(p: &IntPoly, m: u64) -> Vec<u64> {
    let bm = BigInt::from(m);
    let mut v: Vec<u64> = p.coeffs().iter().map(|c| c.mod_floor(&bm).to_u64().unwrap()).collect();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Remainder of `a` by `b` over 𝔽ₘ, in place.
fn rem_mod(a: &mut Vec<u64>, b: &[u64], m: u64) {
    let db = b.len() - 1;
    let inv = powmod(b[db], m - 2, m);
    while a.len() > db {
        let top = a.len() - 1;
        let f = mulmod(a[top], inv, m);
        if f != 0 {
            let off = top - db;
            for (i, &bc) in b.iter().enumerate() {
                let t = mulmod(f, bc, m);
                a[off + i] = (a[off + i] + m - t) % m;
            }
        }
        a.pop();
        while a.last() == Some(&0) {
            a.pop();
        }
    }
}

/// Degree of `gcd(a mod m, b mod m)`, or `None` when `m` divides `lc(a)`.
fn modular_gcd_degree(a: &IntPoly, b: &IntPoly, m: u64) -> Option<usize> {
    let mut x = reduce(a, m);
    if x.len() != a.len() {
        return None;
    }
    let mut y = reduce(b, m);
    while !y.is_empty() {
        rem_mod(&mut x, &y, m);
        std::mem::swap(&mut x, &mut y);
    }
    Some(x.len().saturating_sub(1))
}

/// Sound one-sided test: `true` proves `gcd(a, b) = 1` in ℚ[z]. If some prime
/// not dividing `lc(a)` gives a constant modular gcd, the integer gcd has
/// degree 0.
pub fn coprime_fast(a: &IntPoly, b: &IntPoly) -> bool {
    if a.is_constant() || b.is_constant() {
        return !(a.is_zero() && b.is_zero());
    }
    PRIMES.iter().any(|&m| modular_gcd_degree(a, b, m) == Some(0))
}

/// Primitive greatest common divisor with positive leading coefficient.
pub fn poly_gcd(a: &IntPoly, b: &IntPoly) -> Result<IntPoly> {
    match (a.is_zero(), b.is_zero()) {
        (true, true) => return Err(Error::GcdOfZero),
        (true, false) => return Ok(b.normalized()),
        (false, true) => return Ok(a.normalized()),
        _ => {}
    }
    if a.is_constant() || b.is_constant() || coprime_fast(a, b) {
        return Ok(IntPoly::one());
    }
    let (mut x, mut y) = (a.primitive_part(), b.primitive_part());
    if x.deg() < y.deg() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_zero() {
        let r = x.pseudo_rem(&y).0.primitive_part();
        x = y;
        y = r;
    }
    Ok(x.normalized())
}

/// `a / gcd(a, a′)`, primitive with positive leading coefficient.
pub fn squarefree_part(a: &IntPoly) -> Result<IntPoly> {
    if a.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if a.deg() <= 1 {
        return Ok(a.normalized());
    }
    let g = poly_gcd(a, &a.derivative())?;
    Ok(a.primitive_part()
        .div_exact(&g)
        .expect("gcd divides its argument")
        .normalized())
}

pub fn is_squarefree(a: &IntPoly) -> bool {
    if a.is_zero() {
        return false;
    }
    a.deg() <= 1 || coprime_fast(a, &a.derivative()) || { poly_gcd(a, &a.derivative()).is_ok_and(|g| g.is_constant()) }
}

/// Yun's algorithm: returns pairwise coprime squarefree factors `aᵢ` (positive
/// leading coefficients) with their multiplicities `i`, so that
/// `a = c · ∏ aᵢⁱ` for a rational constant `c`.
pub fn squarefree_decomposition(a: &IntPoly) -> Result<Vec<(IntPoly, u32)>> {
    if a.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let a = a.primitive_part();
    if a.deg() == 0 {
        return Ok(Vec::new());
    }
    let da = a.derivative();
    let b = poly_gcd(&a, &da)?;
    if b.is_constant() {
        return Ok(vec![(a.normalized(), 1)]);
    }
    let mut c = a.div_exact(&b).expect("gcd divides a");
    let mut d = &da.div_exact(&b).expect("gcd divides a'") - &c.derivative();
    let mut out = Vec::new();
    let mut i = 1;
    while !c.is_constant() {
        let g = poly_gcd(&c, &d)?;
        if !g.is_constant() {
            out.push((g.clone(), i));
        }
        c = c.div_exact(&g).expect("gcd divides c");
        d = &d.div_exact(&g).expect("gcd divides d") - &c.derivative();
        i += 1;
    }
    Ok(out)
}
