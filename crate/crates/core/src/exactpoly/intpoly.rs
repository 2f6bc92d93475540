use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::Rational;

/// Dense univariate polynomial with arbitrary-precision integer coefficients.
///
/// `coeffs[i]` is the coefficient of `zⁱ`. Trailing zeros are never stored,
/// so the zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

/// Below this length on the shorter operand, schoolbook multiplication wins.
const KRONECKER_THRESHOLD: usize = 16;

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    /// The monomial `z`.
    pub fn z() -> Self {
        Self::from_i64s(&[0, 1])
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `den·z − num` for `x = num/den`: the primitive linear polynomial vanishing at `x`.
    pub fn linear_root(x: &Rational) -> Self {
        Self::new(vec![-x.numer().clone(), x.denom().clone()])
    }

    /// Clears denominators of rational coefficients; returns the integer
    /// polynomial together with the positive multiplier that was applied.
    pub fn from_rationals(coeffs: &[Rational]) -> (Self, BigInt) {
        let lcm = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints = coeffs.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
        (Self::new(ints), lcm)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0; handy when the caller has
    /// already excluded zero.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// Sign of the leading coefficient (`Equal` for zero).
    pub fn leading_sign(&self) -> Ordering {
        self.leading().map_or(Ordering::Equal, |c| c.sign().cmp_zero())
    }

    /// Nonnegative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides out the content; the sign of the leading coefficient is kept.
    pub fn primitive_part(&self) -> IntPoly {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| c / &g).collect(),
        }
    }

    /// Primitive part with positive leading coefficient.
    pub fn normalized(&self) -> IntPoly {
        let p = self.primitive_part();
        if p.leading_sign() == Ordering::Less {
            -p
        } else {
            p
        }
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn scale(&self, k: &BigInt) -> IntPoly {
        if k.is_zero() {
            return IntPoly::zero();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Exact division of every coefficient by `k`; caller guarantees divisibility.
    pub fn div_scalar(&self, k: &BigInt) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| c / k).collect(),
        }
    }

    /// Multiplies by `zⁿ`.
    pub fn shift(&self, n: usize) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); n];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    /// `p(−z)`.
    pub fn reflect(&self) -> IntPoly {
        IntPoly {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        }
    }

    pub fn pow(&self, mut n: u32) -> IntPoly {
        let mut base = self.clone();
        let mut acc = IntPoly::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Largest coefficient bit length.
    pub fn max_coeff_bits(&self) -> u64 {
        self.coeffs.iter().map(|c| c.bits()).max().unwrap_or(0)
    }

    pub fn eval_rational(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + Rational::from_integer(c.clone());
        }
        acc
    }

    /// `Σ aᵢ uⁱ vⁿ⁻ⁱ` with `n = deg`: the value at `u/v` scaled by `vⁿ`.
    pub fn eval_homogeneous(&self, u: &BigInt, v: &BigInt) -> BigInt {
        let Some(n) = self.degree() else {
            return BigInt::zero();
        };
        let mut acc = self.coeffs[n].clone();
        if v.is_one() {
            for c in self.coeffs[..n].iter().rev() {
                acc = acc * u + c;
            }
            return acc;
        }
        // Dyadic denominators are the common case (bisection points).
        let tz = v.trailing_zeros().unwrap_or(0);
        if v.is_positive() && v.bits() == tz + 1 {
            for (step, c) in self.coeffs[..n].iter().rev().enumerate() {
                acc = acc * u + (c << (tz as usize * (step + 1)));
            }
            return acc;
        }
        let mut vpow = BigInt::one();
        for c in self.coeffs[..n].iter().rev() {
            vpow *= v;
            acc = acc * u + c * &vpow;
        }
        acc
    }

    /// Exact sign of `p(x)`.
    pub fn eval_sign(&self, x: &Rational) -> Ordering {
        // x = numer/denom with denom > 0, so the scaling by denomⁿ is positive.
        self.eval_homogeneous(x.numer(), x.denom()).sign().cmp_zero()
    }

    /// Sign as `z → +∞` (`positive = true`) or `z → −∞`.
    pub fn sign_at_infinity(&self, positive: bool) -> Ordering {
        let s = self.leading_sign();
        if positive || self.deg().is_multiple_of(2) {
            s
        } else {
            s.reverse()
        }
    }

    /// Pseudo-remainder: returns `(r, m)` with `lc(b)^m · self = q·b + r` and
    /// `deg r < deg b`. Only the multiplications actually needed are applied.
    pub fn pseudo_rem(&self, b: &IntPoly) -> (IntPoly, usize) {
        let db = b.degree().expect("pseudo-remainder by zero polynomial");
        let lb = b.leading().unwrap();
        let mut r = self.coeffs.clone();
        let mut m = 0;
        while r.len() > db && !r.is_empty() {
            let dr = r.len() - 1;
            let lr = r[dr].clone();
            let off = dr - db;
            for c in r.iter_mut() {
                *c *= lb;
            }
            for (i, bc) in b.coeffs.iter().enumerate() {
                r[off + i] -= &lr * bc;
            }
            m += 1;
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        (IntPoly { coeffs: r }, m)
    }

    /// Exact quotient `self / b` in `ℤ[z]`, or `None` if `b` does not divide.
    pub fn div_exact(&self, b: &IntPoly) -> Option<IntPoly> {
        let db = b.degree()?;
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        let da = self.deg();
        if da < db {
            return None;
        }
        let lb = b.leading().unwrap();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); da - db + 1];
        for off in (0..=da - db).rev() {
            let top = &r[off + db];
            if top.is_zero() {
                continue;
            }
            let (qc, rem) = top.div_rem(lb);
            if !rem.is_zero() {
                return None;
            }
            for (i, bc) in b.coeffs.iter().enumerate() {
                r[off + i] -= &qc * bc;
            }
            q[off] = qc;
        }
        if r.iter().all(Zero::is_zero) {
            Some(IntPoly::new(q))
        } else {
            None
        }
    }

    /// Remainder of division by `b` over ℚ, returned with rational coefficients.
    pub fn rem_rational(&self, b: &IntPoly) -> Vec<Rational> {
        let db = b.deg();
        let lb = Rational::from_integer(b.leading().unwrap().clone());
        let mut r: Vec<Rational> = self.coeffs.iter().map(|c| Rational::from_integer(c.clone())).collect();
        while r.len() > db && !r.is_empty() {
            let dr = r.len() - 1;
            let factor = &r[dr] / &lb;
            let off = dr - db;
            for (i, bc) in b.coeffs.iter().enumerate() {
                r[off + i] -= &factor * Rational::from_integer(bc.clone());
            }
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        r
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(bigint_to_f64).collect()
    }
}

pub(crate) fn bigint_to_f64(c: &BigInt) -> f64 {
    num_traits::ToPrimitive::to_f64(c).unwrap_or(if c.is_negative() {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    })
}

trait SignExt {
    fn cmp_zero(self) -> Ordering;
}

impl SignExt for Sign {
    fn cmp_zero(self) -> Ordering {
        match self {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        }
    }
}

/// Homogeneous composition `Σ aᵢ numⁱ denⁿ⁻ⁱ` where `n ≥ deg a` and
/// `den_powers[j] = denʲ` for `j ≤ n`.
pub(crate) fn hom_compose_with(a: &IntPoly, n: usize, num: &IntPoly, den_powers: &[IntPoly]) -> IntPoly {
    let Some(da) = a.degree() else {
        return IntPoly::zero();
    };
    // Horner in num with the missing den powers multiplied in as we go.
    let mut acc = IntPoly::constant(a.coeffs[da].clone());
    for i in (0..da).rev() {
        acc = &acc * num;
        let term = den_powers[da - i].scale(&a.coeffs[i]);
        acc = &acc + &term;
    }
    if n > da {
        acc = &acc * &den_powers[n - da];
    }
    acc
}

pub(crate) fn powers(p: &IntPoly, n: usize) -> Vec<IntPoly> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(IntPoly::one());
    for j in 1..=n {
        let next = &out[j - 1] * p;
        out.push(next);
    }
    out
}

/// `outer(inner_num / inner_den)` with the common denominator cleared:
/// returns `(Σ outerᵢ · numⁱ · denⁿ⁻ⁱ, denⁿ)` with `n = deg outer`, the pair's
/// joint content removed.
pub fn poly_compose(outer: &IntPoly, inner_num: &IntPoly, inner_den: &IntPoly) -> Result<(IntPoly, IntPoly)> {
    if inner_den.is_zero() {
        return Err(Error::Precondition("inner denominator is zero".into()));
    }
    let n = outer.deg();
    let dp = powers(inner_den, n);
    let num = hom_compose_with(outer, n, inner_num, &dp);
    let den = dp[n].clone();
    Ok(remove_joint_content(num, den))
}

pub(crate) fn remove_joint_content(a: IntPoly, b: IntPoly) -> (IntPoly, IntPoly) {
    let g = a.content().gcd(&b.content());
    if g.is_zero() || g.is_one() {
        (a, b)
    } else {
        (a.div_scalar(&g), b.div_scalar(&g))
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly[{self}]")
    }
}

/// Comma-separated coefficients from the constant term upward.
impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Parses the coefficient text format: comma-separated integers or `a/b`
/// rationals from the constant term upward. Accepts U+2212 as a minus sign.
pub fn parse_coefficients(text: &str) -> Result<Vec<Rational>> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::Parse("empty coefficient list".into()));
    }
    text.split(',').map(|tok| parse_rational(tok.trim())).collect()
}

/// Parses `"-3"`, `"7/4"`, or `"−1/2"` into an exact rational.
pub fn parse_rational(tok: &str) -> Result<Rational> {
    let tok = tok.trim().replace('\u{2212}', "-");
    if tok.is_empty() {
        return Err(Error::Parse("empty coefficient".into()));
    }
    let parse_int = |s: &str| -> Result<BigInt> {
        let s = s.trim();
        let s = s.strip_prefix('+').unwrap_or(s);
        s.parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("invalid integer {s:?}")))
    };
    match tok.split_once('/') {
        Some((n, d)) => {
            let n = parse_int(n)?;
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {tok:?}")));
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(parse_int(&tok)?)),
    }
}

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        -(self.clone())
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let (long, short) = if self.len() >= rhs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        IntPoly::new(coeffs)
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.len().max(rhs.len());
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(n, BigInt::zero());
        for (c, s) in coeffs.iter_mut().zip(&rhs.coeffs) {
            *c -= s;
        }
        IntPoly::new(coeffs)
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        if self.len().min(rhs.len()) < KRONECKER_THRESHOLD {
            IntPoly::new(schoolbook(&self.coeffs, &rhs.coeffs))
        } else {
            IntPoly::new(kronecker(&self.coeffs, &rhs.coeffs))
        }
    }
}

impl Add for IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: IntPoly) -> IntPoly {
        &self + &rhs
    }
}

impl Sub for IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: IntPoly) -> IntPoly {
        &self - &rhs
    }
}

impl Mul for IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: IntPoly) -> IntPoly {
        &self * &rhs
    }
}

fn schoolbook(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Multiplication by Kronecker substitution: pack both operands into single
/// integers at a slot width wide enough for every product coefficient, do one
/// big-integer product, and unpack with balanced (signed) digits.
fn kronecker(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let bits = |v: &[BigInt]| v.iter().map(|c| c.bits()).max().unwrap_or(0);
    let terms = a.len().min(b.len()) as u64;
    let bound = bits(a) + bits(b) + (64 - terms.leading_zeros() as u64) + 1;
    let slot = (bound + 1) as usize;
    let pa = pack(a, slot);
    let pb = pack(b, slot);
    unpack(&(pa * pb), slot, a.len() + b.len() - 1)
}

fn pack(coeffs: &[BigInt], slot: usize) -> BigInt {
    let words = (slot * coeffs.len()).div_ceil(32) + 1;
    let mut pos = vec![0u32; words];
    let mut neg = vec![0u32; words];
    for (i, c) in coeffs.iter().enumerate() {
        let (sign, digits) = c.to_u32_digits();
        let buf = match sign {
            Sign::Minus => &mut neg,
            Sign::Plus => &mut pos,
            Sign::NoSign => continue,
        };
        let off = slot * i;
        let (w, sh) = (off / 32, off % 32);
        for (j, d) in digits.iter().enumerate() {
            buf[w + j] |= d << sh;
            if sh > 0 {
                buf[w + j + 1] |= d >> (32 - sh);
            }
        }
    }
    BigInt::from_biguint(Sign::Plus, BigUint::new(pos)) - BigInt::from_biguint(Sign::Plus, BigUint::new(neg))
}

fn unpack(value: &BigInt, slot: usize, n: usize) -> Vec<BigInt> {
    let (sign, words) = value.to_u32_digits();
    let half = BigInt::one() << (slot - 1);
    let full = BigInt::one() << slot;
    let mut carry = BigInt::zero();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let chunk = BigInt::from_biguint(Sign::Plus, extract_bits(&words, slot * i, slot));
        let mut v = chunk + &carry;
        if v >= half {
            v -= &full;
            carry = BigInt::one();
        } else {
            carry = BigInt::zero();
        }
        out.push(v);
    }
    debug_assert!(carry.is_zero());
    if sign == Sign::Minus {
        for c in out.iter_mut() {
            *c = -std::mem::take(c);
        }
    }
    out
}

fn extract_bits(words: &[u32], off: usize, len: usize) -> BigUint {
    let nw = len.div_ceil(32);
    let (w, sh) = (off / 32, off % 32);
    let get = |i: usize| words.get(i).copied().unwrap_or(0);
    let mut out = Vec::with_capacity(nw);
    for j in 0..nw {
        let lo = get(w + j) >> sh;
        let hi = if sh > 0 { get(w + j + 1) << (32 - sh) } else { 0 };
        out.push(lo | hi);
    }
    let rem = len - 32 * (nw - 1);
    if rem < 32 {
        if let Some(last) = out.last_mut() {
            *last &= (1u32 << rem) - 1;
        }
    }
    BigUint::new(out)
}
