//! Exact generators for the standard example maps.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::exactpoly::{parse_rational, IntPoly};
use crate::ratmap::RationalMap;
use crate::Rational;

/// `T_d` from `T₀ = 1`, `T₁ = z`, `T_{n+1} = 2z·T_n − T_{n−1}`.
pub fn chebyshev(d: u32) -> Result<RationalMap> {
    if d == 0 {
        return Err(Error::Family("chebyshev needs d >= 1".into()));
    }
    let two_z = IntPoly::from_i64s(&[0, 2]);
    let (mut prev, mut cur) = (IntPoly::one(), IntPoly::z());
    for _ in 1..d {
        let next = &(&two_z * &cur) - &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    RationalMap::polynomial(cur)
}

/// Physicists' Hermite polynomial from `H₀ = 1`, `H₁ = 2z`,
/// `H_{n+1} = 2z·H_n − 2n·H_{n−1}`.
pub fn hermite(d: u32) -> Result<RationalMap> {
    RationalMap::polynomial(hermite_poly(d)?)
}

/// The polynomial `H_d` itself, without normalization into a map.
pub fn hermite_poly(d: u32) -> Result<IntPoly> {
    if d == 0 {
        return Err(Error::Family("hermite needs d >= 1".into()));
    }
    let two_z = IntPoly::from_i64s(&[0, 2]);
    let (mut prev, mut cur) = (IntPoly::one(), two_z.clone());
    for n in 1..d {
        let next = &(&two_z * &cur) - &prev.scale(&BigInt::from(2 * n));
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(cur)
}

fn rmul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn radd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_default();
            let y = b.get(i).cloned().unwrap_or_default();
            x + y
        })
        .collect()
}

fn rscale(a: &[Rational], k: &Rational) -> Vec<Rational> {
    a.iter().map(|x| x * k).collect()
}

fn linear(b: &Rational) -> Vec<Rational> {
    vec![-b.clone(), Rational::one()]
}

fn product_of_linears<'a>(roots: impl Iterator<Item = &'a Rational>) -> Vec<Rational> {
    roots.fold(vec![Rational::one()], |acc, r| rmul(&acc, &linear(r)))
}

/// `z·(c − Σ aᵢ/(z − bᵢ))²`, expanded over the common denominator
/// `∏(z − bᵢ)²` and reduced.
pub fn fatou_form(c: &Rational, a: &[Rational], b: &[Rational]) -> Result<RationalMap> {
    if a.len() != b.len() {
        return Err(Error::Family("fatou_form needs as many a as b".into()));
    }
    if c < &Rational::zero() || a.iter().any(|x| x <= &Rational::zero()) || b.iter().any(|x| x < &Rational::zero()) {
        return Err(Error::Family("fatou_form needs c >= 0, a > 0, b >= 0".into()));
    }
    for (i, x) in b.iter().enumerate() {
        if b[..i].contains(x) {
            return Err(Error::Family(format!("fatou_form has repeated b = {x}")));
        }
    }
    let all = product_of_linears(b.iter());
    let mut inner = rscale(&all, c);
    for (i, ai) in a.iter().enumerate() {
        let others = product_of_linears(b.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, x)| x));
        inner = radd(&inner, &rscale(&others, &-ai.clone()));
    }
    let z = vec![Rational::zero(), Rational::one()];
    let num = rmul(&z, &rmul(&inner, &inner));
    let den = rmul(&all, &all);
    RationalMap::from_rationals(&num, &den)
}

/// `(2 − ε)z² + ε − 1`.
pub fn perturbed_cheb2(eps: &Rational) -> Result<RationalMap> {
    let one = Rational::one();
    let two = Rational::from_integer(2.into());
    RationalMap::from_rationals(&[eps - &one, Rational::zero(), two - eps], &[one])
}

/// Seeded random real fibered map `p/q` of degree `d`: `2d − 1` distinct
/// roots `n/8` with `|n| ≤ 80`, alternately assigned to `p` (degree `d`) and
/// `q` (degree `d − 1`, monic), and leading coefficient `1 + m/8` with
/// `1 ≤ m ≤ 16` for `p`. The same seed gives the same map on every platform.
pub fn interlacing_random(d: u32, seed: u64) -> Result<RationalMap> {
    if d < 2 {
        return Err(Error::Family("interlacing_random needs d >= 2".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picks: Vec<i64> = Vec::with_capacity(2 * d as usize - 1);
    while picks.len() < 2 * d as usize - 1 {
        let n = rng.random_range(-80..=80);
        if !picks.contains(&n) {
            picks.push(n);
        }
    }
    picks.sort_unstable();
    let m: i64 = rng.random_range(1..=16);
    let roots: Vec<Rational> = picks.iter().map(|&n| Rational::new(n.into(), 8.into())).collect();
    let lead = Rational::new((8 + m).into(), 8.into());
    let p = rscale(&product_of_linears(roots.iter().step_by(2)), &lead);
    let q = product_of_linears(roots.iter().skip(1).step_by(2));
    RationalMap::from_rationals(&p, &q)
}

/// A named family member with its parameters, as read from JSON
/// `{"name": ..., "params": {...}, "seed": n}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub name: String,
    #[serde(default)]
    pub params: Map<String, Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

fn value_rational(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => parse_rational(&n.to_string()),
        other => Err(Error::Family(format!("expected a rational, found {other}"))),
    }
}

impl FamilySpec {
    pub fn new(name: &str) -> Self {
        FamilySpec {
            name: name.to_string(),
            params: Map::new(),
            seed: None,
        }
    }

    pub fn with_param(mut self, key: &str, value: Value) -> Self {
        self.params.insert(key.to_string(), value);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("family spec: {e}")))
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("family spec serializes")
    }

    fn param(&self, key: &str) -> Result<&Value> {
        self.params
            .get(key)
            .ok_or_else(|| Error::Family(format!("{} needs parameter {key}", self.name)))
    }

    fn rational(&self, key: &str) -> Result<Rational> {
        value_rational(self.param(key)?)
    }

    fn rationals(&self, key: &str) -> Result<Vec<Rational>> {
        match self.param(key)? {
            Value::Array(xs) => xs.iter().map(value_rational).collect(),
            other => Err(Error::Family(format!("{key} must be a list, found {other}"))),
        }
    }

    fn degree(&self) -> Result<u32> {
        let d = self.rational("d")?;
        if !d.is_integer() || d < Rational::one() || d > Rational::from_integer(u32::MAX.into()) {
            return Err(Error::Family(format!("d must be a positive integer, found {d}")));
        }
        Ok(d.to_integer().try_into().expect("checked range"))
    }

    /// Short label used in scan reports.
    pub fn label(&self) -> String {
        match self.name.as_str() {
            "perturbed_cheb2" => match self.rational("eps") {
                Ok(e) => format!("perturbed_cheb2(eps={e})"),
                Err(_) => self.name.clone(),
            },
            "interlacing_random" => format!("interlacing_random(seed={})", self.seed.unwrap_or(0)),
            _ => self.name.clone(),
        }
    }

    pub fn build(&self) -> Result<RationalMap> {
        match self.name.as_str() {
            "chebyshev" => chebyshev(self.degree()?),
            "hermite" => hermite(self.degree()?),
            "fatou_form" => fatou_form(&self.rational("c")?, &self.rationals("a")?, &self.rationals("b")?),
            "perturbed_cheb2" => perturbed_cheb2(&self.rational("eps")?),
            "interlacing_random" => {
                let seed = self
                    .seed
                    .ok_or_else(|| Error::Family("interlacing_random needs a seed".into()))?;
                interlacing_random(self.degree()?, seed)
            }
            other => Err(Error::Family(format!("unknown family {other}"))),
        }
    }
}
