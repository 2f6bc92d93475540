//! Browser demo bindings.
//!
//! The plain functions return JSON text or an error message and are usable
//! natively; the `#[wasm_bindgen]` wrappers expose them to the page.

use realperiodic::families::FamilySpec;
use realperiodic::invariants::{is_backward_invariant, preimage};
use realperiodic::ratmap::{classify_multiplier_of_iterate, fixed_point_data};
use realperiodic::realcert::{certify_auto, default_scan_k, multiplier_json};
use realperiodic::{Budget, CircleSet, IsolatingInterval, RationalMap};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Iterate degrees above this are refused; the page must stay responsive.
const DEMO_MAX_DEGREE: u64 = 256;
const MAX_SAMPLES: usize = 4000;

fn demo_budget() -> Budget {
    Budget {
        max_degree: DEMO_MAX_DEGREE,
        ..Budget::default()
    }
}

fn parse_map(text: &str) -> Result<RationalMap, String> {
    RationalMap::parse(text).map_err(|e| e.to_string())
}

fn parse_set(text: &str) -> Result<Option<CircleSet>, String> {
    if text.trim().is_empty() {
        return Ok(None);
    }
    CircleSet::parse(text).map(Some).map_err(|e| e.to_string())
}

fn horner(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, a| acc * x + a)
}

/// `f^k(x)` in floating point; `None` once the orbit leaves the finite line.
fn orbit_f64(p: &[f64], q: &[f64], k: u32, mut x: f64) -> Option<f64> {
    for _ in 0..k {
        let den = horner(q, x);
        if den == 0.0 || !x.is_finite() {
            return None;
        }
        x = horner(p, x) / den;
    }
    x.is_finite().then_some(x)
}

/// Samples of `f^k` on `[lo, hi]` together with the certified real fixed
/// points of `f^k` and their multiplier classes.
pub fn plot_data(map: &str, k: u32, lo: f64, hi: f64, samples: usize) -> Result<String, String> {
    let f = parse_map(map)?;
    if k == 0 {
        return Err("k must be at least 1".into());
    }
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err("the plot window needs finite lo < hi".into());
    }
    let samples = samples.clamp(2, MAX_SAMPLES);
    let budget = demo_budget();
    let fp = fixed_point_data(&f, k, &budget).map_err(|e| e.to_string())?;

    let (p, q) = (f.p().to_f64_coeffs(), f.q().to_f64_coeffs());
    let step = (hi - lo) / (samples - 1) as f64;
    let curve: Vec<Value> = (0..samples)
        .map(|i| {
            let x = lo + step * i as f64;
            json!([x, orbit_f64(&p, &q, k, x)])
        })
        .collect();

    let mut points = Vec::with_capacity(fp.roots.len());
    for r in &fp.roots {
        let c = classify_multiplier_of_iterate(&f, &fp.iterate, r, k, &budget).map_err(|e| e.to_string())?;
        points.push(json!({
            "x": r.to_f64(),
            "multiplicity": r.multiplicity(),
            "multiplier": multiplier_json(&c),
        }));
    }
    let infinity = if fp.infinity_multiplicity > 0 {
        let at_inf = IsolatingInterval::infinity(fp.infinity_multiplicity);
        let c = classify_multiplier_of_iterate(&f, &fp.iterate, &at_inf, k, &budget).map_err(|e| e.to_string())?;
        json!({ "multiplicity": fp.infinity_multiplicity, "multiplier": multiplier_json(&c) })
    } else {
        Value::Null
    };
    Ok(json!({
        "map": f.to_text(),
        "k": k,
        "deg_Fk": fp.degree(),
        "all_real": fp.all_real,
        "real_count_with_multiplicity": fp.real_count_with_multiplicity(),
        "curve": curve,
        "fixed_points": points,
        "infinity": infinity,
    })
    .to_string())
}

/// The certificate for `map`, using `set` as the candidate invariant set
/// when it is not blank.
pub fn certify(map: &str, set: &str) -> Result<String, String> {
    let f = parse_map(map)?;
    let s = parse_set(set)?;
    let budget = demo_budget();
    let k = default_scan_k(f.degree().max(2), &budget);
    let cert = certify_auto(&f, s.as_ref(), k, &budget).map_err(|e| e.to_string())?;
    serde_json::to_string_pretty(&cert.to_json()).map_err(|e| e.to_string())
}

/// `f⁻¹(S)` and whether `S` is backward invariant.
pub fn preimage_of(map: &str, set: &str) -> Result<String, String> {
    let f = parse_map(map)?;
    let s = parse_set(set)?.ok_or("give a set such as [[\"-1\",\"1\"]]")?;
    let pre = preimage(&f, &s).map_err(|e| e.to_string())?;
    let invariant = is_backward_invariant(&f, &s).map_err(|e| e.to_string())?;
    Ok(json!({
        "S": s.to_json(),
        "preimage": pre.to_json(),
        "backward_invariant": invariant,
    })
    .to_string())
}

/// Map text of a family member given as a JSON spec.
pub fn family_map(spec: &str) -> Result<String, String> {
    let spec = FamilySpec::parse(spec).map_err(|e| e.to_string())?;
    spec.build().map(|f| f.to_text()).map_err(|e| e.to_string())
}

#[wasm_bindgen(js_name = plotData)]
pub fn plot_data_js(map: &str, k: u32, lo: f64, hi: f64, samples: usize) -> Result<String, JsError> {
    plot_data(map, k, lo, hi, samples).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = certify)]
pub fn certify_js(map: &str, set: &str) -> Result<String, JsError> {
    certify(map, set).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = preimage)]
pub fn preimage_js(map: &str, set: &str) -> Result<String, JsError> {
    preimage_of(map, set).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = familyMap)]
pub fn family_map_js(spec: &str) -> Result<String, JsError> {
    family_map(spec).map_err(|e| JsError::new(&e))
}
