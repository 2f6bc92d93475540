//! Grid scans: one row per (family member, k).

use std::time::Instant;

use rayon::prelude::*;
use realperiodic::exactpoly::parse_rational;
use realperiodic::families::FamilySpec;
use realperiodic::realcert::{default_scan_k, IterateScan};
use realperiodic::{Budget, Error, RationalMap, Result};
use serde_json::{json, Value};

/// One scan target.
#[derive(Clone, Debug)]
pub struct Member {
    pub name: String,
    pub map: RationalMap,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Row {
    pub name: String,
    pub d: usize,
    pub k: u32,
    pub deg_fk: Option<usize>,
    pub real_count: Option<usize>,
    pub all_real: Option<bool>,
    pub wall_time_ms: Option<u128>,
    pub note: String,
}

pub const CSV_HEADER: [&str; 8] = [
    "name",
    "d",
    "k",
    "deg_Fk",
    "real_count_with_multiplicity",
    "all_real",
    "wall_time_ms",
    "note",
];

impl Row {
    pub fn csv_fields(&self) -> [String; 8] {
        let opt = |v: Option<String>| v.unwrap_or_default();
        [
            self.name.clone(),
            self.d.to_string(),
            self.k.to_string(),
            opt(self.deg_fk.map(|v| v.to_string())),
            opt(self.real_count.map(|v| v.to_string())),
            opt(self.all_real.map(|v| v.to_string())),
            opt(self.wall_time_ms.map(|v| v.to_string())),
            self.note.clone(),
        ]
    }

    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "d": self.d,
            "k": self.k,
            "deg_Fk": self.deg_fk,
            "real_count_with_multiplicity": self.real_count,
            "all_real": self.all_real,
            "wall_time_ms": self.wall_time_ms.map(|t| t as u64),
            "note": self.note,
        })
    }
}

/// Parses `"2,3,5"`, `"3..6"` (inclusive) or a mix of both.
pub fn parse_int_list(text: &str) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let bad = || Error::Parse(format!("bad integer or range {item:?}"));
        match item.split_once("..") {
            Some((a, b)) => {
                let a: u64 = a.trim().parse().map_err(|_| bad())?;
                let b: u64 = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
                if a > b {
                    return Err(bad());
                }
                out.extend(a..=b);
            }
            None => out.push(item.parse().map_err(|_| bad())?),
        }
    }
    if out.is_empty() {
        return Err(Error::Parse(format!("empty list {text:?}")));
    }
    Ok(out)
}

/// Family members of a grid, in the order given.
pub fn grid(family: &str, ds: &[u64], eps: &[String], seeds: &[u64]) -> Result<Vec<Member>> {
    let mut specs = Vec::new();
    match family {
        "chebyshev" | "hermite" => {
            for &d in ds {
                specs.push(FamilySpec::new(family).with_param("d", json!(d)));
            }
        }
        "perturbed_cheb2" => {
            for e in eps {
                let e = parse_rational(e)?;
                specs.push(FamilySpec::new(family).with_param("eps", json!(e.to_string())));
            }
        }
        "interlacing_random" => {
            for &d in ds {
                for &s in seeds {
                    specs.push(FamilySpec::new(family).with_param("d", json!(d)).with_seed(s));
                }
            }
        }
        other => {
            return Err(Error::Parse(format!(
                "cannot scan family {other:?}; use chebyshev, hermite, perturbed_cheb2 or interlacing_random"
            )))
        }
    }
    if specs.is_empty() {
        return Err(Error::Parse("scan grid is empty".into()));
    }
    specs
        .into_iter()
        .map(|s| {
            Ok(Member {
                name: s.label(),
                map: s.build()?,
            })
        })
        .collect()
}

/// Rows for `k = 1..=max_k` (or up to the degree budget). A budget failure
/// ends the member with one row carrying the reason.
pub fn scan_member(m: &Member, max_k: Option<u32>, budget: &Budget, timing: bool) -> Vec<Row> {
    let d = m.map.degree();
    let row = |k| Row {
        name: m.name.clone(),
        d,
        k,
        deg_fk: None,
        real_count: None,
        all_real: None,
        wall_time_ms: None,
        note: String::new(),
    };
    if d < 2 {
        let mut r = row(1);
        r.note = "degree below 2".into();
        return vec![r];
    }
    let max_k = max_k.unwrap_or_else(|| default_scan_k(d, budget));
    let mut rows = Vec::new();
    let mut start = Instant::now();
    for (k, result) in IterateScan::new(&m.map, max_k, budget) {
        let mut r = row(k);
        match result {
            Ok(fp) => {
                r.deg_fk = Some(fp.degree());
                r.real_count = Some(fp.real_count_with_multiplicity());
                r.all_real = Some(fp.all_real);
            }
            Err(Error::Budget(msg)) => r.note = format!("budget: {msg}"),
            Err(e) => r.note = format!("error: {e}"),
        }
        if timing {
            r.wall_time_ms = Some(start.elapsed().as_millis());
        }
        rows.push(r);
        start = Instant::now();
    }
    rows
}

/// All rows of a grid, members processed in parallel and emitted in grid
/// order.
pub fn scan_grid(members: &[Member], max_k: Option<u32>, budget: &Budget, timing: bool) -> Vec<Row> {
    members
        .par_iter()
        .map(|m| scan_member(m, max_k, budget, timing))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn int_lists() {
        assert_eq!(parse_int_list("2,3,5").unwrap(), vec![2, 3, 5]);
        assert_eq!(parse_int_list("3..6").unwrap(), vec![3, 4, 5, 6]);
        assert_eq!(parse_int_list("1, 4..=5").unwrap(), vec![1, 4, 5]);
        assert!(parse_int_list("5..3").is_err());
        assert!(parse_int_list("x").is_err());
        assert!(parse_int_list("").is_err());
    }

    #[test]
    fn chebyshev_rows() {
        let members = grid("chebyshev", &[2], &[], &[]).unwrap();
        let rows = scan_grid(&members, Some(5), &Budget::default(), false);
        assert_eq!(rows.len(), 5);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.k, i as u32 + 1);
            assert_eq!(r.all_real, Some(true));
            assert_eq!(r.deg_fk, Some(1 << r.k));
        }
    }

    #[test]
    fn budget_failure_is_recorded() {
        let members = grid("hermite", &[3], &[], &[]).unwrap();
        let budget = Budget {
            max_degree: 30,
            ..Budget::default()
        };
        let rows = scan_grid(&members, Some(5), &budget, false);
        assert_eq!(rows.len(), 4);
        assert!(rows[3].note.starts_with("budget:"));
        assert_eq!(rows[3].all_real, None);
    }
}
