//! Run configuration read from `key=value` files and overridden by flags.

use std::fs;
use std::path::Path;

use realperiodic::{Budget, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl Format {
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(Error::Parse(format!("unknown output format {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct RunConfig {
    pub budget: Budget,
    /// Largest iterate index for scans; `None` derives it from the degree
    /// budget.
    pub scan_k: Option<u32>,
    pub threads: Option<usize>,
    pub format: Option<Format>,
}

fn positive<T: std::str::FromStr + PartialOrd + Default>(key: &str, value: &str) -> Result<T> {
    match value.trim().parse::<T>() {
        Ok(v) if v > T::default() => Ok(v),
        _ => Err(Error::Parse(format!(
            "{key} must be a positive integer, found {value:?}"
        ))),
    }
}

impl RunConfig {
    /// Applies one `key=value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key.trim() {
            "max_iterate_degree" => self.budget.max_degree = positive(key, value)?,
            "max_coeff_bits" => self.budget.max_coeff_bits = positive(key, value)?,
            "refine_depth" => self.budget.refine_depth = positive(key, value)?,
            "max_exact_degree" => self.budget.max_exact_degree = positive(key, value)?,
            "scan_K" | "scan_k" => self.scan_k = Some(positive(key, value)?),
            "threads" => self.threads = Some(positive(key, value)?),
            "output_format" => self.format = Some(Format::parse(value)?),
            other => return Err(Error::Parse(format!("unknown config key {other:?}"))),
        }
        Ok(())
    }

    /// Reads `key=value` lines; blank lines and `#` comments are skipped.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("config line {}: expected key=value", n + 1)))?;
            self.set(key, value)?;
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<()> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read config {}: {e}", path.display())))?;
        self.apply_text(&text)
    }
}
