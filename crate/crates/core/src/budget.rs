//! Explicit resource limits. Exceeding one is a hard error, never a silently
//! truncated answer.

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Largest iterate degree `dᵏ` that may be formed.
    pub max_degree: u64,
    /// Largest coefficient bit length allowed in an iterate.
    pub max_coeff_bits: u64,
    /// Binary digits of precision available to multiplier refinement: an
    /// isolating interval may be bisected down to width `2^-refine_depth`.
    pub refine_depth: u32,
    /// Largest fixed-point polynomial degree handed to the exact Sturm path
    /// when the fast sign-alternation certificate does not apply.
    pub max_exact_degree: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_degree: 4096,
            max_coeff_bits: 1_000_000,
            refine_depth: 64,
            max_exact_degree: 512,
        }
    }
}

impl Budget {
    pub fn check_degree(&self, degree: u64) -> Result<()> {
        if degree > self.max_degree {
            return Err(Error::Budget(format!(
                "iterate degree {degree} exceeds max_iterate_degree {}",
                self.max_degree
            )));
        }
        Ok(())
    }

    pub fn check_bits(&self, bits: u64) -> Result<()> {
        if bits > self.max_coeff_bits {
            return Err(Error::Budget(format!(
                "coefficient size {bits} bits exceeds max_coeff_bits {}",
                self.max_coeff_bits
            )));
        }
        Ok(())
    }

    /// `d^k` if it fits the degree budget.
    pub fn iterate_degree(&self, d: u64, k: u32) -> Result<u64> {
        let deg = d
            .checked_pow(k)
            .ok_or_else(|| Error::Budget(format!("degree {d}^{k} overflows")))?;
        self.check_degree(deg)?;
        Ok(deg)
    }
}
