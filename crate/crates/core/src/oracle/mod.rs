//! Exhaustive reference computations over small prime fields.
//!
//! Everything here enumerates; sizes are bounded by a [`SearchBudget`] and
//! a search that runs out of budget says so (`exhausted == false`) instead
//! of reporting a guess.

mod rank;
mod search;
mod small;

use std::fmt;
use std::str::FromStr;

pub use rank::{symmetric_rank_bruteforce, tensor_rank_bruteforce};
pub use small::{
    min_completion_rank, padded_rank_lower_bound, slice_lemma_check, solve_system_bruteforce, PaddedBound,
    SliceLemmaReport,
};

use crate::algebra::Ring;
use crate::error::{Error, Result};

/// Limits for exhaustive searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    /// Largest rank tried.
    pub max_rank: usize,
    /// Largest number of candidate points or rank-one terms.
    pub max_candidates: u64,
    /// Largest number of term subsets examined for one rank.
    pub max_combinations: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_rank: 8,
            max_candidates: 2_000_000,
            max_combinations: 50_000_000,
        }
    }
}

impl FromStr for SearchBudget {
    type Err = Error;

    /// `max_rank=4,max_candidates=1000`; omitted keys keep their defaults.
    fn from_str(s: &str) -> Result<Self> {
        let mut b = SearchBudget::default();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::Format(format!("budget item {part:?} is not key=value")))?;
            let value: u64 = value
                .trim()
                .parse()
                .map_err(|_| Error::Format(format!("budget value {value:?} is not a count")))?;
            if value == 0 {
                return Err(Error::Format(format!("budget {key} must be positive")));
            }
            match key.trim() {
                "max_rank" => b.max_rank = value as usize,
                "max_candidates" => b.max_candidates = value,
                "max_combinations" => b.max_combinations = value,
                other => return Err(Error::Format(format!("unknown budget key {other:?}"))),
            }
        }
        Ok(b)
    }
}

impl fmt::Display for SearchBudget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "max_rank={},max_candidates={},max_combinations={}",
            self.max_rank, self.max_candidates, self.max_combinations
        )
    }
}

/// Outcome of a minimisation. When `exhausted`, `value` is the exact
/// minimum and equals `lower_bound`; otherwise `value` is the size of the
/// best witness found, if any, and `lower_bound` what the completed part
/// of the search proves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult<W> {
    pub value: Option<usize>,
    pub lower_bound: usize,
    pub witness: Option<W>,
    pub exhausted: bool,
}

fn field_modulus(ring: Ring) -> Result<u64> {
    ring.modulus()
        .ok_or_else(|| Error::Structure(format!("exhaustive search needs a finite field, not {ring}")))
}
