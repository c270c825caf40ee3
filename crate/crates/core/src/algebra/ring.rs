use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest modulus accepted; keeps residue products inside `u64`.
const MAX_MODULUS: u64 = 1 << 31;

/// A prime modulus, checked at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if !(2..MAX_MODULUS).contains(&p) || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Prime(p))
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

fn is_prime(p: u64) -> bool {
    if p < 4 {
        return p >= 2;
    }
    if p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// The ambient ring of a computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ring {
    Integers,
    Rationals,
    PrimeField(Prime),
}

impl Ring {
    pub fn gf(p: u64) -> Result<Ring> {
        Prime::new(p).map(Ring::PrimeField)
    }

    pub fn is_field(self) -> bool {
        !matches!(self, Ring::Integers)
    }

    pub fn modulus(self) -> Option<u64> {
        match self {
            Ring::PrimeField(p) => Some(p.get()),
            _ => None,
        }
    }

    /// Number of elements, `None` for infinite rings.
    pub fn cardinality(self) -> Option<u64> {
        self.modulus()
    }

    /// The smallest field containing this ring.
    pub fn fraction_field(self) -> Ring {
        match self {
            Ring::Integers => Ring::Rationals,
            other => other,
        }
    }

    /// Whether every element of `self` has a canonical image in `target`.
    pub fn embeds_into(self, target: Ring) -> bool {
        self == target || self == Ring::Integers || (self == Ring::Rationals && target.is_field())
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => f.write_str("Z"),
            Ring::Rationals => f.write_str("Q"),
            Ring::PrimeField(p) => write!(f, "gf:{}", p.get()),
        }
    }
}

impl FromStr for Ring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Ring> {
        match s.trim() {
            "Z" | "z" => Ok(Ring::Integers),
            "Q" | "q" => Ok(Ring::Rationals),
            other => {
                let p = other
                    .strip_prefix("gf:")
                    .or_else(|| other.strip_prefix("GF:"))
                    .and_then(|p| p.parse::<u64>().ok())
                    .ok_or_else(|| Error::Format(format!("unknown ring {other:?}")))?;
                Ring::gf(p)
            }
        }
    }
}
