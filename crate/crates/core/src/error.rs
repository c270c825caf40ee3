use thiserror::Error;

use crate::algebra::Ring;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(Ring, Ring),
    #[error("zero has no inverse")]
    ZeroInverse,
    #[error("division is not available over {0}")]
    NoDivision(Ring),
    #[error("modulus {0} is not a supported prime")]
    NotPrime(u64),
    #[error("cannot read {text:?} as an element of {ring}")]
    ParseScalar { text: String, ring: Ring },
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("variable x{index} is out of range (system has {num_vars} variables)")]
    VariableOutOfRange { index: usize, num_vars: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is singular")]
    Singular,
    #[error("nonzero constant polynomial {0} in system")]
    ConstantPolynomial(String),
    #[error("not a solution: {polynomial} evaluates to {value}")]
    NotASolution { polynomial: String, value: String },
    #[error("entry ({row}, {col}) is {found}, expected {expected}")]
    CompletionMismatch {
        row: usize,
        col: usize,
        expected: String,
        found: String,
    },
    #[error("extraction failed: {0}")]
    Extraction(String),
    #[error("size guard exceeded: {size} > {bound}")]
    Guard { size: usize, bound: usize },
    #[error("search budget exceeded: {0}")]
    Budget(String),
    #[error("field too small: {0} (need at least 9 elements)")]
    SmallField(Ring),
    #[error("index {twin} is not a twin of {index}")]
    NotTwin { twin: usize, index: usize },
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("structural check failed: {0}")]
    Structure(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("malformed input: {0}")]
    Format(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
