use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported field: p={p}, e={e} (supported orders are 2,3,4,5,7,8,9,11,13,16)")]
    UnsupportedField { p: u32, e: u32 },

    #[error("unsupported field order {0} (supported orders are 2,3,4,5,7,8,9,11,13,16)")]
    UnsupportedOrder(u32),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("element {value} is not a valid encoding in GF({q})")]
    InvalidElement { value: u32, q: u32 },

    #[error("index {index} out of range (length {len})")]
    IndexOutOfRange { index: u64, len: u64 },

    #[error("subspace is rank deficient (expected rank {expected}, got {got})")]
    RankDeficient { expected: usize, got: usize },

    #[error("subspace is not totally singular")]
    NotTotallySingular,

    #[error("malformed prefix: {0}")]
    MalformedPrefix(String),

    #[error("budget exceeded: {required} steps required, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u64 },

    #[error("projective system has a {0}")]
    DegenerateColumns(String),

    #[error("operation requires Witt index n >= 3 (got n={0})")]
    LocalCorrectionUnavailable(usize),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
