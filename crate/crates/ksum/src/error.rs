use thiserror::Error;

use crate::types::Mode;

/// Library-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// Value addition left the representable range (integer wraparound or a
    /// non-finite real result).
    #[error("value arithmetic overflowed")]
    Overflow,

    /// A scratch acquisition would cross the meter's hard space cap.
    #[error("space cap exceeded: cap {cap} words, attempted {attempted}")]
    SpaceCapExceeded { cap: u64, attempted: u64 },

    /// A solver refused to materialize a table larger than its configured
    /// budget.
    #[error("materialization budget exceeded: budget {budget} words, required {required}")]
    BudgetExceeded { budget: u64, required: u64 },

    #[error("rank {rank} out of range for length {len}")]
    RankOutOfRange { rank: usize, len: usize },

    #[error("operation requires {expected} mode but instance is {found}")]
    ModeMismatch { expected: Mode, found: Mode },

    #[error("solver {solver} does not support arity {k}")]
    UnsupportedArity { solver: String, k: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
