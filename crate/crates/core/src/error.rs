use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix must be square and non-empty")]
    NotSquare,

    #[error("invalid strategy: {0}")]
    InvalidStrategy(String),

    #[error("game is not symmetric (C != R^T)")]
    NotSymmetric,

    #[error("delta must satisfy 0 < delta < 1, got {0}")]
    InvalidDelta(String),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("malformed linear system: {0}")]
    MalformedSystem(String),

    #[error("empty multiset")]
    EmptyMultiset,

    #[error("multiset size {got} does not match kappa {expected}")]
    MultisetSize { expected: u64, got: u64 },

    #[error("search space of {space} pairs exceeds budget of {budget}")]
    BudgetExceeded { space: String, budget: u64 },

    #[error("guarantee violated: {0}")]
    GuaranteeViolated(String),

    #[error("game dimension {n} exceeds oracle guard {max_n}")]
    OracleGuard { n: usize, max_n: usize },

    #[error("profile is not an exact Nash equilibrium (epsilon_ne = {0})")]
    NotExactEquilibrium(String),

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
