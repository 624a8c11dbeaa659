use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("coordinate count mismatch: expected {expected}, got {got}")]
    BaseMismatch { expected: usize, got: usize },
    #[error("variance mismatch: {0}")]
    VarianceMismatch(&'static str),
    #[error("degree error: {0}")]
    Degree(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("point has {got} coordinates, expected {expected}")]
    PointDimension { expected: usize, got: usize },
    #[error("invalid algebroid: {0}")]
    InvalidAlgebroid(String),
    #[error("cocycle is not closed: residual {0}")]
    NotClosed(String),
    #[error("N∘π♯ ≠ π♯∘N*: symmetric defect {0}")]
    MusicalNonCommutation(String),
    #[error("bundle map violates the block conditions: {0}")]
    BlockConditions(String),
    #[error("matrix is not invertible with polynomial inverse: {0}")]
    NotInvertible(String),
    #[error("splitting is not a quasi-Manin triple: {0}")]
    Splitting(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("{line}:{column}: {message}")]
    Parse { line: usize, column: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
