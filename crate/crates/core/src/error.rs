use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("generator counts differ: {left} vs {right}")]
    GeneratorMismatch { left: usize, right: usize },

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("invalid term: {0}")]
    InvalidTerm(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("inverse temperature must be non-negative, got {0}")]
    NegativeBeta(f64),

    #[error("time must be non-negative, got {0}")]
    NegativeTime(f64),

    #[error("qubit sets must be disjoint and in range")]
    InvalidQubitSet,

    #[error("time grid is empty")]
    EmptyGrid,

    #[error("enumeration budget exceeded: n_fermions={n_fermions}, n_terms={n_terms}")]
    BudgetExceeded { n_fermions: usize, n_terms: usize },

    #[error("series must contain both signs of the coupling")]
    SingleSignSeries,

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
