use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("singular matrix")]
    Singular,
    #[error("bidegree bound exceeded: {0}")]
    Bidegree(String),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("not positive definite: {0}")]
    NotPositiveDefinite(String),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("twist bookkeeping mismatch: {0}")]
    TwistMismatch(String),
    #[error("subspace is not a graph: {0}")]
    NonGraph(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("transversality fails at {0}")]
    Transversality(String),
    #[error("retry budget exhausted after {0} attempts")]
    RetryExhausted(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
