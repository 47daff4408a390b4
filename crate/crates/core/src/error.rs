use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("probability vector must be non-empty")]
    EmptyVector,
    #[error("entry {index} is negative ({value})")]
    NegativeEntry { index: usize, value: f64 },
    #[error("entry {index} is not finite")]
    NonFiniteEntry { index: usize },
    #[error("all entries are zero; total mass must be positive")]
    ZeroMass,
    #[error("entries sum to {sum}, which is not within 1e-6 of 1")]
    NotNormalized { sum: f64 },
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("index {index} out of range for dimension {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("indices must differ (both {0})")]
    SameIndex(usize),
    #[error("lambda {0} outside [0, 1]")]
    LambdaOutOfRange(f64),
    #[error("point is on the simplex boundary; finite differences would leave the domain")]
    BoundaryPoint,
    #[error("k = {k} outside 0..={n}")]
    OutcomeOutOfRange { k: usize, n: usize },
    #[error("{method} budget exceeded: {detail}")]
    BudgetExceeded { method: &'static str, detail: String },
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter { name, reason: reason.into() }
    }
}
