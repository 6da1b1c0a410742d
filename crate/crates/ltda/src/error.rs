use thiserror::Error;

use crate::metric_space::ValidationReport;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid labeled metric space:\n{0}")]
    InvalidSpace(ValidationReport),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("label count mismatch: {0} vs {1}")]
    LabelCountMismatch(usize, usize),
    #[error("enumeration budget exceeded: {needed:.3e} candidates, budget {budget:.3e}")]
    BudgetExceeded { needed: f64, budget: f64 },
    #[error("degree {degree} exceeds the computed dimension {max_dim}")]
    DegreeTooHigh { degree: usize, max_dim: usize },
    #[error("inconsistent module: {0}")]
    InconsistentModule(String),
    #[error("grid mismatch: {0}")]
    GridMismatch(String),
    #[error("format error: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
