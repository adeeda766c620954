use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An input exceeds a cost or memory guard.
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// A configuration constraint does not hold.
    #[error("validation failed: {constraint} (offending value: {value})")]
    Validation { constraint: String, value: String },

    /// Jets with incompatible centers or orders were combined.
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("singular operation: {0}")]
    Singularity(String),

    /// A numeric result left the domain in which it is meaningful
    /// (for example a non-positive Levinson functional).
    #[error("numeric domain error: {0}")]
    Domain(String),

    #[error("pole: {0}")]
    Pole(String),

    #[error("non-finite value: {0}")]
    NonFinite(String),

    #[error("optimization failed: {0}")]
    Optimization(String),
}

impl Error {
    pub fn validation(constraint: impl Into<String>, value: impl ToString) -> Self {
        Error::Validation {
            constraint: constraint.into(),
            value: value.to_string(),
        }
    }

    /// Short machine-readable category name.
    pub fn category(&self) -> &'static str {
        match self {
            Error::Capacity(_) => "capacity",
            Error::Validation { .. } => "validation",
            Error::Shape(_) => "shape",
            Error::Singularity(_) => "singularity",
            Error::Domain(_) => "domain",
            Error::Pole(_) => "pole",
            Error::NonFinite(_) => "non-finite",
            Error::Optimization(_) => "optimization",
        }
    }
}
