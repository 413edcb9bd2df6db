use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Operands have incompatible dimensions or an index is out of range.
    #[error("shape error: {0}")]
    Shape(String),

    /// Input data violates a mathematical invariant (Hermiticity, unit trace, ...).
    #[error("validity error: {0}")]
    Validity(String),

    #[error("unsupported dimension {dim}: {reason}")]
    UnsupportedDimension { dim: usize, reason: String },

    /// Two independent computation routes disagreed.
    #[error("consistency error: {0}")]
    Consistency(String),
}

impl Error {
    pub(crate) fn shape(msg: impl Into<String>) -> Self {
        Error::Shape(msg.into())
    }

    pub(crate) fn validity(msg: impl Into<String>) -> Self {
        Error::Validity(msg.into())
    }
}
