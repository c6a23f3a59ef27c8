use thiserror::Error;

/// Errors produced by the library. Every variant is a domain or input
/// problem; none of the operations panic on well-formed values.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid Frobenius representation: {0}")]
    InvalidFrobenius(String),

    #[error("cannot parse {what}: offending token `{token}`")]
    Parse { what: &'static str, token: String },

    #[error("constant term {0} is not a unit")]
    NotUnit(String),

    #[error("polynomial division left a nonzero remainder")]
    InexactDivision,

    /// An operation was applied outside the set on which it is defined.
    #[error("{0}")]
    Domain(String),

    /// An internal consistency check failed. Seeing this means a bug.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
