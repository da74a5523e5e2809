use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is singular")]
    Singular,

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("index out of range: {0}")]
    Index(String),

    #[error("tableau count {count} exceeds cap {cap}")]
    ResourceCap { count: u64, cap: u64 },

    #[error("internal consistency failure: {0}")]
    Inconsistent(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("unsupported monomial order: {0}")]
    UnsupportedOrder(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
