use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("containment violated: {0}")]
    NotContained(String),

    #[error("enumeration cap exceeded: dimension {dim} > cap {cap}")]
    CapExceeded { dim: usize, cap: usize },

    #[error("gate entry requested outside its domain at {0}")]
    OutOfDomain(String),

    #[error("malformed gate: {0}")]
    MalformedGate(String),

    #[error("incompatible gates: {0}")]
    Incompatible(String),

    #[error("invalid stabilizer generators: {0}")]
    InvalidStabilizer(String),

    #[error("gate does not preserve the codespace")]
    NotPreserved,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
