use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("generated group exceeds the order cap of {cap}")]
    GroupTooLarge { cap: usize },
    #[error("class functions live on different groups")]
    GroupMismatch,
    #[error("not a character: {0}")]
    NotACharacter(String),
    #[error("induced character is not irreducible (not cuspidal in the model)")]
    NotCuspidal,
    #[error("character is not of tetrahedral type: {0}")]
    NotTetrahedral(String),
    #[error("degenerate bound: denominator {0} is not positive")]
    DegenerateBound(i64),
    #[error("unknown example `{0}`")]
    UnknownExample(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid data: {0}")]
    InvalidData(String),
    #[error("no overlapping unramified primes between the two series")]
    NoData,
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
