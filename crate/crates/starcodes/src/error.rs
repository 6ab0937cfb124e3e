use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("elements belong to different fields")]
    SpecMismatch,
    #[error("mismatch: {0}")]
    Mismatch(String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("not a basis: {0}")]
    NotABasis(String),
    #[error("operation undefined on the zero code")]
    ZeroCode,
    #[error("search space too large: {0}")]
    TooLarge(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("regularity search passed its cap of {0} steps")]
    RegularityCap(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
