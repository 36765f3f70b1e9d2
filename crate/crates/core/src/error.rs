use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("index {index} out of range for {what} of size {len}")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        len: usize,
    },
    #[error("repeated {what} index {index}")]
    RepeatedIndex { what: &'static str, index: usize },
    #[error("column width {found} does not match row count {expected}")]
    WidthMismatch { expected: usize, found: usize },
    #[error("matrix has repeated column {0}")]
    NotSimple(usize),
    #[error("cannot canonicalize a configuration with {0} rows (limit is 12)")]
    TooManyRows(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unknown catalog entry `{name}`; known entries: {known}")]
    UnknownCatalogEntry { name: String, known: String },
    #[error("product would have {0} columns, above the configured cap of {1}")]
    ProductTooLarge(u128, usize),
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("{what} requires m >= {min}, got m = {m}")]
    BelowThreshold { what: String, min: usize, m: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("construction `{name}` failed self-verification: {reason}")]
    SelfCheck { name: String, reason: String },
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
