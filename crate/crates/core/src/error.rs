use thiserror::Error;

/// Errors raised by constructors, searches and solvers in this crate.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("table is not a group: {0}")]
    InvalidTable(String),

    #[error("{what} exceeds cap: {size} > {cap}")]
    CapExceeded { what: String, size: u128, cap: u128 },

    #[error("search budget exhausted: {0}")]
    BudgetExhausted(String),

    #[error("invalid module: {0}")]
    InvalidModule(String),

    #[error("invalid cochain: {0}")]
    InvalidCochain(String),

    #[error("invalid cell: {0}")]
    InvalidCell(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("serialization: {0}")]
    Serialization(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn cap(what: impl Into<String>, size: impl TryInto<u128>, cap: impl TryInto<u128>) -> Self {
        Error::CapExceeded {
            what: what.into(),
            size: size.try_into().unwrap_or(u128::MAX),
            cap: cap.try_into().unwrap_or(u128::MAX),
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Serialization(e.to_string())
    }
}
