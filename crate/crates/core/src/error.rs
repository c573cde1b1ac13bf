use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{what} = {value} is out of range (limit {limit})")]
    Range {
        what: &'static str,
        value: usize,
        limit: usize,
    },
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("shift enumeration needs {pairs} pairs, above the budget of {budget}; use a smaller grid or approximate sampling")]
    Budget { pairs: u128, budget: u128 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("assertion failed: {0}")]
    Assertion(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn range(what: &'static str, value: usize, limit: usize) -> Error {
    Error::Range { what, value, limit }
}
