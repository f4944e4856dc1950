use thiserror::Error;

/// Errors raised while constructing or evaluating connectives.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("argument {0} is outside the unit interval [0, 1]")]
    Domain(f64),

    #[error("value {0} is not a valid extended non-negative real")]
    NegativeExtended(f64),

    #[error("expected a {expected} generator, got a {found} one")]
    Direction { expected: &'static str, found: &'static str },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid table: {0}")]
    InvalidTable(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Config(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}
