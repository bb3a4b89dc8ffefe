use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("size error: total dimension {requested} exceeds the configured maximum {max}")]
    Size { requested: usize, max: usize },

    #[error("shape error: {0}")]
    Shape(String),

    #[error("numeric error after {iterations} iterations: {what}")]
    Numeric { what: String, iterations: usize },

    #[error("operator is not positive semidefinite (minimum eigenvalue {min_eigenvalue:e})")]
    NotPsd { min_eigenvalue: f64 },

    #[error("invalid measurement: {0}")]
    MeasurementSpec(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("index {index} out of range (length {len})")]
    Range { index: usize, len: usize },

    #[error("unknown symbol {0:?}")]
    Key(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("validation error: {0}")]
    Validation(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn shape(msg: impl Into<String>) -> Self {
        Error::Shape(msg.into())
    }

    pub(crate) fn numeric(what: impl Into<String>, iterations: usize) -> Self {
        Error::Numeric {
            what: what.into(),
            iterations,
        }
    }

    /// True for errors caused by bad input data rather than by a failure inside the library.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::Shape(_)
                | Error::NotPsd { .. }
                | Error::MeasurementSpec(_)
                | Error::Parameter(_)
                | Error::Range { .. }
                | Error::Key(_)
                | Error::Parse(_)
                | Error::Validation(_)
                | Error::Size { .. }
        )
    }
}
