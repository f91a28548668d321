use thiserror::Error;

#[derive(Debug, Error)]
pub enum CasimirError {
    /// A parameter is outside the domain the routine can handle.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A query fell outside the range covered by tabulated data.
    #[error("{what} = {value} outside tabulated range [{lo}, {hi}]")]
    RangeError {
        what: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    /// A data file could not be parsed.
    #[error("data error in {path}: {message}")]
    DataError { path: String, message: String },

    /// An algorithm failed to produce a trustworthy number.
    #[error("numerical failure: {0}")]
    NumericalError(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CasimirError {
    /// Process exit code for the CLI: 1 for bad input or data, 2 for
    /// numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CasimirError::NumericalError(_) => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, CasimirError>;
