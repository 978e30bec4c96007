use thiserror::Error;

/// Errors surfaced by the library.
///
/// `Domain` marks a precondition violation (caller asked for something the
/// theory does not define), `Numerical` a failure of the numerics themselves
/// (step underflow, non-finite state, missing bracket).
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("step size underflow at r = {r:.6e}")]
    StepUnderflow { r: f64 },

    #[error("non-finite state encountered at r = {r:.6e}")]
    NonFinite { r: f64 },

    #[error("i/o error: {0}")]
    Io(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn numerical(msg: impl Into<String>) -> Self {
        Error::Numerical(msg.into())
    }

    /// Process exit code convention: 1 for domain errors, 2 for numerical
    /// failures, 64 for usage problems (handled by the CLI before this).
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_) | Error::Parse(_) => 1,
            _ => 2,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
