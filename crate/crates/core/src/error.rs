use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors from configuration construction, evaluation, and certification.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid cardinality {got}: need at least {min} points")]
    InvalidCardinality { got: usize, min: usize },

    #[error("vector is not unit length: |norm - 1| = {deviation:.3e} exceeds {tol:.1e}")]
    NonUnitVector { deviation: f64, tol: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid node system: {0}")]
    InvalidNodeSystem(String),

    #[error("unsupported configuration: {0}")]
    UnsupportedConfiguration(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("certification failed: {0}")]
    Certification(String),

    #[error("internal invariant failure: {0}")]
    Internal(String),

    #[error("invalid potential spec '{spec}': {reason}")]
    PotentialSpec { spec: String, reason: String },

    #[error("unknown configuration '{given}'{}", suggestion_suffix(suggestions))]
    UnknownConfiguration {
        given: String,
        suggestions: Vec<String>,
    },

    #[error("parse error in {}: line {line}, column {column}: {message}", path.display())]
    Parse {
        path: PathBuf,
        line: usize,
        column: usize,
        message: String,
    },

    #[error("usage error: {0}")]
    Usage(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code for the CLI: 2 for usage-level problems, 1 for
    /// verification failures (a certificate that does not validate, an
    /// unsupported configuration, a broken internal invariant).
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidCardinality { .. }
            | Error::NonUnitVector { .. }
            | Error::Domain(_)
            | Error::Precondition(_)
            | Error::PotentialSpec { .. }
            | Error::UnknownConfiguration { .. }
            | Error::Parse { .. }
            | Error::Usage(_)
            | Error::Io(_) => 2,
            Error::InvalidNodeSystem(_)
            | Error::UnsupportedConfiguration(_)
            | Error::Certification(_)
            | Error::Internal(_) => 1,
        }
    }
}

fn suggestion_suffix(suggestions: &[String]) -> String {
    if suggestions.is_empty() {
        String::new()
    } else {
        format!(" (did you mean: {}?)", suggestions.join(", "))
    }
}
