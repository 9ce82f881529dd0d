use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A configuration field violates its allowed range.
    #[error("invalid configuration value for `{field}`: {reason}")]
    Config { field: String, reason: String },

    /// A structured-text config or override could not be parsed.
    #[error("{location}: {reason}")]
    Parse { location: String, reason: String },

    /// An estimator or formula was called outside its domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A formula was evaluated at one of its poles.
    #[error("singularity: {0}")]
    Singularity(String),

    /// Internal bookkeeping reached a state the engine never produces.
    #[error("logic error: {0}")]
    Logic(String),

    #[error("unknown figure preset `{given}` (valid: {valid})")]
    UnknownPreset { given: String, valid: String },

    #[error("I/O error at {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn config(field: &str, reason: impl Into<String>) -> Self {
        Error::Config {
            field: field.to_string(),
            reason: reason.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
