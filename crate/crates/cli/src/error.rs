use std::io;
use std::path::PathBuf;

use thiserror::Error;

/// Problems with a configuration document.
#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("missing field `{0}`")]
    MissingField(String),
    #[error("unknown key `{0}`")]
    UnknownKey(String),
    #[error("`{key}` is out of range: {reason}")]
    OutOfRange { key: String, reason: String },
    #[error("`{key}` has the wrong type, expected {expected}")]
    WrongType { key: String, expected: &'static str },
    #[error("`{0}` and `{1}` are mutually exclusive")]
    MutuallyExclusive(&'static str, &'static str),
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("invalid configuration: {0}")]
    Config(#[from] ConfigError),
    #[error("{0}")]
    Validation(String),
    #[error("numeric failure: {0}")]
    Numeric(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
}

impl CliError {
    /// 1 usage, 2 validation, 3 numeric or integration failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Config(_) | CliError::Validation(_) | CliError::Io { .. } => 2,
            CliError::Numeric(_) => 3,
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

impl From<tripartite_core::Error> for CliError {
    fn from(e: tripartite_core::Error) -> Self {
        use tripartite_core::Error as E;
        match e {
            E::UnknownParameter(_) | E::UnknownPreset(_) | E::UnknownSweep(_) => {
                CliError::Usage(e.to_string())
            }
            E::Instability { .. } | E::VariantNotConverged { .. } => {
                CliError::Numeric(e.to_string())
            }
            _ => CliError::Validation(e.to_string()),
        }
    }
}
