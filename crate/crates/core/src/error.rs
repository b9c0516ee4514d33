use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Stats(#[from] StatsError),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("malformed input: {0}")]
    Format(String),

    #[error("inputs do not match: {0}")]
    Mismatch(String),
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }

    /// Stable machine-readable class name, used in CLI error lines.
    pub fn class(&self) -> &'static str {
        match self {
            Error::Config(_) => "config",
            Error::Stats(_) => "stats",
            Error::Io { .. } => "io",
            Error::Csv(_) | Error::Json(_) | Error::Format(_) => "format",
            Error::Mismatch(_) => "mismatch",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StatsError {
    #[error("sample is empty")]
    Empty,
    #[error("need at least {needed} values, got {got}")]
    TooFew { needed: usize, got: usize },
    #[error("mean is zero; coefficient of variation is undefined")]
    ZeroMean,
    #[error("samples have zero variance")]
    ZeroVariance,
    #[error("agent {0} does not appear in the records")]
    UnknownAgent(u32),
}
