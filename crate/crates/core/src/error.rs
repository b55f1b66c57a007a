use std::path::PathBuf;

use thiserror::Error;

/// Everything that can go wrong while loading data, training, or reporting.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid membership parameters: a = {a}, b = {b} (need finite a < b)")]
    InvalidMembership { a: f64, b: f64 },

    #[error("non-finite input value {0}")]
    NonFiniteInput(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("training diverged{}: {what} became non-finite", epoch.map(|e| format!(" in epoch {e}")).unwrap_or_default())]
    Divergence { epoch: Option<usize>, what: &'static str },

    #[error("run failed for alpha = {alpha}, repeat {repeat}, model {model}: {source}")]
    Run {
        alpha: f64,
        repeat: usize,
        model: &'static str,
        #[source]
        source: Box<Error>,
    },

    #[error("empty dataset: {0}")]
    EmptyData(String),

    #[error("row {row}: {message}")]
    MalformedRow { row: usize, message: String },

    #[error("unknown class label {0:?}")]
    UnknownLabel(String),

    #[error("unknown dataset {0:?}")]
    UnknownDataset(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }

    /// Attach an epoch index to a divergence raised below the training loop.
    pub(crate) fn at_epoch(self, epoch: usize) -> Self {
        match self {
            Error::Divergence { what, .. } => Error::Divergence { epoch: Some(epoch), what },
            other => other,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
