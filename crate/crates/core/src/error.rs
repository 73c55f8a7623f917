use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("format error: {0}")]
    Format(String),

    #[error("parse error at row {row}: {message}")]
    Parse { row: u64, message: String },

    #[error("invalid template {text:?}: {reason}")]
    InvalidTemplate { text: String, reason: &'static str },

    #[error("content {content:?} does not align with template {template:?}")]
    Alignment { content: String, template: String },

    #[error("records without a template: line ids {line_ids:?}")]
    Unlabeled { line_ids: Vec<usize> },

    #[error("length mismatch: predicted {predicted} records, truth {truth}")]
    Shape { predicted: usize, truth: usize },

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("metric undefined: {0}")]
    UndefinedMetric(&'static str),

    #[error("invalid reference statistics: {0}")]
    InvalidReference(&'static str),

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("empty pool: {0}")]
    EmptyPool(String),

    #[error("dataset {dataset:?} has {available} records, {requested} requested")]
    Allocation {
        dataset: String,
        available: usize,
        requested: usize,
    },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("{context}: {source}")]
    Context {
        context: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub fn context(self, context: impl Into<String>) -> Self {
        Error::Context {
            context: context.into(),
            source: Box::new(self),
        }
    }

    /// The innermost error, with any context layers removed.
    pub fn root(&self) -> &Error {
        match self {
            Error::Context { source, .. } => source.root(),
            other => other,
        }
    }
}
