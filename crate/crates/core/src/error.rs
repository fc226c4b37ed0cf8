//! Error type shared across the crate.

use std::path::PathBuf;

use thiserror::Error;

use crate::lexicon::{MoralFoundation, Pole};

/// Errors produced by loading, fitting, scoring, and reporting operations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },

    #[error("embedding file {path} contains no data lines")]
    EmptyStore { path: String },

    #[error("vector length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("zero-norm vector in {context}")]
    ZeroNorm { context: &'static str },

    #[error("no embedded words in lexicon cell {foundation}/{pole}")]
    UnresolvableCell {
        foundation: MoralFoundation,
        pole: Pole,
    },

    #[error("degenerate axis for {foundation}: virtue and vice centroids coincide")]
    DegenerateAxis { foundation: MoralFoundation },

    #[error("degenerate input: {message}")]
    DegenerateInput { message: String },

    #[error("invalid argument: {message}")]
    InvalidArgument { message: String },

    #[error("document {doc_id} has no contributions to aggregate")]
    UnscorableDocument { doc_id: String },

    #[error("corpus has no scorable documents")]
    EmptyCorpus,

    #[error("translation system is rank-deficient with ridge_lambda = {ridge_lambda}; retry with ridge_lambda > 0")]
    RankDeficient { ridge_lambda: f64 },

    #[error("token {token:?} is not in the embedding vocabulary")]
    OovToken { token: String },

    #[error("training requires at least two classes, got {found}")]
    SingleClass { found: usize },

    #[error("training diverged at iteration {iteration} with step size {step_size}; reduce the step size")]
    Divergence { step_size: f64, iteration: usize },

    #[error("feature width mismatch: model expects {expected}, got {found}")]
    WidthMismatch { expected: usize, found: usize },

    #[error("predicted label {label:?} does not occur in the gold labels")]
    UnknownLabel { label: String },

    #[error("duplicate document id {id:?}")]
    DuplicateDocId { id: String },

    #[error("invalid split spec {spec:?}: {message}")]
    InvalidSplitSpec { spec: String, message: String },

    #[error("{message}")]
    InvalidData { message: String },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub fn parse(path: impl Into<String>, line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            line,
            message: message.into(),
        }
    }

    pub fn invalid_data(message: impl Into<String>) -> Self {
        Error::InvalidData {
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
