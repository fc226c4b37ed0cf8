//! Quantifying moral framing in text corpora.
//!
//! The pipeline builds five moral frame axes from word embeddings and a
//! virtue/vice lexicon, validates the axes geometrically, scores documents
//! for frame bias and intensity against a corpus baseline, projects the
//! lexicon across languages via a least-squares translation matrix, and
//! analyzes group differences with a logistic-regression layer.
//!
//! Modules follow the pipeline stages:
//!
//! - [`embed`]: embedding file loading, cosine, nearest neighbors
//! - [`lexicon`]: the foundation/pole lexicon and embedding resolution
//! - [`axes`]: axis construction and the four-property validation
//! - [`pca`] / [`kde`]: plot-ready projection exports
//! - [`scoring`]: per-document frame bias and intensity
//! - [`xlingual`]: translation-matrix fitting and lexicon projection
//! - [`classifier`]: from-scratch logistic regression, metrics, reports
//! - [`preprocess`]: tweet normalization, tokenization, corpus ingestion
//! - [`manifest`]: run manifests and atomic output writing

pub mod axes;
pub mod classifier;
pub mod embed;
pub mod error;
pub mod kde;
pub mod lexicon;
pub mod manifest;
pub mod pca;
pub mod preprocess;
pub mod scoring;
pub mod xlingual;

pub use error::{Error, Result};
