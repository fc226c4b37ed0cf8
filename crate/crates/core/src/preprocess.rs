//! Deterministic tweet normalization and tokenization, plus corpus
//! ingestion from JSON-lines files.
//!
//! Normalization applies, in order: Unicode NFC, lowercasing, URL removal,
//! mention/hashtag sigil handling, punctuation removal, whitespace
//! collapsing. Mentions and hashtags keep their trailing word by default
//! (`#corona` carries signal); mentions can be dropped entirely via
//! [`PipelineOptions::drop_mentions`].

use std::collections::{HashSet, BTreeSet};
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;
use std::sync::OnceLock;

use regex::Regex;
use serde::{Deserialize, Serialize};
use unicode_normalization::UnicodeNormalization;

use crate::error::{Error, Result};
use crate::scoring::Document;

fn url_pattern() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    // Scheme-prefixed URLs, bare www. hosts, and shortener-style t.co links.
    RE.get_or_init(|| {
        Regex::new(r"(?:[a-z][a-z0-9+.-]*://\S+|www\.\S+|\bt\.co/\S+)").unwrap()
    })
}

fn mention_pattern() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"(^|\s)@(\w+)").unwrap())
}

fn hashtag_pattern() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"(^|\s)#(\w+)").unwrap())
}

fn punctuation_pattern() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"\p{P}+").unwrap())
}

/// Pipeline switches beyond the fixed normalization steps.
#[derive(Debug, Clone, Default)]
pub struct PipelineOptions {
    /// Drop `@mention` words entirely instead of keeping the bare word.
    pub drop_mentions: bool,
    /// Drop a leading `rt` token (retweet prefix).
    pub drop_retweet_prefix: bool,
    /// Lowercase stopword set; empty means no filtering.
    pub stopwords: HashSet<String>,
}

/// Normalizes raw text with default mention handling.
pub fn normalize_text(raw: &str) -> String {
    normalize_text_with(raw, false)
}

/// Normalizes raw text; `drop_mentions` removes `@mention` words instead of
/// keeping the trailing word.
pub fn normalize_text_with(raw: &str, drop_mentions: bool) -> String {
    let nfc: String = raw.nfc().collect();
    // Characters without a lowercase mapping (mathematical alphanumerics)
    // would survive the fold still classified as uppercase; drop them.
    let lower: String = nfc
        .to_lowercase()
        .chars()
        .filter(|c| !c.is_uppercase())
        .collect();
    let no_urls = url_pattern().replace_all(&lower, " ");
    let mentions_handled = if drop_mentions {
        mention_pattern().replace_all(&no_urls, "$1")
    } else {
        mention_pattern().replace_all(&no_urls, "$1$2")
    };
    let hashtags_handled = hashtag_pattern().replace_all(&mentions_handled, "$1$2");
    let no_punct = punctuation_pattern().replace_all(&hashtags_handled, "");
    no_punct.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Splits normalized text on whitespace.
pub fn tokenize(normalized: &str) -> Vec<String> {
    normalized.split_whitespace().map(String::from).collect()
}

/// Order-preserving stopword filter.
pub fn remove_stopwords(tokens: Vec<String>, stopwords: &HashSet<String>) -> Vec<String> {
    tokens
        .into_iter()
        .filter(|t| !stopwords.contains(t))
        .collect()
}

/// Loads a one-token-per-line stopword file, lowercasing entries and
/// skipping blanks and `#` comment lines.
pub fn load_stopwords(path: &Path) -> Result<HashSet<String>> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut set = HashSet::new();
    for line in BufReader::new(file).lines() {
        let line = line.map_err(|e| Error::io(path, e))?;
        let token = line.trim().to_lowercase();
        if !token.is_empty() && !token.starts_with('#') {
            set.insert(token);
        }
    }
    Ok(set)
}

/// Runs the full pipeline on one raw text.
pub fn preprocess(raw: &str, opts: &PipelineOptions) -> Vec<String> {
    let normalized = normalize_text_with(raw, opts.drop_mentions);
    let mut tokens = tokenize(&normalized);
    if opts.drop_retweet_prefix {
        while tokens.first().is_some_and(|t| t == "rt") {
            tokens.remove(0);
        }
    }
    remove_stopwords(tokens, &opts.stopwords)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CorpusStats {
    pub n_docs: usize,
    pub n_tokens: usize,
    pub n_empty_after_preprocess: usize,
}

/// A preprocessed document collection.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Corpus {
    pub documents: Vec<Document>,
    pub language_tag: String,
    pub stats: CorpusStats,
}

#[derive(Debug, Deserialize)]
struct RawRecord {
    id: String,
    label: String,
    text: String,
}

/// Loads a JSON-lines corpus (`{"id": ..., "label": ..., "text": ...}` per
/// line) and runs the pipeline on every record. Documents that end up with
/// no tokens are retained and counted.
pub fn load_corpus(path: &Path, opts: &PipelineOptions) -> Result<Corpus> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let reader = BufReader::new(file);
    let label = path.display().to_string();

    let mut documents = Vec::new();
    let mut ids: BTreeSet<String> = BTreeSet::new();
    let mut n_tokens = 0;
    let mut n_empty = 0;

    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let record: RawRecord = serde_json::from_str(&line)
            .map_err(|e| Error::parse(&label, line_no, e.to_string()))?;
        if !ids.insert(record.id.clone()) {
            return Err(Error::DuplicateDocId { id: record.id });
        }
        let tokens = preprocess(&record.text, opts);
        n_tokens += tokens.len();
        if tokens.is_empty() {
            n_empty += 1;
        }
        documents.push(Document {
            id: record.id,
            label: record.label,
            tokens,
        });
    }

    if documents.is_empty() {
        return Err(Error::parse(&label, 0, "corpus file has no records"));
    }
    let stats = CorpusStats {
        n_docs: documents.len(),
        n_tokens,
        n_empty_after_preprocess: n_empty,
    };
    Ok(Corpus {
        documents,
        language_tag: "und".to_string(),
        stats,
    })
}
