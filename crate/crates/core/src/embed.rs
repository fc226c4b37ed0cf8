//! Word-embedding store: loading whitespace-separated vector files and the
//! vector arithmetic used by every other module.
//!
//! The file format is one token per line followed by its coordinates
//! (`token 0.1 -0.2 ...`). An optional first line holding exactly two
//! integers (`count dim`) is treated as a header and skipped. Lookups are
//! exact and case-sensitive; case folding belongs to the preprocessing
//! pipeline.

use std::collections::{HashMap, HashSet};
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use crate::error::{Error, Result};

/// Immutable token -> vector map with a fixed dimensionality.
#[derive(Debug, Clone)]
pub struct EmbeddingStore {
    dim: usize,
    entries: HashMap<String, Vec<f64>>,
    source_label: String,
    duplicates_ignored: usize,
}

impl EmbeddingStore {
    /// Builds a store from in-memory entries. Every vector must have length
    /// `dim` and finite entries; tokens must be non-empty and free of
    /// whitespace.
    pub fn from_entries<I, S>(dim: usize, entries: I, source_label: &str) -> Result<Self>
    where
        I: IntoIterator<Item = (S, Vec<f64>)>,
        S: Into<String>,
    {
        if dim == 0 {
            return Err(Error::InvalidArgument {
                message: "embedding dimension must be >= 1".into(),
            });
        }
        let mut map = HashMap::new();
        let mut duplicates_ignored = 0;
        for (token, vector) in entries {
            let token = token.into();
            if token.is_empty() || token.chars().any(char::is_whitespace) {
                return Err(Error::invalid_data(format!(
                    "invalid token {token:?}: tokens must be non-empty and free of whitespace"
                )));
            }
            if vector.len() != dim {
                return Err(Error::LengthMismatch {
                    left: dim,
                    right: vector.len(),
                });
            }
            if vector.iter().any(|v| !v.is_finite()) {
                return Err(Error::invalid_data(format!(
                    "non-finite coordinate for token {token:?}"
                )));
            }
            if map.contains_key(&token) {
                duplicates_ignored += 1;
            } else {
                map.insert(token, vector);
            }
        }
        if map.is_empty() {
            return Err(Error::EmptyStore {
                path: source_label.to_string(),
            });
        }
        Ok(EmbeddingStore {
            dim,
            entries: map,
            source_label: source_label.to_string(),
            duplicates_ignored,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn source_label(&self) -> &str {
        &self.source_label
    }

    /// Number of duplicate tokens dropped during load (first occurrence wins).
    pub fn duplicates_ignored(&self) -> usize {
        self.duplicates_ignored
    }

    /// Exact-match lookup. Absent tokens return `None`; callers decide the
    /// out-of-vocabulary policy.
    pub fn lookup(&self, token: &str) -> Option<&[f64]> {
        self.entries.get(token).map(Vec::as_slice)
    }

    pub fn contains(&self, token: &str) -> bool {
        self.entries.contains_key(token)
    }

    /// Tokens in unspecified order; sort before any order-sensitive use.
    pub fn tokens(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    /// Top-`k` tokens by cosine similarity to `query`, descending, ties
    /// broken by lexicographic token order. Tokens in `exclude` are skipped,
    /// as are zero-norm stored vectors (their similarity is undefined).
    pub fn nearest_neighbors(
        &self,
        query: &[f64],
        k: usize,
        exclude: Option<&HashSet<String>>,
    ) -> Result<Vec<(String, f64)>> {
        if query.len() != self.dim {
            return Err(Error::LengthMismatch {
                left: query.len(),
                right: self.dim,
            });
        }
        if norm(query) == 0.0 {
            return Err(Error::ZeroNorm {
                context: "nearest_neighbors query",
            });
        }
        let mut scored: Vec<(String, f64)> = self
            .entries
            .iter()
            .filter(|(token, _)| exclude.is_none_or(|set| !set.contains(*token)))
            .filter(|(_, vector)| norm(vector) > 0.0)
            .map(|(token, vector)| {
                let sim = cosine(query, vector).expect("dims and norms checked above");
                (token.clone(), sim)
            })
            .collect();
        scored.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
        scored.truncate(k);
        Ok(scored)
    }
}

/// Loads a whitespace-separated embedding file. The dimension is inferred
/// from the first data line; every later line must match it. When
/// `restrict_to` is given, only the listed tokens are retained (the rest of
/// the file is still validated).
pub fn load_embeddings(path: &Path, restrict_to: Option<&HashSet<String>>) -> Result<EmbeddingStore> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let reader = BufReader::new(file);
    let label = path.display().to_string();

    let mut dim: Option<usize> = None;
    let mut entries: HashMap<String, Vec<f64>> = HashMap::new();
    let mut duplicates_ignored = 0;
    let mut saw_data_line = false;

    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.map_err(|e| Error::io(path, e))?;
        let mut fields = line.split_whitespace();
        let Some(token) = fields.next() else {
            continue; // blank line
        };
        let rest: Vec<&str> = fields.collect();

        // Header auto-detection: a first line of exactly two integers.
        if !saw_data_line
            && line_no == 1
            && rest.len() == 1
            && token.parse::<u64>().is_ok()
            && rest[0].parse::<u64>().is_ok()
        {
            continue;
        }
        saw_data_line = true;

        match dim {
            None => {
                if rest.is_empty() {
                    return Err(Error::parse(
                        &label,
                        line_no,
                        "expected `token v1 ... vd`, found no coordinates",
                    ));
                }
                dim = Some(rest.len());
            }
            Some(d) => {
                if rest.len() != d {
                    return Err(Error::parse(
                        &label,
                        line_no,
                        format!("expected {d} coordinates, found {}", rest.len()),
                    ));
                }
            }
        }

        let mut vector = Vec::with_capacity(rest.len());
        for field in &rest {
            let value: f64 = field.parse().map_err(|_| {
                Error::parse(&label, line_no, format!("invalid float {field:?}"))
            })?;
            if !value.is_finite() {
                return Err(Error::parse(
                    &label,
                    line_no,
                    format!("non-finite coordinate {field:?}"),
                ));
            }
            vector.push(value);
        }

        if restrict_to.is_some_and(|set| !set.contains(token)) {
            continue;
        }
        if entries.contains_key(token) {
            duplicates_ignored += 1;
        } else {
            entries.insert(token.to_string(), vector);
        }
    }

    let Some(dim) = dim else {
        return Err(Error::EmptyStore { path: label });
    };
    if entries.is_empty() {
        // Everything was filtered out by restrict_to.
        return Err(Error::EmptyStore { path: label });
    }
    Ok(EmbeddingStore {
        dim,
        entries,
        source_label: label,
        duplicates_ignored,
    })
}

pub fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Cosine similarity, clamped to [-1, 1] against rounding overshoot.
pub fn cosine(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let na = norm(a);
    let nb = norm(b);
    if na == 0.0 || nb == 0.0 {
        return Err(Error::ZeroNorm { context: "cosine" });
    }
    Ok((dot(a, b) / (na * nb)).clamp(-1.0, 1.0))
}

/// Difference `a - b`.
pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Arithmetic mean of a non-empty set of equal-length vectors.
pub fn mean(vectors: &[&[f64]]) -> Vec<f64> {
    assert!(!vectors.is_empty(), "mean of zero vectors");
    let dim = vectors[0].len();
    let mut out = vec![0.0; dim];
    for v in vectors {
        for (acc, x) in out.iter_mut().zip(*v) {
            *acc += x;
        }
    }
    let n = vectors.len() as f64;
    for acc in &mut out {
        *acc /= n;
    }
    out
}

/// Scales `v` to unit length. Returns `None` for a zero vector.
pub fn unit(v: &[f64]) -> Option<Vec<f64>> {
    let n = norm(v);
    if n == 0.0 {
        return None;
    }
    Some(v.iter().map(|x| x / n).collect())
}
