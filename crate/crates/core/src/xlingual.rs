//! Cross-lingual lexicon projection: a linear map between two embedding
//! spaces fitted by (optionally ridge-regularized) least squares on bilingual
//! seed pairs, then nearest-neighbor translation of lexicon words in the
//! target space. Translations are meant for human review; the audit report
//! carries every candidate with its similarity.

use std::collections::BTreeSet;
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::embed::EmbeddingStore;
use crate::error::{Error, Result};
use crate::lexicon::{all_cells, Cell, MoralLexicon};

/// Bilingual seed word pairs, `(source_token, target_token)`.
#[derive(Debug, Clone)]
pub struct SeedPairs {
    pub pairs: Vec<(String, String)>,
}

/// Loads seed pairs from a headerless TSV of `source<TAB>target` lines.
pub fn load_seed_pairs(path: &Path) -> Result<SeedPairs> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let reader = BufReader::new(file);
    let label = path.display().to_string();
    let mut pairs = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.trim_end_matches(['\r', '\n']).split('\t').collect();
        if fields.len() != 2 {
            return Err(Error::parse(
                &label,
                line_no,
                format!("expected `source\\ttarget`, found {} fields", fields.len()),
            ));
        }
        let src = fields[0].trim();
        let tgt = fields[1].trim();
        if src.is_empty() || tgt.is_empty() {
            return Err(Error::parse(&label, line_no, "empty token in pair"));
        }
        pairs.push((src.to_string(), tgt.to_string()));
    }
    if pairs.is_empty() {
        return Err(Error::parse(&label, 0, "seed pair file has no pairs"));
    }
    Ok(SeedPairs { pairs })
}

/// Linear map from the source to the target embedding space.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TranslationMatrix {
    /// Row-major `d_tgt x d_src` matrix.
    pub matrix: Vec<Vec<f64>>,
    pub ridge_lambda: f64,
    pub n_pairs_used: usize,
    /// Root mean squared residual over the pairs used for the fit.
    pub fit_rmse: f64,
}

impl TranslationMatrix {
    pub fn d_src(&self) -> usize {
        self.matrix.first().map_or(0, Vec::len)
    }

    pub fn d_tgt(&self) -> usize {
        self.matrix.len()
    }

    /// Applies the map to a source-space vector.
    pub fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.d_src() {
            return Err(Error::LengthMismatch {
                left: x.len(),
                right: self.d_src(),
            });
        }
        Ok(self
            .matrix
            .iter()
            .map(|row| row.iter().zip(x).map(|(w, v)| w * v).sum())
            .collect())
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.matrix
            .iter()
            .flatten()
            .map(|v| v * v)
            .sum::<f64>()
            .sqrt()
    }
}

/// Fits `W` minimizing `sum_i |W x_i - y_i|^2 + lambda |W|_F^2` over the
/// pairs whose both tokens are embedded, via the regularized normal
/// equations. Returns the matrix and the dropped (out-of-vocabulary) pairs.
pub fn fit_translation(
    pairs: &SeedPairs,
    src: &EmbeddingStore,
    tgt: &EmbeddingStore,
    ridge_lambda: f64,
) -> Result<(TranslationMatrix, Vec<(String, String)>)> {
    if ridge_lambda < 0.0 {
        return Err(Error::InvalidArgument {
            message: format!("ridge_lambda must be >= 0, got {ridge_lambda}"),
        });
    }
    let mut used = Vec::new();
    let mut dropped = Vec::new();
    for (s, t) in &pairs.pairs {
        match (src.lookup(s), tgt.lookup(t)) {
            (Some(x), Some(y)) => used.push((x, y)),
            _ => dropped.push((s.clone(), t.clone())),
        }
    }
    if used.is_empty() {
        return Err(Error::invalid_data(
            "no usable seed pairs: every pair has an out-of-vocabulary token",
        ));
    }

    let n = used.len();
    let d_src = src.dim();
    let d_tgt = tgt.dim();
    if ridge_lambda == 0.0 && n < d_src {
        return Err(Error::RankDeficient { ridge_lambda });
    }

    let x = DMatrix::from_fn(n, d_src, |i, j| used[i].0[j]);
    let y = DMatrix::from_fn(n, d_tgt, |i, j| used[i].1[j]);

    // (X^T X + lambda I) M = X^T Y, then W = M^T.
    let mut gram = x.transpose() * &x;
    for i in 0..d_src {
        gram[(i, i)] += ridge_lambda;
    }
    let chol = gram
        .cholesky()
        .ok_or(Error::RankDeficient { ridge_lambda })?;
    let m = chol.solve(&(x.transpose() * &y));
    let w = m.transpose();

    let residual = &x * &m - &y;
    let fit_rmse = (residual.iter().map(|v| v * v).sum::<f64>() / n as f64).sqrt();

    let matrix = (0..d_tgt)
        .map(|i| (0..d_src).map(|j| w[(i, j)]).collect())
        .collect();
    Ok((
        TranslationMatrix {
            matrix,
            ridge_lambda,
            n_pairs_used: n,
            fit_rmse,
        },
        dropped,
    ))
}

/// Projects one source token into the target space and returns its top-`k`
/// cosine neighbors there.
pub fn translate_word(
    tm: &TranslationMatrix,
    src_token: &str,
    src: &EmbeddingStore,
    tgt: &EmbeddingStore,
    k: usize,
) -> Result<Vec<(String, f64)>> {
    let vector = src.lookup(src_token).ok_or_else(|| Error::OovToken {
        token: src_token.to_string(),
    })?;
    let projected = tm.apply(vector)?;
    tgt.nearest_neighbors(&projected, k, None)
}

/// One lexicon word's translation candidates, for the audit report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TranslationRecord {
    pub cell: Cell,
    pub source_token: String,
    pub candidates: Vec<(String, f64)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TranslationReport {
    pub records: Vec<TranslationRecord>,
    /// Source words skipped because they are not embedded, per cell.
    pub skipped: Vec<(Cell, String)>,
}

/// Translates every lexicon word into its top-`k` target neighbors; each
/// neighbor joins the source word's own cell, duplicates merged. A cell that
/// ends up empty (every source word out of vocabulary) is an error.
pub fn translate_lexicon(
    tm: &TranslationMatrix,
    lexicon: &MoralLexicon,
    src: &EmbeddingStore,
    tgt: &EmbeddingStore,
    k: usize,
) -> Result<(MoralLexicon, TranslationReport)> {
    if k == 0 {
        return Err(Error::InvalidArgument {
            message: "k must be >= 1".into(),
        });
    }
    let mut translated = MoralLexicon::new("und");
    let mut records = Vec::new();
    let mut skipped = Vec::new();

    for cell in all_cells() {
        let mut cell_targets: BTreeSet<String> = BTreeSet::new();
        for word in lexicon.cell(cell.0, cell.1) {
            if !src.contains(word) {
                skipped.push((cell, word.clone()));
                continue;
            }
            let candidates = translate_word(tm, word, src, tgt, k)?;
            for (target, _) in &candidates {
                cell_targets.insert(target.clone());
            }
            records.push(TranslationRecord {
                cell,
                source_token: word.clone(),
                candidates,
            });
        }
        if cell_targets.is_empty() {
            return Err(Error::UnresolvableCell {
                foundation: cell.0,
                pole: cell.1,
            });
        }
        for target in cell_targets {
            translated.insert(cell.0, cell.1, &target)?;
        }
    }

    Ok((translated, TranslationReport { records, skipped }))
}
