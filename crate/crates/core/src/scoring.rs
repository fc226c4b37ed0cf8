//! Per-document frame bias and intensity against the five frame axes.
//!
//! A token occurrence contributes the cosine between its embedding and an
//! axis; repeated tokens contribute once per occurrence. Bias is the mean of
//! a document's contributions; the corpus baseline is the unweighted mean of
//! document biases; intensity is the mean squared deviation of a document's
//! contributions from that baseline. All aggregations sum in a fixed sorted
//! order, so results are invariant under token reordering.

use serde::{Deserialize, Serialize};

use crate::axes::AxisSet;
use crate::embed::{self, EmbeddingStore};
use crate::error::{Error, Result};
use crate::lexicon::MoralFoundation;

pub const FOUNDATION_COUNT: usize = 5;

/// A preprocessed document: id, group label, token stream.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Document {
    pub id: String,
    pub label: String,
    pub tokens: Vec<String>,
}

/// Per-document scores, five entries each in canonical foundation order.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FrameScores {
    pub doc_id: String,
    pub bias: [f64; FOUNDATION_COUNT],
    pub intensity: [f64; FOUNDATION_COUNT],
    pub n_scored_tokens: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CorpusBaseline {
    pub baseline_bias: [f64; FOUNDATION_COUNT],
    pub n_documents: usize,
}

/// Cosine contributions of one document's tokens, one list per foundation.
/// The lists share their length: one entry per embedded token occurrence.
#[derive(Debug, Clone, Default)]
pub struct Contributions {
    pub per_foundation: [Vec<f64>; FOUNDATION_COUNT],
    pub n_scored_tokens: usize,
    pub n_oov_tokens: usize,
}

/// Sums in ascending value order so the result does not depend on the
/// order contributions were produced in.
fn sorted_sum(values: &[f64]) -> f64 {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    sorted.iter().sum()
}

/// Computes per-token-occurrence cosine contributions against every axis.
/// Out-of-vocabulary tokens (and the rare zero-norm embedding, whose cosine
/// is undefined) are skipped and tallied.
pub fn word_contributions(
    tokens: &[String],
    axisset: &AxisSet,
    store: &EmbeddingStore,
) -> Contributions {
    let mut out = Contributions::default();
    for token in tokens {
        let Some(vector) = store.lookup(token) else {
            out.n_oov_tokens += 1;
            continue;
        };
        if embed::norm(vector) == 0.0 {
            out.n_oov_tokens += 1;
            continue;
        }
        for foundation in MoralFoundation::ALL {
            let axis = &axisset.axis(foundation).axis;
            let c = embed::cosine(vector, axis).expect("nonzero vectors of equal dim");
            out.per_foundation[foundation.index()].push(c);
        }
        out.n_scored_tokens += 1;
    }
    out
}

/// Mean contribution per foundation. Errors when the document contributed
/// nothing (all tokens out of vocabulary).
pub fn frame_bias(contribs: &Contributions, doc_id: &str) -> Result<[f64; FOUNDATION_COUNT]> {
    if contribs.n_scored_tokens == 0 {
        return Err(Error::UnscorableDocument {
            doc_id: doc_id.to_string(),
        });
    }
    let mut bias = [0.0; FOUNDATION_COUNT];
    for (out, list) in bias.iter_mut().zip(&contribs.per_foundation) {
        *out = sorted_sum(list) / list.len() as f64;
    }
    Ok(bias)
}

/// Unweighted per-foundation mean of document biases.
pub fn corpus_baseline(all_biases: &[[f64; FOUNDATION_COUNT]]) -> Result<CorpusBaseline> {
    if all_biases.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let mut baseline = [0.0; FOUNDATION_COUNT];
    for (f, out) in baseline.iter_mut().enumerate() {
        let column: Vec<f64> = all_biases.iter().map(|b| b[f]).collect();
        *out = sorted_sum(&column) / column.len() as f64;
    }
    Ok(CorpusBaseline {
        baseline_bias: baseline,
        n_documents: all_biases.len(),
    })
}

/// Mean squared deviation of the document's contributions from the corpus
/// baseline bias, per foundation (population normalization, 1/N).
pub fn frame_intensity(
    contribs: &Contributions,
    baseline: &CorpusBaseline,
    doc_id: &str,
) -> Result<[f64; FOUNDATION_COUNT]> {
    if contribs.n_scored_tokens == 0 {
        return Err(Error::UnscorableDocument {
            doc_id: doc_id.to_string(),
        });
    }
    let mut intensity = [0.0; FOUNDATION_COUNT];
    for (f, out) in intensity.iter_mut().enumerate() {
        let b = baseline.baseline_bias[f];
        let deviations: Vec<f64> = contribs.per_foundation[f]
            .iter()
            .map(|c| (c - b) * (c - b))
            .collect();
        *out = sorted_sum(&deviations) / deviations.len() as f64;
    }
    Ok(intensity)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScoredCorpus {
    pub scores: Vec<FrameScores>,
    pub baseline: CorpusBaseline,
    /// Ids of documents with zero embedded tokens, in input order.
    pub skipped: Vec<String>,
    pub n_oov_tokens: usize,
    pub n_scored_tokens: usize,
}

/// Scores a corpus in two passes: contributions and biases first (fixing the
/// baseline), then intensities against that baseline. Documents with no
/// embedded token are skipped and listed.
pub fn score_corpus(
    corpus: &[Document],
    axisset: &AxisSet,
    store: &EmbeddingStore,
) -> Result<ScoredCorpus> {
    let mut contributions = Vec::new();
    let mut biases = Vec::new();
    let mut skipped = Vec::new();
    let mut n_oov_tokens = 0;
    let mut n_scored_tokens = 0;

    for doc in corpus {
        let contribs = word_contributions(&doc.tokens, axisset, store);
        n_oov_tokens += contribs.n_oov_tokens;
        if contribs.n_scored_tokens == 0 {
            skipped.push(doc.id.clone());
            continue;
        }
        n_scored_tokens += contribs.n_scored_tokens;
        let bias = frame_bias(&contribs, &doc.id)?;
        biases.push(bias);
        contributions.push((doc, contribs, bias));
    }

    if contributions.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let baseline = corpus_baseline(&biases)?;

    let mut scores = Vec::with_capacity(contributions.len());
    for (doc, contribs, bias) in contributions {
        let intensity = frame_intensity(&contribs, &baseline, &doc.id)?;
        scores.push(FrameScores {
            doc_id: doc.id.clone(),
            bias,
            intensity,
            n_scored_tokens: contribs.n_scored_tokens,
        });
    }

    Ok(ScoredCorpus {
        scores,
        baseline,
        skipped,
        n_oov_tokens,
        n_scored_tokens,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axes::build_axes;
    use crate::lexicon::{all_cells, MoralLexicon, Pole};

    /// Five orthogonal axes out of a store over basis-vector pole words.
    fn fixture() -> (AxisSet, EmbeddingStore) {
        let mut entries = Vec::new();
        let mut lexicon = MoralLexicon::new("synthetic");
        for (f, p) in all_cells() {
            let word = format!("{}_{}", f.name(), p.name());
            let mut v = vec![0.0; 8];
            v[f.index()] = if p == Pole::Virtue { 1.0 } else { -1.0 };
            entries.push((word.clone(), v));
            lexicon.insert(f, p, &word).unwrap();
        }
        // Extra non-lexicon tokens for documents.
        entries.push(("mixed".to_string(), vec![0.5, 0.5, 0.0, 0.0, 0.0, 0.0, 0.0, 0.1]));
        entries.push(("noise".to_string(), vec![0.0, 0.0, 0.0, 0.0, 0.0, 0.1, 0.9, 0.2]));
        let store = EmbeddingStore::from_entries(8, entries, "synthetic").unwrap();
        let axes = build_axes(&lexicon, &store).unwrap();
        (axes, store)
    }

    fn doc(id: &str, tokens: &[&str]) -> Document {
        Document {
            id: id.to_string(),
            label: "g".to_string(),
            tokens: tokens.iter().map(|t| t.to_string()).collect(),
        }
    }

    #[test]
    fn token_on_axis_contributes_one() {
        let (axes, store) = fixture();
        let contribs = word_contributions(
            &["care_virtue".to_string()],
            &axes,
            &store,
        );
        assert_eq!(contribs.per_foundation[0], vec![1.0]);
        assert_eq!(contribs.n_scored_tokens, 1);
    }

    #[test]
    fn repeated_tokens_contribute_per_occurrence() {
        let (axes, store) = fixture();
        let contribs = word_contributions(
            &["mixed".to_string(), "mixed".to_string()],
            &axes,
            &store,
        );
        assert_eq!(contribs.per_foundation[0].len(), 2);
        assert_eq!(contribs.per_foundation[0][0], contribs.per_foundation[0][1]);
    }

    #[test]
    fn all_oov_yields_empty_lists() {
        let (axes, store) = fixture();
        let contribs = word_contributions(&["zzz".to_string(), "qqq".to_string()], &axes, &store);
        assert_eq!(contribs.n_scored_tokens, 0);
        assert_eq!(contribs.n_oov_tokens, 2);
        assert!(contribs.per_foundation.iter().all(Vec::is_empty));
        assert!(matches!(
            frame_bias(&contribs, "d"),
            Err(Error::UnscorableDocument { .. })
        ));
    }

    #[test]
    fn bias_is_the_mean() {
        let contribs = Contributions {
            per_foundation: [
                vec![0.2, 0.4],
                vec![0.2, 0.4],
                vec![0.2, 0.4],
                vec![0.2, 0.4],
                vec![0.2, 0.4],
            ],
            n_scored_tokens: 2,
            n_oov_tokens: 0,
        };
        let bias = frame_bias(&contribs, "d").unwrap();
        assert!((bias[0] - 0.3).abs() < 1e-15);
    }

    #[test]
    fn baseline_is_mean_of_biases_and_order_free() {
        let b1 = [[0.1; 5], [0.3; 5]];
        let b2 = [[0.3; 5], [0.1; 5]];
        let base1 = corpus_baseline(&b1).unwrap();
        let base2 = corpus_baseline(&b2).unwrap();
        assert!((base1.baseline_bias[0] - 0.2).abs() < 1e-15);
        assert_eq!(base1.baseline_bias, base2.baseline_bias);
        let single = corpus_baseline(&[[0.7; 5]]).unwrap();
        assert_eq!(single.baseline_bias[0], 0.7);
    }

    #[test]
    fn intensity_is_mean_squared_deviation_from_baseline() {
        let contribs = Contributions {
            per_foundation: std::array::from_fn(|_| vec![0.2, 0.4]),
            n_scored_tokens: 2,
            n_oov_tokens: 0,
        };
        let baseline = CorpusBaseline {
            baseline_bias: [0.3; 5],
            n_documents: 1,
        };
        let intensity = frame_intensity(&contribs, &baseline, "d").unwrap();
        assert!((intensity[0] - 0.01).abs() < 1e-15);

        let flat = Contributions {
            per_foundation: std::array::from_fn(|_| vec![0.3, 0.3, 0.3]),
            n_scored_tokens: 3,
            n_oov_tokens: 0,
        };
        let zero = frame_intensity(&flat, &baseline, "d").unwrap();
        assert_eq!(zero[0], 0.0);
    }

    #[test]
    fn single_document_intensity_is_variance_around_own_bias() {
        let (axes, store) = fixture();
        let corpus = vec![doc("only", &["care_virtue", "mixed", "noise"])];
        let scored = score_corpus(&corpus, &axes, &store).unwrap();
        let contribs = word_contributions(&corpus[0].tokens, &axes, &store);
        for f in 0..FOUNDATION_COUNT {
            let mean = scored.scores[0].bias[f];
            let var: f64 = contribs.per_foundation[f]
                .iter()
                .map(|c| (c - mean) * (c - mean))
                .sum::<f64>()
                / contribs.per_foundation[f].len() as f64;
            assert!((scored.scores[0].intensity[f] - var).abs() < 1e-12);
        }
    }

    #[test]
    fn all_oov_document_is_skipped_without_changing_scores() {
        let (axes, store) = fixture();
        let base = vec![
            doc("a", &["care_virtue", "mixed"]),
            doc("b", &["noise", "fairness_vice"]),
        ];
        let mut with_oov = base.clone();
        with_oov.insert(1, doc("ghost", &["zzz"]));
        let s1 = score_corpus(&base, &axes, &store).unwrap();
        let s2 = score_corpus(&with_oov, &axes, &store).unwrap();
        assert_eq!(s2.skipped, vec!["ghost".to_string()]);
        assert_eq!(s1.scores.len(), s2.scores.len());
        for (x, y) in s1.scores.iter().zip(&s2.scores) {
            assert_eq!(x.bias, y.bias);
            assert_eq!(x.intensity, y.intensity);
        }
        assert_eq!(s1.baseline.baseline_bias, s2.baseline.baseline_bias);
    }

    #[test]
    fn zero_scorable_documents_is_an_error() {
        let (axes, store) = fixture();
        let corpus = vec![doc("a", &["zzz"])];
        assert!(matches!(
            score_corpus(&corpus, &axes, &store).unwrap_err(),
            Error::EmptyCorpus
        ));
    }

    #[test]
    fn token_permutation_changes_nothing_bitwise() {
        let (axes, store) = fixture();
        let forward = vec![doc("a", &["care_virtue", "mixed", "noise", "mixed"])];
        let backward = vec![doc("a", &["mixed", "noise", "mixed", "care_virtue"])];
        let s1 = score_corpus(&forward, &axes, &store).unwrap();
        let s2 = score_corpus(&backward, &axes, &store).unwrap();
        assert_eq!(s1.scores[0].bias, s2.scores[0].bias);
        assert_eq!(s1.scores[0].intensity, s2.scores[0].intensity);
    }

    #[test]
    fn rerun_is_bit_identical() {
        let (axes, store) = fixture();
        let corpus = vec![
            doc("a", &["care_virtue", "mixed"]),
            doc("b", &["noise", "sanctity_vice", "mixed"]),
        ];
        let s1 = score_corpus(&corpus, &axes, &store).unwrap();
        let s2 = score_corpus(&corpus, &axes, &store).unwrap();
        for (x, y) in s1.scores.iter().zip(&s2.scores) {
            assert_eq!(x.bias, y.bias);
            assert_eq!(x.intensity, y.intensity);
        }
    }

    #[test]
    fn bias_bounded_and_intensity_nonnegative() {
        let (axes, store) = fixture();
        let corpus = vec![
            doc("a", &["care_virtue", "care_vice", "mixed", "noise"]),
            doc("b", &["loyalty_virtue", "mixed"]),
        ];
        let scored = score_corpus(&corpus, &axes, &store).unwrap();
        for s in &scored.scores {
            for f in 0..FOUNDATION_COUNT {
                assert!(s.bias[f] >= -1.0 && s.bias[f] <= 1.0);
                assert!(s.intensity[f] >= 0.0 && s.intensity[f] <= 4.0);
            }
        }
    }
}
