//! Logistic-regression analysis layer over the ten frame features (five
//! biases, five intensities), trained from scratch by full-batch gradient
//! descent with an L2 penalty. Binary problems train one weight vector; more
//! classes train one-vs-rest, which yields the per-class coefficient columns
//! the reports are built from. Features are z-scored before training so the
//! coefficients are comparable across bias and intensity scales.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::BufReader;
use std::path::{Path, PathBuf};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lexicon::MoralFoundation;
use crate::scoring::FrameScores;

/// Canonical feature order: biases first, then intensities, each in
/// foundation order.
pub fn frame_feature_names() -> Vec<String> {
    let mut names = Vec::with_capacity(10);
    for prefix in ["bias", "intensity"] {
        for f in MoralFoundation::ALL {
            names.push(format!("{prefix}_{}", f.name()));
        }
    }
    names
}

/// Per-document feature rows with class labels.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FeatureMatrix {
    pub rows: Vec<Vec<f64>>,
    pub labels: Vec<String>,
    pub feature_names: Vec<String>,
}

impl FeatureMatrix {
    pub fn new(rows: Vec<Vec<f64>>, labels: Vec<String>, feature_names: Vec<String>) -> Result<Self> {
        let matrix = FeatureMatrix {
            rows,
            labels,
            feature_names,
        };
        matrix.validate()?;
        Ok(matrix)
    }

    /// Builds the canonical ten-feature matrix from frame scores.
    pub fn from_scores(scores: &[FrameScores], labels: Vec<String>) -> Result<Self> {
        let rows = scores
            .iter()
            .map(|s| {
                let mut row = Vec::with_capacity(10);
                row.extend_from_slice(&s.bias);
                row.extend_from_slice(&s.intensity);
                row
            })
            .collect();
        Self::new(rows, labels, frame_feature_names())
    }

    pub fn width(&self) -> usize {
        self.feature_names.len()
    }

    fn validate(&self) -> Result<()> {
        if self.rows.len() != self.labels.len() {
            return Err(Error::invalid_data(format!(
                "{} feature rows but {} labels",
                self.rows.len(),
                self.labels.len()
            )));
        }
        let width = self.width();
        for (idx, row) in self.rows.iter().enumerate() {
            if row.len() != width {
                return Err(Error::invalid_data(format!(
                    "feature row {idx} has width {}, expected {width}",
                    row.len()
                )));
            }
            if row.iter().any(|v| !v.is_finite()) {
                return Err(Error::invalid_data(format!(
                    "feature row {idx} contains non-finite values"
                )));
            }
        }
        Ok(())
    }

    /// Distinct labels in sorted order.
    pub fn classes(&self) -> Vec<String> {
        let mut classes: Vec<String> = self.labels.clone();
        classes.sort();
        classes.dedup();
        classes
    }
}

/// Per-feature z-scoring parameters (population standard deviation).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Standardization {
    pub means: Vec<f64>,
    /// Recorded as 1.0 for constant features, which map to 0.
    pub stds: Vec<f64>,
    /// Indices of features that were constant in the training data.
    pub constant_features: Vec<usize>,
}

impl Standardization {
    pub fn apply(&self, row: &[f64]) -> Vec<f64> {
        row.iter()
            .zip(&self.means)
            .zip(&self.stds)
            .map(|((x, m), s)| (x - m) / s)
            .collect()
    }
}

/// Z-scores every feature column. Constant columns map to zero and are
/// listed so callers can warn about them.
pub fn standardize(rows: &[Vec<f64>]) -> Result<(Vec<Vec<f64>>, Standardization)> {
    if rows.len() < 2 {
        return Err(Error::InvalidArgument {
            message: format!("standardization needs at least 2 rows, got {}", rows.len()),
        });
    }
    let width = rows[0].len();
    let n = rows.len() as f64;
    let mut means = vec![0.0; width];
    for row in rows {
        for (m, x) in means.iter_mut().zip(row) {
            *m += x;
        }
    }
    for m in &mut means {
        *m /= n;
    }
    let mut stds = vec![0.0; width];
    for row in rows {
        for ((s, x), m) in stds.iter_mut().zip(row).zip(&means) {
            *s += (x - m) * (x - m);
        }
    }
    let mut constant_features = Vec::new();
    for (idx, s) in stds.iter_mut().enumerate() {
        *s = (*s / n).sqrt();
        if *s == 0.0 {
            *s = 1.0;
            constant_features.push(idx);
        }
    }
    let params = Standardization {
        means,
        stds,
        constant_features,
    };
    let standardized = rows.iter().map(|row| params.apply(row)).collect();
    Ok((standardized, params))
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Hyperparams {
    pub l2_lambda: f64,
    pub step_size: f64,
    pub max_iters: usize,
    pub tolerance: f64,
    pub seed: u64,
}

impl Default for Hyperparams {
    fn default() -> Self {
        Hyperparams {
            l2_lambda: 1e-2,
            step_size: 0.1,
            max_iters: 10_000,
            tolerance: 1e-8,
            seed: 42,
        }
    }
}

/// A trained model: one weight vector for binary problems (for
/// `classes[1]`, the positive class), one per class otherwise.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LogisticModel {
    pub classes: Vec<String>,
    pub weights: Vec<Vec<f64>>,
    pub intercepts: Vec<f64>,
    pub standardization: Standardization,
    pub hyperparams: Hyperparams,
    pub feature_names: Vec<String>,
}

impl LogisticModel {
    pub fn width(&self) -> usize {
        self.feature_names.len()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json_file(path: &Path) -> Result<LogisticModel> {
        let file = File::open(path).map_err(|e| Error::io(path, e))?;
        Ok(serde_json::from_reader(BufReader::new(file))?)
    }
}

/// Convergence record for one binary subproblem.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClassTrainStats {
    pub class: String,
    pub n_iters: usize,
    pub converged: bool,
    pub final_loss: f64,
    #[serde(skip)]
    pub loss_trace: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct TrainOutcome {
    pub model: LogisticModel,
    pub per_class: Vec<ClassTrainStats>,
}

fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

/// Numerically safe log(sigmoid(z)).
fn log_sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        -(-z).exp().ln_1p()
    } else {
        z - z.exp().ln_1p()
    }
}

/// Mean cross-entropy plus `lambda/2 * |w|^2` (the intercept is not
/// penalized).
pub fn binary_loss(weights: &[f64], intercept: f64, rows: &[Vec<f64>], targets: &[f64], l2_lambda: f64) -> f64 {
    let n = rows.len() as f64;
    let mut loss = 0.0;
    for (row, &y) in rows.iter().zip(targets) {
        let z: f64 = row.iter().zip(weights).map(|(x, w)| x * w).sum::<f64>() + intercept;
        loss += -y * log_sigmoid(z) - (1.0 - y) * log_sigmoid(-z);
    }
    loss / n + 0.5 * l2_lambda * weights.iter().map(|w| w * w).sum::<f64>()
}

/// Analytic gradient of [`binary_loss`] with respect to the weights and the
/// intercept.
pub fn binary_gradient(
    weights: &[f64],
    intercept: f64,
    rows: &[Vec<f64>],
    targets: &[f64],
    l2_lambda: f64,
) -> (Vec<f64>, f64) {
    let n = rows.len() as f64;
    let mut grad_w = vec![0.0; weights.len()];
    let mut grad_b = 0.0;
    for (row, &y) in rows.iter().zip(targets) {
        let z: f64 = row.iter().zip(weights).map(|(x, w)| x * w).sum::<f64>() + intercept;
        let err = sigmoid(z) - y;
        for (g, x) in grad_w.iter_mut().zip(row) {
            *g += err * x;
        }
        grad_b += err;
    }
    for (g, w) in grad_w.iter_mut().zip(weights) {
        *g = *g / n + l2_lambda * w;
    }
    (grad_w, grad_b / n)
}

fn train_binary(
    rows: &[Vec<f64>],
    targets: &[f64],
    hp: &Hyperparams,
    class: &str,
) -> Result<(Vec<f64>, f64, ClassTrainStats)> {
    let width = rows[0].len();
    let mut weights = vec![0.0; width];
    let mut intercept = 0.0;
    let mut loss_trace = Vec::new();
    let mut converged = false;
    let mut iters = 0;

    for iteration in 0..hp.max_iters {
        let loss = binary_loss(&weights, intercept, rows, targets, hp.l2_lambda);
        if !loss.is_finite() {
            return Err(Error::Divergence {
                step_size: hp.step_size,
                iteration,
            });
        }
        loss_trace.push(loss);
        let (grad_w, grad_b) = binary_gradient(&weights, intercept, rows, targets, hp.l2_lambda);
        let grad_norm = (grad_w.iter().map(|g| g * g).sum::<f64>() + grad_b * grad_b).sqrt();
        if grad_norm <= hp.tolerance {
            converged = true;
            iters = iteration;
            break;
        }
        for (w, g) in weights.iter_mut().zip(&grad_w) {
            *w -= hp.step_size * g;
        }
        intercept -= hp.step_size * grad_b;
        iters = iteration + 1;
    }

    let final_loss = binary_loss(&weights, intercept, rows, targets, hp.l2_lambda);
    let stats = ClassTrainStats {
        class: class.to_string(),
        n_iters: iters,
        converged,
        final_loss,
        loss_trace,
    };
    Ok((weights, intercept, stats))
}

/// Trains a logistic model. Weights start at zero, so training is
/// deterministic; the seed is recorded for provenance of surrounding
/// machinery (splits), not consumed here.
pub fn train_logreg(features: &FeatureMatrix, hp: &Hyperparams) -> Result<TrainOutcome> {
    features.validate()?;
    let classes = features.classes();
    if classes.len() < 2 {
        return Err(Error::SingleClass {
            found: classes.len(),
        });
    }
    let (standardized, params) = standardize(&features.rows)?;

    let mut weights = Vec::new();
    let mut intercepts = Vec::new();
    let mut per_class = Vec::new();

    if classes.len() == 2 {
        // Single binary model for the positive class `classes[1]`.
        let targets: Vec<f64> = features
            .labels
            .iter()
            .map(|l| if *l == classes[1] { 1.0 } else { 0.0 })
            .collect();
        let (w, b, stats) = train_binary(&standardized, &targets, hp, &classes[1])?;
        weights.push(w);
        intercepts.push(b);
        per_class.push(stats);
    } else {
        for class in &classes {
            let targets: Vec<f64> = features
                .labels
                .iter()
                .map(|l| if l == class { 1.0 } else { 0.0 })
                .collect();
            let (w, b, stats) = train_binary(&standardized, &targets, hp, class)?;
            weights.push(w);
            intercepts.push(b);
            per_class.push(stats);
        }
    }

    Ok(TrainOutcome {
        model: LogisticModel {
            classes,
            weights,
            intercepts,
            standardization: params,
            hyperparams: *hp,
            feature_names: features.feature_names.clone(),
        },
        per_class,
    })
}

/// Applies the stored standardization and the logistic map. Multiclass picks
/// the argmax score, ties resolved toward the earlier class; reported
/// probabilities are normalized to sum to one per row.
pub fn predict(model: &LogisticModel, rows: &[Vec<f64>]) -> Result<(Vec<String>, Vec<Vec<f64>>)> {
    let width = model.width();
    let mut labels = Vec::with_capacity(rows.len());
    let mut probabilities = Vec::with_capacity(rows.len());

    for row in rows {
        if row.len() != width {
            return Err(Error::WidthMismatch {
                expected: width,
                found: row.len(),
            });
        }
        let z = model.standardization.apply(row);
        if model.classes.len() == 2 {
            let score: f64 =
                z.iter().zip(&model.weights[0]).map(|(x, w)| x * w).sum::<f64>() + model.intercepts[0];
            let p = sigmoid(score);
            let label = if p > 0.5 {
                model.classes[1].clone()
            } else {
                model.classes[0].clone()
            };
            labels.push(label);
            probabilities.push(vec![1.0 - p, p]);
        } else {
            let scores: Vec<f64> = model
                .weights
                .iter()
                .zip(&model.intercepts)
                .map(|(w, b)| {
                    sigmoid(z.iter().zip(w).map(|(x, wi)| x * wi).sum::<f64>() + b)
                })
                .collect();
            let best = scores
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.total_cmp(b.1).then(b.0.cmp(&a.0)))
                .map(|(i, _)| i)
                .unwrap();
            labels.push(model.classes[best].clone());
            let total: f64 = scores.iter().sum();
            probabilities.push(scores.iter().map(|s| s / total).collect());
        }
    }
    Ok((labels, probabilities))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "mode", content = "positive")]
pub enum Averaging {
    Binary(String),
    Macro,
    Weighted,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EvalMetrics {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub accuracy: f64,
    pub averaging: Averaging,
    pub classes: Vec<String>,
    /// `confusion[i][j]`: gold class `i` predicted as class `j`.
    pub confusion: Vec<Vec<usize>>,
    pub n_samples: usize,
}

/// Confusion-matrix metrics over predicted/gold label pairs. Classes are the
/// sorted distinct gold labels; a prediction outside them is an error.
pub fn evaluate(predicted: &[String], gold: &[String], averaging: &Averaging) -> Result<EvalMetrics> {
    if predicted.len() != gold.len() || gold.is_empty() {
        return Err(Error::InvalidArgument {
            message: format!(
                "evaluate needs equal non-empty label lists, got {} predicted / {} gold",
                predicted.len(),
                gold.len()
            ),
        });
    }
    let mut classes: Vec<String> = gold.to_vec();
    classes.sort();
    classes.dedup();
    let index: BTreeMap<&str, usize> = classes
        .iter()
        .enumerate()
        .map(|(i, c)| (c.as_str(), i))
        .collect();

    let k = classes.len();
    let mut confusion = vec![vec![0usize; k]; k];
    for (p, g) in predicted.iter().zip(gold) {
        let gi = index[g.as_str()];
        let pi = *index.get(p.as_str()).ok_or_else(|| Error::UnknownLabel {
            label: p.clone(),
        })?;
        confusion[gi][pi] += 1;
    }

    let total: usize = predicted.len();
    let correct: usize = (0..k).map(|i| confusion[i][i]).sum();
    let accuracy = correct as f64 / total as f64;

    let ratio = |num: usize, den: usize| if den == 0 { 0.0 } else { num as f64 / den as f64 };
    let mut per_class = Vec::with_capacity(k);
    for i in 0..k {
        let tp = confusion[i][i];
        let fp: usize = (0..k).filter(|&g| g != i).map(|g| confusion[g][i]).sum();
        let fn_: usize = (0..k).filter(|&p| p != i).map(|p| confusion[i][p]).sum();
        let precision = ratio(tp, tp + fp);
        let recall = ratio(tp, tp + fn_);
        let f1 = if precision + recall == 0.0 {
            0.0
        } else {
            2.0 * precision * recall / (precision + recall)
        };
        let support: usize = confusion[i].iter().sum();
        per_class.push((precision, recall, f1, support));
    }

    let (precision, recall, f1) = match averaging {
        Averaging::Binary(positive) => {
            if k != 2 {
                return Err(Error::InvalidArgument {
                    message: format!("binary averaging needs exactly 2 classes, found {k}"),
                });
            }
            let i = *index.get(positive.as_str()).ok_or_else(|| Error::UnknownLabel {
                label: positive.clone(),
            })?;
            (per_class[i].0, per_class[i].1, per_class[i].2)
        }
        Averaging::Macro => {
            let kf = k as f64;
            (
                per_class.iter().map(|c| c.0).sum::<f64>() / kf,
                per_class.iter().map(|c| c.1).sum::<f64>() / kf,
                per_class.iter().map(|c| c.2).sum::<f64>() / kf,
            )
        }
        Averaging::Weighted => {
            let total_f = total as f64;
            (
                per_class.iter().map(|c| c.0 * c.3 as f64).sum::<f64>() / total_f,
                per_class.iter().map(|c| c.1 * c.3 as f64).sum::<f64>() / total_f,
                per_class.iter().map(|c| c.2 * c.3 as f64).sum::<f64>() / total_f,
            )
        }
    };

    Ok(EvalMetrics {
        precision,
        recall,
        f1,
        accuracy,
        averaging: averaging.clone(),
        classes,
        confusion,
        n_samples: total,
    })
}

/// Coefficients laid out features-by-classes: rows follow the model's
/// feature order (biases then intensities), one column per class. Binary
/// models produce a single column for the positive class; the other class's
/// coefficients are its negation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoefficientReport {
    pub feature_names: Vec<String>,
    pub classes: Vec<String>,
    /// `coefficients[feature][class]`, standardized-space weights.
    pub coefficients: Vec<Vec<f64>>,
    pub intercepts: Vec<f64>,
}

pub fn coefficient_report(model: &LogisticModel) -> CoefficientReport {
    let classes: Vec<String> = if model.classes.len() == 2 {
        vec![model.classes[1].clone()]
    } else {
        model.classes.clone()
    };
    let coefficients = (0..model.width())
        .map(|f| model.weights.iter().map(|w| w[f]).collect())
        .collect();
    CoefficientReport {
        feature_names: model.feature_names.clone(),
        classes,
        coefficients,
        intercepts: model.intercepts.clone(),
    }
}

impl CoefficientReport {
    /// CSV with one row per feature and one column per class.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("feature");
        for class in &self.classes {
            out.push(',');
            out.push_str(&escape_csv(class));
        }
        out.push('\n');
        for (name, row) in self.feature_names.iter().zip(&self.coefficients) {
            out.push_str(name);
            for value in row {
                out.push(',');
                out.push_str(&format!("{value}"));
            }
            out.push('\n');
        }
        out
    }
}

fn escape_csv(field: &str) -> String {
    if field.contains([',', '"', '\n']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

/// A train/evaluate split request.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SplitSpec {
    KFold { k: usize, seed: u64 },
    File(PathBuf),
}

/// Parses `kfold:K:SEED` or `file:PATH`. There is intentionally no default.
pub fn parse_split_spec(spec: &str) -> Result<SplitSpec> {
    let invalid = |message: &str| Error::InvalidSplitSpec {
        spec: spec.to_string(),
        message: message.to_string(),
    };
    if let Some(rest) = spec.strip_prefix("kfold:") {
        let parts: Vec<&str> = rest.split(':').collect();
        if parts.len() != 2 {
            return Err(invalid("expected kfold:K:SEED"));
        }
        let k: usize = parts[0].parse().map_err(|_| invalid("K must be an integer"))?;
        let seed: u64 = parts[1]
            .parse()
            .map_err(|_| invalid("SEED must be an integer"))?;
        if k < 2 {
            return Err(invalid("K must be >= 2"));
        }
        Ok(SplitSpec::KFold { k, seed })
    } else if let Some(path) = spec.strip_prefix("file:") {
        if path.is_empty() {
            return Err(invalid("file: needs a path"));
        }
        Ok(SplitSpec::File(PathBuf::from(path)))
    } else {
        Err(invalid("expected kfold:K:SEED or file:PATH"))
    }
}

/// Shuffles `0..n` with a seeded generator and deals the indices round-robin
/// into `k` folds.
pub fn kfold_indices(n: usize, k: usize, seed: u64) -> Result<Vec<Vec<usize>>> {
    if k < 2 || k > n {
        return Err(Error::InvalidArgument {
            message: format!("kfold needs 2 <= k <= n, got k={k}, n={n}"),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut indices: Vec<usize> = (0..n).collect();
    indices.shuffle(&mut rng);
    let mut folds = vec![Vec::new(); k];
    for (i, idx) in indices.into_iter().enumerate() {
        folds[i % k].push(idx);
    }
    for fold in &mut folds {
        fold.sort_unstable();
    }
    Ok(folds)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CrossValidation {
    pub fold_metrics: Vec<EvalMetrics>,
    /// Metrics over the pooled held-out predictions (each row predicted
    /// exactly once, by the model that did not train on it).
    pub pooled: EvalMetrics,
    pub held_out_predictions: Vec<String>,
}

/// Trains one model per fold on the complement and evaluates on the fold.
pub fn cross_validate(
    features: &FeatureMatrix,
    folds: &[Vec<usize>],
    hp: &Hyperparams,
    averaging: &Averaging,
) -> Result<CrossValidation> {
    if folds.len() < 2 {
        return Err(Error::InvalidArgument {
            message: "cross-validation needs at least 2 folds".into(),
        });
    }
    let n = features.rows.len();
    let mut seen = vec![false; n];
    for fold in folds {
        for &idx in fold {
            if idx >= n {
                return Err(Error::InvalidArgument {
                    message: format!("fold index {idx} out of range for {n} rows"),
                });
            }
            if seen[idx] {
                return Err(Error::InvalidArgument {
                    message: format!("row {idx} assigned to more than one fold"),
                });
            }
            seen[idx] = true;
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::InvalidArgument {
            message: "every row must be assigned to exactly one fold".into(),
        });
    }

    let mut held_out = vec![String::new(); n];
    let mut fold_metrics = Vec::with_capacity(folds.len());
    for fold in folds {
        let in_fold: Vec<bool> = {
            let mut mask = vec![false; n];
            for &idx in fold {
                mask[idx] = true;
            }
            mask
        };
        let train_rows: Vec<Vec<f64>> = (0..n)
            .filter(|i| !in_fold[*i])
            .map(|i| features.rows[i].clone())
            .collect();
        let train_labels: Vec<String> = (0..n)
            .filter(|i| !in_fold[*i])
            .map(|i| features.labels[i].clone())
            .collect();
        let train = FeatureMatrix::new(train_rows, train_labels, features.feature_names.clone())?;
        let outcome = train_logreg(&train, hp)?;

        let test_rows: Vec<Vec<f64>> = fold.iter().map(|&i| features.rows[i].clone()).collect();
        let test_gold: Vec<String> = fold.iter().map(|&i| features.labels[i].clone()).collect();
        let (predicted, _) = predict(&outcome.model, &test_rows)?;
        for (&idx, label) in fold.iter().zip(&predicted) {
            held_out[idx] = label.clone();
        }
        fold_metrics.push(evaluate(&predicted, &test_gold, averaging)?);
    }

    let pooled = evaluate(&held_out, &features.labels, averaging)?;
    Ok(CrossValidation {
        fold_metrics,
        pooled,
        held_out_predictions: held_out,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn matrix(rows: Vec<Vec<f64>>, labels: Vec<&str>) -> FeatureMatrix {
        let width = rows[0].len();
        let names = (0..width).map(|i| format!("f{i}")).collect();
        FeatureMatrix::new(rows, labels.into_iter().map(String::from).collect(), names).unwrap()
    }

    /// Two well-separated blobs in 2 features.
    fn separable() -> FeatureMatrix {
        let mut rows = Vec::new();
        let mut labels = Vec::new();
        for i in 0..10 {
            let jitter = (i as f64) * 0.01;
            rows.push(vec![2.0 + jitter, 2.0 - jitter]);
            labels.push("pos");
            rows.push(vec![-2.0 - jitter, -2.0 + jitter]);
            labels.push("neg");
        }
        matrix(rows, labels)
    }

    #[test]
    fn standardize_uses_population_stddev() {
        let (z, params) = standardize(&[vec![1.0], vec![3.0]]).unwrap();
        assert_eq!(z, vec![vec![-1.0], vec![1.0]]);
        assert_eq!(params.means, vec![2.0]);
        assert_eq!(params.stds, vec![1.0]);
    }

    #[test]
    fn constant_column_maps_to_zero_with_warning() {
        let (z, params) = standardize(&[vec![5.0, 1.0], vec![5.0, 3.0]]).unwrap();
        assert_eq!(z[0][0], 0.0);
        assert_eq!(z[1][0], 0.0);
        assert_eq!(params.constant_features, vec![0]);
        assert_eq!(params.stds[0], 1.0);
    }

    #[test]
    fn reapplying_params_reproduces_standardized_rows() {
        let rows = vec![vec![1.0, -2.0], vec![3.0, 4.0], vec![-1.0, 0.5]];
        let (z, params) = standardize(&rows).unwrap();
        for (row, expected) in rows.iter().zip(&z) {
            assert_eq!(&params.apply(row), expected);
        }
    }

    #[test]
    fn separable_data_reaches_perfect_training_accuracy() {
        let features = separable();
        let outcome = train_logreg(&features, &Hyperparams::default()).unwrap();
        let (predicted, _) = predict(&outcome.model, &features.rows).unwrap();
        assert_eq!(predicted, features.labels);
    }

    #[test]
    fn single_class_is_rejected() {
        let features = matrix(vec![vec![1.0], vec![2.0]], vec!["a", "a"]);
        assert!(matches!(
            train_logreg(&features, &Hyperparams::default()).unwrap_err(),
            Error::SingleClass { .. }
        ));
    }

    #[test]
    fn identical_features_balanced_labels_stay_at_chance() {
        let features = matrix(
            vec![vec![3.0, 3.0]; 4],
            vec!["a", "b", "a", "b"],
        );
        let outcome = train_logreg(&features, &Hyperparams::default()).unwrap();
        for w in &outcome.model.weights[0] {
            assert!(w.abs() < 1e-8, "weight {w} did not vanish");
        }
        let (_, probs) = predict(&outcome.model, &features.rows).unwrap();
        for p in &probs {
            assert!((p[0] - 0.5).abs() < 1e-8);
            assert!((p[1] - 0.5).abs() < 1e-8);
        }
    }

    #[test]
    fn huge_step_size_diverges_with_an_error() {
        let features = separable();
        let hp = Hyperparams {
            step_size: 1e12,
            ..Hyperparams::default()
        };
        match train_logreg(&features, &hp) {
            Err(Error::Divergence { step_size, .. }) => assert_eq!(step_size, 1e12),
            other => panic!("expected divergence, got {other:?}"),
        }
    }

    #[test]
    fn loss_trace_is_non_increasing_at_default_step() {
        let features = separable();
        let outcome = train_logreg(&features, &Hyperparams::default()).unwrap();
        for stats in &outcome.per_class {
            for pair in stats.loss_trace.windows(2) {
                assert!(
                    pair[1] <= pair[0] + 1e-12,
                    "loss increased: {} -> {}",
                    pair[0],
                    pair[1]
                );
            }
        }
    }

    #[test]
    fn training_is_seed_independent() {
        let features = separable();
        let a = train_logreg(&features, &Hyperparams { seed: 1, ..Default::default() }).unwrap();
        let b = train_logreg(&features, &Hyperparams { seed: 99, ..Default::default() }).unwrap();
        for (wa, wb) in a.model.weights[0].iter().zip(&b.model.weights[0]) {
            assert!((wa - wb).abs() < 1e-4);
        }
    }

    #[test]
    fn zero_model_predicts_half() {
        let model = LogisticModel {
            classes: vec!["a".into(), "b".into()],
            weights: vec![vec![0.0, 0.0]],
            intercepts: vec![0.0],
            standardization: Standardization {
                means: vec![0.0, 0.0],
                stds: vec![1.0, 1.0],
                constant_features: vec![],
            },
            hyperparams: Hyperparams::default(),
            feature_names: vec!["f0".into(), "f1".into()],
        };
        let (labels, probs) = predict(&model, &[vec![3.0, -4.0]]).unwrap();
        assert_eq!(labels[0], "a"); // tie resolves to the first class
        assert_eq!(probs[0], vec![0.5, 0.5]);
    }

    #[test]
    fn probabilities_are_bounded_and_sum_to_one() {
        let features = matrix(
            vec![
                vec![1.0, 0.0],
                vec![0.0, 1.0],
                vec![-1.0, 0.2],
                vec![0.3, -1.0],
                vec![1.2, 1.1],
                vec![-0.8, -0.9],
            ],
            vec!["a", "b", "c", "a", "b", "c"],
        );
        let outcome = train_logreg(&features, &Hyperparams::default()).unwrap();
        let (_, probs) = predict(&outcome.model, &features.rows).unwrap();
        for p in &probs {
            assert_eq!(p.len(), 3);
            assert!(p.iter().all(|v| (0.0..=1.0).contains(v)));
            assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn width_mismatch_is_rejected() {
        let features = separable();
        let outcome = train_logreg(&features, &Hyperparams::default()).unwrap();
        assert!(matches!(
            predict(&outcome.model, &[vec![1.0]]).unwrap_err(),
            Error::WidthMismatch { .. }
        ));
    }

    #[test]
    fn argmax_is_invariant_under_intercept_shift() {
        let features = matrix(
            vec![
                vec![1.0, 0.0],
                vec![0.0, 1.0],
                vec![-1.0, -1.0],
                vec![0.5, 0.6],
                vec![-0.5, 0.4],
                vec![0.2, -0.8],
            ],
            vec!["a", "b", "c", "b", "a", "c"],
        );
        let outcome = train_logreg(&features, &Hyperparams::default()).unwrap();
        let mut shifted = outcome.model.clone();
        for b in &mut shifted.intercepts {
            *b += 0.37;
        }
        let (l1, _) = predict(&outcome.model, &features.rows).unwrap();
        let (l2, _) = predict(&shifted, &features.rows).unwrap();
        assert_eq!(l1, l2);
    }

    #[test]
    fn perfect_predictions_score_one() {
        let gold: Vec<String> = ["a", "b", "a", "c"].iter().map(|s| s.to_string()).collect();
        let metrics = evaluate(&gold, &gold, &Averaging::Macro).unwrap();
        assert_eq!(metrics.precision, 1.0);
        assert_eq!(metrics.recall, 1.0);
        assert_eq!(metrics.f1, 1.0);
        assert_eq!(metrics.accuracy, 1.0);
        let total: usize = metrics.confusion.iter().flatten().sum();
        assert_eq!(total, 4);
    }

    #[test]
    fn binary_all_wrong_has_zero_accuracy() {
        let gold: Vec<String> = ["a", "b"].iter().map(|s| s.to_string()).collect();
        let predicted: Vec<String> = ["b", "a"].iter().map(|s| s.to_string()).collect();
        let metrics = evaluate(&predicted, &gold, &Averaging::Binary("b".into())).unwrap();
        assert_eq!(metrics.accuracy, 0.0);
        assert_eq!(metrics.precision, 0.0);
    }

    #[test]
    fn three_class_metrics_match_hand_computation() {
        // gold:      a a a b b c
        // predicted: a b a b c c
        let gold: Vec<String> = ["a", "a", "a", "b", "b", "c"].iter().map(|s| s.to_string()).collect();
        let predicted: Vec<String> = ["a", "b", "a", "b", "c", "c"].iter().map(|s| s.to_string()).collect();
        let metrics = evaluate(&predicted, &gold, &Averaging::Macro).unwrap();
        // Per class (P, R, F1):
        // a: P=2/2=1, R=2/3, F1=0.8
        // b: P=1/2, R=1/2, F1=0.5
        // c: P=1/2, R=1/1=1, F1=2/3
        assert!((metrics.accuracy - 4.0 / 6.0).abs() < 1e-12);
        assert!((metrics.precision - (1.0 + 0.5 + 0.5) / 3.0).abs() < 1e-12);
        assert!((metrics.recall - (2.0 / 3.0 + 0.5 + 1.0) / 3.0).abs() < 1e-12);
        assert!((metrics.f1 - (0.8 + 0.5 + 2.0 / 3.0) / 3.0).abs() < 1e-12);

        let weighted = evaluate(&predicted, &gold, &Averaging::Weighted).unwrap();
        assert!((weighted.precision - (3.0 * 1.0 + 2.0 * 0.5 + 1.0 * 0.5) / 6.0).abs() < 1e-12);
    }

    #[test]
    fn unknown_predicted_label_is_an_error() {
        let gold: Vec<String> = vec!["a".into(), "b".into()];
        let predicted: Vec<String> = vec!["a".into(), "z".into()];
        assert!(matches!(
            evaluate(&predicted, &gold, &Averaging::Macro).unwrap_err(),
            Error::UnknownLabel { .. }
        ));
    }

    #[test]
    fn evaluate_is_permutation_invariant() {
        let gold: Vec<String> = ["a", "b", "a", "c", "b"].iter().map(|s| s.to_string()).collect();
        let predicted: Vec<String> = ["a", "a", "b", "c", "b"].iter().map(|s| s.to_string()).collect();
        let m1 = evaluate(&predicted, &gold, &Averaging::Macro).unwrap();
        let perm = [4, 2, 0, 1, 3];
        let gold_p: Vec<String> = perm.iter().map(|&i| gold[i].clone()).collect();
        let predicted_p: Vec<String> = perm.iter().map(|&i| predicted[i].clone()).collect();
        let m2 = evaluate(&predicted_p, &gold_p, &Averaging::Macro).unwrap();
        assert_eq!(m1.precision, m2.precision);
        assert_eq!(m1.recall, m2.recall);
        assert_eq!(m1.f1, m2.f1);
        assert_eq!(m1.accuracy, m2.accuracy);
        assert_eq!(m1.confusion, m2.confusion);
    }

    #[test]
    fn binary_report_has_one_column() {
        let features = separable();
        let outcome = train_logreg(&features, &Hyperparams::default()).unwrap();
        let report = coefficient_report(&outcome.model);
        assert_eq!(report.classes, vec!["pos".to_string()]);
        assert_eq!(report.coefficients.len(), 2);
        assert_eq!(report.coefficients[0].len(), 1);
    }

    #[test]
    fn five_class_report_is_features_by_classes() {
        let mut rows = Vec::new();
        let mut labels = Vec::new();
        for c in 0..5 {
            for i in 0..4 {
                let mut row = vec![0.1 * i as f64; 10];
                row[c] += 2.0;
                rows.push(row);
                labels.push(format!("class{c}"));
            }
        }
        let features = FeatureMatrix::new(rows, labels, frame_feature_names()).unwrap();
        let outcome = train_logreg(&features, &Hyperparams::default()).unwrap();
        let report = coefficient_report(&outcome.model);
        assert_eq!(report.classes.len(), 5);
        assert_eq!(report.coefficients.len(), 10);
        assert!(report.coefficients.iter().all(|row| row.len() == 5));
        let csv = report.to_csv();
        assert_eq!(csv.lines().count(), 11);
        assert!(csv.starts_with("feature,class0,class1,class2,class3,class4"));
    }

    #[test]
    fn split_spec_parsing() {
        assert_eq!(
            parse_split_spec("kfold:5:42").unwrap(),
            SplitSpec::KFold { k: 5, seed: 42 }
        );
        assert_eq!(
            parse_split_spec("file:folds.json").unwrap(),
            SplitSpec::File(PathBuf::from("folds.json"))
        );
        assert!(parse_split_spec("kfold:1:42").is_err());
        assert!(parse_split_spec("kfold:5").is_err());
        assert!(parse_split_spec("random").is_err());
        assert!(parse_split_spec("file:").is_err());
    }

    #[test]
    fn kfold_partitions_all_indices() {
        let folds = kfold_indices(23, 5, 7).unwrap();
        assert_eq!(folds.len(), 5);
        let mut all: Vec<usize> = folds.iter().flatten().copied().collect();
        all.sort_unstable();
        assert_eq!(all, (0..23).collect::<Vec<_>>());
        // Deterministic.
        assert_eq!(folds, kfold_indices(23, 5, 7).unwrap());
        assert_ne!(folds, kfold_indices(23, 5, 8).unwrap());
    }

    #[test]
    fn cross_validation_rejects_partial_folds() {
        let features = separable();
        let n = features.rows.len();
        let folds = vec![vec![0, 1], (2..n).collect::<Vec<_>>()];
        assert!(cross_validate(&features, &folds, &Hyperparams::default(), &Averaging::Macro).is_ok());
        let missing = vec![vec![0, 1], (2..n - 1).collect::<Vec<_>>()];
        assert!(cross_validate(&features, &missing, &Hyperparams::default(), &Averaging::Macro).is_err());
    }
}
