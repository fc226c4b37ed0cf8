//! The five subcommand implementations. Each command computes every output
//! in memory first, then writes the files atomically and the manifest last,
//! so a failing run never leaves partial output behind.

use std::collections::{BTreeMap, HashSet};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use serde::Serialize;

use moralframes::axes::{self, AxisSet, ValidationThresholds};
use moralframes::classifier::{
    self, Averaging, FeatureMatrix, Hyperparams, SplitSpec,
};
use moralframes::embed::{self, EmbeddingStore};
use moralframes::error::Error;
use moralframes::kde::{self, KdeGrid};
use moralframes::lexicon::{self, all_cells, MoralLexicon};
use moralframes::manifest::{manifest_path_for, write_atomic};
use moralframes::pca;
use moralframes::preprocess::{self, PipelineOptions};
use moralframes::scoring;
use moralframes::xlingual;

use super::{BuildAxesArgs, ClassifyArgs, CliError, Ctx, ScoreArgs, TranslateArgs, ValidateArgs};
use super::EXIT_VALIDATION_FAILED;

type CliResult<T> = Result<T, CliError>;

fn sibling(out: &Path, extension: &str) -> PathBuf {
    out.with_extension(extension)
}

fn fmt_f64(v: f64) -> String {
    format!("{v}")
}

fn escape_csv(field: &str) -> String {
    if field.contains([',', '"', '\n']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

/// Loads the lexicon and the embedding store, optionally restricting the
/// store to the lexicon's vocabulary.
fn load_lexicon_and_store(
    lexicon_path: &Path,
    embeddings_path: &Path,
    restrict: bool,
) -> CliResult<(MoralLexicon, EmbeddingStore)> {
    let lexicon = lexicon::load_lexicon(lexicon_path)?;
    let store = if restrict {
        let vocabulary: HashSet<String> = all_cells()
            .flat_map(|(f, p)| lexicon.cell(f, p).iter().cloned())
            .collect();
        embed::load_embeddings(embeddings_path, Some(&vocabulary))?
    } else {
        embed::load_embeddings(embeddings_path, None)?
    };
    if store.duplicates_ignored() > 0 {
        eprintln!(
            "warning: {} duplicate embedding tokens ignored (first occurrence wins)",
            store.duplicates_ignored()
        );
    }
    Ok((lexicon, store))
}

fn finish(
    mut ctx: Ctx,
    outputs: &[(&Path, &[u8])],
    inputs: &[&Path],
    manifest_anchor: &Path,
) -> CliResult<()> {
    for path in inputs {
        ctx.manifest.record_input(path)?;
    }
    for (path, bytes) in outputs {
        write_atomic(path, bytes)?;
        ctx.manifest.record_output(path)?;
    }
    ctx.manifest.write(&manifest_path_for(manifest_anchor))?;
    Ok(())
}

pub fn build_axes(args: BuildAxesArgs) -> CliResult<ExitCode> {
    let mut ctx = Ctx::new("build-axes", args.config.as_deref())?;
    let embeddings_path = ctx.required_path(args.embeddings, "embeddings")?;
    let lexicon_path = ctx.required_path(args.lexicon, "lexicon")?;
    let out = ctx.required_path(args.out, "out")?;
    let restrict = ctx.flag(args.restrict_to_lexicon, "restrict-to-lexicon")?;

    let (lexicon, store) = load_lexicon_and_store(&lexicon_path, &embeddings_path, restrict)?;
    let resolved = lexicon.resolve(&store)?;
    for ((foundation, pole), count) in lexicon.cell_counts() {
        let oov = resolved.oov[&(foundation, pole)].len();
        println!("{foundation}/{pole}: {count} words ({oov} not embedded)");
    }
    if resolved.oov_total() > 0 {
        eprintln!(
            "warning: {} lexicon words not in the embedding vocabulary",
            resolved.oov_total()
        );
    }
    let axisset = axes::build_axes(&lexicon, &store)?;
    let json = axisset.to_json()?;

    finish(
        ctx,
        &[(&out, json.as_bytes())],
        &[&embeddings_path, &lexicon_path],
        &out,
    )?;
    println!("wrote {} ({} axes, dim {})", out.display(), axisset.axes.len(), axisset.dim);
    Ok(ExitCode::SUCCESS)
}

/// One cell's KDE outcome in the projection export.
#[derive(Serialize)]
struct CellKde {
    foundation: String,
    pole: String,
    n_points: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    kde: Option<KdeGrid>,
    #[serde(skip_serializing_if = "Option::is_none")]
    skipped_reason: Option<String>,
}

#[derive(Serialize)]
struct ProjectionExport {
    grid_size: usize,
    explained_variance_ratio: Vec<f64>,
    cells: Vec<CellKde>,
}

pub fn validate(args: ValidateArgs) -> CliResult<ExitCode> {
    let mut ctx = Ctx::new("validate", args.config.as_deref())?;
    let axes_path = ctx.required_path(args.axes, "axes")?;
    let embeddings_path = ctx.required_path(args.embeddings, "embeddings")?;
    let lexicon_path = ctx.required_path(args.lexicon, "lexicon")?;
    let out = ctx.required_path(args.out, "out")?;
    let defaults = ValidationThresholds::default();
    let thresholds = ValidationThresholds {
        p1_max_midpoint_rel: ctx.parsed(
            args.p1_max_midpoint_rel,
            "p1-max-midpoint-rel",
            defaults.p1_max_midpoint_rel,
        )?,
        p2_min_margin: ctx.parsed(args.p2_min_margin, "p2-min-margin", defaults.p2_min_margin)?,
        p3_min_cosine: ctx.parsed(args.p3_min_cosine, "p3-min-cosine", defaults.p3_min_cosine)?,
        p4_max_cosine: ctx.parsed(args.p4_max_cosine, "p4-max-cosine", defaults.p4_max_cosine)?,
    };
    let grid_size = ctx.parsed(args.grid_size, "grid-size", 40usize)?;
    let bandwidth = ctx.parsed_optional(args.bandwidth, "bandwidth")?;

    // Only lexicon words are needed here; keep the store small.
    let (lexicon, store) = load_lexicon_and_store(&lexicon_path, &embeddings_path, true)?;
    let axisset = AxisSet::from_json_file(&axes_path)?;
    if axisset.dim != store.dim() {
        return Err(Error::invalid_data(format!(
            "axis set has dim {}, embeddings have dim {}",
            axisset.dim,
            store.dim()
        ))
        .into());
    }

    let report = axes::validate_axes(&axisset, &lexicon, &store, &thresholds)?;
    let report_json = serde_json::to_string_pretty(&report).map_err(Error::from)?;

    // Projection export: all resolved word vectors plus the ten centroids.
    let resolved = lexicon.resolve(&store)?;
    let mut labels: Vec<(String, String, String)> = Vec::new();
    let mut vectors: Vec<Vec<f64>> = Vec::new();
    let mut cell_ranges: Vec<((String, String), std::ops::Range<usize>)> = Vec::new();
    for (foundation, pole) in all_cells() {
        let start = vectors.len();
        for (token, vector) in &resolved.resolved[&(foundation, pole)] {
            labels.push((token.clone(), foundation.name().into(), pole.name().into()));
            vectors.push(vector.clone());
        }
        cell_ranges.push((
            (foundation.name().into(), pole.name().into()),
            start..vectors.len(),
        ));
    }
    for axis in &axisset.axes {
        labels.push(("__centroid__".into(), axis.foundation.name().into(), "virtue".into()));
        vectors.push(axis.virtue_centroid.clone());
        labels.push(("__centroid__".into(), axis.foundation.name().into(), "vice".into()));
        vectors.push(axis.vice_centroid.clone());
    }
    let projection = pca::pca_project(&vectors, 2)?;

    let mut pca_csv = String::from("token,foundation,pole,x,y\n");
    for ((token, foundation, pole), point) in labels.iter().zip(&projection.projections) {
        pca_csv.push_str(&format!(
            "{},{},{},{},{}\n",
            escape_csv(token),
            foundation,
            pole,
            fmt_f64(point[0]),
            fmt_f64(point[1])
        ));
    }

    let mut cells = Vec::new();
    for ((foundation, pole), range) in cell_ranges {
        let points: Vec<(f64, f64)> = projection.projections[range.clone()]
            .iter()
            .map(|p| (p[0], p[1]))
            .collect();
        let entry = match kde::kde_grid(&points, grid_size, bandwidth) {
            Ok(grid) => CellKde {
                foundation,
                pole,
                n_points: points.len(),
                kde: Some(grid),
                skipped_reason: None,
            },
            Err(err @ (Error::DegenerateInput { .. } | Error::InvalidArgument { .. })) => CellKde {
                foundation,
                pole,
                n_points: points.len(),
                kde: None,
                skipped_reason: Some(err.to_string()),
            },
            Err(other) => return Err(other.into()),
        };
        cells.push(entry);
    }
    let export = ProjectionExport {
        grid_size,
        explained_variance_ratio: projection.explained_variance_ratio.clone(),
        cells,
    };
    let kde_json = serde_json::to_string_pretty(&export).map_err(Error::from)?;

    let pca_path = sibling(&out, "pca.csv");
    let kde_path = sibling(&out, "kde.json");
    finish(
        ctx,
        &[
            (&out, report_json.as_bytes()),
            (&pca_path, pca_csv.as_bytes()),
            (&kde_path, kde_json.as_bytes()),
        ],
        &[&axes_path, &embeddings_path, &lexicon_path],
        &out,
    )?;

    for (name, ok) in [
        ("P1 midpoint", report.pass_flags.p1),
        ("P2 cohesion", report.pass_flags.p2),
        ("P3 orientation", report.pass_flags.p3),
        ("P4 separation", report.pass_flags.p4),
    ] {
        println!("{name}: {}", if ok { "pass" } else { "FAIL" });
    }
    if report.pass_flags.all() {
        println!("all axis properties hold");
        Ok(ExitCode::SUCCESS)
    } else {
        println!("axis validation failed");
        Ok(ExitCode::from(EXIT_VALIDATION_FAILED))
    }
}

#[derive(Serialize)]
struct ScoreSidecar {
    baseline: scoring::CorpusBaseline,
    skipped_doc_ids: Vec<String>,
    n_oov_token_occurrences: usize,
    n_scored_token_occurrences: usize,
    corpus_stats: preprocess::CorpusStats,
    formulas: BTreeMap<&'static str, &'static str>,
}

pub fn score(args: ScoreArgs) -> CliResult<ExitCode> {
    let mut ctx = Ctx::new("score", args.config.as_deref())?;
    let corpus_path = ctx.required_path(args.corpus, "corpus")?;
    let axes_path = ctx.required_path(args.axes, "axes")?;
    let embeddings_path = ctx.required_path(args.embeddings, "embeddings")?;
    let stopwords_path = ctx.optional_path(args.stopwords, "stopwords");
    let out = ctx.required_path(args.out, "out")?;
    let drop_mentions = ctx.flag(args.drop_mentions, "drop-mentions")?;
    let drop_retweet_prefix = ctx.flag(args.drop_retweet_prefix, "drop-retweet-prefix")?;

    let stopwords = match &stopwords_path {
        Some(path) => preprocess::load_stopwords(path)?,
        None => HashSet::new(),
    };
    let options = PipelineOptions {
        drop_mentions,
        drop_retweet_prefix,
        stopwords,
    };
    let corpus = preprocess::load_corpus(&corpus_path, &options)?;
    let axisset = AxisSet::from_json_file(&axes_path)?;
    let store = embed::load_embeddings(&embeddings_path, None)?;
    if axisset.dim != store.dim() {
        return Err(Error::invalid_data(format!(
            "axis set has dim {}, embeddings have dim {}",
            axisset.dim,
            store.dim()
        ))
        .into());
    }

    let scored = scoring::score_corpus(&corpus.documents, &axisset, &store)?;
    let label_of: BTreeMap<&str, &str> = corpus
        .documents
        .iter()
        .map(|d| (d.id.as_str(), d.label.as_str()))
        .collect();

    let mut csv = String::from(
        "doc_id,label,n_tokens,bias_care,bias_fairness,bias_loyalty,bias_authority,bias_sanctity,\
         intensity_care,intensity_fairness,intensity_loyalty,intensity_authority,intensity_sanctity\n",
    );
    for s in &scored.scores {
        csv.push_str(&escape_csv(&s.doc_id));
        csv.push(',');
        csv.push_str(&escape_csv(label_of[s.doc_id.as_str()]));
        csv.push_str(&format!(",{}", s.n_scored_tokens));
        for v in s.bias.iter().chain(s.intensity.iter()) {
            csv.push(',');
            csv.push_str(&fmt_f64(*v));
        }
        csv.push('\n');
    }

    let sidecar = ScoreSidecar {
        baseline: scored.baseline.clone(),
        skipped_doc_ids: scored.skipped.clone(),
        n_oov_token_occurrences: scored.n_oov_tokens,
        n_scored_token_occurrences: scored.n_scored_tokens,
        corpus_stats: corpus.stats.clone(),
        formulas: BTreeMap::from([
            ("contribution", "cosine(word_vector, axis)"),
            ("bias", "mean(contributions)"),
            ("baseline_bias", "mean over documents of document bias"),
            (
                "intensity",
                "mean((contribution - baseline_bias)^2) over the document's contributions",
            ),
        ]),
    };
    let sidecar_json = serde_json::to_string_pretty(&sidecar).map_err(Error::from)?;

    let mut inputs: Vec<&Path> = vec![&corpus_path, &axes_path, &embeddings_path];
    if let Some(ref p) = stopwords_path {
        inputs.push(p);
    }
    let sidecar_path = sibling(&out, "baseline.json");
    finish(
        ctx,
        &[(&out, csv.as_bytes()), (&sidecar_path, sidecar_json.as_bytes())],
        &inputs,
        &out,
    )?;
    println!(
        "scored {} documents ({} skipped, {} OOV token occurrences)",
        scored.scores.len(),
        scored.skipped.len(),
        scored.n_oov_tokens
    );
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct TranslationFitInfo {
    ridge_lambda: f64,
    n_pairs_used: usize,
    n_pairs_dropped: usize,
    dropped_pairs: Vec<(String, String)>,
    fit_rmse: f64,
    d_src: usize,
    d_tgt: usize,
    k: usize,
    skipped_source_words: Vec<(String, String, String)>,
}

pub fn translate(args: TranslateArgs) -> CliResult<ExitCode> {
    let mut ctx = Ctx::new("translate", args.config.as_deref())?;
    let pairs_path = ctx.required_path(args.pairs, "pairs")?;
    let src_path = ctx.required_path(args.src_embeddings, "src-embeddings")?;
    let tgt_path = ctx.required_path(args.tgt_embeddings, "tgt-embeddings")?;
    let lexicon_path = ctx.required_path(args.lexicon, "lexicon")?;
    let out = ctx.required_path(args.out, "out")?;
    let k = ctx.parsed(args.k, "k", 1usize)?;
    let ridge = ctx.parsed(args.ridge, "ridge", 0.0f64)?;
    if k == 0 {
        return Err(CliError::Usage("--k must be >= 1".into()));
    }
    if ridge < 0.0 {
        return Err(CliError::Usage("--ridge must be >= 0".into()));
    }

    let pairs = xlingual::load_seed_pairs(&pairs_path)?;
    let lexicon = lexicon::load_lexicon(&lexicon_path)?;
    let src = embed::load_embeddings(&src_path, None)?;
    let tgt = embed::load_embeddings(&tgt_path, None)?;

    let (tm, dropped) = xlingual::fit_translation(&pairs, &src, &tgt, ridge)?;
    if !dropped.is_empty() {
        eprintln!(
            "warning: {} seed pairs dropped (token missing from an embedding store)",
            dropped.len()
        );
    }
    let (translated, report) = xlingual::translate_lexicon(&tm, &lexicon, &src, &tgt, k)?;

    let mut audit = String::from("foundation,pole,source_token,rank,target_token,similarity\n");
    for record in &report.records {
        for (rank, (target, similarity)) in record.candidates.iter().enumerate() {
            audit.push_str(&format!(
                "{},{},{},{},{},{}\n",
                record.cell.0.name(),
                record.cell.1.name(),
                escape_csv(&record.source_token),
                rank + 1,
                escape_csv(target),
                fmt_f64(*similarity)
            ));
        }
    }

    let fit_info = TranslationFitInfo {
        ridge_lambda: tm.ridge_lambda,
        n_pairs_used: tm.n_pairs_used,
        n_pairs_dropped: dropped.len(),
        dropped_pairs: dropped,
        fit_rmse: tm.fit_rmse,
        d_src: tm.d_src(),
        d_tgt: tm.d_tgt(),
        k,
        skipped_source_words: report
            .skipped
            .iter()
            .map(|(cell, word)| (cell.0.name().to_string(), cell.1.name().to_string(), word.clone()))
            .collect(),
    };
    let fit_json = serde_json::to_string_pretty(&fit_info).map_err(Error::from)?;

    let audit_path = sibling(&out, "audit.csv");
    let fit_path = sibling(&out, "fit.json");
    finish(
        ctx,
        &[
            (&out, translated.to_tsv().as_bytes()),
            (&audit_path, audit.as_bytes()),
            (&fit_path, fit_json.as_bytes()),
        ],
        &[&pairs_path, &src_path, &tgt_path, &lexicon_path],
        &out,
    )?;
    println!(
        "translated lexicon: {} entries across 10 cells (fit rmse {:.6})",
        translated.len(),
        tm.fit_rmse
    );
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct ClassifyMetrics {
    split: String,
    n_rows: usize,
    classes: Vec<String>,
    hyperparams: Hyperparams,
    pooled: classifier::EvalMetrics,
    folds: Vec<classifier::EvalMetrics>,
    converged: Vec<bool>,
    constant_features: Vec<String>,
}

fn read_scores_csv(path: &Path) -> Result<(Vec<String>, FeatureMatrix), Error> {
    let mut reader = csv::Reader::from_path(path).map_err(|e| match e.kind() {
        csv::ErrorKind::Io(_) => Error::io(path, std::io::Error::other(e.to_string())),
        _ => Error::from(e),
    })?;
    let headers = reader.headers()?.clone();
    let expected = classifier::frame_feature_names();
    let column = |name: &str| -> Result<usize, Error> {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::invalid_data(format!("scores CSV is missing column {name:?}")))
    };
    let id_col = column("doc_id")?;
    let label_col = column("label")?;
    let feature_cols: Vec<usize> = expected
        .iter()
        .map(|name| column(name))
        .collect::<Result<_, _>>()?;

    let mut ids = Vec::new();
    let mut labels = Vec::new();
    let mut rows = Vec::new();
    let mut seen = HashSet::new();
    for (idx, record) in reader.records().enumerate() {
        let record = record?;
        let id = record
            .get(id_col)
            .ok_or_else(|| Error::invalid_data(format!("row {}: missing doc_id", idx + 1)))?
            .to_string();
        if !seen.insert(id.clone()) {
            return Err(Error::DuplicateDocId { id });
        }
        let label = record
            .get(label_col)
            .ok_or_else(|| Error::invalid_data(format!("row {}: missing label", idx + 1)))?
            .to_string();
        let mut row = Vec::with_capacity(feature_cols.len());
        for &col in &feature_cols {
            let raw = record
                .get(col)
                .ok_or_else(|| Error::invalid_data(format!("row {}: short record", idx + 1)))?;
            let value: f64 = raw.parse().map_err(|_| {
                Error::invalid_data(format!("row {}: invalid float {raw:?}", idx + 1))
            })?;
            row.push(value);
        }
        ids.push(id);
        labels.push(label);
        rows.push(row);
    }
    let matrix = FeatureMatrix::new(rows, labels, expected)?;
    Ok((ids, matrix))
}

#[derive(serde::Deserialize)]
struct FoldFile {
    folds: Vec<Vec<String>>,
}

fn folds_from_spec(
    spec: &SplitSpec,
    ids: &[String],
) -> Result<Vec<Vec<usize>>, Error> {
    match spec {
        SplitSpec::KFold { k, seed } => classifier::kfold_indices(ids.len(), *k, *seed),
        SplitSpec::File(path) => {
            let contents = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
            let parsed: FoldFile = serde_json::from_str(&contents)?;
            let index: BTreeMap<&str, usize> = ids
                .iter()
                .enumerate()
                .map(|(i, id)| (id.as_str(), i))
                .collect();
            let mut folds = Vec::with_capacity(parsed.folds.len());
            for fold_ids in &parsed.folds {
                let mut fold = Vec::with_capacity(fold_ids.len());
                for id in fold_ids {
                    let &idx = index.get(id.as_str()).ok_or_else(|| {
                        Error::invalid_data(format!(
                            "split file lists unknown doc id {id:?}"
                        ))
                    })?;
                    fold.push(idx);
                }
                fold.sort_unstable();
                folds.push(fold);
            }
            Ok(folds)
        }
    }
}

pub fn classify(args: ClassifyArgs) -> CliResult<ExitCode> {
    let mut ctx = Ctx::new("classify", args.config.as_deref())?;
    let scores_path = ctx.required_path(args.scores, "scores")?;
    let split_spec_raw = ctx.required_string(args.split, "split")?;
    let out = ctx.required_path(args.out, "out")?;
    let defaults = Hyperparams::default();
    let hyperparams = Hyperparams {
        l2_lambda: ctx.parsed(args.l2, "l2", defaults.l2_lambda)?,
        step_size: ctx.parsed(args.step, "step", defaults.step_size)?,
        max_iters: ctx.parsed(args.max_iters, "max-iters", defaults.max_iters)?,
        tolerance: ctx.parsed(args.tolerance, "tolerance", defaults.tolerance)?,
        seed: ctx.parsed(args.seed, "seed", defaults.seed)?,
    };
    let averaging_raw = ctx.parsed(args.averaging, "averaging", "macro".to_string())?;
    let positive_class = ctx.optional_string(args.positive_class, "positive-class");

    let averaging = match averaging_raw.as_str() {
        "macro" => Averaging::Macro,
        "weighted" => Averaging::Weighted,
        "binary" => match positive_class {
            Some(class) => Averaging::Binary(class),
            None => {
                return Err(CliError::Usage(
                    "binary averaging needs --positive-class".into(),
                ))
            }
        },
        other => {
            return Err(CliError::Usage(format!(
                "unknown averaging {other:?} (macro, weighted, binary)"
            )))
        }
    };
    let split = classifier::parse_split_spec(&split_spec_raw)?;

    let (ids, features) = read_scores_csv(&scores_path)?;
    let folds = folds_from_spec(&split, &ids)?;
    let cv = classifier::cross_validate(&features, &folds, &hyperparams, &averaging)?;
    let outcome = classifier::train_logreg(&features, &hyperparams)?;
    if !outcome.model.standardization.constant_features.is_empty() {
        let names: Vec<&str> = outcome
            .model
            .standardization
            .constant_features
            .iter()
            .map(|&i| outcome.model.feature_names[i].as_str())
            .collect();
        eprintln!("warning: constant features standardized to zero: {}", names.join(", "));
    }

    let model_json = outcome.model.to_json()?;
    let metrics = ClassifyMetrics {
        split: split_spec_raw.clone(),
        n_rows: features.rows.len(),
        classes: features.classes(),
        hyperparams,
        pooled: cv.pooled.clone(),
        folds: cv.fold_metrics.clone(),
        converged: outcome.per_class.iter().map(|s| s.converged).collect(),
        constant_features: outcome
            .model
            .standardization
            .constant_features
            .iter()
            .map(|&i| outcome.model.feature_names[i].clone())
            .collect(),
    };
    let metrics_json = serde_json::to_string_pretty(&metrics).map_err(Error::from)?;
    let coefficients = classifier::coefficient_report(&outcome.model).to_csv();

    let mut inputs: Vec<&Path> = vec![&scores_path];
    if let SplitSpec::File(ref path) = split {
        inputs.push(path);
    }
    let metrics_path = sibling(&out, "metrics.json");
    let coeff_path = sibling(&out, "coefficients.csv");
    finish(
        ctx,
        &[
            (&out, model_json.as_bytes()),
            (&metrics_path, metrics_json.as_bytes()),
            (&coeff_path, coefficients.as_bytes()),
        ],
        &inputs,
        &out,
    )?;
    println!(
        "held-out accuracy {:.4} over {} folds ({} rows, {} classes)",
        cv.pooled.accuracy,
        folds.len(),
        features.rows.len(),
        metrics.classes.len()
    );
    Ok(ExitCode::SUCCESS)
}
