//! Command-line front end. Every subcommand resolves its options from the
//! explicit flags first and a `key=value` config file beneath them, records
//! the resolved values plus input digests in a run manifest, and writes all
//! outputs atomically.
//!
//! Exit codes: 0 success, 1 validation failure (`validate` only), 2 usage
//! error, 3 data error.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use moralframes::manifest::RunManifest;
use moralframes::Error;

mod commands;

pub const EXIT_VALIDATION_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_DATA: u8 = 3;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Data(Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "usage error: {msg}"),
            CliError::Data(err) => write!(f, "{err}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        // A malformed split spec is a flag problem, not a data problem.
        match err {
            Error::InvalidSplitSpec { .. } => CliError::Usage(err.to_string()),
            other => CliError::Data(other),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(
    name = "moralframes",
    version,
    about = "Moral frame axes over word embeddings: build, validate, score, translate, classify"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build the five frame axes from an embedding file and a lexicon
    BuildAxes(BuildAxesArgs),
    /// Check the four axis properties and export PCA/KDE projection data
    Validate(ValidateArgs),
    /// Score a corpus for per-document frame bias and intensity
    Score(ScoreArgs),
    /// Fit a translation matrix from seed pairs and project the lexicon
    Translate(TranslateArgs),
    /// Train and evaluate the logistic-regression layer on frame scores
    Classify(ClassifyArgs),
}

#[derive(Args, Debug)]
struct BuildAxesArgs {
    /// Embedding text file (`token v1 ... vd` per line)
    #[arg(long)]
    embeddings: Option<PathBuf>,
    /// Lexicon TSV (`foundation<TAB>pole<TAB>word` with header)
    #[arg(long)]
    lexicon: Option<PathBuf>,
    /// Output axis-set JSON
    #[arg(long)]
    out: Option<PathBuf>,
    /// Load only the lexicon's words from the embedding file
    #[arg(long)]
    restrict_to_lexicon: bool,
    /// Config file with `key=value` lines merged beneath flags
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ValidateArgs {
    /// Axis-set JSON produced by build-axes
    #[arg(long)]
    axes: Option<PathBuf>,
    #[arg(long)]
    embeddings: Option<PathBuf>,
    #[arg(long)]
    lexicon: Option<PathBuf>,
    /// Output report JSON; `<out>.pca.csv` and `<out>.kde.json` sit next to it
    #[arg(long)]
    out: Option<PathBuf>,
    /// P1: max midpoint offset relative to the pole distance
    #[arg(long)]
    p1_max_midpoint_rel: Option<f64>,
    /// P2: min mean own-vs-opposite cosine margin per pole
    #[arg(long)]
    p2_min_margin: Option<f64>,
    /// P3: min pairwise axis cosine
    #[arg(long)]
    p3_min_cosine: Option<f64>,
    /// P4: max pairwise axis cosine
    #[arg(long)]
    p4_max_cosine: Option<f64>,
    /// KDE grid resolution per cell
    #[arg(long)]
    grid_size: Option<usize>,
    /// Fixed KDE bandwidth (default: Scott's rule per cell)
    #[arg(long)]
    bandwidth: Option<f64>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ScoreArgs {
    /// Corpus JSONL with `id`, `label`, `text` per record
    #[arg(long)]
    corpus: Option<PathBuf>,
    #[arg(long)]
    axes: Option<PathBuf>,
    #[arg(long)]
    embeddings: Option<PathBuf>,
    /// Stopword list, one token per line (omit to keep all tokens)
    #[arg(long)]
    stopwords: Option<PathBuf>,
    /// Output scores CSV; `<out>.baseline.json` sits next to it
    #[arg(long)]
    out: Option<PathBuf>,
    /// Drop @mention words entirely instead of keeping the bare word
    #[arg(long)]
    drop_mentions: bool,
    /// Drop leading `rt` tokens
    #[arg(long)]
    drop_retweet_prefix: bool,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct TranslateArgs {
    /// Seed pair TSV (`source<TAB>target`, no header)
    #[arg(long)]
    pairs: Option<PathBuf>,
    #[arg(long)]
    src_embeddings: Option<PathBuf>,
    #[arg(long)]
    tgt_embeddings: Option<PathBuf>,
    #[arg(long)]
    lexicon: Option<PathBuf>,
    /// Neighbors per source word to keep
    #[arg(long)]
    k: Option<usize>,
    /// Ridge regularization for the translation fit
    #[arg(long)]
    ridge: Option<f64>,
    /// Output translated-lexicon TSV; `<out>.audit.csv` sits next to it
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ClassifyArgs {
    /// Scores CSV produced by `score`
    #[arg(long)]
    scores: Option<PathBuf>,
    /// Split spec: `kfold:K:SEED` or `file:PATH` (no silent default)
    #[arg(long)]
    split: Option<String>,
    /// L2 penalty weight
    #[arg(long)]
    l2: Option<f64>,
    /// Gradient-descent step size
    #[arg(long)]
    step: Option<f64>,
    #[arg(long)]
    max_iters: Option<usize>,
    /// Stop when the gradient norm falls below this
    #[arg(long)]
    tolerance: Option<f64>,
    /// Metric averaging: macro, weighted, or binary
    #[arg(long)]
    averaging: Option<String>,
    /// Positive class for binary averaging
    #[arg(long)]
    positive_class: Option<String>,
    /// Seed recorded in the model hyperparameters
    #[arg(long)]
    seed: Option<u64>,
    /// Output model JSON; `<out>.metrics.json` and `<out>.coefficients.csv`
    /// sit next to it
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
}

/// Flag-beneath-config option resolver. Every resolved value lands in the
/// run manifest.
struct Ctx {
    config: BTreeMap<String, String>,
    manifest: RunManifest,
}

impl Ctx {
    fn new(subcommand: &str, config_path: Option<&Path>) -> CliResult<Self> {
        let mut config = BTreeMap::new();
        if let Some(path) = config_path {
            let contents = fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
            for (idx, line) in contents.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let Some((key, value)) = line.split_once('=') else {
                    return Err(CliError::Usage(format!(
                        "{}:{}: expected key=value",
                        path.display(),
                        idx + 1
                    )));
                };
                config.insert(key.trim().to_string(), value.trim().to_string());
            }
        }
        let mut manifest = RunManifest::new(subcommand);
        if let Some(path) = config_path {
            manifest.record_option("config", path.display().to_string());
        }
        Ok(Ctx { config, manifest })
    }

    fn required_path(&mut self, flag: Option<PathBuf>, key: &str) -> CliResult<PathBuf> {
        match self.optional_path(flag, key) {
            Some(path) => Ok(path),
            None => Err(CliError::Usage(format!("missing required option --{key}"))),
        }
    }

    fn optional_path(&mut self, flag: Option<PathBuf>, key: &str) -> Option<PathBuf> {
        let value = flag.or_else(|| self.config.get(key).map(PathBuf::from));
        if let Some(ref path) = value {
            self.manifest.record_option(key, path.display().to_string());
        }
        value
    }

    fn required_string(&mut self, flag: Option<String>, key: &str) -> CliResult<String> {
        let value = flag.or_else(|| self.config.get(key).cloned());
        match value {
            Some(v) => {
                self.manifest.record_option(key, &v);
                Ok(v)
            }
            None => Err(CliError::Usage(format!("missing required option --{key}"))),
        }
    }

    fn optional_string(&mut self, flag: Option<String>, key: &str) -> Option<String> {
        let value = flag.or_else(|| self.config.get(key).cloned());
        if let Some(ref v) = value {
            self.manifest.record_option(key, v);
        }
        value
    }

    fn parsed<T>(&mut self, flag: Option<T>, key: &str, default: T) -> CliResult<T>
    where
        T: FromStr + ToString,
    {
        let value = match flag {
            Some(v) => v,
            None => match self.config.get(key) {
                Some(raw) => raw.parse::<T>().map_err(|_| {
                    CliError::Usage(format!("config value {key}={raw} is not valid"))
                })?,
                None => default,
            },
        };
        self.manifest.record_option(key, value.to_string());
        Ok(value)
    }

    fn parsed_optional<T>(&mut self, flag: Option<T>, key: &str) -> CliResult<Option<T>>
    where
        T: FromStr + ToString,
    {
        let value = match flag {
            Some(v) => Some(v),
            None => match self.config.get(key) {
                Some(raw) => Some(raw.parse::<T>().map_err(|_| {
                    CliError::Usage(format!("config value {key}={raw} is not valid"))
                })?),
                None => None,
            },
        };
        if let Some(ref v) = value {
            self.manifest.record_option(key, v.to_string());
        }
        Ok(value)
    }

    fn flag(&mut self, flag: bool, key: &str) -> CliResult<bool> {
        let value = if flag {
            true
        } else {
            match self.config.get(key).map(String::as_str) {
                Some("true") | Some("1") => true,
                Some("false") | Some("0") | None => false,
                Some(other) => {
                    return Err(CliError::Usage(format!(
                        "config value {key}={other} is not a boolean"
                    )))
                }
            }
        };
        self.manifest.record_option(key, value);
        Ok(value)
    }
}

pub fn run() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = err.print();
                    return ExitCode::SUCCESS;
                }
                _ => EXIT_USAGE,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };

    let outcome = match cli.command {
        Command::BuildAxes(args) => commands::build_axes(args),
        Command::Validate(args) => commands::validate(args),
        Command::Score(args) => commands::score(args),
        Command::Translate(args) => commands::translate(args),
        Command::Classify(args) => commands::classify(args),
    };

    match outcome {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(CliError::Data(err)) => {
            eprintln!("error: {err}");
            ExitCode::from(EXIT_DATA)
        }
    }
}
