//! Shared fixture builders for the integration and acceptance suites.

#![allow(dead_code)]

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use moralframes::embed::EmbeddingStore;
use moralframes::lexicon::{all_cells, MoralFoundation, MoralLexicon, Pole};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Writes entries in the plain embedding text format.
pub fn write_embeddings(path: &Path, entries: &[(String, Vec<f64>)]) {
    let mut out = String::new();
    for (token, vector) in entries {
        out.push_str(token);
        for v in vector {
            out.push(' ');
            out.push_str(&format!("{v}"));
        }
        out.push('\n');
    }
    fs::write(path, out).unwrap();
}

pub fn write_lexicon_tsv(path: &Path, lexicon: &MoralLexicon) {
    fs::write(path, lexicon.to_tsv()).unwrap();
}

/// A synthetic lexicon/store pair: `words_per_cell` words per (foundation,
/// pole), pole words aligned with the foundation's basis direction plus a
/// shared virtue-vice component (so axes correlate positively, as real ones
/// do) and a little jitter in the trailing dimensions.
pub fn synthetic_lexicon_fixture(
    dim: usize,
    words_per_cell: usize,
    seed: u64,
) -> (MoralLexicon, Vec<(String, Vec<f64>)>) {
    assert!(dim >= 8);
    let mut rng = rng(seed);
    let mut lexicon = MoralLexicon::new("synthetic");
    let mut entries = Vec::new();
    for (foundation, pole) in all_cells() {
        let sign = if pole == Pole::Virtue { 1.0 } else { -1.0 };
        for k in 0..words_per_cell {
            let word = format!("{}{}{k}", foundation.name(), pole.name());
            let mut v = vec![0.0; dim];
            v[foundation.index()] = sign * (1.0 + 0.15 * k as f64);
            v[5] = 0.3 * sign;
            for d in 6..dim {
                v[d] = rng.gen_range(-0.15..0.15);
            }
            lexicon.insert(foundation, pole, &word).unwrap();
            entries.push((word, v));
        }
    }
    (lexicon, entries)
}

pub fn store_from(entries: &[(String, Vec<f64>)], dim: usize) -> EmbeddingStore {
    EmbeddingStore::from_entries(
        dim,
        entries.iter().map(|(t, v)| (t.clone(), v.clone())),
        "synthetic",
    )
    .unwrap()
}

/// All words of every cell in canonical order, for document sampling.
pub fn lexicon_words(lexicon: &MoralLexicon) -> Vec<String> {
    all_cells()
        .flat_map(|(f, p)| lexicon.cell(f, p).iter().cloned())
        .collect()
}

pub fn cell_words(lexicon: &MoralLexicon, foundation: MoralFoundation, pole: Pole) -> Vec<String> {
    lexicon.cell(foundation, pole).iter().cloned().collect()
}

/// Writes a JSONL corpus record-per-line.
pub fn write_corpus_jsonl(path: &Path, docs: &[(String, String, String)]) {
    let mut out = String::new();
    for (id, label, text) in docs {
        let record = serde_json::json!({"id": id, "label": label, "text": text});
        out.push_str(&record.to_string());
        out.push('\n');
    }
    fs::write(path, out).unwrap();
}

pub fn bin_path() -> &'static str {
    env!("CARGO_BIN_EXE_moralframes")
}

pub fn run_cli(args: &[&str]) -> Output {
    Command::new(bin_path())
        .args(args)
        .output()
        .expect("failed to spawn CLI binary")
}

pub fn assert_exit(output: &Output, expected: i32, context: &str) {
    let code = output.status.code().unwrap_or(-1);
    assert_eq!(
        code,
        expected,
        "{context}: expected exit {expected}, got {code}\nstdout: {}\nstderr: {}",
        String::from_utf8_lossy(&output.stdout),
        String::from_utf8_lossy(&output.stderr)
    );
}

/// Digest of a file, with manifest timestamps normalized away.
pub fn normalized_digest(path: &Path) -> String {
    let bytes = fs::read(path).unwrap();
    if path.to_string_lossy().ends_with(".manifest.json") {
        let mut value: serde_json::Value = serde_json::from_slice(&bytes).unwrap();
        if let Some(map) = value.as_object_mut() {
            map.remove("created_utc");
        }
        moralframes::manifest::sha256_bytes(value.to_string().as_bytes())
    } else {
        moralframes::manifest::sha256_bytes(&bytes)
    }
}

/// Normalized digests of every file under `dir`, keyed by file name.
pub fn digest_dir(dir: &Path) -> BTreeMap<String, String> {
    let mut digests = BTreeMap::new();
    for entry in fs::read_dir(dir).unwrap() {
        let entry = entry.unwrap();
        if entry.file_type().unwrap().is_file() {
            digests.insert(
                entry.file_name().to_string_lossy().into_owned(),
                normalized_digest(&entry.path()),
            );
        }
    }
    digests
}

pub struct CliFixture {
    pub dir: tempfile::TempDir,
    pub embeddings: PathBuf,
    pub lexicon: PathBuf,
    pub corpus: PathBuf,
    pub pairs: PathBuf,
    pub stopwords: PathBuf,
}

/// Standard on-disk fixture set used by the CLI tests: a 20-word random
/// store over the synthetic lexicon, a small two-group corpus, identity
/// seed pairs, and a stopword list.
pub fn cli_fixture(seed: u64) -> CliFixture {
    let dir = tempfile::tempdir().unwrap();
    let (lexicon, mut entries) = synthetic_lexicon_fixture(8, 2, seed);
    let mut rng = rng(seed ^ 0x5eed);
    for j in 0..4 {
        let v: Vec<f64> = (0..8).map(|_| rng.gen_range(-0.5..0.5)).collect();
        entries.push((format!("filler{j}"), v));
    }

    let embeddings = dir.path().join("embeddings.txt");
    write_embeddings(&embeddings, &entries);
    let lexicon_path = dir.path().join("lexicon.tsv");
    write_lexicon_tsv(&lexicon_path, &lexicon);

    let virtue_words = cell_words(&lexicon, MoralFoundation::Care, Pole::Virtue);
    let vice_words = cell_words(&lexicon, MoralFoundation::Care, Pole::Vice);
    let mut docs = Vec::new();
    for i in 0..14 {
        let (label, pool) = if i % 2 == 0 {
            ("alpha", &virtue_words)
        } else {
            ("beta", &vice_words)
        };
        let mut tokens: Vec<String> = (0..6)
            .map(|_| pool[rng.gen_range(0..pool.len())].clone())
            .collect();
        tokens.push(format!("filler{}", rng.gen_range(0..4)));
        tokens.push("the".to_string());
        let text = format!("{} https://t.co/x{} !!", tokens.join(" "), i);
        docs.push((format!("d{i}"), label.to_string(), text));
    }
    let corpus = dir.path().join("corpus.jsonl");
    write_corpus_jsonl(&corpus, &docs);

    let pairs = dir.path().join("pairs.tsv");
    let mut pair_lines = String::new();
    for (token, _) in &entries {
        pair_lines.push_str(&format!("{token}\t{token}\n"));
    }
    fs::write(&pairs, pair_lines).unwrap();

    let stopwords = dir.path().join("stopwords.txt");
    fs::write(&stopwords, "the\nund\n").unwrap();

    CliFixture {
        dir,
        embeddings,
        lexicon: lexicon_path,
        corpus,
        pairs,
        stopwords,
    }
}
