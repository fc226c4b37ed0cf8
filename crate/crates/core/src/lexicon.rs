//! The moral foundations lexicon: words grouped by foundation and pole.
//!
//! Interchange format is a TSV with the header `foundation<TAB>pole<TAB>word`.
//! Wildcard entries from upstream dictionaries are not expanded here; expand
//! them offline before loading.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::embed::EmbeddingStore;
use crate::error::{Error, Result};

/// The five moral foundations, in canonical order. The order is load-bearing:
/// it fixes column and feature ordering everywhere downstream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MoralFoundation {
    Care,
    Fairness,
    Loyalty,
    Authority,
    Sanctity,
}

impl MoralFoundation {
    pub const ALL: [MoralFoundation; 5] = [
        MoralFoundation::Care,
        MoralFoundation::Fairness,
        MoralFoundation::Loyalty,
        MoralFoundation::Authority,
        MoralFoundation::Sanctity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MoralFoundation::Care => "care",
            MoralFoundation::Fairness => "fairness",
            MoralFoundation::Loyalty => "loyalty",
            MoralFoundation::Authority => "authority",
            MoralFoundation::Sanctity => "sanctity",
        }
    }

    /// Position in canonical order.
    pub fn index(self) -> usize {
        Self::ALL.iter().position(|f| *f == self).unwrap()
    }

    pub fn parse(s: &str) -> Option<MoralFoundation> {
        Self::ALL.iter().copied().find(|f| f.name() == s)
    }
}

impl fmt::Display for MoralFoundation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Pole {
    Virtue,
    Vice,
}

impl Pole {
    pub const ALL: [Pole; 2] = [Pole::Virtue, Pole::Vice];

    pub fn name(self) -> &'static str {
        match self {
            Pole::Virtue => "virtue",
            Pole::Vice => "vice",
        }
    }

    pub fn opposite(self) -> Pole {
        match self {
            Pole::Virtue => Pole::Vice,
            Pole::Vice => Pole::Virtue,
        }
    }

    pub fn parse(s: &str) -> Option<Pole> {
        Self::ALL.iter().copied().find(|p| p.name() == s)
    }
}

impl fmt::Display for Pole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A (foundation, pole) cell address.
pub type Cell = (MoralFoundation, Pole);

/// Iterates the ten cells in canonical order.
pub fn all_cells() -> impl Iterator<Item = Cell> {
    MoralFoundation::ALL
        .into_iter()
        .flat_map(|f| Pole::ALL.into_iter().map(move |p| (f, p)))
}

/// Words assigned to the five foundations' virtue and vice poles. A word may
/// appear in several cells; it then pulls every centroid it belongs to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoralLexicon {
    entries: BTreeMap<Cell, BTreeSet<String>>,
    language_tag: String,
}

impl MoralLexicon {
    /// An empty lexicon with all ten cells present.
    pub fn new(language_tag: &str) -> Self {
        let entries = all_cells().map(|cell| (cell, BTreeSet::new())).collect();
        MoralLexicon {
            entries,
            language_tag: language_tag.to_string(),
        }
    }

    /// Inserts a word into a cell. The word is lowercased and trimmed;
    /// empty or whitespace-containing words are rejected.
    pub fn insert(&mut self, foundation: MoralFoundation, pole: Pole, word: &str) -> Result<bool> {
        let word = word.trim().to_lowercase();
        if word.is_empty() {
            return Err(Error::invalid_data("empty lexicon word"));
        }
        if word.chars().any(char::is_whitespace) {
            return Err(Error::invalid_data(format!(
                "lexicon word {word:?} contains whitespace"
            )));
        }
        Ok(self
            .entries
            .get_mut(&(foundation, pole))
            .expect("all cells present")
            .insert(word))
    }

    pub fn language_tag(&self) -> &str {
        &self.language_tag
    }

    pub fn set_language_tag(&mut self, tag: &str) {
        self.language_tag = tag.to_string();
    }

    /// Words of one cell, in token order.
    pub fn cell(&self, foundation: MoralFoundation, pole: Pole) -> &BTreeSet<String> {
        &self.entries[&(foundation, pole)]
    }

    /// Total number of (cell, word) assignments.
    pub fn len(&self) -> usize {
        self.entries.values().map(BTreeSet::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Per-cell word counts in canonical cell order.
    pub fn cell_counts(&self) -> Vec<(Cell, usize)> {
        all_cells().map(|cell| (cell, self.entries[&cell].len())).collect()
    }

    /// Serializes to the interchange TSV, rows in canonical cell then token
    /// order. `load_lexicon` on the output reproduces the lexicon.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("foundation\tpole\tword\n");
        for (foundation, pole) in all_cells() {
            for word in &self.entries[&(foundation, pole)] {
                out.push_str(foundation.name());
                out.push('\t');
                out.push_str(pole.name());
                out.push('\t');
                out.push_str(word);
                out.push('\n');
            }
        }
        out
    }

    pub fn write_tsv(&self, path: &Path) -> Result<()> {
        let mut file = File::create(path).map_err(|e| Error::io(path, e))?;
        file.write_all(self.to_tsv().as_bytes())
            .map_err(|e| Error::io(path, e))
    }

    /// Splits every cell into embedded words (with their vectors, sorted by
    /// token) and out-of-vocabulary words. Errors when a cell has no
    /// embedded word at all: no centroid, hence no axis, can be built for it.
    pub fn resolve(&self, store: &EmbeddingStore) -> Result<ResolvedLexicon> {
        let mut resolved = BTreeMap::new();
        let mut oov = BTreeMap::new();
        for cell in all_cells() {
            let mut hits: Vec<(String, Vec<f64>)> = Vec::new();
            let mut misses = BTreeSet::new();
            for word in &self.entries[&cell] {
                match store.lookup(word) {
                    Some(vector) => hits.push((word.clone(), vector.to_vec())),
                    None => {
                        misses.insert(word.clone());
                    }
                }
            }
            if hits.is_empty() {
                return Err(Error::UnresolvableCell {
                    foundation: cell.0,
                    pole: cell.1,
                });
            }
            resolved.insert(cell, hits);
            oov.insert(cell, misses);
        }
        Ok(ResolvedLexicon { resolved, oov })
    }
}

/// Outcome of matching a lexicon against an embedding store.
#[derive(Debug, Clone)]
pub struct ResolvedLexicon {
    /// Embedded words per cell, sorted by token.
    pub resolved: BTreeMap<Cell, Vec<(String, Vec<f64>)>>,
    /// Words per cell absent from the store.
    pub oov: BTreeMap<Cell, BTreeSet<String>>,
}

impl ResolvedLexicon {
    pub fn oov_total(&self) -> usize {
        self.oov.values().map(BTreeSet::len).sum()
    }

    pub fn resolved_total(&self) -> usize {
        self.resolved.values().map(Vec::len).sum()
    }
}

/// Loads the interchange TSV. Duplicate rows collapse into one; unknown
/// foundation or pole names fail with the offending line number.
pub fn load_lexicon(path: &Path) -> Result<MoralLexicon> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let reader = BufReader::new(file);
    let label = path.display().to_string();

    let mut lexicon = MoralLexicon::new("und");
    let mut saw_header = false;
    let mut rows = 0usize;

    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        if !saw_header {
            let fields: Vec<&str> = line.trim_end().split('\t').collect();
            if fields != ["foundation", "pole", "word"] {
                return Err(Error::parse(
                    &label,
                    line_no,
                    "expected header `foundation\\tpole\\tword`",
                ));
            }
            saw_header = true;
            continue;
        }
        let fields: Vec<&str> = line.trim_end_matches(['\r', '\n']).split('\t').collect();
        if fields.len() != 3 {
            return Err(Error::parse(
                &label,
                line_no,
                format!("expected 3 tab-separated fields, found {}", fields.len()),
            ));
        }
        let foundation = MoralFoundation::parse(fields[0].trim()).ok_or_else(|| {
            Error::parse(&label, line_no, format!("unknown foundation {:?}", fields[0]))
        })?;
        let pole = Pole::parse(fields[1].trim())
            .ok_or_else(|| Error::parse(&label, line_no, format!("unknown pole {:?}", fields[1])))?;
        lexicon
            .insert(foundation, pole, fields[2])
            .map_err(|e| Error::parse(&label, line_no, e.to_string()))?;
        rows += 1;
    }

    if rows == 0 {
        return Err(Error::parse(&label, 0, "lexicon file has no data rows"));
    }
    Ok(lexicon)
}
