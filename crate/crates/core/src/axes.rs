//! Moral frame axes: one unit vector per foundation, pointing from the vice
//! centroid to the virtue centroid, plus the four geometric checks applied
//! before the axes are trusted for scoring.

use std::fs::File;
use std::io::BufReader;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::embed::{self, EmbeddingStore};
use crate::error::{Error, Result};
use crate::lexicon::{MoralFoundation, MoralLexicon, Pole};

/// One foundation's semantic axis.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FrameAxis {
    pub foundation: MoralFoundation,
    pub virtue_centroid: Vec<f64>,
    pub vice_centroid: Vec<f64>,
    /// Unit vector from the vice centroid to the virtue centroid.
    pub axis: Vec<f64>,
    pub n_virtue_words: usize,
    pub n_vice_words: usize,
}

/// The five frame axes in canonical foundation order.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AxisSet {
    pub axes: Vec<FrameAxis>,
    pub dim: usize,
    pub provenance: String,
}

impl AxisSet {
    pub fn axis(&self, foundation: MoralFoundation) -> &FrameAxis {
        &self.axes[foundation.index()]
    }

    /// Structural checks applied after deserialization: five axes in
    /// canonical order, consistent dimension, unit-norm axis vectors.
    pub fn validate_structure(&self) -> Result<()> {
        if self.axes.len() != MoralFoundation::ALL.len() {
            return Err(Error::invalid_data(format!(
                "axis set must hold exactly {} axes, found {}",
                MoralFoundation::ALL.len(),
                self.axes.len()
            )));
        }
        for (expected, axis) in MoralFoundation::ALL.iter().zip(&self.axes) {
            if axis.foundation != *expected {
                return Err(Error::invalid_data(format!(
                    "axes out of canonical order: expected {expected}, found {}",
                    axis.foundation
                )));
            }
            for v in [&axis.virtue_centroid, &axis.vice_centroid, &axis.axis] {
                if v.len() != self.dim {
                    return Err(Error::invalid_data(format!(
                        "{} axis has dimension {}, set declares {}",
                        axis.foundation,
                        v.len(),
                        self.dim
                    )));
                }
                if v.iter().any(|x| !x.is_finite()) {
                    return Err(Error::invalid_data(format!(
                        "{} axis contains non-finite values",
                        axis.foundation
                    )));
                }
            }
            let n = embed::norm(&axis.axis);
            if (n - 1.0).abs() > 1e-9 {
                return Err(Error::invalid_data(format!(
                    "{} axis is not unit norm (|axis| = {n})",
                    axis.foundation
                )));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json_file(path: &Path) -> Result<AxisSet> {
        let file = File::open(path).map_err(|e| Error::io(path, e))?;
        let set: AxisSet = serde_json::from_reader(BufReader::new(file))?;
        set.validate_structure()?;
        Ok(set)
    }
}

/// Builds the five axes from pole centroids. Centroids are arithmetic means
/// of the resolved word vectors as parsed, without per-word normalization.
pub fn build_axes(lexicon: &MoralLexicon, store: &EmbeddingStore) -> Result<AxisSet> {
    let resolved = lexicon.resolve(store)?;
    let mut axes = Vec::with_capacity(MoralFoundation::ALL.len());
    for foundation in MoralFoundation::ALL {
        let virtue_words = &resolved.resolved[&(foundation, Pole::Virtue)];
        let vice_words = &resolved.resolved[&(foundation, Pole::Vice)];
        let virtue_vectors: Vec<&[f64]> = virtue_words.iter().map(|(_, v)| v.as_slice()).collect();
        let vice_vectors: Vec<&[f64]> = vice_words.iter().map(|(_, v)| v.as_slice()).collect();
        let virtue_centroid = embed::mean(&virtue_vectors);
        let vice_centroid = embed::mean(&vice_vectors);
        let diff = embed::sub(&virtue_centroid, &vice_centroid);
        let axis = embed::unit(&diff).ok_or(Error::DegenerateAxis { foundation })?;
        axes.push(FrameAxis {
            foundation,
            virtue_centroid,
            vice_centroid,
            axis,
            n_virtue_words: virtue_words.len(),
            n_vice_words: vice_words.len(),
        });
    }
    Ok(AxisSet {
        axes,
        dim: store.dim(),
        provenance: format!(
            "embeddings={}; lexicon_language={}",
            store.source_label(),
            lexicon.language_tag()
        ),
    })
}

/// Thresholds for the four axis properties. The defaults are this tool's
/// choices and are recorded in every report.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ValidationThresholds {
    /// P1: max allowed midpoint offset relative to the pole distance.
    pub p1_max_midpoint_rel: f64,
    /// P2: min allowed mean own-vs-opposite cosine margin per pole.
    pub p2_min_margin: f64,
    /// P3: min allowed pairwise axis cosine (0 = axes must not oppose).
    pub p3_min_cosine: f64,
    /// P4: max allowed pairwise axis cosine (axes must not collapse).
    pub p4_max_cosine: f64,
}

impl Default for ValidationThresholds {
    fn default() -> Self {
        ValidationThresholds {
            p1_max_midpoint_rel: 1.0,
            p2_min_margin: 0.0,
            p3_min_cosine: 0.0,
            p4_max_cosine: 0.95,
        }
    }
}

/// Per-pole cohesion margins for one axis.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct PoleMargins {
    pub virtue: f64,
    pub vice: f64,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct PassFlags {
    pub p1: bool,
    pub p2: bool,
    pub p3: bool,
    pub p4: bool,
}

impl PassFlags {
    pub fn all(&self) -> bool {
        self.p1 && self.p2 && self.p3 && self.p4
    }
}

/// Numeric outcome of the four-property validation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AxisValidationReport {
    /// P1 metric per axis: midpoint norm over pole distance.
    pub p1_midpoint_norms: Vec<f64>,
    /// P2 metric per axis: the smaller of the two pole margins.
    pub p2_cohesion: Vec<f64>,
    /// Per-pole detail behind `p2_cohesion`.
    pub p2_margins: Vec<PoleMargins>,
    /// Pairwise axis cosines, unit diagonal, canonical foundation order.
    pub p3_pairwise_cosines: Vec<Vec<f64>>,
    pub p4_max_offdiag_cosine: f64,
    pub pass_flags: PassFlags,
    pub thresholds_used: ValidationThresholds,
}

/// Evaluates the four axis properties.
///
/// P1: each axis midpoint must sit near the origin relative to the pole
/// distance. P2: each pole's words must be closer (in cosine) to their own
/// centroid than to the opposite one, on average. P3: no two axes may
/// oppose. P4: no two axes may collapse onto the same direction.
pub fn validate_axes(
    axisset: &AxisSet,
    lexicon: &MoralLexicon,
    store: &EmbeddingStore,
    thresholds: &ValidationThresholds,
) -> Result<AxisValidationReport> {
    let resolved = lexicon.resolve(store)?;

    let mut p1 = Vec::with_capacity(axisset.axes.len());
    let mut p2_margins = Vec::with_capacity(axisset.axes.len());
    for axis in &axisset.axes {
        let midpoint: Vec<f64> = axis
            .virtue_centroid
            .iter()
            .zip(&axis.vice_centroid)
            .map(|(v, w)| (v + w) / 2.0)
            .collect();
        let pole_distance = embed::norm(&embed::sub(&axis.virtue_centroid, &axis.vice_centroid));
        p1.push(embed::norm(&midpoint) / pole_distance);

        let margin = |own: Pole| -> Result<f64> {
            let words = &resolved.resolved[&(axis.foundation, own)];
            let (own_centroid, other_centroid) = match own {
                Pole::Virtue => (&axis.virtue_centroid, &axis.vice_centroid),
                Pole::Vice => (&axis.vice_centroid, &axis.virtue_centroid),
            };
            let mut sum = 0.0;
            for (_, vector) in words {
                sum += embed::cosine(vector, own_centroid)?
                    - embed::cosine(vector, other_centroid)?;
            }
            Ok(sum / words.len() as f64)
        };
        p2_margins.push(PoleMargins {
            virtue: margin(Pole::Virtue)?,
            vice: margin(Pole::Vice)?,
        });
    }
    let p2_cohesion: Vec<f64> = p2_margins.iter().map(|m| m.virtue.min(m.vice)).collect();

    let n = axisset.axes.len();
    let mut matrix = vec![vec![0.0; n]; n];
    let mut max_offdiag = f64::NEG_INFINITY;
    let mut min_offdiag = f64::INFINITY;
    for i in 0..n {
        matrix[i][i] = 1.0;
        for j in (i + 1)..n {
            let c = embed::cosine(&axisset.axes[i].axis, &axisset.axes[j].axis)?;
            matrix[i][j] = c;
            matrix[j][i] = c;
            max_offdiag = max_offdiag.max(c);
            min_offdiag = min_offdiag.min(c);
        }
    }

    let pass_flags = PassFlags {
        p1: p1.iter().all(|v| *v <= thresholds.p1_max_midpoint_rel),
        p2: p2_margins
            .iter()
            .all(|m| m.virtue >= thresholds.p2_min_margin && m.vice >= thresholds.p2_min_margin),
        p3: min_offdiag >= thresholds.p3_min_cosine,
        p4: max_offdiag <= thresholds.p4_max_cosine,
    };

    Ok(AxisValidationReport {
        p1_midpoint_norms: p1,
        p2_cohesion,
        p2_margins,
        p3_pairwise_cosines: matrix,
        p4_max_offdiag_cosine: max_offdiag,
        pass_flags,
        thresholds_used: *thresholds,
    })
}
