//! Classical principal component analysis via eigendecomposition of the
//! sample covariance matrix.

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PcaResult {
    /// One `n_components`-dimensional point per input vector.
    pub projections: Vec<Vec<f64>>,
    /// Orthonormal principal directions, strongest first.
    pub components: Vec<Vec<f64>>,
    /// Fraction of total variance captured per component, non-increasing.
    pub explained_variance_ratio: Vec<f64>,
    pub mean: Vec<f64>,
}

/// Projects mean-centered data onto its leading principal components.
///
/// Components are deterministic: eigenpairs are sorted by eigenvalue
/// (descending) and each component is oriented so that its entry of largest
/// magnitude is positive.
pub fn pca_project(vectors: &[Vec<f64>], n_components: usize) -> Result<PcaResult> {
    if vectors.len() < 2 {
        return Err(Error::InvalidArgument {
            message: format!("pca needs at least 2 vectors, got {}", vectors.len()),
        });
    }
    let dim = vectors[0].len();
    if vectors.iter().any(|v| v.len() != dim) {
        return Err(Error::LengthMismatch {
            left: dim,
            right: vectors.iter().find(|v| v.len() != dim).unwrap().len(),
        });
    }
    if n_components == 0 || n_components > dim || n_components > vectors.len() - 1 {
        return Err(Error::InvalidArgument {
            message: format!(
                "n_components = {n_components} out of range for {} vectors of dimension {dim}",
                vectors.len()
            ),
        });
    }

    let n = vectors.len();
    let mut mean = vec![0.0; dim];
    for v in vectors {
        for (m, x) in mean.iter_mut().zip(v) {
            *m += x;
        }
    }
    for m in &mut mean {
        *m /= n as f64;
    }

    // Sample covariance (1/(n-1)); the normalization cancels in the ratios.
    let mut cov = DMatrix::<f64>::zeros(dim, dim);
    for v in vectors {
        for i in 0..dim {
            let di = v[i] - mean[i];
            for j in i..dim {
                let dj = v[j] - mean[j];
                cov[(i, j)] += di * dj;
            }
        }
    }
    for i in 0..dim {
        for j in i..dim {
            let value = cov[(i, j)] / (n as f64 - 1.0);
            cov[(i, j)] = value;
            cov[(j, i)] = value;
        }
    }

    let total_variance: f64 = cov.diagonal().iter().sum();
    if total_variance <= f64::EPSILON {
        return Err(Error::DegenerateInput {
            message: "all vectors identical: covariance is zero".into(),
        });
    }

    let eigen = SymmetricEigen::new(cov);
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| eigen.eigenvalues[b].total_cmp(&eigen.eigenvalues[a]));

    let mut components = Vec::with_capacity(n_components);
    let mut explained_variance_ratio = Vec::with_capacity(n_components);
    for &idx in order.iter().take(n_components) {
        let mut component: Vec<f64> = eigen.eigenvectors.column(idx).iter().copied().collect();
        // Sign convention: entry of largest magnitude ends up positive.
        let lead = component
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
            .map(|(i, _)| i)
            .unwrap();
        if component[lead] < 0.0 {
            for x in &mut component {
                *x = -*x;
            }
        }
        components.push(component);
        explained_variance_ratio.push((eigen.eigenvalues[idx] / total_variance).max(0.0));
    }

    let projections = vectors
        .iter()
        .map(|v| {
            components
                .iter()
                .map(|c| {
                    v.iter()
                        .zip(&mean)
                        .zip(c)
                        .map(|((x, m), w)| (x - m) * w)
                        .sum()
                })
                .collect()
        })
        .collect();

    Ok(PcaResult {
        projections,
        components,
        explained_variance_ratio,
        mean,
    })
}
