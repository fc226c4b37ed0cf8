//! Two-dimensional Gaussian kernel density estimation on a uniform grid,
//! with Scott's rule as the default bandwidth. Produces plot-ready density
//! grids plus the 33%-of-maximum contour level used for the lowest density
//! band.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Fraction of the maximum density at which the lowest contour sits.
pub const ISO_FRACTION: f64 = 0.33;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KdeGrid {
    /// `grid[j][i]` is the density at `(x_i, y_j)`; both run from the padded
    /// minimum to the padded maximum of the data.
    pub grid: Vec<Vec<f64>>,
    /// Bounding box of the grid: `[x_min, x_max, y_min, y_max]`.
    pub extent: [f64; 4],
    /// Density level of the lowest contour: `ISO_FRACTION * max(grid)`.
    pub iso_level: f64,
    /// Per-dimension kernel bandwidths actually used.
    pub bandwidth: [f64; 2],
    pub grid_size: usize,
}

impl KdeGrid {
    pub fn max_density(&self) -> f64 {
        self.grid
            .iter()
            .flatten()
            .fold(f64::NEG_INFINITY, |acc, &v| acc.max(v))
    }

    /// Grid coordinate of the maximum density cell, as `(x, y)`.
    pub fn argmax(&self) -> (f64, f64) {
        let mut best = (0usize, 0usize);
        let mut best_v = f64::NEG_INFINITY;
        for (j, row) in self.grid.iter().enumerate() {
            for (i, &v) in row.iter().enumerate() {
                if v > best_v {
                    best_v = v;
                    best = (i, j);
                }
            }
        }
        (self.x_at(best.0), self.y_at(best.1))
    }

    pub fn x_at(&self, i: usize) -> f64 {
        coordinate(self.extent[0], self.extent[1], self.grid_size, i)
    }

    pub fn y_at(&self, j: usize) -> f64 {
        coordinate(self.extent[2], self.extent[3], self.grid_size, j)
    }
}

fn coordinate(min: f64, max: f64, steps: usize, idx: usize) -> f64 {
    if steps == 1 {
        return (min + max) / 2.0;
    }
    min + (max - min) * idx as f64 / (steps - 1) as f64
}

fn std_dev(values: impl Iterator<Item = f64> + Clone, n: usize) -> f64 {
    let mean = values.clone().sum::<f64>() / n as f64;
    let ss: f64 = values.map(|v| (v - mean) * (v - mean)).sum();
    (ss / (n as f64 - 1.0)).sqrt()
}

/// Evaluates a Gaussian-kernel density estimate of `points` on a
/// `grid_size x grid_size` grid over the data's bounding box padded by 10%
/// per side. Without an explicit `bandwidth`, Scott's rule
/// `h_i = sigma_i * n^(-1/6)` picks a per-dimension bandwidth.
pub fn kde_grid(
    points: &[(f64, f64)],
    grid_size: usize,
    bandwidth: Option<f64>,
) -> Result<KdeGrid> {
    if points.len() < 2 {
        return Err(Error::InvalidArgument {
            message: format!("kde needs at least 2 points, got {}", points.len()),
        });
    }
    if grid_size == 0 {
        return Err(Error::InvalidArgument {
            message: "grid_size must be >= 1".into(),
        });
    }
    if points.iter().any(|(x, y)| !x.is_finite() || !y.is_finite()) {
        return Err(Error::InvalidArgument {
            message: "kde points must be finite".into(),
        });
    }

    let n = points.len();
    let sx = std_dev(points.iter().map(|p| p.0), n);
    let sy = std_dev(points.iter().map(|p| p.1), n);
    if sx == 0.0 && sy == 0.0 {
        return Err(Error::DegenerateInput {
            message: "all kde points coincide".into(),
        });
    }

    let (hx, hy) = match bandwidth {
        Some(h) => {
            if !h.is_finite() || h <= 0.0 {
                return Err(Error::InvalidArgument {
                    message: format!("bandwidth must be positive, got {h}"),
                });
            }
            (h, h)
        }
        None => {
            if sx == 0.0 || sy == 0.0 {
                return Err(Error::DegenerateInput {
                    message: "zero spread in one dimension: pass an explicit bandwidth".into(),
                });
            }
            let scott = (n as f64).powf(-1.0 / 6.0);
            (sx * scott, sy * scott)
        }
    };

    let (mut x_min, mut x_max) = min_max(points.iter().map(|p| p.0));
    let (mut y_min, mut y_max) = min_max(points.iter().map(|p| p.1));
    let pad = |min: &mut f64, max: &mut f64, h: f64| {
        let range = *max - *min;
        let pad = if range > 0.0 { 0.1 * range } else { h };
        *min -= pad;
        *max += pad;
    };
    pad(&mut x_min, &mut x_max, hx);
    pad(&mut y_min, &mut y_max, hy);

    let norm = 1.0 / (n as f64 * 2.0 * std::f64::consts::PI * hx * hy);
    let mut grid = vec![vec![0.0; grid_size]; grid_size];
    for (j, row) in grid.iter_mut().enumerate() {
        let y = coordinate(y_min, y_max, grid_size, j);
        for (i, cell) in row.iter_mut().enumerate() {
            let x = coordinate(x_min, x_max, grid_size, i);
            let mut sum = 0.0;
            for (px, py) in points {
                let dx = (x - px) / hx;
                let dy = (y - py) / hy;
                sum += (-0.5 * (dx * dx + dy * dy)).exp();
            }
            *cell = norm * sum;
        }
    }

    let max = grid
        .iter()
        .flatten()
        .fold(f64::NEG_INFINITY, |acc, &v| acc.max(v));
    Ok(KdeGrid {
        grid,
        extent: [x_min, x_max, y_min, y_max],
        iso_level: ISO_FRACTION * max,
        bandwidth: [hx, hy],
        grid_size,
    })
}

fn min_max(values: impl Iterator<Item = f64>) -> (f64, f64) {
    values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
        (lo.min(v), hi.max(v))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_cluster_peaks_near_its_center() {
        let points: Vec<(f64, f64)> = (0..40)
            .map(|i| {
                let a = i as f64 * 0.37;
                (0.1 * a.sin(), 0.1 * a.cos())
            })
            .collect();
        let kde = kde_grid(&points, 41, None).unwrap();
        let (x, y) = kde.argmax();
        assert!(x.abs() < 0.1, "argmax x = {x}");
        assert!(y.abs() < 0.1, "argmax y = {y}");
    }

    #[test]
    fn densities_nonnegative_and_iso_level_is_a_third_of_max() {
        let points = vec![(0.0, 0.0), (1.0, 0.5), (0.5, 1.0), (-0.5, 0.25)];
        let kde = kde_grid(&points, 16, None).unwrap();
        assert!(kde.grid.iter().flatten().all(|&v| v >= 0.0));
        assert!((kde.iso_level - ISO_FRACTION * kde.max_density()).abs() < 1e-15);
    }

    #[test]
    fn two_separated_clusters_give_two_local_maxima() {
        let mut points = Vec::new();
        for i in 0..25 {
            let a = i as f64 * 0.4;
            points.push((-5.0 + 0.2 * a.sin(), 0.2 * a.cos()));
            points.push((5.0 + 0.2 * a.cos(), 0.2 * a.sin()));
        }
        let kde = kde_grid(&points, 61, Some(0.5)).unwrap();
        // Count strict local maxima over interior cells.
        let mut maxima = 0;
        let g = &kde.grid;
        for j in 1..kde.grid_size - 1 {
            for i in 1..kde.grid_size - 1 {
                let v = g[j][i];
                let neighbors = [
                    g[j - 1][i],
                    g[j + 1][i],
                    g[j][i - 1],
                    g[j][i + 1],
                    g[j - 1][i - 1],
                    g[j - 1][i + 1],
                    g[j + 1][i - 1],
                    g[j + 1][i + 1],
                ];
                if v > kde.iso_level && neighbors.iter().all(|&w| v > w) {
                    maxima += 1;
                }
            }
        }
        assert_eq!(maxima, 2, "expected exactly two modes");
    }

    #[test]
    fn coincident_points_rejected() {
        let points = vec![(1.0, 1.0); 4];
        assert!(matches!(
            kde_grid(&points, 8, None).unwrap_err(),
            Error::DegenerateInput { .. }
        ));
    }

    #[test]
    fn zero_spread_dimension_needs_explicit_bandwidth() {
        let points = vec![(0.0, 1.0), (1.0, 1.0), (2.0, 1.0)];
        assert!(kde_grid(&points, 8, None).is_err());
        let kde = kde_grid(&points, 8, Some(0.5)).unwrap();
        assert_eq!(kde.bandwidth, [0.5, 0.5]);
        assert!(kde.extent[2] < kde.extent[3]);
    }
}
