//! Structural statistics: matrix-average convergence, power-law fitting,
//! clustering and characteristic path length.
//!
//! Clustering and path length are topological; edge weights are ignored.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::GeneratorSpec;
use crate::graph::{DegreeHistogram, Graph};

/// Generates `template` at each size in `sizes` (same family and seed) and
/// reports the mean off-diagonal weight of each graph.
pub fn matrix_average_convergence(
    template: &GeneratorSpec,
    sizes: &[usize],
) -> Result<Vec<(usize, f64)>> {
    if sizes.is_empty() {
        return Err(Error::param("no sizes given"));
    }
    sizes
        .iter()
        .map(|&n| {
            let g = template.with_n(n).generate()?;
            Ok((n, g.mean_offdiagonal_weight()?))
        })
        .collect()
}

/// Least-squares line through `(ln k, ln count)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerLawFit {
    pub slope: f64,
    pub intercept: f64,
    pub points_used: usize,
}

/// Fits a line to the log-log degree histogram, skipping degree 0 and empty
/// bins.
pub fn fit_power_law(h: &DegreeHistogram) -> Result<PowerLawFit> {
    let points: Vec<(f64, f64)> = h
        .counts
        .iter()
        .filter(|&(&k, &c)| k >= 1 && c > 0)
        .map(|(&k, &c)| (k as f64, c as f64))
        .collect();
    fit_log_log(&points)
}

/// Log-log least squares over `(x, y)` pairs with positive coordinates.
pub fn fit_log_log(points: &[(f64, f64)]) -> Result<PowerLawFit> {
    let logs: Vec<(f64, f64)> = points
        .iter()
        .filter(|&&(x, y)| x > 0.0 && y > 0.0)
        .map(|&(x, y)| (x.ln(), y.ln()))
        .collect();
    let m = logs.len();
    if m < 2 {
        return Err(Error::Fit { points: m });
    }
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / m as f64;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / m as f64;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return Err(Error::Fit { points: 1 });
    }
    let slope = sxy / sxx;
    Ok(PowerLawFit {
        slope,
        intercept: my - slope * mx,
        points_used: m,
    })
}

/// Fraction of each vertex's neighbor pairs that are linked, averaged over
/// all vertices. Vertices of degree below 2 contribute 0.
pub fn clustering_coefficient(g: &Graph) -> f64 {
    let n = g.n();
    if n == 0 {
        return 0.0;
    }
    let total: f64 = (0..n).map(|v| local_clustering(g, v)).sum();
    total / n as f64
}

pub fn local_clustering(g: &Graph, v: usize) -> f64 {
    let nbrs = g.neighbors(v);
    let k = nbrs.len();
    if k < 2 {
        return 0.0;
    }
    let mut links = 0usize;
    for (i, &(a, _)) in nbrs.iter().enumerate() {
        let a_nbrs = g.neighbors(a);
        // Both lists are sorted; count common members past position i.
        let (mut x, mut y) = (i + 1, 0);
        while x < k && y < a_nbrs.len() {
            match nbrs[x].0.cmp(&a_nbrs[y].0) {
                std::cmp::Ordering::Less => x += 1,
                std::cmp::Ordering::Greater => y += 1,
                std::cmp::Ordering::Equal => {
                    links += 1;
                    x += 1;
                    y += 1;
                }
            }
        }
    }
    links as f64 / (k * (k - 1) / 2) as f64
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PathLength {
    /// Mean hop count over unordered pairs of the measured component.
    pub mean: f64,
    /// False when the graph is disconnected and `mean` covers only the
    /// largest component.
    pub connected: bool,
    pub component_size: usize,
}

/// Mean shortest-path hop count over all unordered vertex pairs. A
/// disconnected graph is measured on its largest component (ties go to the
/// component holding the smallest vertex id) and flagged.
pub fn characteristic_path_length(g: &Graph) -> Result<PathLength> {
    if g.n() == 0 {
        return Err(Error::param("path length of an empty graph"));
    }
    let comps = g.components();
    let connected = comps.len() == 1;
    let largest = comps
        .iter()
        .enumerate()
        .max_by_key(|&(i, c)| (c.len(), std::cmp::Reverse(i)))
        .map(|(_, c)| c)
        .expect("n >= 1 means at least one component");
    let size = largest.len();
    if size < 2 {
        return Ok(PathLength {
            mean: 0.0,
            connected,
            component_size: size,
        });
    }
    let total: u64 = largest
        .par_iter()
        .map(|&s| {
            g.bfs_distances(s)
                .iter()
                .flatten()
                .map(|&d| d as u64)
                .sum::<u64>()
        })
        .sum();
    let pairs = (size * (size - 1)) as f64;
    Ok(PathLength {
        // Each unordered pair was counted from both ends.
        mean: total as f64 / pairs,
        connected,
        component_size: size,
    })
}
