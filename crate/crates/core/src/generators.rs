//! Generators for the four network families.
//!
//! Random draws are consumed in a fixed order so that a seed pins the graph:
//!
//! * random and stochastic graphs draw one uniform float per unordered pair
//!   `(i, j)`, `i < j`, in lexicographic order;
//! * scale-free graphs draw one bounded integer per vertex from the third on.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::SimRng;

pub const DEFAULT_EDGE_PROB: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Complete,
    Random,
    Stochastic,
    ScaleFree,
}

impl Family {
    pub const ALL: [Family; 4] = [
        Family::Complete,
        Family::Random,
        Family::Stochastic,
        Family::ScaleFree,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Family::Complete => "complete",
            Family::Random => "random",
            Family::Stochastic => "stochastic",
            Family::ScaleFree => "scale-free",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| Error::param(format!("unknown network family '{s}'")))
    }
}

/// Which family to build, how large, and from which seed.
///
/// `edge_prob` belongs to the random family only; supplying it for any other
/// family is rejected by [`GeneratorSpec::validate`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub family: Family,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edge_prob: Option<f64>,
    #[serde(default)]
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn new(family: Family, n: usize, seed: u64) -> Self {
        GeneratorSpec {
            family,
            n,
            edge_prob: None,
            seed,
        }
    }

    pub fn random(n: usize, edge_prob: f64, seed: u64) -> Self {
        GeneratorSpec {
            family: Family::Random,
            n,
            edge_prob: Some(edge_prob),
            seed,
        }
    }

    pub fn with_seed(self, seed: u64) -> Self {
        GeneratorSpec { seed, ..self }
    }

    pub fn with_n(self, n: usize) -> Self {
        GeneratorSpec { n, ..self }
    }

    pub fn edge_prob(&self) -> f64 {
        self.edge_prob.unwrap_or(DEFAULT_EDGE_PROB)
    }

    pub fn validate(&self) -> Result<()> {
        check_n(self.n)?;
        match (self.family, self.edge_prob) {
            (Family::Random, Some(p)) => check_prob(p),
            (_, None) => Ok(()),
            (family, Some(_)) => Err(Error::param(format!(
                "edge probability does not apply to the {family} family"
            ))),
        }
    }

    pub fn generate(&self) -> Result<Graph> {
        self.validate()?;
        match self.family {
            Family::Complete => gen_complete(self.n),
            Family::Random => gen_random(self.n, self.edge_prob(), self.seed),
            Family::Stochastic => gen_stochastic(self.n, self.seed),
            Family::ScaleFree => gen_scale_free(self.n, self.seed),
        }
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::param("vertex count must be at least 1"))
    } else if n > u32::MAX as usize {
        Err(Error::param(format!("vertex count {n} is too large")))
    } else {
        Ok(())
    }
}

fn check_prob(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::param(format!("edge probability {p} is outside [0, 1]")))
    }
}

/// Every pair linked with weight 1: `n (n - 1) / 2` edges.
pub fn gen_complete(n: usize) -> Result<Graph> {
    check_n(n)?;
    let adjacency = (0..n)
        .map(|i| (0..n).filter(|&j| j != i).map(|j| (j, 1.0)).collect())
        .collect();
    Ok(Graph::from_sorted_adjacency(adjacency))
}

/// Each unordered pair independently linked (weight 1) with probability
/// `edge_prob`.
pub fn gen_random(n: usize, edge_prob: f64, seed: u64) -> Result<Graph> {
    check_n(n)?;
    check_prob(edge_prob)?;
    let mut rng = SimRng::new(seed);
    Ok(pairwise(n, |_, _| rng.bernoulli(edge_prob).then_some(1.0)))
}

/// Every unordered pair gets a weight drawn uniformly from `[0, 1)`.
pub fn gen_stochastic(n: usize, seed: u64) -> Result<Graph> {
    check_n(n)?;
    let mut rng = SimRng::new(seed);
    Ok(pairwise(n, |_, _| {
        let w = rng.next_f64();
        (w > 0.0).then_some(w)
    }))
}

fn pairwise(n: usize, mut weight: impl FnMut(usize, usize) -> Option<f64>) -> Graph {
    let mut adjacency: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
    for i in 0..n {
        for j in i + 1..n {
            if let Some(w) = weight(i, j) {
                // i ascends in the outer loop and j in the inner one, so both
                // lists stay sorted.
                adjacency[i].push((j, w));
                adjacency[j].push((i, w));
            }
        }
    }
    Graph::from_sorted_adjacency(adjacency)
}

/// Growth by preferential attachment, one edge per arriving vertex.
///
/// Vertex 0 starts alone. Vertex 1 links to vertex 0 (no degree exists yet to
/// weight the choice). Every later vertex links to an existing vertex chosen
/// with probability proportional to its current degree, which is sampled by
/// picking a uniform entry of the edge-endpoint list.
pub fn gen_scale_free(n: usize, seed: u64) -> Result<Graph> {
    check_n(n)?;
    let mut rng = SimRng::new(seed);
    let mut adjacency: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
    let mut endpoints: Vec<usize> = Vec::with_capacity(2 * n.saturating_sub(1));
    for v in 1..n {
        let target = if v == 1 {
            0
        } else {
            endpoints[rng.below(endpoints.len())]
        };
        adjacency[target].push((v, 1.0));
        adjacency[v].push((target, 1.0));
        endpoints.push(target);
        endpoints.push(v);
    }
    Ok(Graph::from_sorted_adjacency(adjacency))
}
