//! Experiment configuration file (TOML). Every key is optional; command-line
//! flags override file values.
//!
//! ```toml
//! [generator]
//! family = "random"        # complete | random | stochastic | scale-free
//! n = 100
//! edge_prob = 0.5          # random family only
//! seed = 1
//! # graph = "net.json"     # simulate on a saved graph instead
//!
//! [simulation]
//! model = "random-contact" # broadcast | random-contact | neighbor-contact
//! initial = [1, 2, 5, 10, 20, 50]
//! # initial_vertices = [0, 17]
//! max_loops = 1000
//! seed = 7
//!
//! [ensemble]
//! replications = 1000
//! regenerate_graph = true
//!
//! [output]
//! dir = "out"
//! ```

use std::path::{Path, PathBuf};

use anyhow::Context;
use serde::Deserialize;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub generator: GeneratorSection,
    #[serde(default)]
    pub simulation: SimulationSection,
    #[serde(default)]
    pub ensemble: EnsembleSection,
    #[serde(default)]
    pub output: OutputSection,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSection {
    pub family: Option<String>,
    pub n: Option<usize>,
    pub edge_prob: Option<f64>,
    pub seed: Option<u64>,
    pub graph: Option<PathBuf>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulationSection {
    pub model: Option<String>,
    pub initial: Option<OneOrMany>,
    pub initial_vertices: Option<Vec<usize>>,
    pub max_loops: Option<usize>,
    pub seed: Option<u64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnsembleSection {
    pub replications: Option<usize>,
    pub regenerate_graph: Option<bool>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    pub dir: Option<PathBuf>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum OneOrMany {
    One(usize),
    Many(Vec<usize>),
}

impl OneOrMany {
    pub fn into_vec(self) -> Vec<usize> {
        match self {
            OneOrMany::One(x) => vec![x],
            OneOrMany::Many(xs) => xs,
        }
    }
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("parsing {}", path.display()))
    }

    pub fn parse(text: &str) -> anyhow::Result<Self> {
        Ok(toml::from_str(text)?)
    }
}
