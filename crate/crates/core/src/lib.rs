//! Seedable simulation of information diffusion over complex networks.
//!
//! The crate builds four network families ([`generators`]), spreads
//! information across them loop by loop ([`diffusion`]), replicates runs into
//! ensembles ([`monte_carlo`]) and measures structural statistics
//! ([`analysis`]). Every random choice is drawn from a [`rng::SimRng`] whose
//! consumption order is fixed, so a `(configuration, seed)` pair always yields
//! bit-identical output.

pub mod analysis;
pub mod diffusion;
pub mod error;
pub mod generators;
pub mod graph;
pub mod matrix;
pub mod monte_carlo;
pub mod rng;

pub use error::{Error, Result};
pub use graph::{DegreeHistogram, Graph, VertexId};
