use std::path::PathBuf;

use netdiff_core::generators::{Family, GeneratorSpec};
use netdiff_core::matrix::{export_link_matrix, export_probability_matrix};
use netdiff_core::Graph;

use crate::output::{fallback_seed, write};
use crate::{usage, Failure, OUT_DIR_ENV};

#[derive(Debug, clap::Args)]
pub struct Args {
    #[arg(long)]
    family: String,
    #[arg(long)]
    n: usize,
    /// Random family only.
    #[arg(long)]
    edge_prob: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, env = OUT_DIR_ENV)]
    out_dir: Option<PathBuf>,
    /// File stem; defaults to `<family>-n<n>-s<seed>`.
    #[arg(long)]
    name: Option<String>,
}

pub fn run(args: Args) -> Result<(), Failure> {
    let family: Family = args.family.parse().map_err(usage)?;
    GeneratorSpec {
        family,
        n: args.n,
        edge_prob: args.edge_prob,
        seed: 0,
    }
    .validate()
    .map_err(usage)?;
    let seed = match (family, args.seed) {
        (_, Some(s)) => s,
        (Family::Complete, None) => 0,
        (_, None) => fallback_seed("--seed"),
    };
    let spec = GeneratorSpec {
        family,
        n: args.n,
        edge_prob: args.edge_prob,
        seed,
    };
    let g = spec.generate().map_err(usage)?;

    let dir = args.out_dir.unwrap_or_else(crate::default_out_dir);
    let stem = args
        .name
        .unwrap_or_else(|| format!("{}-n{}-s{}", family, spec.n, seed));
    let files = write_graph(&g, &dir, &stem)?;
    println!("{}", summary_line(&spec, &g));
    for f in files {
        println!("wrote {}", f.display());
    }
    Ok(())
}

/// Matrix text (link matrix for unit-weight graphs, probability matrix
/// otherwise) plus the JSON dump.
pub fn write_graph(g: &Graph, dir: &std::path::Path, stem: &str) -> anyhow::Result<Vec<PathBuf>> {
    let matrix = match export_link_matrix(g) {
        Ok(text) => text,
        Err(_) => export_probability_matrix(g),
    };
    Ok(vec![
        write(dir, &format!("{stem}.matrix.txt"), &matrix)?,
        write(dir, &format!("{stem}.json"), &(g.to_json() + "\n"))?,
    ])
}

pub fn summary_line(spec: &GeneratorSpec, g: &Graph) -> String {
    let density = if g.n() >= 2 {
        g.mean_offdiagonal_weight().unwrap_or(0.0)
    } else {
        0.0
    };
    let pairs = g.n() * g.n().saturating_sub(1) / 2;
    let link_density = if pairs > 0 {
        g.edge_count() as f64 / pairs as f64
    } else {
        0.0
    };
    format!(
        "family={} n={} seed={} edges={} link_density={:.4} mean_weight={:.4}",
        spec.family,
        g.n(),
        spec.seed,
        g.edge_count(),
        link_density,
        density
    )
}
