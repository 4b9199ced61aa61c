use std::path::{Path, PathBuf};

use anyhow::Context;
use clap::ValueEnum;
use netdiff_core::analysis::{characteristic_path_length, clustering_coefficient, fit_power_law};
use netdiff_core::matrix::import_matrix;
use netdiff_core::Graph;
use serde_json::{json, Value};

use crate::output::write;
use crate::{Failure, OUT_DIR_ENV};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Statistic {
    DegreeHistogram,
    PowerLaw,
    Clustering,
    PathLength,
    MatrixMean,
    All,
}

#[derive(Debug, clap::Args)]
pub struct Args {
    /// Graph as a JSON dump or matrix text.
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, value_enum, default_value = "all")]
    stat: Statistic,
    #[arg(long, env = OUT_DIR_ENV)]
    out_dir: Option<PathBuf>,
}

/// JSON dumps are recognized by a leading `{`; anything else is read as a
/// matrix.
pub fn load_graph(path: &Path) -> anyhow::Result<Graph> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let g = if text.trim_start().starts_with('{') {
        Graph::from_json(&text)
    } else {
        import_matrix(&text)
    };
    g.with_context(|| format!("parsing {}", path.display()))
}

pub fn run(args: Args) -> Result<(), Failure> {
    let g = load_graph(&args.graph)?;
    let dir = args.out_dir.unwrap_or_else(crate::default_out_dir);
    let stem = args
        .graph
        .file_name()
        .and_then(|s| s.to_str())
        .map(|s| s.split('.').next().unwrap_or(s).to_string())
        .unwrap_or_else(|| "graph".into());

    let wanted = |s: Statistic| args.stat == s || args.stat == Statistic::All;
    let mut report = serde_json::Map::new();
    report.insert("n".into(), json!(g.n()));
    report.insert("edges".into(), json!(g.edge_count()));

    if wanted(Statistic::DegreeHistogram) {
        let h = g.degree_histogram();
        let path = write(&dir, &format!("{stem}.degrees.csv"), &h.to_csv())?;
        println!(
            "degree histogram: degree-1 fraction {:.4}, max degree {}, wrote {}",
            h.fraction(1),
            h.max_degree().unwrap_or(0),
            path.display()
        );
        report.insert("degree_one_fraction".into(), json!(h.fraction(1)));
        report.insert("max_degree".into(), json!(h.max_degree()));
    }
    if wanted(Statistic::PowerLaw) {
        match fit_power_law(&g.degree_histogram()) {
            Ok(fit) => {
                println!("power-law fit: slope {:.4} over {} points", fit.slope, fit.points_used);
                report.insert("power_law".into(), serde_json::to_value(fit).context("serializing fit")?);
            }
            Err(e) if args.stat == Statistic::All => {
                println!("power-law fit: {e}");
                report.insert("power_law".into(), Value::Null);
            }
            Err(e) => return Err(Failure::Runtime(e.into())),
        }
    }
    if wanted(Statistic::Clustering) {
        let c = clustering_coefficient(&g);
        println!("clustering coefficient: {c}");
        report.insert("clustering".into(), json!(c));
    }
    if wanted(Statistic::PathLength) {
        let pl = characteristic_path_length(&g).context("path length")?;
        println!(
            "characteristic path length: {} (connected: {}, component size {})",
            pl.mean, pl.connected, pl.component_size
        );
        report.insert("path_length".into(), serde_json::to_value(pl).context("serializing")?);
    }
    if wanted(Statistic::MatrixMean) {
        let m = g.mean_offdiagonal_weight().context("matrix mean")?;
        println!("mean off-diagonal weight: {m}");
        report.insert("matrix_mean".into(), json!(m));
    }

    let name = match args.stat {
        Statistic::All => format!("{stem}.analysis.json"),
        s => format!(
            "{stem}.{}.json",
            s.to_possible_value().expect("no skipped variants").get_name()
        ),
    };
    let text = serde_json::to_string_pretty(&Value::Object(report)).context("serializing")?;
    let path = write(&dir, &name, &(text + "\n"))?;
    println!("wrote {}", path.display());
    Ok(())
}
