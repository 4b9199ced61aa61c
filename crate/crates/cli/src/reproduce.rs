//! Canned experiments, one per figure or table. Each writes plot-ready CSV
//! plus a `manifest.json` that is sufficient to regenerate the bundle
//! byte-for-byte with `reproduce --manifest`.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::Context;
use clap::ValueEnum;
use netdiff_core::analysis::fit_power_law;
use netdiff_core::diffusion::{self, ContactModel, SimulationConfig};
use netdiff_core::generators::{gen_complete, Family, GeneratorSpec};
use netdiff_core::matrix::{export_link_matrix, export_probability_matrix};
use netdiff_core::monte_carlo::{compare_ensembles, run_replications, EnsembleConfig};
use netdiff_core::rng::derive_seed;
use netdiff_core::DegreeHistogram;
use serde::{Deserialize, Serialize};

use crate::output::write;
use crate::simulate::saturation_line;
use crate::{usage, Failure, OUT_DIR_ENV};

/// Initial informed counts used by the trajectory figures.
pub const INITIAL_GRID: [usize; 6] = [1, 2, 5, 10, 20, 50];
const CONVERGENCE_SIZES: [usize; 7] = [10, 20, 50, 100, 200, 500, 1000];
const CONVERGENCE_SEEDS: u64 = 30;
const TABLE_SIZE: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Figure {
    /// Trajectories on random networks for the initial-value grid.
    RandomNetwork,
    /// Trajectories on stochastic networks for the initial-value grid.
    StochasticNetwork,
    /// Trajectories on scale-free networks for the initial-value grid.
    ScaleFree,
    /// Paired random/stochastic ensembles and their comparison.
    RandomVsStochastic,
    /// Degree histograms of scale-free networks with log-log fits.
    PowerLaw,
    /// Broadcast on complete networks for the initial-value grid.
    Complete,
    /// Mean matrix entry against network size, plus sample matrices.
    MatrixAverage,
}

impl Figure {
    fn name(self) -> String {
        self.to_possible_value()
            .map(|v| v.get_name().to_string())
            .unwrap_or_default()
    }
}

#[derive(Debug, clap::Args)]
pub struct Args {
    #[arg(value_enum, required_unless_present = "manifest")]
    figure: Option<Figure>,
    /// Required: reproduction never falls back to a clock-derived seed.
    #[arg(long, required_unless_present = "manifest")]
    seed: Option<u64>,
    #[arg(long, default_value_t = 1000)]
    replications: usize,
    #[arg(long, default_value_t = 100)]
    n: usize,
    #[arg(long, default_value_t = 1000)]
    max_loops: usize,
    /// Re-run the bundle described by this manifest.
    #[arg(long, conflicts_with_all = ["figure", "seed"])]
    manifest: Option<PathBuf>,
    #[arg(long, env = OUT_DIR_ENV)]
    out_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub figure: Figure,
    pub seed: u64,
    pub replications: usize,
    pub n: usize,
    pub max_loops: usize,
    #[serde(default)]
    pub files: Vec<String>,
}

pub fn run(args: Args) -> Result<(), Failure> {
    let (manifest, default_dir) = match &args.manifest {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            let m: Manifest = serde_json::from_str(&text)
                .map_err(|e| usage(format!("invalid manifest {}: {e}", path.display())))?;
            let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
            (m, dir)
        }
        None => {
            let figure = args.figure.ok_or_else(|| usage("figure id required"))?;
            let seed = args.seed.ok_or_else(|| usage("--seed is required"))?;
            let m = Manifest {
                figure,
                seed,
                replications: args.replications,
                n: args.n,
                max_loops: args.max_loops,
                files: Vec::new(),
            };
            (m, crate::default_out_dir().join(figure.name()))
        }
    };
    if manifest.replications == 0 || manifest.n < 2 || manifest.max_loops == 0 {
        return Err(usage("replications and max-loops must be >= 1, n >= 2"));
    }
    let dir = args.out_dir.unwrap_or(default_dir);
    let files = reproduce(&manifest, &dir)?;
    let manifest = Manifest { files, ..manifest };
    let text = serde_json::to_string_pretty(&manifest).context("serializing manifest")?;
    let path = write(&dir, "manifest.json", &(text + "\n"))?;
    println!("wrote {} files and {}", manifest.files.len(), path.display());
    Ok(())
}

/// Runs the figure's experiment into `dir` and returns the written file
/// names.
pub fn reproduce(m: &Manifest, dir: &Path) -> Result<Vec<String>, Failure> {
    let mut out = Bundle {
        dir,
        files: Vec::new(),
    };
    match m.figure {
        Figure::RandomNetwork => trajectory_grid(m, Family::Random, &mut out)?,
        Figure::StochasticNetwork => trajectory_grid(m, Family::Stochastic, &mut out)?,
        Figure::ScaleFree => trajectory_grid(m, Family::ScaleFree, &mut out)?,
        Figure::RandomVsStochastic => random_vs_stochastic(m, &mut out)?,
        Figure::PowerLaw => power_law(m, &mut out)?,
        Figure::Complete => complete(m, &mut out)?,
        Figure::MatrixAverage => matrix_average(m, &mut out)?,
    }
    Ok(out.files)
}

struct Bundle<'a> {
    dir: &'a Path,
    files: Vec<String>,
}

impl Bundle<'_> {
    fn write(&mut self, name: &str, contents: &str) -> anyhow::Result<()> {
        write(self.dir, name, contents)?;
        self.files.push(name.to_string());
        Ok(())
    }
}

fn ensemble(m: &Manifest, family: Family, initial: usize, stream: u64) -> EnsembleConfig {
    EnsembleConfig {
        generator: GeneratorSpec::new(family, m.n, derive_seed(m.seed, 2 * stream)),
        base: SimulationConfig::new(
            ContactModel::RandomContact,
            initial,
            m.max_loops,
            derive_seed(m.seed, 2 * stream + 1),
        ),
        replications: m.replications,
        regenerate_graph: true,
    }
}

/// `loop,<label>...` with each column held at its terminal value.
fn columns_csv(labels: &[String], columns: &[Vec<String>]) -> String {
    let rows = columns.iter().map(Vec::len).max().unwrap_or(0);
    let mut out = format!("loop,{}\n", labels.join(","));
    for t in 0..rows {
        let _ = write!(out, "{t}");
        for col in columns {
            let v = col.get(t).or(col.last()).map_or("", String::as_str);
            let _ = write!(out, ",{v}");
        }
        out.push('\n');
    }
    out
}

fn trajectory_grid(m: &Manifest, family: Family, out: &mut Bundle) -> Result<(), Failure> {
    let mut labels = Vec::new();
    let mut representative = Vec::new();
    let mut means = Vec::new();
    for (i, &k) in INITIAL_GRID.iter().enumerate() {
        if k > m.n {
            continue;
        }
        let runs = run_replications(&ensemble(m, family, k, i as u64)).context("ensemble")?;
        let summary = runs.summarize();
        out.write(&format!("ensemble-k{k}.csv"), &summary.to_csv())?;
        out.write(&format!("ensemble-k{k}.json"), &(summary.to_json() + "\n"))?;
        println!("{family} k={k}: {}", saturation_line(&summary));
        labels.push(format!("k{k}"));
        representative.push(runs.trajectories[0].counts.iter().map(|c| c.to_string()).collect());
        means.push(summary.means().iter().map(|x| x.to_string()).collect());
    }
    out.write("trajectories.csv", &columns_csv(&labels, &representative))?;
    out.write("means.csv", &columns_csv(&labels, &means))?;
    Ok(())
}

fn random_vs_stochastic(m: &Manifest, out: &mut Bundle) -> Result<(), Failure> {
    let k = 10.min(m.n);
    let random = run_replications(&ensemble(m, Family::Random, k, 0)).context("ensemble")?;
    let stochastic = run_replications(&ensemble(m, Family::Stochastic, k, 1)).context("ensemble")?;
    let (a, b) = (random.summarize(), stochastic.summarize());
    let report = compare_ensembles(&a, &b).map_err(|e| Failure::Runtime(e.into()))?;
    out.write("random.csv", &a.to_csv())?;
    out.write("random.json", &(a.to_json() + "\n"))?;
    out.write("stochastic.csv", &b.to_csv())?;
    out.write("stochastic.json", &(b.to_json() + "\n"))?;
    let mut csv = String::from("loop,random_mean,stochastic_mean,difference\n");
    for (t, d) in report.mean_difference.iter().enumerate() {
        let _ = writeln!(csv, "{t},{},{},{d}", a.mean_at(t), b.mean_at(t));
    }
    out.write("comparison.csv", &csv)?;
    out.write("comparison.json", &(report.to_json() + "\n"))?;
    println!("random: {}", saturation_line(&a));
    println!("stochastic: {}", saturation_line(&b));
    println!(
        "max per-loop difference of means: {:.3}; saturation time ratio {:.4}",
        report.max_abs_difference,
        report.saturation_time_ratio.unwrap_or(f64::NAN)
    );
    Ok(())
}

fn power_law(m: &Manifest, out: &mut Bundle) -> Result<(), Failure> {
    let single = GeneratorSpec::new(Family::ScaleFree, m.n, m.seed)
        .generate()
        .map_err(usage)?;
    let single_hist = single.degree_histogram();
    let mut merged = DegreeHistogram::default();
    for r in 0..m.replications {
        let g = GeneratorSpec::new(Family::ScaleFree, m.n, derive_seed(m.seed, r as u64))
            .generate()
            .map_err(usage)?;
        merged.merge(&g.degree_histogram());
    }
    out.write("degrees-single.csv", &single_hist.to_csv())?;
    out.write("degrees-ensemble.csv", &merged.to_csv())?;
    let fit_json = |h: &DegreeHistogram| {
        fit_power_law(h)
            .ok()
            .and_then(|f| serde_json::to_value(f).ok())
            .unwrap_or(serde_json::Value::Null)
    };
    let report = serde_json::json!({
        "single": {
            "fit": fit_json(&single_hist),
            "degree_one_fraction": single_hist.fraction(1),
            "max_degree": single_hist.max_degree(),
        },
        "ensemble": {
            "graphs": m.replications,
            "fit": fit_json(&merged),
            "degree_one_fraction": merged.fraction(1),
        },
    });
    out.write("fit.json", &(serde_json::to_string_pretty(&report).context("json")? + "\n"))?;
    println!(
        "single graph: hub degree {}, degree-1 fraction {:.3}; ensemble degree-1 fraction {:.4}",
        single_hist.max_degree().unwrap_or(0),
        single_hist.fraction(1),
        merged.fraction(1)
    );
    Ok(())
}

fn complete(m: &Manifest, out: &mut Bundle) -> Result<(), Failure> {
    let g = gen_complete(m.n).map_err(usage)?;
    let mut labels = Vec::new();
    let mut columns = Vec::new();
    for (i, &k) in INITIAL_GRID.iter().enumerate() {
        if k > m.n {
            continue;
        }
        let cfg = SimulationConfig::new(ContactModel::Broadcast, k, m.max_loops, derive_seed(m.seed, i as u64));
        let t = diffusion::run(&g, &cfg).context("simulation")?;
        out.write(&format!("trajectory-k{k}.csv"), &t.to_csv())?;
        println!("complete k={k}: {:?}", t.counts);
        labels.push(format!("k{k}"));
        columns.push(t.counts.iter().map(|c| c.to_string()).collect());
    }
    out.write("trajectories.csv", &columns_csv(&labels, &columns))?;
    Ok(())
}

fn matrix_average(m: &Manifest, out: &mut Bundle) -> Result<(), Failure> {
    let mut csv = String::from("n,random_mean,stochastic_mean,random_abs_error,stochastic_abs_error\n");
    for &n in &CONVERGENCE_SIZES {
        let (mut r_mean, mut s_mean, mut r_err, mut s_err) = (0.0, 0.0, 0.0, 0.0);
        for s in 0..CONVERGENCE_SEEDS {
            let seed = derive_seed(m.seed, s);
            let r = GeneratorSpec::random(n, 0.5, seed).generate().map_err(usage)?;
            let st = GeneratorSpec::new(Family::Stochastic, n, seed).generate().map_err(usage)?;
            let (a, b) = (
                r.mean_offdiagonal_weight().map_err(usage)?,
                st.mean_offdiagonal_weight().map_err(usage)?,
            );
            r_mean += a;
            s_mean += b;
            r_err += (a - 0.5).abs();
            s_err += (b - 0.5).abs();
        }
        let k = CONVERGENCE_SEEDS as f64;
        let _ = writeln!(csv, "{n},{},{},{},{}", r_mean / k, s_mean / k, r_err / k, s_err / k);
    }
    out.write("convergence.csv", &csv)?;
    let link = GeneratorSpec::random(TABLE_SIZE, 0.5, m.seed).generate().map_err(usage)?;
    let prob = GeneratorSpec::new(Family::Stochastic, TABLE_SIZE, m.seed)
        .generate()
        .map_err(usage)?;
    out.write(
        "link-matrix.txt",
        &export_link_matrix(&link).map_err(|e| Failure::Runtime(e.into()))?,
    )?;
    out.write("probability-matrix.txt", &export_probability_matrix(&prob))?;
    println!("wrote convergence over sizes {CONVERGENCE_SIZES:?}, {CONVERGENCE_SEEDS} seeds each");
    Ok(())
}

