//! Monte Carlo replication of diffusion runs.
//!
//! Replication `r` of an ensemble uses
//!
//! * graph seed `derive_seed(generator.seed, r)` when graphs are regenerated,
//!   otherwise one graph built from `generator.seed` for every replication;
//! * simulation seed `derive_seed(base.seed, r)`.
//!
//! Replications run in parallel but are collected in index order. All
//! per-loop statistics are computed from exact integer sums, so a summary
//! does not depend on the order in which replications are combined.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diffusion::{run, SimulationConfig, Trajectory};
use crate::error::{Error, Result};
use crate::generators::GeneratorSpec;
use crate::graph::Graph;
use crate::rng::{derive_seed, SimRng};

/// Fraction of the population used for the "time to mostly informed"
/// statistic.
pub const MOSTLY_INFORMED_FRACTION: f64 = 0.9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleConfig {
    pub generator: GeneratorSpec,
    pub base: SimulationConfig,
    pub replications: usize,
    pub regenerate_graph: bool,
}

impl EnsembleConfig {
    pub fn validate(&self) -> Result<()> {
        if self.replications == 0 {
            return Err(Error::param("replications must be at least 1"));
        }
        self.generator.validate()
    }

    pub fn graph_seed(&self, replication: usize) -> u64 {
        if self.regenerate_graph {
            derive_seed(self.generator.seed, replication as u64)
        } else {
            self.generator.seed
        }
    }

    pub fn simulation_seed(&self, replication: usize) -> u64 {
        base_for(&self.base, replication).seed
    }
}

/// Raw trajectories of an ensemble, in replication order.
#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleRun {
    pub n: usize,
    pub max_loops: usize,
    pub trajectories: Vec<Trajectory>,
}

impl EnsembleRun {
    /// First loop reaching `threshold` informed vertices, per replication;
    /// `None` for runs that never get there.
    pub fn times_to_reach(&self, threshold: usize) -> Vec<Option<usize>> {
        self.trajectories
            .iter()
            .map(|t| t.first_loop_reaching(threshold))
            .collect()
    }

    pub fn summarize(&self) -> EnsembleSummary {
        summarize(self)
    }
}

pub fn run_replications(cfg: &EnsembleConfig) -> Result<EnsembleRun> {
    cfg.validate()?;
    if !cfg.regenerate_graph {
        let g = cfg.generator.generate()?;
        return run_on_graph(&g, &cfg.base, cfg.replications);
    }
    cfg.base.validate(&Graph::empty(cfg.generator.n))?;
    let trajectories = (0..cfg.replications)
        .into_par_iter()
        .map(|r| {
            let g = cfg.generator.with_seed(cfg.graph_seed(r)).generate()?;
            run(&g, &base_for(&cfg.base, r))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EnsembleRun {
        n: cfg.generator.n,
        max_loops: cfg.base.max_loops,
        trajectories,
    })
}

/// Replications on one fixed graph, with the same simulation seed derivation
/// as [`run_replications`].
pub fn run_on_graph(g: &Graph, base: &SimulationConfig, replications: usize) -> Result<EnsembleRun> {
    if replications == 0 {
        return Err(Error::param("replications must be at least 1"));
    }
    base.validate(g)?;
    let trajectories = (0..replications)
        .into_par_iter()
        .map(|r| run(g, &base_for(base, r)))
        .collect::<Result<Vec<_>>>()?;
    Ok(EnsembleRun {
        n: g.n(),
        max_loops: base.max_loops,
        trajectories,
    })
}

fn base_for(base: &SimulationConfig, replication: usize) -> SimulationConfig {
    base.with_seed(derive_seed(base.seed, replication as u64))
}

pub fn run_ensemble(cfg: &EnsembleConfig) -> Result<EnsembleSummary> {
    Ok(run_replications(cfg)?.summarize())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LoopStats {
    #[serde(rename = "loop")]
    pub loop_index: usize,
    pub mean: f64,
    /// Sample standard deviation (`n - 1` denominator); 0 for one replication.
    pub sd: f64,
    pub p10: usize,
    pub p50: usize,
    pub p90: usize,
}

/// First-passage times over the replications that reached `threshold`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimeStats {
    pub threshold: usize,
    pub uncensored: usize,
    /// Runs that hit the loop budget first.
    pub censored: usize,
    pub mean: Option<f64>,
    pub p10: Option<usize>,
    pub p50: Option<usize>,
    pub p90: Option<usize>,
}

impl TimeStats {
    pub fn from_times(threshold: usize, times: &[Option<usize>]) -> Self {
        let mut hit: Vec<usize> = times.iter().flatten().copied().collect();
        hit.sort_unstable();
        let mean = (!hit.is_empty())
            .then(|| hit.iter().map(|&t| t as u64).sum::<u64>() as f64 / hit.len() as f64);
        TimeStats {
            threshold,
            uncensored: hit.len(),
            censored: times.len() - hit.len(),
            mean,
            p10: nearest_rank(&hit, 10.0),
            p50: nearest_rank(&hit, 50.0),
            p90: nearest_rank(&hit, 90.0),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleSummary {
    pub n: usize,
    pub max_loops: usize,
    pub replications: usize,
    /// One entry per loop up to the longest trajectory. Shorter trajectories
    /// are held at their terminal value.
    pub per_loop: Vec<LoopStats>,
    pub saturation: TimeStats,
    pub mostly_informed: TimeStats,
}

impl EnsembleSummary {
    pub fn horizon(&self) -> usize {
        self.per_loop.len()
    }

    pub fn means(&self) -> Vec<f64> {
        self.per_loop.iter().map(|s| s.mean).collect()
    }

    /// Mean at `loop_index`, holding the terminal value past the horizon.
    pub fn mean_at(&self, loop_index: usize) -> f64 {
        self.per_loop
            .get(loop_index)
            .or(self.per_loop.last())
            .map_or(0.0, |s| s.mean)
    }

    /// `loop,mean,sd,p10,p50,p90` CSV with a header row.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("loop,mean,sd,p10,p50,p90\n");
        for s in &self.per_loop {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                s.loop_index, s.mean, s.sd, s.p10, s.p50, s.p90
            ));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("summary serializes")
    }
}

/// Nearest-rank percentile of sorted data: the value at rank
/// `ceil(p / 100 * len)`, clamped to at least 1.
pub fn nearest_rank<T: Copy>(sorted: &[T], p: f64) -> Option<T> {
    if sorted.is_empty() {
        return None;
    }
    let rank = ((p / 100.0) * sorted.len() as f64).ceil() as usize;
    Some(sorted[rank.clamp(1, sorted.len()) - 1])
}

pub fn summarize(run: &EnsembleRun) -> EnsembleSummary {
    let reps = run.trajectories.len();
    let horizon = run
        .trajectories
        .iter()
        .map(|t| t.counts.len())
        .max()
        .unwrap_or(0);
    let mut column = vec![0usize; reps];
    let per_loop = (0..horizon)
        .map(|t| {
            for (slot, traj) in column.iter_mut().zip(&run.trajectories) {
                *slot = traj.count_at(t);
            }
            loop_stats(t, &mut column)
        })
        .collect();
    let saturation = TimeStats::from_times(run.n, &run.times_to_reach(run.n));
    let mostly = mostly_informed_threshold(run.n);
    EnsembleSummary {
        n: run.n,
        max_loops: run.max_loops,
        replications: reps,
        per_loop,
        saturation,
        mostly_informed: TimeStats::from_times(mostly, &run.times_to_reach(mostly)),
    }
}

/// `ceil(0.9 n)`.
pub fn mostly_informed_threshold(n: usize) -> usize {
    (MOSTLY_INFORMED_FRACTION * n as f64).ceil() as usize
}

fn loop_stats(loop_index: usize, column: &mut [usize]) -> LoopStats {
    let len = column.len() as u128;
    let sum: u128 = column.iter().map(|&c| c as u128).sum();
    let sum_sq: u128 = column.iter().map(|&c| (c as u128) * (c as u128)).sum();
    let mean = sum as f64 / len as f64;
    let sd = if len > 1 {
        // len * sum_sq - sum^2 >= 0 by Cauchy-Schwarz, exact in integers.
        let num = len * sum_sq - sum * sum;
        (num as f64 / (len * (len - 1)) as f64).sqrt()
    } else {
        0.0
    };
    column.sort_unstable();
    LoopStats {
        loop_index,
        mean,
        sd,
        p10: nearest_rank(column, 10.0).unwrap_or(0),
        p50: nearest_rank(column, 50.0).unwrap_or(0),
        p90: nearest_rank(column, 90.0).unwrap_or(0),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    /// `mean_a - mean_b` per loop over the longer horizon.
    pub mean_difference: Vec<f64>,
    pub max_abs_difference: f64,
    /// Ratio of mean saturation times, `a / b`.
    pub saturation_time_ratio: Option<f64>,
    /// Ratio of mean times to 90% informed, `a / b`.
    pub mostly_informed_time_ratio: Option<f64>,
}

impl ComparisonReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Compares two summaries over the same population and loop budget. The
/// shorter summary is held at its terminal mean, which is exact because every
/// replication has stopped by then.
pub fn compare_ensembles(a: &EnsembleSummary, b: &EnsembleSummary) -> Result<ComparisonReport> {
    if a.n != b.n {
        return Err(Error::param(format!(
            "ensembles cover different populations ({} vs {})",
            a.n, b.n
        )));
    }
    if a.max_loops != b.max_loops {
        return Err(Error::param(format!(
            "ensembles use different loop horizons ({} vs {})",
            a.max_loops, b.max_loops
        )));
    }
    let horizon = a.horizon().max(b.horizon());
    let mean_difference: Vec<f64> = (0..horizon).map(|t| a.mean_at(t) - b.mean_at(t)).collect();
    let max_abs_difference = mean_difference.iter().fold(0.0f64, |m, d| m.max(d.abs()));
    let ratio = |x: Option<f64>, y: Option<f64>| match (x, y) {
        (Some(x), Some(y)) if y > 0.0 => Some(x / y),
        _ => None,
    };
    Ok(ComparisonReport {
        mean_difference,
        max_abs_difference,
        saturation_time_ratio: ratio(a.saturation.mean, b.saturation.mean),
        mostly_informed_time_ratio: ratio(a.mostly_informed.mean, b.mostly_informed.mean),
    })
}

/// Percentile bootstrap interval for `mean(a) - mean(b)`, resampling each
/// sample independently with replacement.
pub fn bootstrap_mean_difference_ci(
    a: &[f64],
    b: &[f64],
    resamples: usize,
    confidence: f64,
    seed: u64,
) -> Result<(f64, f64)> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::param("bootstrap needs two nonempty samples"));
    }
    if resamples == 0 || !(0.0 < confidence && confidence < 1.0) {
        return Err(Error::param("bootstrap needs resamples >= 1 and confidence in (0, 1)"));
    }
    let mut rng = SimRng::new(seed);
    let resample_mean = |xs: &[f64], rng: &mut SimRng| {
        (0..xs.len()).map(|_| xs[rng.below(xs.len())]).sum::<f64>() / xs.len() as f64
    };
    let mut diffs: Vec<f64> = (0..resamples)
        .map(|_| resample_mean(a, &mut rng) - resample_mean(b, &mut rng))
        .collect();
    diffs.sort_by(f64::total_cmp);
    let tail = (1.0 - confidence) / 2.0 * 100.0;
    let lo = nearest_rank(&diffs, tail).unwrap_or(0.0);
    let hi = nearest_rank(&diffs, 100.0 - tail).unwrap_or(0.0);
    Ok((lo, hi))
}
