//! Acceptance gate. Each criterion prints one PASS/FAIL line with its measured
//! values and runtime; the process exits non-zero if any criterion fails.
//!
//! Run with `cargo test -p netdiff-core --test acceptance`.

use std::time::{Duration, Instant};

use netdiff_core::analysis::fit_power_law;
use netdiff_core::diffusion::{
    init_state, run, step, ContactModel, DiffusionState, InitialInformed, SimulationConfig,
};
use netdiff_core::generators::{gen_complete, gen_random, gen_scale_free, gen_stochastic, Family, GeneratorSpec};
use netdiff_core::matrix::import_matrix;
use netdiff_core::monte_carlo::{
    bootstrap_mean_difference_ci, compare_ensembles, mostly_informed_threshold, run_replications,
    EnsembleConfig,
};
use netdiff_core::rng::SimRng;
use netdiff_core::{DegreeHistogram, Graph, VertexId};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

type Criterion = (&'static str, Duration, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 8] = [
        ("1 complete-network first-loop saturation", Duration::from_secs(1), complete_saturation),
        ("2 matrix average converges to 1/2", Duration::from_secs(10), matrix_average),
        ("3 scale-free degree-1 majority", Duration::from_secs(5), scale_free_structure),
        ("4 scale-free power-law shape", Duration::from_secs(30), power_law_shape),
        ("5 random vs stochastic equivalence", Duration::from_secs(60), random_vs_stochastic),
        ("6 scale-free drag", Duration::from_secs(60), scale_free_drag),
        ("7 broadcast equals BFS ball", Duration::from_secs(5), bfs_equivalence),
        ("8 determinism and monotonicity", Duration::from_secs(30), properties),
    ];
    let mut failures = 0;
    for (name, budget, check) in criteria {
        let start = Instant::now();
        let out = check();
        let elapsed = start.elapsed();
        let in_time = elapsed < budget;
        let pass = out.ok && in_time;
        if !pass {
            failures += 1;
        }
        println!(
            "[{}] criterion {name}: {} ({:.2?} of {:?} budget{})",
            if pass { "PASS" } else { "FAIL" },
            out.detail,
            elapsed,
            budget,
            if in_time { "" } else { ", over budget" },
        );
    }
    if failures > 0 {
        println!("{failures} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all acceptance criteria passed");
}

fn complete_saturation() -> Outcome {
    let mut runs = 0;
    for n in [10usize, 100] {
        let g = gen_complete(n).unwrap();
        for k in 1..=n {
            for seed in 0..100 {
                let cfg = SimulationConfig::new(ContactModel::Broadcast, k, 1000, seed);
                let t = run(&g, &cfg).unwrap();
                if t.counts != [k, n] {
                    return outcome(false, format!("n={n} k={k} seed={seed}: {:?}", t.counts));
                }
                runs += 1;
            }
        }
    }
    outcome(true, format!("{runs} runs all [k, n]"))
}

fn matrix_average() -> Outcome {
    let mut ok = true;
    let mut detail = Vec::new();
    for family in [Family::Random, Family::Stochastic] {
        let mut err_small = 0.0;
        let mut err_large = 0.0;
        let mut worst: f64 = 0.0;
        for seed in 0..30u64 {
            let spec = match family {
                Family::Random => GeneratorSpec::random(1000, 0.5, seed),
                _ => GeneratorSpec::new(family, 1000, seed),
            };
            let large = spec.generate().unwrap().mean_offdiagonal_weight().unwrap();
            let small = spec.with_n(100).generate().unwrap().mean_offdiagonal_weight().unwrap();
            worst = worst.max((large - 0.5).abs());
            err_large += (large - 0.5).abs() / 30.0;
            err_small += (small - 0.5).abs() / 30.0;
        }
        ok &= worst <= 0.02 && err_large < err_small;
        detail.push(format!(
            "{family}: worst |mean-0.5| at n=1000 {worst:.4}, mean error n=100 {err_small:.4} > n=1000 {err_large:.4}"
        ));
    }
    outcome(ok, detail.join("; "))
}

fn scale_free_structure() -> Outcome {
    let mut frac = 0.0;
    for seed in 0..200 {
        let g = gen_scale_free(100, seed).unwrap();
        if g.edge_count() != 99 || !g.is_connected() {
            return outcome(false, format!("seed {seed}: {} edges, connected={}", g.edge_count(), g.is_connected()));
        }
        frac += g.degree_histogram().fraction(1) / 200.0;
    }
    outcome(frac > 0.60, format!("mean degree-1 fraction {frac:.4} (> 0.60), all trees"))
}

fn power_law_shape() -> Outcome {
    let mut total = DegreeHistogram::default();
    for seed in 0..200 {
        total.merge(&gen_scale_free(1000, seed).unwrap().degree_histogram());
    }
    let fit = fit_power_law(&total).unwrap();
    let head: Vec<u64> = (1..=4).map(|k| total.count(k)).collect();
    let decreasing = head.windows(2).all(|w| w[0] >= w[1]);
    let ok = (-3.5..=-1.5).contains(&fit.slope) && decreasing;
    outcome(
        ok,
        format!(
            "slope {:.3} over {} points (band [-3.5, -1.5]), counts k=1..4 {head:?}",
            fit.slope, fit.points_used
        ),
    )
}

fn ensemble(family: Family, seed: u64) -> EnsembleConfig {
    EnsembleConfig {
        generator: GeneratorSpec::new(family, 100, seed),
        base: SimulationConfig::new(ContactModel::RandomContact, 10, 1000, seed ^ 0x5eed),
        replications: 1000,
        regenerate_graph: true,
    }
}

fn random_vs_stochastic() -> Outcome {
    let random = run_replications(&ensemble(Family::Random, 101)).unwrap().summarize();
    let stochastic = run_replications(&ensemble(Family::Stochastic, 202)).unwrap().summarize();
    let report = compare_ensembles(&random, &stochastic).unwrap();
    let (a, b) = (
        random.saturation.mean.unwrap_or(f64::INFINITY),
        stochastic.saturation.mean.unwrap_or(f64::INFINITY),
    );
    let rel = (a - b).abs() / a.min(b);
    let ok = report.max_abs_difference <= 5.0 && rel <= 0.10;
    outcome(
        ok,
        format!(
            "max per-loop mean gap {:.3} persons (<= 5); mean saturation {a:.3} vs {b:.3} loops, relative gap {:.2}% (<= 10%)",
            report.max_abs_difference,
            rel * 100.0
        ),
    )
}

fn scale_free_drag() -> Outcome {
    let cfg_sf = ensemble(Family::ScaleFree, 303);
    let cfg_r = ensemble(Family::Random, 404);
    let sf = run_replications(&cfg_sf).unwrap();
    let r = run_replications(&cfg_r).unwrap();
    let threshold = mostly_informed_threshold(100);
    // Runs that never reach the threshold count as one loop past the budget,
    // which understates the scale-free delay.
    let censored_at = (cfg_sf.base.max_loops + 1) as f64;
    let times = |run: &netdiff_core::monte_carlo::EnsembleRun| -> Vec<f64> {
        run.times_to_reach(threshold)
            .into_iter()
            .map(|t| t.map_or(censored_at, |t| t as f64))
            .collect()
    };
    let (t_sf, t_r) = (times(&sf), times(&r));
    let mean = |xs: &[f64]| xs.iter().sum::<f64>() / xs.len() as f64;
    let (m_sf, m_r) = (mean(&t_sf), mean(&t_r));
    let (lo, hi) = bootstrap_mean_difference_ci(&t_sf, &t_r, 2000, 0.95, 99).unwrap();
    let ok = m_sf > m_r && lo > 0.0;
    outcome(
        ok,
        format!("mean time to 90% informed: scale-free {m_sf:.2} vs random {m_r:.2} loops; 95% CI of difference [{lo:.2}, {hi:.2}]"),
    )
}

/// Random connected unit graph: a random recursive tree plus extra edges.
fn connected_graph(rng: &mut SimRng) -> Graph {
    let n = 2 + rng.below(49);
    let extra_p = rng.next_f64() * 0.2;
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.below(v), v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.bernoulli(extra_p) && !edges.contains(&(u, v)) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges.into_iter().map(|(u, v)| (u, v, 1.0))).unwrap()
}

fn ball(g: &Graph, sources: &[usize], radius: usize) -> Vec<usize> {
    let mut best = vec![usize::MAX; g.n()];
    for &s in sources {
        for (v, d) in g.bfs_distances(s).into_iter().enumerate() {
            if let Some(d) = d {
                best[v] = best[v].min(d);
            }
        }
    }
    (0..g.n()).filter(|&v| best[v] <= radius).collect()
}

fn bfs_equivalence() -> Outcome {
    let mut rng = SimRng::new(2024);
    let mut loops_checked = 0;
    for case in 0..50 {
        let g = connected_graph(&mut rng);
        assert!(g.is_connected());
        let k = 1 + rng.below(3.min(g.n()));
        let cfg = SimulationConfig::new(ContactModel::Broadcast, k, 1000, case);
        let mut state = init_state(&g, &cfg).unwrap();
        let sources = state.informed_vertices();
        let mut sim_rng = SimRng::new(case);
        for t in 0..=g.n() {
            if state.informed_vertices() != ball(&g, &sources, t) {
                return outcome(false, format!("case {case}: loop {t} differs from the BFS ball"));
            }
            loops_checked += 1;
            step(&g, &mut state, ContactModel::Broadcast, &mut sim_rng);
        }
    }
    outcome(true, format!("50 graphs, {loops_checked} loop states equal to BFS balls"))
}

const MODELS: [ContactModel; 3] = [
    ContactModel::Broadcast,
    ContactModel::RandomContact,
    ContactModel::NeighborContact,
];

fn link_and_probability_twins(g: &Graph) -> (Graph, Graph) {
    let n = g.n();
    let mut link = String::new();
    let mut prob = String::new();
    for u in 0..n {
        let row: Vec<bool> = (0..n).map(|v| g.has_edge(u, v)).collect();
        link.push_str(&row.iter().map(|&e| if e { "1" } else { "0" }).collect::<Vec<_>>().join(" "));
        prob.push_str(&row.iter().map(|&e| if e { "1.00" } else { "0.00" }).collect::<Vec<_>>().join(" "));
        link.push('\n');
        prob.push('\n');
    }
    (import_matrix(&link).unwrap(), import_matrix(&prob).unwrap())
}

fn properties() -> Outcome {
    let mut runner = TestRunner::new_with_rng(
        Config {
            cases: 1000,
            failure_persistence: None,
            ..Config::default()
        },
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    );
    let strategy = (0usize..4, 0usize..3, 2usize..40, any::<u64>(), any::<u64>(), 1usize..40);
    let result = runner.run(&strategy, |(fam, model, n, graph_seed, sim_seed, k)| {
        let g = match Family::ALL[fam] {
            Family::Complete => gen_complete(n).unwrap(),
            Family::Random => gen_random(n, 0.15, graph_seed).unwrap(),
            Family::Stochastic => gen_stochastic(n, graph_seed).unwrap(),
            Family::ScaleFree => gen_scale_free(n, graph_seed).unwrap(),
        };
        let model = MODELS[model];
        let k = 1 + k % n;
        let cfg = SimulationConfig::new(model, k, 60, sim_seed);

        let a = run(&g, &cfg).unwrap();
        let b = run(&g, &cfg).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert!(a.counts.windows(2).all(|w| w[0] <= w[1]));
        prop_assert!(a.counts.iter().all(|&c| c <= n));

        let mut state: DiffusionState = init_state(&g, &cfg).unwrap();
        let mut rng = SimRng::new(sim_seed ^ 1);
        for _ in 0..60 {
            let before = state.informed_vertices();
            step(&g, &mut state, model, &mut rng);
            let after = state.informed_vertices();
            prop_assert!(before.iter().all(|v| after.contains(v)));
            if before.len() == n {
                prop_assert_eq!(&before, &after);
            }
        }

        // The same edges as a link matrix and as an all-1.00 probability
        // matrix behave identically, seed for seed.
        let (link, prob) = link_and_probability_twins(&g);
        let mut cfg_v = cfg.clone();
        cfg_v.initial = InitialInformed::Vertices(vec![VertexId(0)]);
        prop_assert_eq!(run(&link, &cfg_v).unwrap(), run(&prob, &cfg_v).unwrap());
        Ok(())
    });
    match result {
        Ok(()) => outcome(true, "1000 randomized cases: deterministic, monotone, absorbing, unit-weight twins agree"),
        Err(e) => outcome(false, format!("{e}")),
    }
}
