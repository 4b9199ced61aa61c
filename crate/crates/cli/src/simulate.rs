use std::path::PathBuf;

use anyhow::Context;
use netdiff_core::diffusion::{self, ContactModel, InitialInformed, SimulationConfig};
use netdiff_core::generators::{Family, GeneratorSpec};
use netdiff_core::monte_carlo::{run_on_graph, run_replications, EnsembleConfig, EnsembleSummary};
use netdiff_core::{Graph, VertexId};

use crate::analyze::load_graph;
use crate::config::ExperimentConfig;
use crate::output::{fallback_seed, write};
use crate::{usage, Failure, OUT_DIR_ENV};

pub const DEFAULT_MAX_LOOPS: usize = 1000;

#[derive(Debug, clap::Args)]
pub struct Args {
    /// TOML experiment file; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    edge_prob: Option<f64>,
    /// Seed for graph generation (defaults to --seed).
    #[arg(long)]
    graph_seed: Option<u64>,
    /// Simulate on a saved graph (JSON dump or matrix text) instead.
    #[arg(long, conflicts_with_all = ["family", "n", "edge_prob", "graph_seed"])]
    graph: Option<PathBuf>,
    /// broadcast, random-contact or neighbor-contact. Defaults to broadcast
    /// on complete networks and random-contact elsewhere.
    #[arg(long)]
    model: Option<String>,
    /// Initial informed counts; one output per value.
    #[arg(long, value_delimiter = ',')]
    initial: Option<Vec<usize>>,
    /// Seed these vertices instead of a random subset.
    #[arg(long, value_delimiter = ',', conflicts_with = "initial")]
    initial_vertices: Option<Vec<usize>>,
    #[arg(long)]
    max_loops: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    replications: Option<usize>,
    /// Reuse one graph for every replication.
    #[arg(long)]
    fixed_graph: bool,
    #[arg(long, env = OUT_DIR_ENV)]
    out_dir: Option<PathBuf>,
}

enum GraphSource {
    Generated(GeneratorSpec),
    File(PathBuf),
}

struct Plan {
    source: GraphSource,
    model: ContactModel,
    initials: Vec<InitialInformed>,
    max_loops: usize,
    seed: u64,
    replications: usize,
    regenerate: bool,
    out_dir: PathBuf,
}

fn plan(args: Args) -> Result<Plan, Failure> {
    let file = match &args.config {
        Some(p) => ExperimentConfig::load(p).map_err(|e| usage(format!("{e:#}")))?,
        None => ExperimentConfig::default(),
    };
    let gen = file.generator;
    let sim = file.simulation;

    let seed = match args.seed.or(sim.seed) {
        Some(s) => s,
        None => fallback_seed("--seed"),
    };
    let graph_path = args.graph.or(if args.family.is_some() { None } else { gen.graph });
    let source = match graph_path {
        Some(p) => GraphSource::File(p),
        None => {
            let family: Family = args
                .family
                .or(gen.family)
                .ok_or_else(|| usage("--family (or --graph) is required"))?
                .parse()
                .map_err(usage)?;
            let n = args.n.or(gen.n).ok_or_else(|| usage("--n is required"))?;
            let spec = GeneratorSpec {
                family,
                n,
                edge_prob: args.edge_prob.or(gen.edge_prob),
                seed: args.graph_seed.or(gen.seed).unwrap_or(seed),
            };
            spec.validate().map_err(usage)?;
            GraphSource::Generated(spec)
        }
    };

    let model = match args.model.or(sim.model) {
        Some(m) => m.parse().map_err(usage)?,
        None => match &source {
            GraphSource::Generated(s) if s.family == Family::Complete => ContactModel::Broadcast,
            _ => ContactModel::RandomContact,
        },
    };
    let initials = match (args.initial_vertices, args.initial) {
        (Some(vs), _) => vec![InitialInformed::Vertices(vs.into_iter().map(VertexId).collect())],
        (None, Some(ks)) => ks.into_iter().map(InitialInformed::Count).collect(),
        (None, None) => match (sim.initial_vertices, sim.initial) {
            (Some(vs), _) => vec![InitialInformed::Vertices(vs.into_iter().map(VertexId).collect())],
            (None, Some(ks)) => ks.into_vec().into_iter().map(InitialInformed::Count).collect(),
            (None, None) => vec![InitialInformed::Count(1)],
        },
    };
    if initials.is_empty() {
        return Err(usage("no initial informed counts given"));
    }
    let replications = args.replications.or(file.ensemble.replications).unwrap_or(1);
    if replications == 0 {
        return Err(usage("--replications must be at least 1"));
    }
    let regenerate = !args.fixed_graph && file.ensemble.regenerate_graph.unwrap_or(true);
    Ok(Plan {
        source,
        model,
        initials,
        max_loops: args.max_loops.or(sim.max_loops).unwrap_or(DEFAULT_MAX_LOOPS),
        seed,
        replications,
        regenerate,
        out_dir: args
            .out_dir
            .or(file.output.dir)
            .unwrap_or_else(crate::default_out_dir),
    })
}

fn label(initial: &InitialInformed) -> String {
    match initial {
        InitialInformed::Count(k) => format!("k{k}"),
        InitialInformed::Vertices(_) => "seeded".into(),
    }
}

pub fn run(args: Args) -> Result<(), Failure> {
    let plan = plan(args)?;
    let loaded: Option<Graph> = match &plan.source {
        GraphSource::File(p) => Some(load_graph(p)?),
        GraphSource::Generated(_) => None,
    };
    let n = match (&loaded, &plan.source) {
        (Some(g), _) => g.n(),
        (None, GraphSource::Generated(s)) => s.n,
        (None, GraphSource::File(_)) => unreachable!("file sources are loaded above"),
    };

    for initial in &plan.initials {
        let cfg = SimulationConfig {
            model: plan.model,
            initial: initial.clone(),
            max_loops: plan.max_loops,
            seed: plan.seed,
        };
        cfg.validate(&Graph::empty(n)).map_err(usage)?;
        let name = label(initial);

        if plan.replications == 1 {
            let g = match (&loaded, &plan.source) {
                (Some(g), _) => g.clone(),
                (None, GraphSource::Generated(s)) => s.generate().map_err(usage)?,
                _ => unreachable!(),
            };
            let t = diffusion::run(&g, &cfg).context("simulation failed")?;
            let path = write(&plan.out_dir, &format!("trajectory-{name}.csv"), &t.to_csv())?;
            match t.first_loop_reaching(n) {
                Some(loop_index) => println!(
                    "{name}: saturated at loop {loop_index} ({} -> {n}), wrote {}",
                    t.counts[0],
                    path.display()
                ),
                None => println!(
                    "{name}: not saturated after {} loops ({} of {n} informed), wrote {}",
                    t.loops(),
                    t.final_count(),
                    path.display()
                ),
            }
        } else {
            let runs = match (&loaded, &plan.source) {
                (Some(g), _) => run_on_graph(g, &cfg, plan.replications),
                (None, GraphSource::Generated(spec)) => run_replications(&EnsembleConfig {
                    generator: *spec,
                    base: cfg.clone(),
                    replications: plan.replications,
                    regenerate_graph: plan.regenerate,
                }),
                _ => unreachable!(),
            }
            .context("ensemble failed")?;
            let summary = runs.summarize();
            write(&plan.out_dir, &format!("ensemble-{name}.csv"), &summary.to_csv())?;
            let path = write(
                &plan.out_dir,
                &format!("ensemble-{name}.json"),
                &(summary.to_json() + "\n"),
            )?;
            println!("{name}: {}, wrote {}", saturation_line(&summary), path.display());
        }
    }
    Ok(())
}

pub fn saturation_line(s: &EnsembleSummary) -> String {
    let sat = &s.saturation;
    match sat.mean {
        Some(mean) => format!(
            "mean saturation loop {mean:.3} (p10 {}, p50 {}, p90 {}), censored {}/{}",
            sat.p10.unwrap_or(0),
            sat.p50.unwrap_or(0),
            sat.p90.unwrap_or(0),
            sat.censored,
            s.replications
        ),
        None => format!("no replication saturated within {} loops", s.max_loops),
    }
}
