//! Loop-by-loop spread of information from an initially informed set.
//!
//! Updates are synchronous: vertices informed during loop `t` start
//! transmitting in loop `t + 1`. Informed vertices never forget.
//!
//! Within a loop, informed vertices act in ascending id order and random
//! draws are taken as follows:
//!
//! * broadcast: for each neighbor (ascending id) that is not yet informed,
//!   including by an earlier vertex in the same loop, one Bernoulli draw on
//!   the edge weight;
//! * random-contact: one bounded-integer draw picks the contacted vertex
//!   uniformly among the other `n - 1`; if that vertex is linked and not yet
//!   informed, one Bernoulli draw on the edge weight;
//! * neighbor-contact: one bounded-integer draw picks the contacted neighbor;
//!   if that neighbor is not yet informed, one Bernoulli draw on the edge
//!   weight.
//!
//! In the contact models, vertices without neighbors draw nothing.
//!
//! Every attempt re-samples its success, so an edge of weight `p` transmits
//! with probability `p` each time it is used.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::rng::SimRng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ContactModel {
    /// Every informed vertex tries every neighbor each loop.
    Broadcast,
    /// Every informed vertex contacts one uniformly chosen other vertex each
    /// loop; the contact transmits with the weight of the edge between them,
    /// which is 0 when there is none.
    RandomContact,
    /// Every informed vertex contacts one uniformly chosen neighbor each loop.
    NeighborContact,
}

impl ContactModel {
    pub fn as_str(self) -> &'static str {
        match self {
            ContactModel::Broadcast => "broadcast",
            ContactModel::RandomContact => "random-contact",
            ContactModel::NeighborContact => "neighbor-contact",
        }
    }
}

impl fmt::Display for ContactModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ContactModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "broadcast" => Ok(ContactModel::Broadcast),
            "random-contact" => Ok(ContactModel::RandomContact),
            "neighbor-contact" => Ok(ContactModel::NeighborContact),
            _ => Err(Error::param(format!("unknown contact model '{s}'"))),
        }
    }
}

/// How the loop-0 informed set is chosen.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InitialInformed {
    /// A uniform random subset of this size.
    Count(usize),
    /// Exactly these vertices.
    Vertices(Vec<VertexId>),
}

impl InitialInformed {
    pub fn size(&self) -> usize {
        match self {
            InitialInformed::Count(k) => *k,
            InitialInformed::Vertices(vs) => vs.len(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimulationConfig {
    pub model: ContactModel,
    pub initial: InitialInformed,
    pub max_loops: usize,
    pub seed: u64,
}

impl SimulationConfig {
    pub fn new(model: ContactModel, initial_informed: usize, max_loops: usize, seed: u64) -> Self {
        SimulationConfig {
            model,
            initial: InitialInformed::Count(initial_informed),
            max_loops,
            seed,
        }
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        SimulationConfig {
            seed,
            ..self.clone()
        }
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        if self.max_loops == 0 {
            return Err(Error::param("max_loops must be at least 1"));
        }
        match &self.initial {
            InitialInformed::Count(k) => {
                if *k == 0 || *k > g.n() {
                    return Err(Error::param(format!(
                        "initial informed count {k} is outside [1, {}]",
                        g.n()
                    )));
                }
            }
            InitialInformed::Vertices(vs) => {
                if vs.is_empty() {
                    return Err(Error::param("initial vertex list is empty"));
                }
                let mut seen = vec![false; g.n()];
                for &v in vs {
                    g.check_vertex(v)?;
                    if std::mem::replace(&mut seen[v.0], true) {
                        return Err(Error::param(format!("vertex {v} listed twice")));
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffusionState {
    informed: Vec<bool>,
    count: usize,
    loop_index: usize,
}

impl DiffusionState {
    pub fn from_vertices(n: usize, vertices: &[usize]) -> Self {
        let mut informed = vec![false; n];
        for &v in vertices {
            informed[v] = true;
        }
        let count = informed.iter().filter(|&&b| b).count();
        DiffusionState {
            informed,
            count,
            loop_index: 0,
        }
    }

    pub fn informed_count(&self) -> usize {
        self.count
    }

    pub fn loop_index(&self) -> usize {
        self.loop_index
    }

    pub fn is_informed(&self, v: usize) -> bool {
        self.informed[v]
    }

    pub fn is_saturated(&self) -> bool {
        self.count == self.informed.len()
    }

    pub fn informed_vertices(&self) -> Vec<usize> {
        (0..self.informed.len()).filter(|&v| self.informed[v]).collect()
    }
}

/// Loop-0 state for `cfg`, drawn from a generator seeded with `cfg.seed`.
/// [`run`] starts from exactly this state.
pub fn init_state(g: &Graph, cfg: &SimulationConfig) -> Result<DiffusionState> {
    cfg.validate(g)?;
    let mut rng = SimRng::new(cfg.seed);
    Ok(seed_state(g, &cfg.initial, &mut rng))
}

/// Random subsets come from a partial Fisher-Yates shuffle of `0..n`, one
/// bounded draw per chosen vertex.
fn seed_state(g: &Graph, initial: &InitialInformed, rng: &mut SimRng) -> DiffusionState {
    let n = g.n();
    match initial {
        InitialInformed::Count(k) => {
            let mut order: Vec<usize> = (0..n).collect();
            for i in 0..*k {
                let j = i + rng.below(n - i);
                order.swap(i, j);
            }
            DiffusionState::from_vertices(n, &order[..*k])
        }
        InitialInformed::Vertices(vs) => {
            let vs: Vec<usize> = vs.iter().map(|v| v.0).collect();
            DiffusionState::from_vertices(n, &vs)
        }
    }
}

/// Advances `state` by one loop.
pub fn step(g: &Graph, state: &mut DiffusionState, model: ContactModel, rng: &mut SimRng) {
    let n = g.n();
    let mut newly: Vec<usize> = Vec::new();
    let mut reached = vec![false; n];
    for v in 0..n {
        if !state.informed[v] {
            continue;
        }
        let neighbors = g.neighbors(v);
        match model {
            ContactModel::Broadcast => {
                for &(u, w) in neighbors {
                    if state.informed[u] || reached[u] {
                        continue;
                    }
                    if rng.bernoulli(w) {
                        reached[u] = true;
                        newly.push(u);
                    }
                }
            }
            ContactModel::RandomContact => {
                if neighbors.is_empty() {
                    continue;
                }
                let mut u = rng.below(n - 1);
                if u >= v {
                    u += 1;
                }
                if state.informed[u] || reached[u] {
                    continue;
                }
                let w = g.weight(v, u);
                if w > 0.0 && rng.bernoulli(w) {
                    reached[u] = true;
                    newly.push(u);
                }
            }
            ContactModel::NeighborContact => {
                if neighbors.is_empty() {
                    continue;
                }
                let (u, w) = neighbors[rng.below(neighbors.len())];
                if !state.informed[u] && !reached[u] && rng.bernoulli(w) {
                    reached[u] = true;
                    newly.push(u);
                }
            }
        }
    }
    for &u in &newly {
        state.informed[u] = true;
    }
    state.count += newly.len();
    state.loop_index += 1;
}

/// Informed count per loop, starting at loop 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trajectory {
    pub counts: Vec<usize>,
}

impl Trajectory {
    /// Number of loops executed.
    pub fn loops(&self) -> usize {
        self.counts.len().saturating_sub(1)
    }

    pub fn final_count(&self) -> usize {
        self.counts.last().copied().unwrap_or(0)
    }

    /// First loop at which at least `threshold` vertices are informed.
    pub fn first_loop_reaching(&self, threshold: usize) -> Option<usize> {
        self.counts.iter().position(|&c| c >= threshold)
    }

    /// Count at `loop_index`, holding the terminal value past the end.
    pub fn count_at(&self, loop_index: usize) -> usize {
        self.counts
            .get(loop_index)
            .copied()
            .unwrap_or_else(|| self.final_count())
    }

    /// `loop,informed_count` CSV with a header row.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("loop,informed_count\n");
        for (t, c) in self.counts.iter().enumerate() {
            out.push_str(&format!("{t},{c}\n"));
        }
        out
    }
}

/// Runs until every vertex is informed or `max_loops` loops have elapsed.
/// At least one loop is always executed, so a run that starts saturated
/// records `[n, n]`.
pub fn run(g: &Graph, cfg: &SimulationConfig) -> Result<Trajectory> {
    cfg.validate(g)?;
    let mut rng = SimRng::new(cfg.seed);
    let mut state = seed_state(g, &cfg.initial, &mut rng);
    let mut counts = vec![state.count];
    loop {
        step(g, &mut state, cfg.model, &mut rng);
        counts.push(state.count);
        if state.is_saturated() || state.loop_index >= cfg.max_loops {
            break;
        }
    }
    Ok(Trajectory { counts })
}
