//! Undirected graphs whose edge weights are per-contact transmission
//! probabilities.
//!
//! An absent edge and an edge of weight 0 are the same thing: zero-weight
//! edges are never stored. Weight-1 edges are the deterministic links of a
//! link matrix.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of a vertex in `[0, n)`. Validity is checked against a graph by the
/// operations that take one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub usize);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<usize> for VertexId {
    fn from(v: usize) -> Self {
        VertexId(v)
    }
}

/// Immutable undirected weighted graph with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    adjacency: Vec<Vec<(usize, f64)>>,
    edge_count: usize,
}

/// Accumulates edges and validates them once in [`GraphBuilder::build`].
#[derive(Debug, Clone)]
pub struct GraphBuilder {
    adjacency: Vec<Vec<(usize, f64)>>,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Self {
        GraphBuilder {
            adjacency: vec![Vec::new(); n],
        }
    }

    /// Adds the undirected edge `{u, v}`. Zero weights are accepted and
    /// dropped.
    pub fn add_edge(&mut self, u: usize, v: usize, weight: f64) -> Result<&mut Self> {
        let n = self.adjacency.len();
        for x in [u, v] {
            if x >= n {
                return Err(Error::InvalidVertex { vertex: x, n });
            }
        }
        if u == v {
            return Err(Error::param(format!("self-loop on vertex {u}")));
        }
        if !(0.0..=1.0).contains(&weight) {
            return Err(Error::param(format!(
                "weight {weight} of edge {{{u}, {v}}} is outside [0, 1]"
            )));
        }
        if weight > 0.0 {
            self.adjacency[u].push((v, weight));
            self.adjacency[v].push((u, weight));
        }
        Ok(self)
    }

    /// Fails on duplicate edges.
    pub fn build(mut self) -> Result<Graph> {
        let mut endpoints = 0;
        for (u, list) in self.adjacency.iter_mut().enumerate() {
            list.sort_by_key(|&(v, _)| v);
            if let Some(w) = list.windows(2).find(|w| w[0].0 == w[1].0) {
                return Err(Error::param(format!("duplicate edge {{{u}, {}}}", w[0].0)));
            }
            endpoints += list.len();
        }
        Ok(Graph {
            adjacency: self.adjacency,
            edge_count: endpoints / 2,
        })
    }
}

impl Graph {
    /// `n` isolated vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adjacency: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        let mut b = GraphBuilder::new(n);
        for (u, v, w) in edges {
            b.add_edge(u, v, w)?;
        }
        b.build()
    }

    /// Assembles a graph from adjacency lists that the caller guarantees are
    /// sorted, symmetric, loop-free and weighted in `(0, 1]`.
    pub(crate) fn from_sorted_adjacency(adjacency: Vec<Vec<(usize, f64)>>) -> Self {
        let edge_count = adjacency.iter().map(Vec::len).sum::<usize>() / 2;
        debug_assert!(adjacency
            .iter()
            .all(|l| l.windows(2).all(|w| w[0].0 < w[1].0)));
        Graph {
            adjacency,
            edge_count,
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v.0 < self.n() {
            Ok(())
        } else {
            Err(Error::InvalidVertex {
                vertex: v.0,
                n: self.n(),
            })
        }
    }

    /// Neighbors of `v` in ascending id order with their edge weights.
    ///
    /// Panics if `v >= n`.
    #[inline]
    pub fn neighbors(&self, v: usize) -> &[(usize, f64)] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: VertexId) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.adjacency[v.0].len())
    }

    /// Weight of `{u, v}`, 0 when absent or when `u == v`.
    pub fn weight(&self, u: usize, v: usize) -> f64 {
        self.adjacency[u]
            .binary_search_by_key(&v, |&(x, _)| x)
            .map(|i| self.adjacency[u][i].1)
            .unwrap_or(0.0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.weight(u, v) > 0.0
    }

    /// Each edge once as `(u, v, weight)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, list)| {
            list.iter()
                .filter(move |&&(v, _)| v > u)
                .map(move |&(v, w)| (u, v, w))
        })
    }

    /// True when every edge is a deterministic (weight 1) link.
    pub fn is_unit_weight(&self) -> bool {
        self.edges().all(|(_, _, w)| w == 1.0)
    }

    pub fn degree_histogram(&self) -> DegreeHistogram {
        let mut counts = BTreeMap::new();
        for list in &self.adjacency {
            *counts.entry(list.len()).or_insert(0) += 1;
        }
        DegreeHistogram { counts }
    }

    /// Average weight over ordered off-diagonal pairs, absent edges counting
    /// as 0: `sum_{i != j} w_ij / (n (n - 1))`.
    pub fn mean_offdiagonal_weight(&self) -> Result<f64> {
        let n = self.n();
        if n < 2 {
            return Err(Error::param(format!(
                "mean off-diagonal weight needs n >= 2, got {n}"
            )));
        }
        let total: f64 = self.edges().map(|(_, _, w)| w).sum();
        Ok(2.0 * total / (n as f64 * (n - 1) as f64))
    }

    /// Connected components over positive-weight edges, each sorted, listed
    /// in order of their smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            queue.push_back(start);
            let mut comp = Vec::new();
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for &(v, _) in &self.adjacency[u] {
                    if !seen[v] {
                        seen[v] = true;
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.components().len() == 1
    }

    /// Hop distances from `source`; `None` for unreachable vertices.
    pub fn bfs_distances(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        let mut queue = VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap_or(0);
            for &(v, _) in &self.adjacency[u] {
                if dist[v].is_none() {
                    dist[v] = Some(d + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn to_dump(&self) -> GraphDump {
        GraphDump {
            n: self.n(),
            edges: self
                .edges()
                .map(|(source, target, weight)| EdgeRecord {
                    source,
                    target,
                    weight,
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_dump()).expect("graph dump serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let dump: GraphDump = serde_json::from_str(text)
            .map_err(|e| Error::param(format!("invalid graph JSON: {e}")))?;
        dump.into_graph()
    }
}

/// JSON form of a graph: `{"n": .., "edges": [{"source", "target", "weight"}]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphDump {
    pub n: usize,
    pub edges: Vec<EdgeRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub source: usize,
    pub target: usize,
    pub weight: f64,
}

impl GraphDump {
    pub fn into_graph(self) -> Result<Graph> {
        Graph::from_edges(
            self.n,
            self.edges.into_iter().map(|e| (e.source, e.target, e.weight)),
        )
    }
}

/// Number of vertices per degree. Merging two histograms gives the histogram
/// of the disjoint union of their graphs.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeHistogram {
    pub counts: BTreeMap<usize, u64>,
}

impl DegreeHistogram {
    pub fn count(&self, degree: usize) -> u64 {
        self.counts.get(&degree).copied().unwrap_or(0)
    }

    pub fn vertex_count(&self) -> u64 {
        self.counts.values().sum()
    }

    /// `sum k * count(k)`, twice the number of edges.
    pub fn degree_sum(&self) -> u64 {
        self.counts.iter().map(|(&k, &c)| k as u64 * c).sum()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.counts.keys().next_back().copied()
    }

    pub fn fraction(&self, degree: usize) -> f64 {
        let total = self.vertex_count();
        if total == 0 {
            0.0
        } else {
            self.count(degree) as f64 / total as f64
        }
    }

    pub fn merge(&mut self, other: &DegreeHistogram) {
        for (&k, &c) in &other.counts {
            *self.counts.entry(k).or_insert(0) += c;
        }
    }

    /// `degree,count` CSV with a header row.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("degree,count\n");
        for (k, c) in &self.counts {
            out.push_str(&format!("{k},{c}\n"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Graph {
        let mut b = GraphBuilder::new(n);
        for i in 0..n {
            for j in i + 1..n {
                b.add_edge(i, j, 1.0).unwrap();
            }
        }
        b.build().unwrap()
    }

    fn path3() -> Graph {
        Graph::from_edges(3, [(0, 1, 1.0), (1, 2, 1.0)]).unwrap()
    }

    #[test]
    fn degree_of_complete_and_empty() {
        let g = complete(5);
        for v in 0..5 {
            assert_eq!(g.degree(VertexId(v)).unwrap(), 4);
        }
        let e = Graph::empty(5);
        assert_eq!(e.degree(VertexId(3)).unwrap(), 0);
    }

    #[test]
    fn degree_rejects_bad_vertex() {
        let g = complete(3);
        assert_eq!(
            g.degree(VertexId(3)),
            Err(Error::InvalidVertex { vertex: 3, n: 3 })
        );
    }

    #[test]
    fn histograms() {
        let h = complete(4).degree_histogram();
        assert_eq!(h.counts, BTreeMap::from([(3, 4)]));
        let h = path3().degree_histogram();
        assert_eq!(h.counts, BTreeMap::from([(1, 2), (2, 1)]));
        assert_eq!(h.to_csv(), "degree,count\n1,2\n2,1\n");
    }

    #[test]
    fn mean_weight_edge_cases() {
        assert_eq!(complete(6).mean_offdiagonal_weight().unwrap(), 1.0);
        assert_eq!(Graph::empty(6).mean_offdiagonal_weight().unwrap(), 0.0);
        assert!(Graph::empty(1).mean_offdiagonal_weight().is_err());
        let g = Graph::from_edges(3, [(0, 1, 0.6)]).unwrap();
        assert!((g.mean_offdiagonal_weight().unwrap() - 0.2).abs() < 1e-12);
    }

    #[test]
    fn builder_validation() {
        let mut b = GraphBuilder::new(3);
        assert!(b.add_edge(1, 1, 1.0).is_err());
        assert!(b.add_edge(0, 3, 1.0).is_err());
        assert!(b.add_edge(0, 1, 1.5).is_err());
        assert!(b.add_edge(0, 1, f64::NAN).is_err());
        b.add_edge(0, 1, 0.0).unwrap();
        assert_eq!(b.clone().build().unwrap().edge_count(), 0);
        b.add_edge(0, 1, 0.5).unwrap();
        b.add_edge(1, 0, 0.5).unwrap();
        assert!(b.build().is_err());
    }

    #[test]
    fn symmetric_weights() {
        let g = Graph::from_edges(4, [(2, 0, 0.25), (3, 1, 0.75)]).unwrap();
        assert_eq!(g.weight(0, 2), 0.25);
        assert_eq!(g.weight(2, 0), 0.25);
        assert_eq!(g.weight(1, 1), 0.0);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 2, 0.25), (1, 3, 0.75)]);
    }

    #[test]
    fn components_and_bfs() {
        let g = Graph::from_edges(5, [(0, 1, 1.0), (1, 2, 1.0), (3, 4, 0.5)]).unwrap();
        assert_eq!(g.components(), vec![vec![0, 1, 2], vec![3, 4]]);
        assert!(!g.is_connected());
        assert_eq!(g.bfs_distances(0), vec![Some(0), Some(1), Some(2), None, None]);
        assert!(path3().is_connected());
    }

    #[test]
    fn json_dump_round_trip() {
        let g = Graph::from_edges(4, [(0, 1, 0.125), (2, 3, 1.0)]).unwrap();
        let text = g.to_json();
        assert!(text.contains("\"source\""));
        assert_eq!(Graph::from_json(&text).unwrap(), g);
        assert!(Graph::from_json(r#"{"n": 2, "edges": [{"source": 0, "target": 5, "weight": 1.0}]}"#).is_err());
    }
}
