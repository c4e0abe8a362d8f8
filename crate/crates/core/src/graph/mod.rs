//! Simple undirected graphs with dense vertex ids, vertex sets, and the
//! primitive set operations everything else is built from.

mod alpha;
pub mod generate;
pub mod io;
mod ops;
mod set;
mod weights;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub use alpha::{alpha_exact, alpha_exact_capped, is_stable, max_stable_set, max_stable_set_capped};
pub use ops::{
    anticomplete, closed_nbhd, components, components_within, heaviest_component,
    is_induced_path, line_graph, open_nbhd, subdivide, LineGraph,
};
pub use set::VertexSet;
pub use weights::{parse_rational, format_rational, rational_serde, Rational, WeightFn, WeightMode, FLOAT_TOLERANCE};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("edge {0}-{1} listed twice")]
    MultiEdge(usize, usize),
    #[error("endpoint {vertex} out of range for {n} vertices")]
    OutOfRange { vertex: usize, n: usize },
    #[error("line {line}: {msg}")]
    EdgeList { line: usize, msg: String },
    #[error("graph6: {0}")]
    Graph6(String),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("unknown edge {0}-{1}")]
    UnknownEdge(usize, usize),
    #[error("invalid weights: {0}")]
    Weights(String),
}

/// An exhaustive routine refused to run because its input exceeds the
/// configured cap.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{what}: size {size} exceeds cap {cap}")]
pub struct CapExceeded {
    pub what: &'static str,
    pub size: u64,
    pub cap: u64,
}

/// Immutable simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Graph {
    adj: Vec<BTreeSet<usize>>,
    edge_count: usize,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![BTreeSet::new(); n], edge_count: 0 }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![BTreeSet::new(); n];
        let mut edge_count = 0;
        for (u, v) in edges {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::OutOfRange { vertex: x, n });
                }
            }
            if !adj[u].insert(v) {
                return Err(GraphError::MultiEdge(u.min(v), u.max(v)));
            }
            adj[v].insert(u);
            edge_count += 1;
        }
        Ok(Graph { adj, edge_count })
    }

    /// Like [`Graph::from_edges`] but silently merges repeated edges.
    pub(crate) fn from_edges_dedup<I>(n: usize, edges: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![BTreeSet::new(); n];
        let mut edge_count = 0;
        for (u, v) in edges {
            debug_assert!(u != v && u < n && v < n);
            if adj[u].insert(v) {
                adj[v].insert(u);
                edge_count += 1;
            }
        }
        Graph { adj, edge_count }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.adj.len()
    }

    pub fn all(&self) -> VertexSet {
        self.vertices().collect()
    }

    pub fn neighbors(&self, v: usize) -> &BTreeSet<usize> {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.adj.len() && self.adj[u].contains(&v)
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nb)| nb.range(u + 1..).map(move |&v| (u, v)))
    }

    pub fn is_connected(&self) -> bool {
        components(self, &VertexSet::new()).len() <= 1
    }

    /// Induced subgraph on `set`, renumbered in increasing id order.
    pub fn induced(&self, set: &VertexSet) -> Induced {
        let to_host: Vec<usize> = set.iter().copied().collect();
        let local = |v: usize| to_host.binary_search(&v).ok();
        let mut edges = Vec::new();
        for (i, &u) in to_host.iter().enumerate() {
            for &v in self.adj[u].range(u + 1..) {
                if let Some(j) = local(v) {
                    edges.push((i, j));
                }
            }
        }
        let graph = Graph::from_edges_dedup(to_host.len(), edges);
        Induced { graph, to_host }
    }

    /// Triangles `[a, b, c]` with `a < b < c`, in lexicographic order.
    pub fn triangles(&self) -> Vec<[usize; 3]> {
        let mut out = Vec::new();
        for (a, b) in self.edges() {
            for &c in self.adj[b].range(b + 1..) {
                if self.adj[a].contains(&c) {
                    out.push([a, b, c]);
                }
            }
        }
        out
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n())?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "])")
    }
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Serialize for Graph {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GraphRepr { n: self.n(), edges: self.edges().collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = GraphRepr::deserialize(d)?;
        Graph::from_edges(repr.n, repr.edges).map_err(serde::de::Error::custom)
    }
}

/// An induced subgraph together with its id translation back to the host.
#[derive(Clone, Debug)]
pub struct Induced {
    pub graph: Graph,
    /// `to_host[local] = host id`, strictly increasing.
    pub to_host: Vec<usize>,
}

impl Induced {
    pub fn host_id(&self, local: usize) -> usize {
        self.to_host[local]
    }

    pub fn local_id(&self, host: usize) -> Option<usize> {
        self.to_host.binary_search(&host).ok()
    }

    pub fn lift(&self, local: &VertexSet) -> VertexSet {
        local.iter().map(|&v| self.to_host[v]).collect()
    }

    /// Host set restricted to this subgraph, in local ids.
    pub fn restrict(&self, host: &VertexSet) -> VertexSet {
        host.iter().filter_map(|&v| self.local_id(v)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_loops_and_multi_edges() {
        assert_eq!(Graph::from_edges(2, [(0, 0)]), Err(GraphError::SelfLoop(0)));
        assert_eq!(Graph::from_edges(2, [(0, 1), (1, 0)]), Err(GraphError::MultiEdge(0, 1)));
        assert_eq!(
            Graph::from_edges(2, [(0, 2)]),
            Err(GraphError::OutOfRange { vertex: 2, n: 2 })
        );
    }

    #[test]
    fn induced_keeps_translation() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let sub = g.induced(&VertexSet::from_iter([1, 2, 4]));
        assert_eq!(sub.graph.n(), 3);
        assert_eq!(sub.graph.edges().collect::<Vec<_>>(), vec![(0, 1)]);
        assert_eq!(sub.host_id(2), 4);
        assert_eq!(sub.local_id(3), None);
        assert_eq!(sub.lift(&VertexSet::from_iter([0, 2])), VertexSet::from_iter([1, 4]));
    }

    #[test]
    fn serde_shape() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let json = serde_json::to_string(&g).unwrap();
        assert_eq!(json, r#"{"n":3,"edges":[[0,1],[1,2]]}"#);
        let back: Graph = serde_json::from_str(&json).unwrap();
        assert_eq!(back, g);
        assert!(serde_json::from_str::<Graph>(r#"{"n":2,"edges":[[0,0]]}"#).is_err());
    }

    #[test]
    fn triangles_listed_once() {
        let k4 = generate::complete(4).unwrap();
        assert_eq!(k4.triangles().len(), 4);
    }
}
