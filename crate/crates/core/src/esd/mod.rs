//! Extended strip decompositions: the data model, the seven-condition
//! validator, atoms with their boundaries and small cores, rungs, constricted
//! sets, the three-paths check and the pull-back of a balanced separator from
//! the pattern graph.

mod atoms;
mod constricted;
pub mod fixtures;
mod json;
mod pullback;
mod validate;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::graph::{CapExceeded, Graph, VertexSet};

pub use atoms::{atoms, atoms_and_boundaries, is_faithful, three_paths_check, Atom, AtomCore, AtomSource, Faithfulness, PathsReport, ThreePathsVerdict};
pub use constricted::{is_constricted, tree_through};
pub use pullback::{pullback_separator, Pullback};
pub use validate::{validate_esd, Condition, EsdVerdict, Violation};

/// Pattern edge with ends in increasing order.
pub type PEdge = (usize, usize);

pub fn pedge(u: usize, v: usize) -> PEdge {
    (u.min(v), u.max(v))
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EsdError {
    #[error("malformed decomposition: {0}")]
    Malformed(String),
    #[error("decomposition is invalid: {0}")]
    Invalid(String),
    #[error("decomposition is not faithful: edge {}-{} has no rung", .0.0, .0.1)]
    NotFaithful(PEdge),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("atom {atom} has weight {weight} > 1/2")]
    HeavyAtom { atom: String, weight: String },
    #[error(transparent)]
    Cap(#[from] CapExceeded),
    #[error("internal check failed: {0}")]
    Internal(String),
}

/// A pattern graph with its triangle list, always computed from the graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternGraph {
    base: Graph,
    triangles: Vec<[usize; 3]>,
}

impl PatternGraph {
    pub fn new(base: Graph) -> Self {
        let triangles = base.triangles();
        PatternGraph { base, triangles }
    }

    /// Accepts a supplied triangle list only if it is exactly `T(H)`.
    pub fn with_triangles(base: Graph, supplied: &[[usize; 3]]) -> Result<Self, EsdError> {
        let p = PatternGraph::new(base);
        let mut s: Vec<[usize; 3]> = supplied
            .iter()
            .map(|t| {
                let mut t = *t;
                t.sort_unstable();
                t
            })
            .collect();
        s.sort_unstable();
        s.dedup();
        if s != p.triangles {
            return Err(EsdError::Malformed(format!("supplied triangles {s:?} differ from T(H) = {:?}", p.triangles)));
        }
        Ok(p)
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn edges(&self) -> Vec<PEdge> {
        self.base.edges().collect()
    }

    pub fn incident(&self, v: usize) -> Vec<PEdge> {
        self.base.neighbors(v).iter().map(|&u| pedge(u, v)).collect()
    }

    /// Vertices of degree one.
    pub fn degree_one(&self) -> VertexSet {
        self.base.vertices().filter(|&v| self.base.degree(v) == 1).collect()
    }
}

/// `η` stored sparsely: absent keys mean the empty set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Esd {
    pub host: Graph,
    pub z: VertexSet,
    pub pattern: PatternGraph,
    pub eta_vertex: BTreeMap<usize, VertexSet>,
    pub eta_edge: BTreeMap<PEdge, VertexSet>,
    pub eta_triangle: BTreeMap<[usize; 3], VertexSet>,
    pub eta_edge_end: BTreeMap<(PEdge, usize), VertexSet>,
}

static EMPTY: VertexSet = VertexSet::new();

impl Esd {
    pub fn new(host: Graph, z: VertexSet, pattern: PatternGraph) -> Self {
        Esd {
            host,
            z,
            pattern,
            eta_vertex: BTreeMap::new(),
            eta_edge: BTreeMap::new(),
            eta_triangle: BTreeMap::new(),
            eta_edge_end: BTreeMap::new(),
        }
    }

    pub fn vertex_zone(&self, v: usize) -> &VertexSet {
        self.eta_vertex.get(&v).unwrap_or(&EMPTY)
    }

    pub fn edge_zone(&self, e: PEdge) -> &VertexSet {
        self.eta_edge.get(&e).unwrap_or(&EMPTY)
    }

    pub fn triangle_zone(&self, t: [usize; 3]) -> &VertexSet {
        self.eta_triangle.get(&t).unwrap_or(&EMPTY)
    }

    /// `η(e, v)`.
    pub fn end(&self, e: PEdge, v: usize) -> &VertexSet {
        self.eta_edge_end.get(&(e, v)).unwrap_or(&EMPTY)
    }

    /// `η(e) \ (η(e,u) ∪ η(e,v))`.
    pub fn edge_interior(&self, e: PEdge) -> VertexSet {
        self.edge_zone(e).difference(&self.end(e, e.0).union(self.end(e, e.1)))
    }

    /// `⋃ η(e, v)` over edges `e` at `v`.
    pub fn ends_at(&self, v: usize) -> VertexSet {
        let mut out = VertexSet::new();
        for e in self.pattern.incident(v) {
            out.extend_from(self.end(e, v));
        }
        out
    }

    pub fn set_vertex(&mut self, v: usize, set: impl Into<VertexSet>) -> &mut Self {
        self.eta_vertex.insert(v, set.into());
        self
    }

    pub fn set_edge(&mut self, u: usize, v: usize, set: impl Into<VertexSet>) -> &mut Self {
        self.eta_edge.insert(pedge(u, v), set.into());
        self
    }

    pub fn set_triangle(&mut self, t: [usize; 3], set: impl Into<VertexSet>) -> &mut Self {
        let mut t = t;
        t.sort_unstable();
        self.eta_triangle.insert(t, set.into());
        self
    }

    /// Sets `η(uv, at)`.
    pub fn set_end(&mut self, u: usize, v: usize, at: usize, set: impl Into<VertexSet>) -> &mut Self {
        self.eta_edge_end.insert((pedge(u, v), at), set.into());
        self
    }

    pub fn to_json(&self) -> serde_json::Value {
        json::to_json(self)
    }

    pub fn from_json(text: &str) -> Result<Self, EsdError> {
        json::from_json(text)
    }
}

pub(crate) fn fmt_edge(e: PEdge) -> String {
    format!("{}-{}", e.0, e.1)
}

pub(crate) fn fmt_triangle(t: [usize; 3]) -> String {
    format!("{}-{}-{}", t[0], t[1], t[2])
}
