//! Tree decompositions: validation, width and bag independence statistics,
//! exact tree independence number for tiny graphs, assembly from a balanced
//! separator oracle, and maximum weight independent set.

mod assemble;
pub mod chordal;
mod mwis;
mod tree_alpha;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::graph::{alpha_exact, CapExceeded, Graph, VertexSet, WeightFn};

pub use assemble::{assemble_td, AssembleError, AssembleReport, CoreOracle, SeparatorOracle, TreewidthBagOracle};
pub use chordal::{is_chordal, perfect_elimination_order, CliqueSeparatorOracle};
pub use mwis::{mwis, mwis_brute, mwis_td, MwisError, MwisInstance, MwisMethod, MwisResult};
pub use tree_alpha::tree_alpha_exact;

/// A tree together with a bag for every tree node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDecomposition {
    pub tree: Graph,
    pub bags: Vec<VertexSet>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "condition", rename_all = "snake_case")]
pub enum TdViolation {
    /// The node graph is not a tree, or bags and nodes disagree in number.
    NotATree { detail: String },
    BagOutOfRange { node: usize, vertex: usize },
    UncoveredVertex { vertex: usize },
    UncoveredEdge { u: usize, v: usize },
    /// The nodes whose bags hold `vertex` split into these pieces.
    DisconnectedVertex { vertex: usize, pieces: Vec<Vec<usize>> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TdVerdict {
    pub ok: bool,
    pub violations: Vec<TdViolation>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TdStats {
    pub width: isize,
    pub independence_number: usize,
}

impl TreeDecomposition {
    pub fn new(tree: Graph, bags: Vec<VertexSet>) -> Self {
        TreeDecomposition { tree, bags }
    }

    pub fn single(bag: VertexSet) -> Self {
        TreeDecomposition { tree: Graph::empty(1), bags: vec![bag] }
    }

    pub fn nodes(&self) -> usize {
        self.bags.len()
    }

    /// Largest bag size minus one; `-1` without any nonempty bag.
    pub fn width(&self) -> isize {
        self.bags.iter().map(|b| b.len() as isize).max().unwrap_or(0) - 1
    }

    /// The three conditions: every vertex in a bag, every edge in a bag, and
    /// the nodes holding any one vertex form a subtree.
    pub fn validate(&self, g: &Graph) -> TdVerdict {
        let mut violations = Vec::new();
        let t = &self.tree;
        if t.n() != self.bags.len() {
            violations.push(TdViolation::NotATree {
                detail: format!("{} nodes but {} bags", t.n(), self.bags.len()),
            });
        } else if t.n() == 0 || !t.is_connected() || t.edge_count() + 1 != t.n() {
            violations.push(TdViolation::NotATree { detail: "node graph is not a tree".into() });
        }
        if !violations.is_empty() {
            return TdVerdict { ok: false, violations };
        }
        for (node, bag) in self.bags.iter().enumerate() {
            for &v in bag {
                if v >= g.n() {
                    violations.push(TdViolation::BagOutOfRange { node, vertex: v });
                }
            }
        }
        let holders: Vec<VertexSet> = g
            .vertices()
            .map(|v| (0..self.bags.len()).filter(|&i| self.bags[i].contains(&v)).collect())
            .collect();
        for (v, h) in holders.iter().enumerate() {
            if h.is_empty() {
                violations.push(TdViolation::UncoveredVertex { vertex: v });
            }
        }
        for (u, v) in g.edges() {
            if !self.bags.iter().any(|b| b.contains(&u) && b.contains(&v)) {
                violations.push(TdViolation::UncoveredEdge { u, v });
            }
        }
        for (v, h) in holders.iter().enumerate() {
            if h.len() > 1 {
                let pieces = crate::graph::components_within(t, h);
                if pieces.len() > 1 {
                    violations.push(TdViolation::DisconnectedVertex {
                        vertex: v,
                        pieces: pieces.into_iter().map(|p| p.to_vec()).collect(),
                    });
                }
            }
        }
        TdVerdict { ok: violations.is_empty(), violations }
    }

    /// Width and the largest `α(G[bag])`.
    pub fn stats(&self, g: &Graph) -> Result<TdStats, CapExceeded> {
        let mut independence_number = 0;
        for b in &self.bags {
            independence_number = independence_number.max(alpha_exact(g, b)?);
        }
        Ok(TdStats { width: self.width(), independence_number })
    }

    /// Walk from node 0 towards any branch whose private vertices weigh more
    /// than `1/2`. With `w` of total at most one the walk stops on a bag that
    /// is a `(w, 1/2)`-balanced separator.
    pub fn descend_to_balanced_bag(&self, _g: &Graph, w: &WeightFn) -> VertexSet {
        let half = crate::separators::half_power(1);
        let mut at = 0;
        let mut prev = usize::MAX;
        for _ in 0..self.nodes() {
            let bag = &self.bags[at];
            let next = self.tree.neighbors(at).iter().copied().filter(|&s| s != prev).find(|&s| {
                let branch = self.branch_vertices(at, s).difference(bag);
                w.exceeds(&w.of(&branch), &half)
            });
            match next {
                Some(s) => {
                    prev = at;
                    at = s;
                }
                None => break,
            }
        }
        self.bags[at].clone()
    }

    /// Union of bags in the component of `tree - at` containing `start`.
    fn branch_vertices(&self, at: usize, start: usize) -> VertexSet {
        let mut seen = vec![false; self.nodes()];
        seen[at] = true;
        seen[start] = true;
        let mut stack = vec![start];
        let mut out = VertexSet::new();
        while let Some(x) = stack.pop() {
            out.extend_from(&self.bags[x]);
            for &y in self.tree.neighbors(x) {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct TdRepr {
    nodes: usize,
    edges: Vec<(usize, usize)>,
    bags: Vec<VertexSet>,
}

impl Serialize for TreeDecomposition {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        TdRepr { nodes: self.nodes(), edges: self.tree.edges().collect(), bags: self.bags.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for TreeDecomposition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = TdRepr::deserialize(d)?;
        if repr.bags.len() != repr.nodes {
            return Err(serde::de::Error::custom("bag count differs from node count"));
        }
        let tree = Graph::from_edges(repr.nodes, repr.edges).map_err(serde::de::Error::custom)?;
        Ok(TreeDecomposition { tree, bags: repr.bags })
    }
}
