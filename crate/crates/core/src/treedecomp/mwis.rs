//! Maximum weight independent set: brute force for small graphs, and dynamic
//! programming over a nice tree decomposition whose states are the stable
//! subsets of each bag.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::caps::Caps;
use crate::graph::{CapExceeded, Graph, VertexSet};

use super::TreeDecomposition;

/// A graph with nonnegative vertex weights. These weights are unrelated to
/// separator weight functions and need not sum to one.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MwisInstance {
    pub graph: Graph,
    pub weights: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MwisResult {
    pub value: f64,
    pub set: VertexSet,
}

#[derive(Clone, Debug)]
pub enum MwisMethod {
    Brute,
    Td(TreeDecomposition),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MwisError {
    #[error("expected {expected} weights, found {found}")]
    WeightCount { expected: usize, found: usize },
    #[error("weight of vertex {0} is negative or not finite")]
    BadWeight(usize),
    #[error(transparent)]
    Cap(#[from] CapExceeded),
    #[error("invalid tree decomposition: {0}")]
    InvalidTd(String),
}

impl MwisInstance {
    pub fn new(graph: Graph, weights: Vec<f64>) -> Result<Self, MwisError> {
        let inst = MwisInstance { graph, weights };
        inst.check()?;
        Ok(inst)
    }

    fn check(&self) -> Result<(), MwisError> {
        if self.weights.len() != self.graph.n() {
            return Err(MwisError::WeightCount { expected: self.graph.n(), found: self.weights.len() });
        }
        if let Some(v) = self.weights.iter().position(|&x| !(x.is_finite() && x >= 0.0)) {
            return Err(MwisError::BadWeight(v));
        }
        Ok(())
    }

    fn weight_of<'a>(&self, set: impl IntoIterator<Item = &'a usize>) -> f64 {
        set.into_iter().map(|&v| self.weights[v]).sum()
    }
}

pub fn mwis(inst: &MwisInstance, method: &MwisMethod) -> Result<MwisResult, MwisError> {
    match method {
        MwisMethod::Brute => mwis_brute(inst),
        MwisMethod::Td(td) => mwis_td(inst, td),
    }
}

/// Branch on the least remaining vertex: leave it out, or take it and drop
/// its neighbours.
pub fn mwis_brute(inst: &MwisInstance) -> Result<MwisResult, MwisError> {
    inst.check()?;
    let n = inst.graph.n();
    let cap = Caps::global().mwis_brute.min(60);
    if n > cap {
        return Err(CapExceeded { what: "brute-force MWIS", size: n as u64, cap: cap as u64 }.into());
    }
    let adj: Vec<u64> = inst.graph.vertices().map(|v| inst.graph.neighbors(v).iter().fold(0u64, |m, &u| m | 1 << u)).collect();
    fn go(adj: &[u64], w: &[f64], p: u64, acc: f64, chosen: u64, best: &mut (f64, u64)) {
        if p == 0 {
            if acc > best.0 {
                *best = (acc, chosen);
            }
            return;
        }
        let rest: f64 = (0..adj.len()).filter(|&v| p >> v & 1 == 1).map(|v| w[v]).sum();
        if acc + rest <= best.0 {
            return;
        }
        let v = p.trailing_zeros() as usize;
        go(adj, w, p & !(1 << v) & !adj[v], acc + w[v], chosen | 1 << v, best);
        go(adj, w, p & !(1 << v), acc, chosen, best);
    }
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut best = (0.0, 0u64);
    go(&adj, &inst.weights, full, 0.0, 0, &mut best);
    let set = (0..n).filter(|&v| best.1 >> v & 1 == 1).collect();
    Ok(MwisResult { value: best.0, set })
}

/// Node of a nice tree decomposition.
#[derive(Clone, Debug)]
enum Nice {
    Leaf,
    Introduce(usize, Box<Nice>),
    Forget(usize, Box<Nice>),
    Join(Box<Nice>, Box<Nice>),
}

/// Rewrite the subtree of `td` below `node` so that it ends with bag
/// exactly `bags[node]`.
fn to_nice(td: &TreeDecomposition, node: usize, parent: usize) -> Nice {
    let bag = &td.bags[node];
    let mut branches: Vec<Nice> = Vec::new();
    for &child in td.tree.neighbors(node) {
        if child == parent {
            continue;
        }
        let mut sub = to_nice(td, child, node);
        let cb = &td.bags[child];
        for &v in cb.difference(bag).iter() {
            sub = Nice::Forget(v, Box::new(sub));
        }
        for &v in bag.difference(cb).iter() {
            sub = Nice::Introduce(v, Box::new(sub));
        }
        branches.push(sub);
    }
    if branches.is_empty() {
        let mut sub = Nice::Leaf;
        for &v in bag {
            sub = Nice::Introduce(v, Box::new(sub));
        }
        return sub;
    }
    let mut iter = branches.into_iter();
    let first = iter.next().unwrap();
    iter.fold(first, |acc, b| Nice::Join(Box::new(acc), Box::new(b)))
}

/// State: stable subset of the current bag. Value: best total weight of a
/// stable set in the processed subgraph meeting the bag in exactly that
/// subset, with a witness.
type Table = BTreeMap<Vec<usize>, (f64, VertexSet)>;

struct Dp<'a> {
    inst: &'a MwisInstance,
    states: u64,
    cap: u64,
}

impl Dp<'_> {
    fn run(&mut self, node: &Nice) -> Result<Table, MwisError> {
        let table = match node {
            Nice::Leaf => Table::from([(Vec::new(), (0.0, VertexSet::new()))]),
            Nice::Introduce(v, child) => {
                let below = self.run(child)?;
                let mut out = Table::new();
                for (state, (val, wit)) in below {
                    if state.iter().all(|&u| !self.inst.graph.has_edge(u, *v)) {
                        let mut with = state.clone();
                        with.push(*v);
                        with.sort_unstable();
                        let mut wit2 = wit.clone();
                        wit2.insert(*v);
                        out.insert(with, (val + self.inst.weights[*v], wit2));
                    }
                    out.insert(state, (val, wit));
                }
                out
            }
            Nice::Forget(v, child) => {
                let below = self.run(child)?;
                let mut out = Table::new();
                for (state, (val, wit)) in below {
                    let key: Vec<usize> = state.into_iter().filter(|u| u != v).collect();
                    match out.get(&key) {
                        Some((best, _)) if *best >= val => {}
                        _ => {
                            out.insert(key, (val, wit));
                        }
                    }
                }
                out
            }
            Nice::Join(a, b) => {
                let left = self.run(a)?;
                let right = self.run(b)?;
                let mut out = Table::new();
                for (state, (lv, lw)) in left {
                    if let Some((rv, rw)) = right.get(&state) {
                        let shared = self.inst.weight_of(&state);
                        out.insert(state, (lv + rv - shared, lw.union(rw)));
                    }
                }
                out
            }
        };
        self.states += table.len() as u64;
        if self.states > self.cap {
            return Err(CapExceeded { what: "MWIS dynamic programming states", size: self.states, cap: self.cap }.into());
        }
        Ok(table)
    }
}

/// Exact MWIS by dynamic programming over `td`, which must be valid for the
/// instance graph.
pub fn mwis_td(inst: &MwisInstance, td: &TreeDecomposition) -> Result<MwisResult, MwisError> {
    inst.check()?;
    let verdict = td.validate(&inst.graph);
    if !verdict.ok {
        return Err(MwisError::InvalidTd(format!("{:?}", verdict.violations)));
    }
    let mut nice = to_nice(td, 0, usize::MAX);
    for &v in &td.bags[0] {
        nice = Nice::Forget(v, Box::new(nice));
    }
    let mut dp = Dp { inst, states: 0, cap: Caps::global().mwis_states };
    let table = dp.run(&nice)?;
    let (value, set) = table.get(&Vec::new()).cloned().expect("root bag is empty");
    Ok(MwisResult { value, set })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, is_stable};

    #[test]
    fn examples() {
        let c5 = MwisInstance::new(generate::cycle(5).unwrap(), vec![1.0; 5]).unwrap();
        assert_eq!(mwis_brute(&c5).unwrap().value, 2.0);
        let td = TreeDecomposition::single(c5.graph.all());
        assert_eq!(mwis_td(&c5, &td).unwrap().value, 2.0);

        let k33 = MwisInstance::new(generate::complete_bipartite(3, 3).unwrap(), vec![1.0, 1.0, 1.0, 2.0, 2.0, 2.0]).unwrap();
        let r = mwis_brute(&k33).unwrap();
        assert_eq!((r.value, r.set), (6.0, VertexSet::from([3, 4, 5])));
    }

    #[test]
    fn td_matches_brute_on_optimal_decompositions() {
        for seed in 0..30 {
            let g = generate::gnp(12, 0.3, seed).unwrap();
            let weights = (0..12).map(|v| ((v * 37 + seed as usize * 11) % 23) as f64).collect();
            let inst = MwisInstance::new(g, weights).unwrap();
            let (_, td) = crate::separators::treewidth_td(&inst.graph).unwrap();
            let a = mwis_brute(&inst).unwrap();
            let b = mwis_td(&inst, &td).unwrap();
            assert_eq!(a.value, b.value, "seed {seed}");
            assert!(is_stable(&inst.graph, &b.set));
            assert_eq!(inst.weight_of(&b.set), b.value);
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(MwisInstance::new(generate::path(2).unwrap(), vec![1.0]).is_err());
        assert!(MwisInstance::new(generate::path(2).unwrap(), vec![1.0, -1.0]).is_err());
        let inst = MwisInstance::new(generate::path(3).unwrap(), vec![1.0; 3]).unwrap();
        let bad = TreeDecomposition::single(VertexSet::from([0, 1]));
        assert!(matches!(mwis_td(&inst, &bad), Err(MwisError::InvalidTd(_))));
    }
}
