//! Many boosted separators with pairwise anticomplete cores. The layered
//! algorithm runs with the boosting construction as its oracle; if the
//! heaviest component left is still heavy, a pairwise anticomplete subfamily
//! of the cores is selected and the vertices covered too often are removed.

use std::cell::Cell;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::boosting::{BoostParams, BoostingOracle};
use crate::graph::{
    alpha_exact, anticomplete, closed_nbhd, components, generate, heaviest_component, rational_serde, Graph,
    Rational, VertexSet, WeightFn,
};
use crate::separators::{check_balanced, half_power, BreakOracle, SeparatorCert, SeparatorError};

use super::{anticomplete_subfamily, layered_run, prior_membership, t_covered, LayeredError, LayeredOutput, LayeredOverrides, LayeredParams};

#[derive(Clone, Debug, PartialEq)]
pub struct DisjointParams {
    pub t: u64,
    pub eps: Rational,
    /// Number of anticomplete cores wanted, `8t²d` by default.
    pub n_sets: Option<usize>,
    /// `3N` by default.
    pub lambda: Option<u64>,
    pub boost: BoostParams,
    pub layered: LayeredOverrides,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WitnessBundle {
    pub x: VertexSet,
    pub alpha_x: Option<usize>,
    /// The heaviest component of `G - X`.
    pub d: VertexSet,
    #[serde(with = "rational_serde")]
    pub d_weight: Rational,
    /// Indices into the layered run's cores.
    pub indices: Vec<usize>,
    pub ys: Vec<VertexSet>,
    pub pairwise_anticomplete: bool,
    /// Every `|Y_i| < d`.
    pub small_cores: bool,
    /// `N[Y_i] ∩ D` is `(w, ε)`-balanced in `D`, per `i`.
    pub balanced: Vec<bool>,
    /// Most sets `N[Y_i]` containing one vertex of `D`.
    pub max_membership: usize,
}

impl WitnessBundle {
    pub fn verified(&self, t: u64) -> bool {
        self.pairwise_anticomplete && self.small_cores && self.balanced.iter().all(|&b| b) && self.max_membership as u64 <= t
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum DisjointOutcome {
    /// `X` is a `(w, 1/2)`-balanced separator.
    Balanced { x: VertexSet, alpha_x: Option<usize> },
    Bundle(WitnessBundle),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DisjointReport {
    pub d: usize,
    pub n_sets: usize,
    pub lambda: u64,
    /// `R = 3 log n / (dλ)`.
    pub r: f64,
    /// For each core, the most earlier separators containing one of its
    /// vertices; selecting the anticomplete cores needs this to be at most `R`.
    pub prior_membership: Vec<usize>,
    pub outcome: DisjointOutcome,
    pub layered: LayeredOutput,
}

pub fn disjoint_separators(
    g: &Graph,
    w: &WeightFn,
    params: &DisjointParams,
    oracle: &dyn BreakOracle,
) -> Result<DisjointReport, LayeredError> {
    let d = oracle.k();
    let t = params.t;
    let n_sets = params.n_sets.unwrap_or((8 * t * t) as usize * d);
    let lambda = params.lambda.unwrap_or(3 * n_sets as u64);
    let boosting = BoostingOracle { inner: oracle, params: params.boost.clone() };
    let lp = LayeredParams { eps: params.eps.clone(), lambda, gamma: 3 * t + 1, t, overrides: params.layered.clone() };
    let layered = layered_run(g, w, &boosting, &lp)?;
    let r = 3.0 * (g.n().max(1) as f64).log2() / (d as f64 * lambda as f64);
    let prior = prior_membership(g, &layered.cores);
    let half = half_power(1);
    let heavy = |x: &VertexSet| {
        heaviest_component(&components(g, x), w).filter(|(_, wd)| w.exceeds(wd, &half))
    };

    let outcome = if heavy(&layered.c).is_none() {
        balanced(g, w, &layered.c)?
    } else {
        let indices = anticomplete_subfamily(g, &layered.cores, n_sets)?;
        let ys: Vec<VertexSet> = indices.iter().map(|&i| layered.cores[i].clone()).collect();
        let x = layered.c.union(&t_covered(g, &ys, t as usize));
        match heavy(&x) {
            None => balanced(g, w, &x)?,
            Some((dcomp, d_weight)) => {
                let bundle = bundle(g, w, &params.eps, d, x, dcomp, d_weight, indices, ys)?;
                if !bundle.verified(t) {
                    return Err(LayeredError::Invariant {
                        detail: "witness bundle fails verification".into(),
                        trace: serde_json::to_string(&bundle).unwrap_or_default(),
                    });
                }
                DisjointOutcome::Bundle(bundle)
            }
        }
    };
    Ok(DisjointReport { d, n_sets, lambda, r, prior_membership: prior, outcome, layered })
}

fn balanced(g: &Graph, w: &WeightFn, x: &VertexSet) -> Result<DisjointOutcome, LayeredError> {
    if !check_balanced(g, w, x, &half_power(1)).ok {
        return Err(LayeredError::Invariant { detail: "balanced-alternative set is not balanced".into(), trace: x.to_string() });
    }
    Ok(DisjointOutcome::Balanced { x: x.clone(), alpha_x: alpha_exact(g, x).ok() })
}

#[allow(clippy::too_many_arguments)]
fn bundle(
    g: &Graph,
    w: &WeightFn,
    eps: &Rational,
    d: usize,
    x: VertexSet,
    dcomp: VertexSet,
    d_weight: Rational,
    indices: Vec<usize>,
    ys: Vec<VertexSet>,
) -> Result<WitnessBundle, LayeredError> {
    let pairwise_anticomplete =
        (0..ys.len()).all(|i| (i + 1..ys.len()).all(|j| anticomplete(g, &ys[i], &ys[j])));
    let small_cores = ys.iter().all(|y| y.len() < d);
    let sub = g.induced(&dcomp);
    let wd = w.restrict(&sub);
    let nbhds: Vec<VertexSet> = ys.iter().map(|y| closed_nbhd(g, y)).collect();
    let balanced = nbhds
        .iter()
        .map(|s| check_balanced(&sub.graph, &wd, &sub.restrict(&s.intersection(&dcomp)), eps).ok)
        .collect();
    let max_membership = dcomp.iter().map(|v| nbhds.iter().filter(|s| s.contains(v)).count()).max().unwrap_or(0);
    Ok(WitnessBundle {
        alpha_x: alpha_exact(g, &x).ok(),
        x,
        d: dcomp,
        d_weight,
        indices,
        ys,
        pairwise_anticomplete,
        small_cores,
        balanced,
        max_membership,
    })
}

/// Hands out a fixed list of cores, one per call, each for the same vertex
/// numbering as the graph it was built for. Its answers are checked like any
/// other oracle's.
pub struct ScheduledOracle {
    pub k: usize,
    pub cores: Vec<VertexSet>,
    next: Cell<usize>,
}

impl ScheduledOracle {
    pub fn new(k: usize, cores: Vec<VertexSet>) -> Self {
        ScheduledOracle { k, cores, next: Cell::new(0) }
    }

    pub fn calls(&self) -> usize {
        self.next.get()
    }
}

impl BreakOracle for ScheduledOracle {
    fn k(&self) -> usize {
        self.k
    }

    fn break_graph(&self, g: &Graph, w: &WeightFn) -> Result<SeparatorCert, SeparatorError> {
        let i = self.next.get();
        let core = self.cores.get(i).cloned().ok_or_else(|| SeparatorError::OracleFailed { k: self.k, vertices: g.all() })?;
        self.next.set(i + 1);
        Ok(SeparatorCert::from_core(g, w, core, half_power(1)))
    }
}

/// An engineered instance on which the bundle alternative triggers.
pub struct SpacedInstance {
    pub graph: Graph,
    pub weights: WeightFn,
    /// One core per layered round.
    pub cores: Vec<VertexSet>,
    pub params: DisjointParams,
}

impl SpacedInstance {
    pub fn oracle(&self) -> ScheduledOracle {
        let k = self.cores.iter().map(|c| c.len()).max().unwrap_or(0) + 1;
        ScheduledOracle::new(k, self.cores.clone())
    }
}

/// A cycle of length `s·q` carrying `q`-vertex cores `{o + s·r}`. Six of the
/// eight offsets are pairwise at least four apart (mod `s`); the other two
/// sit within one of a random earlier offset. So two offsets either clash
/// (their cores are not anticomplete) or have disjoint closed
/// neighbourhoods. `ε` is the heaviest arc left by any core, so every core's
/// neighbourhood is already `ε`-balanced; the algorithm's surrogate
/// constants keep the layers out of the boosting set.
pub fn spaced_cycle_instance(seed: u64) -> SpacedInstance {
    let mut rng = generate::rng(seed);
    let s: usize = rng.gen_range(26..=32);
    let q: usize = rng.gen_range(5..=7);
    let n = s * q;
    let graph = generate::cycle(n).expect("n ≥ 3");
    let raw: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=10)).collect();
    let total: u64 = raw.iter().sum();
    let weights = WeightFn::unchecked(
        raw.iter().map(|&x| Rational::new(BigInt::from(x), BigInt::from(total))).collect(),
        crate::graph::WeightMode::Exact,
    );

    let circ = |a: usize, b: usize| {
        let d = a.abs_diff(b);
        d.min(s - d)
    };
    // Six gaps of at least four around the residues mod `s`.
    let mut gaps = [4usize; 6];
    for _ in 0..s - 24 {
        gaps[rng.gen_range(0..6)] += 1;
    }
    let start = rng.gen_range(0..s);
    let mut offsets: Vec<usize> = gaps
        .iter()
        .scan(start, |at, &g| {
            let o = *at % s;
            *at += g;
            Some(o)
        })
        .collect();
    debug_assert!((0..6).all(|i| (i + 1..6).all(|j| circ(offsets[i], offsets[j]) >= 4)));
    for _ in 0..2 {
        let base = offsets[rng.gen_range(0..6)];
        offsets.push((base + s + rng.gen_range(0..3) - 1) % s);
    }
    offsets.shuffle(&mut rng);
    let cores: Vec<VertexSet> = offsets.iter().map(|&o| (0..q).map(|r| o + s * r).collect()).collect();
    let eps = cores
        .iter()
        .flat_map(|c| components(&graph, &closed_nbhd(&graph, c)).into_iter().map(|comp| weights.of(&comp)))
        .max()
        .expect("cores exist");
    let params = DisjointParams {
        t: 2,
        eps,
        n_sets: Some(4),
        lambda: None,
        boost: BoostParams { t: 2, beta_threshold: None, layered: LayeredOverrides::default() },
        layered: LayeredOverrides { d_alg: Some(2), t_alg: Some(1), m: Some(cores.len()), f: None },
    };
    SpacedInstance { graph, weights, cores, params }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::separators::MinCoreOracle;

    #[test]
    fn small_random_graphs_take_the_balanced_alternative() {
        for seed in 0..6 {
            let g = generate::connected_gnp(20, 0.3, seed).unwrap();
            let w = WeightFn::uniform(20);
            let params = DisjointParams {
                t: 1,
                eps: Rational::new(1.into(), 4.into()),
                n_sets: None,
                lambda: None,
                boost: BoostParams::default(),
                layered: LayeredOverrides::default(),
            };
            let rep = disjoint_separators(&g, &w, &params, &MinCoreOracle { k: 3 }).unwrap();
            assert!(matches!(rep.outcome, DisjointOutcome::Balanced { .. }), "seed {seed}");
        }
    }

    #[test]
    fn spaced_cycles_yield_a_verified_bundle() {
        for seed in 0..5 {
            let inst = spaced_cycle_instance(seed);
            let rep = disjoint_separators(&inst.graph, &inst.weights, &inst.params, &inst.oracle()).unwrap();
            match rep.outcome {
                DisjointOutcome::Bundle(b) => assert!(b.verified(inst.params.t)),
                other => panic!("seed {seed}: {other:?}"),
            }
        }
    }
}
