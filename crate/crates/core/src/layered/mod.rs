//! The layered-sets argument: constants, layers and Z-sets, the layered
//! algorithm that produces `⌈log n⌉` boosted separators sharing one boosting
//! set, the disjoint-cores selection built on top of it, and the sampling
//! step that consumes the resulting bundle.

pub mod bounds;
mod disjoint;
mod run;
mod sampling;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::boosting::BoostingError;
use crate::graph::{alpha_exact, anticomplete, closed_nbhd, CapExceeded, Graph, VertexSet};

pub use bounds::{bounds, BoundsError, BoundsInputs, BoundsTable, Magnitude};
pub use disjoint::{
    disjoint_separators, spaced_cycle_instance, DisjointOutcome, DisjointParams, DisjointReport, ScheduledOracle,
    SpacedInstance, WitnessBundle,
};
pub use run::{
    layered_run, Branch, ConstantsMode, Hypotheses, Iteration, LayerTrace, LayeredOutput, LayeredOverrides,
    LayeredParams, PropertyReport,
};
pub use sampling::{sample_witnesses, spaced_path_separators, SampleReport};

#[derive(Debug, Error)]
pub enum LayeredError {
    #[error("precondition: {0}")]
    Precondition(String),
    #[error("oracle failed at iteration {j}: {source}")]
    Oracle { j: usize, source: Box<BoostingError> },
    #[error("oracle breached its contract at iteration {j}: {detail}")]
    Breach { j: usize, detail: String },
    #[error("invariant violated: {detail}")]
    Invariant { detail: String, trace: String },
    #[error("family too small: need {needed} pairwise anticomplete sets, found {found}")]
    InsufficientFamily { needed: usize, found: usize },
    #[error(transparent)]
    Cap(#[from] CapExceeded),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
}

/// Vertices of `universe` lying in at least `i` members of `family`.
/// `i = 0` gives the whole universe.
pub fn layer(family: &[VertexSet], i: usize, universe: &VertexSet) -> VertexSet {
    if i == 0 {
        return universe.clone();
    }
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for f in family {
        for v in f.iter().filter(|v| universe.contains(v)) {
            *counts.entry(*v).or_default() += 1;
        }
    }
    counts.into_iter().filter(|&(_, c)| c >= i).map(|(v, _)| v).collect()
}

/// `α(N(z) ∩ Y) · divisor ≥ α(Y)`, with the empty `Y` seen by nobody.
fn meets_threshold(seen: usize, alpha_y: usize, divisor: &Magnitude) -> bool {
    if alpha_y == 0 || seen == 0 {
        return false;
    }
    match divisor {
        Magnitude::Exact(d) => d * seen >= num_bigint::BigUint::from(alpha_y),
        Magnitude::Log2(_) => true,
    }
}

/// `{z : α(N(z) ∩ Y) ≥ α(Y)/divisor}` over every vertex of `g`; empty when
/// `α(Y) = 0`.
pub fn z_set(g: &Graph, y: &VertexSet, divisor: &Magnitude) -> Result<VertexSet, CapExceeded> {
    let alpha_y = alpha_exact(g, y)?;
    z_set_within(g, &g.all(), y, alpha_y, divisor)
}

pub(crate) fn z_set_within(
    g: &Graph,
    universe: &VertexSet,
    y: &VertexSet,
    alpha_y: usize,
    divisor: &Magnitude,
) -> Result<VertexSet, CapExceeded> {
    let mut out = VertexSet::new();
    if alpha_y == 0 {
        return Ok(out);
    }
    for &v in universe {
        let seen: VertexSet = g.neighbors(v).iter().copied().filter(|u| y.contains(u)).collect();
        if meets_threshold(alpha_exact(g, &seen)?, alpha_y, divisor) {
            out.insert(v);
        }
    }
    Ok(out)
}

/// Vertices lying in at least `t` of the sets `N[Y_i]`.
pub fn t_covered(g: &Graph, ys: &[VertexSet], t: usize) -> VertexSet {
    let nbhds: Vec<VertexSet> = ys.iter().map(|y| closed_nbhd(g, y)).collect();
    layer(&nbhds, t.max(1), &g.all())
}

/// For each `j`, the largest number of sets `N[Y_i]`, `i < j`, containing a
/// vertex of `Y_j`.
pub fn prior_membership(g: &Graph, ys: &[VertexSet]) -> Vec<usize> {
    let nbhds: Vec<VertexSet> = ys.iter().map(|y| closed_nbhd(g, y)).collect();
    ys.iter()
        .enumerate()
        .map(|(j, y)| y.iter().map(|v| nbhds[..j].iter().filter(|s| s.contains(v)).count()).max().unwrap_or(0))
        .collect()
}

/// Indices of `n_target` pairwise anticomplete members of `ys`.
///
/// The conflict graph joins two sets that are not anticomplete. It is coloured
/// greedily along the reverse of a smallest-last ordering, so a graph of
/// degeneracy `δ` uses at most `δ + 1` colours; the largest colour class is
/// returned, truncated to `n_target` indices.
pub fn anticomplete_subfamily(g: &Graph, ys: &[VertexSet], n_target: usize) -> Result<Vec<usize>, LayeredError> {
    let m = ys.len();
    let mut adj = vec![VertexSet::new(); m];
    for i in 0..m {
        for j in i + 1..m {
            if !anticomplete(g, &ys[i], &ys[j]) {
                adj[i].insert(j);
                adj[j].insert(i);
            }
        }
    }
    let order = smallest_last(&adj);
    let mut colour = vec![usize::MAX; m];
    for &v in order.iter().rev() {
        let used: VertexSet = adj[v].iter().filter(|&&u| colour[u] != usize::MAX).map(|&u| colour[u]).collect();
        colour[v] = (0..).find(|c| !used.contains(c)).expect("a free colour");
    }
    let classes = colour.iter().copied().max().map_or(0, |c| c + 1);
    let best = (0..classes)
        .map(|c| (0..m).filter(|&v| colour[v] == c).collect::<Vec<_>>())
        .max_by(|a, b| a.len().cmp(&b.len()).then_with(|| b.cmp(a)))
        .unwrap_or_default();
    if best.len() < n_target {
        return Err(LayeredError::InsufficientFamily { needed: n_target, found: best.len() });
    }
    Ok(best.into_iter().take(n_target).collect())
}

/// Repeatedly remove a vertex of minimum degree, least index first.
fn smallest_last(adj: &[VertexSet]) -> Vec<usize> {
    let m = adj.len();
    let mut alive = vec![true; m];
    let mut deg: Vec<usize> = adj.iter().map(|a| a.len()).collect();
    let mut order = Vec::with_capacity(m);
    for _ in 0..m {
        let v = (0..m).filter(|&v| alive[v]).min_by_key(|&v| (deg[v], v)).expect("a live vertex");
        alive[v] = false;
        order.push(v);
        for &u in &adj[v] {
            if alive[u] {
                deg[u] -= 1;
            }
        }
    }
    order
}

/// Degeneracy of the conflict graph of `ys`.
pub fn conflict_degeneracy(g: &Graph, ys: &[VertexSet]) -> usize {
    let m = ys.len();
    let mut adj = vec![VertexSet::new(); m];
    for i in 0..m {
        for j in i + 1..m {
            if !anticomplete(g, &ys[i], &ys[j]) {
                adj[i].insert(j);
                adj[j].insert(i);
            }
        }
    }
    let order = smallest_last(&adj);
    let pos: Vec<usize> = {
        let mut p = vec![0; m];
        for (i, &v) in order.iter().enumerate() {
            p[v] = i;
        }
        p
    };
    (0..m).map(|v| adj[v].iter().filter(|&&u| pos[u] > pos[v]).count()).max().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate;

    fn set(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    #[test]
    fn layers_by_definition() {
        let fam = vec![set(&[0, 1]), set(&[1, 2])];
        let u = set(&[0, 1, 2, 3]);
        assert_eq!(layer(&fam, 1, &u), set(&[0, 1, 2]));
        assert_eq!(layer(&fam, 2, &u), set(&[1]));
        assert!(layer(&fam, 3, &u).is_empty());
        assert!(layer(&[], 1, &u).is_empty());
        assert_eq!(layer(&fam, 0, &u), u);
        assert!(layer(&fam, 2, &u).is_subset(&layer(&fam, 1, &u)));
    }

    #[test]
    fn z_set_examples() {
        let star = generate::complete_bipartite(1, 4).unwrap();
        let leaves = set(&[1, 2, 3, 4]);
        assert_eq!(z_set(&star, &leaves, &Magnitude::from_u64(2)).unwrap(), set(&[0]));
        assert!(z_set(&star, &VertexSet::new(), &Magnitude::from_u64(2)).unwrap().is_empty());
        let k33 = generate::complete_bipartite(3, 3).unwrap();
        assert_eq!(z_set(&k33, &set(&[0, 1, 2]), &Magnitude::from_u64(1)).unwrap(), set(&[3, 4, 5]));
    }

    #[test]
    fn z_set_grows_with_divisor() {
        for seed in 0..20 {
            let g = generate::gnp(14, 0.3, seed).unwrap();
            let y: VertexSet = (0..14).filter(|v| v % 2 == seed as usize % 2).collect();
            let mut prev = VertexSet::new();
            for d in 1..6 {
                let z = z_set(&g, &y, &Magnitude::from_u64(d)).unwrap();
                assert!(prev.is_subset(&z));
                prev = z;
            }
        }
    }

    #[test]
    fn t_covered_examples() {
        // 1 sees 0 and 2.
        let p = generate::path(5).unwrap();
        let ys = vec![set(&[0]), set(&[2])];
        assert_eq!(t_covered(&p, &ys, 2), set(&[1]));
        assert_eq!(t_covered(&p, &ys, 1), set(&[0, 1, 2, 3]));
        let long = generate::path(50).unwrap();
        let spaced: Vec<VertexSet> = (0..8).map(|i| set(&[3 + 6 * i])).collect();
        assert!(t_covered(&long, &spaced, 2).is_empty());
    }

    #[test]
    fn subfamily_examples() {
        let p = generate::path(40).unwrap();
        let singles: Vec<VertexSet> = (0..10).map(|i| set(&[4 * i])).collect();
        assert_eq!(anticomplete_subfamily(&p, &singles, 10).unwrap(), (0..10).collect::<Vec<_>>());
        let same = vec![set(&[3]); 5];
        assert_eq!(anticomplete_subfamily(&p, &same, 1).unwrap().len(), 1);
        assert!(matches!(
            anticomplete_subfamily(&p, &same, 2),
            Err(LayeredError::InsufficientFamily { needed: 2, found: 1 })
        ));
    }

    #[test]
    fn degenerate_families_yield_a_fraction() {
        for seed in 0..20u64 {
            let g = generate::path(60).unwrap();
            let mut r = generate::rng(seed);
            let ys: Vec<VertexSet> = (0..25)
                .map(|_| {
                    use rand::Rng;
                    let a = r.gen_range(0..60);
                    set(&[a, (a + r.gen_range(0..3)).min(59)])
                })
                .collect();
            let deg = conflict_degeneracy(&g, &ys);
            let want = ys.len().div_ceil(deg + 1);
            let got = anticomplete_subfamily(&g, &ys, want).unwrap();
            for (a, &i) in got.iter().enumerate() {
                for &j in &got[a + 1..] {
                    assert!(anticomplete(&g, &ys[i], &ys[j]));
                }
            }
        }
    }

    #[test]
    fn prior_membership_counts() {
        let p = generate::path(6).unwrap();
        let ys = vec![set(&[1]), set(&[2]), set(&[1])];
        assert_eq!(prior_membership(&p, &ys), vec![0, 1, 2]);
    }
}
