//! Exact maximum stable sets by branch and bound over bitmasks, pruned with a
//! greedy clique cover.

use super::{CapExceeded, Graph, VertexSet};
use crate::caps::Caps;

/// `α(G[x])`, refusing when a component of `G[x]` exceeds the global cap.
pub fn alpha_exact(g: &Graph, x: &VertexSet) -> Result<usize, CapExceeded> {
    alpha_exact_capped(g, x, Caps::global().alpha)
}

pub fn alpha_exact_capped(g: &Graph, x: &VertexSet, cap: usize) -> Result<usize, CapExceeded> {
    max_stable_set_capped(g, x, cap).map(|s| s.len())
}

/// A maximum stable set of `G[x]`. Among optimal sets the search returns the
/// first one found, which is deterministic for a given input.
pub fn max_stable_set(g: &Graph, x: &VertexSet) -> Result<VertexSet, CapExceeded> {
    max_stable_set_capped(g, x, Caps::global().alpha)
}

pub fn max_stable_set_capped(g: &Graph, x: &VertexSet, cap: usize) -> Result<VertexSet, CapExceeded> {
    let cap = cap.min(128);
    // Components are solved independently; the cap applies to each one.
    let comps = super::components_within(g, x);
    if let Some(big) = comps.iter().find(|c| c.len() > cap) {
        return Err(CapExceeded { what: "alpha", size: big.len() as u64, cap: cap as u64 });
    }
    let mut out = VertexSet::new();
    for c in &comps {
        out.extend_from(&solve_connected(g, c));
    }
    Ok(out)
}

fn solve_connected(g: &Graph, x: &VertexSet) -> VertexSet {
    let ids: Vec<usize> = x.to_vec();
    let adj: Vec<u128> = ids
        .iter()
        .map(|&u| {
            let mut m = 0u128;
            for (j, &v) in ids.iter().enumerate() {
                if g.has_edge(u, v) {
                    m |= 1 << j;
                }
            }
            m
        })
        .collect();
    let full = if ids.len() == 128 { u128::MAX } else { (1u128 << ids.len()) - 1 };
    let mut solver = Solver { adj: &adj, best: 0, best_size: 0 };
    solver.search(full, 0);
    bits(solver.best).map(|j| ids[j]).collect()
}

/// Stable set check; membership in the graph is not checked.
pub fn is_stable(g: &Graph, s: &VertexSet) -> bool {
    s.iter().all(|&u| g.neighbors(u).iter().all(|v| !s.contains(v)))
}

fn bits(mut m: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let j = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(j)
        }
    })
}

struct Solver<'a> {
    adj: &'a [u128],
    best: u128,
    best_size: u32,
}

impl Solver<'_> {
    fn search(&mut self, mut p: u128, chosen: u128) {
        // Vertices with at most one neighbour in P are always safe to take.
        let mut chosen = chosen;
        loop {
            let mut forced = None;
            for v in bits(p) {
                if (self.adj[v] & p).count_ones() <= 1 {
                    forced = Some(v);
                    break;
                }
            }
            match forced {
                Some(v) => {
                    chosen |= 1 << v;
                    p &= !(self.adj[v] | (1 << v));
                }
                None => break,
            }
        }
        let size = chosen.count_ones();
        if p == 0 {
            if size > self.best_size {
                self.best = chosen;
                self.best_size = size;
            }
            return;
        }
        if size + self.clique_cover(p) <= self.best_size {
            return;
        }
        // Some maximum stable set meets N[v]; branch on its members.
        let v = bits(p).min_by_key(|&v| (self.adj[v] & p).count_ones()).unwrap();
        let mut rest = p;
        for u in bits((self.adj[v] & p) | (1 << v)) {
            if size + self.clique_cover(rest) <= self.best_size {
                break;
            }
            self.search(rest & !(self.adj[u] | (1 << u)), chosen | (1 << u));
            rest &= !(1 << u);
        }
    }

    /// Number of cliques in a greedy cover of `p`; an upper bound on `α(p)`.
    fn clique_cover(&self, mut p: u128) -> u32 {
        let mut count = 0;
        while p != 0 {
            let v = p.trailing_zeros() as usize;
            let mut cand = p & self.adj[v];
            p &= !(1 << v);
            while cand != 0 {
                let u = cand.trailing_zeros() as usize;
                cand &= self.adj[u];
                p &= !(1 << u);
            }
            count += 1;
        }
        count
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate;

    fn alpha(g: &Graph) -> usize {
        alpha_exact(g, &g.all()).unwrap()
    }

    #[test]
    fn small_values() {
        assert_eq!(alpha(&generate::complete(5).unwrap()), 1);
        assert_eq!(alpha(&generate::cycle(5).unwrap()), 2);
        assert_eq!(alpha(&generate::petersen()), 4);
        assert_eq!(alpha(&Graph::empty(0)), 0);
        assert_eq!(alpha(&Graph::empty(3)), 3);
    }

    #[test]
    fn witness_is_stable_and_restricted() {
        let g = generate::gnp(30, 0.3, 11).unwrap();
        let x: VertexSet = (5..25).collect();
        let s = max_stable_set(&g, &x).unwrap();
        assert!(is_stable(&g, &s));
        assert!(s.is_subset(&x));
    }

    #[test]
    fn refuses_over_cap() {
        let g = generate::path(41).unwrap();
        let err = alpha_exact_capped(&g, &g.all(), 40).unwrap_err();
        assert_eq!(err.size, 41);
        // Only connected pieces count against the cap.
        assert_eq!(alpha_exact_capped(&Graph::empty(41), &Graph::empty(41).all(), 40).unwrap(), 41);
    }
}
