//! Slow, obviously-correct reference implementations. Everything here only
//! looks at adjacency; none of it calls the algorithms it is used to check.

use std::collections::BTreeSet;

use treealpha_core::graph::{Graph, VertexSet};

fn mask_of(g: &Graph, v: usize) -> u64 {
    g.neighbors(v).iter().fold(0u64, |m, &u| m | 1 << u)
}

fn stable_mask(adj: &[u64], s: u64) -> bool {
    (0..adj.len()).all(|v| s >> v & 1 == 0 || adj[v] & s == 0)
}

/// `α(G[x])` by trying every subset of `x`. Needs `|x| ≤ 24`.
pub fn naive_alpha(g: &Graph, x: &VertexSet) -> usize {
    let ids = x.to_vec();
    assert!(ids.len() <= 24, "naive_alpha is for tiny sets");
    let mut best = 0;
    for s in 0u32..1 << ids.len() {
        let chosen: Vec<usize> = (0..ids.len()).filter(|&i| s >> i & 1 == 1).map(|i| ids[i]).collect();
        if chosen.len() > best && chosen.iter().all(|&a| chosen.iter().all(|&b| !g.has_edge(a, b))) {
            best = chosen.len();
        }
    }
    best
}

/// Maximum weight stable set by full enumeration; returns `(value, set)`,
/// ties broken towards the smallest bitmask.
pub fn brute_mwis(g: &Graph, weights: &[u64]) -> (u64, VertexSet) {
    let n = g.n();
    assert!(n <= 24 && weights.len() == n);
    let adj: Vec<u64> = (0..n).map(|v| mask_of(g, v)).collect();
    let mut best = (0u64, 0u64);
    for s in 0u64..1 << n {
        if !stable_mask(&adj, s) {
            continue;
        }
        let value: u64 = (0..n).filter(|&v| s >> v & 1 == 1).map(|v| weights[v]).sum();
        if value > best.0 {
            best = (value, s);
        }
    }
    (best.0, (0..n).filter(|&v| best.1 >> v & 1 == 1).collect())
}

/// Connected components of `G - removed`, checked by repeated flooding.
pub fn naive_components(g: &Graph, removed: &VertexSet) -> Vec<VertexSet> {
    let mut seen: BTreeSet<usize> = removed.iter().copied().collect();
    let mut out = Vec::new();
    for s in 0..g.n() {
        if seen.contains(&s) {
            continue;
        }
        let mut comp = VertexSet::new();
        let mut stack = vec![s];
        seen.insert(s);
        while let Some(v) = stack.pop() {
            comp.insert(v);
            for &u in g.neighbors(v) {
                if seen.insert(u) {
                    stack.push(u);
                }
            }
        }
        out.push(comp);
    }
    out
}

/// Chordality by repeatedly deleting a simplicial vertex.
pub fn naive_is_chordal(g: &Graph) -> bool {
    let n = g.n();
    let adj: Vec<u64> = (0..n).map(|v| mask_of(g, v)).collect();
    let mut alive: u64 = if n == 64 { u64::MAX } else { (1 << n) - 1 };
    'outer: while alive != 0 {
        for v in 0..n {
            if alive >> v & 1 == 0 {
                continue;
            }
            let nb = adj[v] & alive;
            if (0..n).filter(|&u| nb >> u & 1 == 1).all(|u| nb & !(1 << u) & !adj[u] == 0) {
                alive &= !(1 << v);
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Fill graph of eliminating vertices in `order`, as adjacency masks.
fn fill(adj: &[u64], order: &[usize]) -> Vec<u64> {
    let mut h = adj.to_vec();
    let mut gone = 0u64;
    for &v in order {
        let nb = h[v] & !gone;
        for u in 0..h.len() {
            if nb >> u & 1 == 1 {
                h[u] |= nb & !(1 << u);
            }
        }
        gone |= 1 << v;
    }
    h
}

fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    // Heap's algorithm.
    let mut p: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    f(&p);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                p.swap(0, i);
            } else {
                p.swap(c[i], i);
            }
            f(&p);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Tree independence number by trying every elimination ordering. Every
/// minimal triangulation is the fill graph of some ordering, and any other
/// triangulation only enlarges cliques, so the minimum over orderings of the
/// largest `α` of a maximal clique of the fill graph is exact. Needs
/// `n ≤ 10`.
pub fn tree_alpha_by_orderings(g: &Graph) -> usize {
    let n = g.n();
    assert!(n <= 10, "tree_alpha_by_orderings is factorial");
    if n == 0 {
        return 0;
    }
    let adj: Vec<u64> = (0..n).map(|v| mask_of(g, v)).collect();
    let mut seen: BTreeSet<Vec<u64>> = BTreeSet::new();
    let mut best = usize::MAX;
    for_each_permutation(n, |order| {
        let h = fill(&adj, order);
        if !seen.insert(h.clone()) {
            return;
        }
        // Bags: each vertex with its later neighbours in the ordering.
        let mut pos = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let worst = order
            .iter()
            .map(|&v| {
                let bag: VertexSet = (0..n).filter(|&u| u == v || (h[v] >> u & 1 == 1 && pos[u] > pos[v])).collect();
                naive_alpha(g, &bag)
            })
            .max()
            .unwrap_or(0);
        best = best.min(worst);
    });
    best
}

fn canonical(n: usize, adj: &[u64]) -> u64 {
    let mut best = u64::MAX;
    for_each_permutation(n, |p| {
        let mut code = 0u64;
        let mut bit = 0;
        for i in 0..n {
            for j in i + 1..n {
                if adj[p[i]] >> p[j] & 1 == 1 {
                    code |= 1 << bit;
                }
                bit += 1;
            }
        }
        best = best.min(code);
    });
    best
}

fn from_masks(adj: &[u64]) -> Graph {
    let n = adj.len();
    let edges: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (u + 1..n).filter(move |&v| adj[u] >> v & 1 == 1).map(move |v| (u, v))).collect();
    Graph::from_edges(n, edges).expect("valid edges")
}

/// Every connected chordal graph on `n` vertices up to isomorphism. Each one
/// arises from a smaller one by adding a vertex whose neighbourhood is a
/// nonempty clique; duplicates are removed by a brute-force canonical form.
pub fn connected_chordal_graphs(n: usize) -> Vec<Graph> {
    assert!((1..=8).contains(&n));
    let mut level: Vec<Vec<u64>> = vec![vec![0]];
    for size in 1..n {
        let mut next: BTreeSet<u64> = BTreeSet::new();
        let mut graphs = Vec::new();
        for adj in &level {
            for s in 1u64..1 << size {
                let is_clique = (0..size).all(|v| s >> v & 1 == 0 || s & !(1 << v) & !adj[v] == 0);
                if !is_clique {
                    continue;
                }
                let mut grown: Vec<u64> = adj.iter().enumerate().map(|(v, &m)| m | (s >> v & 1) << size).collect();
                grown.push(s);
                if next.insert(canonical(size + 1, &grown)) {
                    graphs.push(grown);
                }
            }
        }
        level = graphs;
    }
    level.iter().map(|a| from_masks(a)).collect()
}

/// An induced copy of `h` in `g` by plain backtracking over injective maps.
pub fn brute_contains_induced(g: &Graph, h: &Graph) -> Option<Vec<usize>> {
    fn go(g: &Graph, h: &Graph, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let i = map.len();
        if i == h.n() {
            return true;
        }
        for v in 0..g.n() {
            if used[v] || !(0..i).all(|j| h.has_edge(i, j) == g.has_edge(v, map[j])) {
                continue;
            }
            used[v] = true;
            map.push(v);
            if go(g, h, map, used) {
                return true;
            }
            map.pop();
            used[v] = false;
        }
        false
    }
    let mut map = Vec::new();
    let mut used = vec![false; g.n()];
    go(g, h, &mut map, &mut used).then_some(map)
}

/// Smallest `|X|` with every component of `G - N[X]` of weight at most
/// `num/den` of the total (weights as integers). Tries all subsets by size.
pub fn brute_min_core(g: &Graph, weights: &[u64], num: u64, den: u64, max_size: usize) -> Option<VertexSet> {
    let n = g.n();
    assert!(n <= 20);
    let total: u64 = weights.iter().sum();
    let mut masks: Vec<u32> = (0u32..1 << n).filter(|m| m.count_ones() as usize <= max_size).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    masks.into_iter().find_map(|m| {
        let x: VertexSet = (0..n).filter(|&v| m >> v & 1 == 1).collect();
        let mut nx = x.clone();
        for &v in &x {
            nx.extend(g.neighbors(v).iter().copied());
        }
        naive_components(g, &nx)
            .iter()
            .all(|c| c.iter().map(|&v| weights[v]).sum::<u64>() * den <= num * total)
            .then_some(x)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use treealpha_core::graph::generate;

    #[test]
    fn chordal_counts_match_the_known_sequence() {
        let counts: Vec<usize> = (1..=7).map(|n| connected_chordal_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 15, 58, 272]);
        assert!(connected_chordal_graphs(6).iter().all(|g| naive_is_chordal(g) && g.is_connected()));
    }

    #[test]
    fn tree_alpha_small_cases() {
        assert_eq!(tree_alpha_by_orderings(&generate::cycle(4).unwrap()), 2);
        assert_eq!(tree_alpha_by_orderings(&generate::complete(5).unwrap()), 1);
        assert_eq!(tree_alpha_by_orderings(&generate::path(6).unwrap()), 1);
        assert_eq!(tree_alpha_by_orderings(&generate::complete_bipartite(3, 3).unwrap()), 3);
    }

    #[test]
    fn alpha_and_mwis_small_cases() {
        let c5 = generate::cycle(5).unwrap();
        assert_eq!(naive_alpha(&c5, &c5.all()), 2);
        assert_eq!(brute_mwis(&c5, &[1; 5]).0, 2);
        let k33 = generate::complete_bipartite(3, 3).unwrap();
        assert_eq!(brute_mwis(&k33, &[1, 1, 1, 2, 2, 2]).0, 6);
    }

    #[test]
    fn induced_matching_small_cases() {
        let c5 = generate::cycle(5).unwrap();
        assert!(brute_contains_induced(&c5, &generate::path(4).unwrap()).is_some());
        assert!(brute_contains_induced(&c5, &generate::cycle(4).unwrap()).is_none());
        assert!(!naive_is_chordal(&generate::cycle(4).unwrap()));
    }

    #[test]
    fn min_core_on_paths() {
        let p = generate::path(9).unwrap();
        assert_eq!(brute_min_core(&p, &[1; 9], 1, 2, 3).unwrap().len(), 1);
        // {2, 6} leaves singletons.
        assert_eq!(brute_min_core(&p, &[1; 9], 1, 9, 3).unwrap().len(), 2);
    }
}
