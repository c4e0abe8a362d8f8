//! Exact treewidth by dynamic programming over vertex subsets, and balanced
//! bags taken from an optimal decomposition.

use crate::caps::Caps;
use crate::graph::{CapExceeded, Graph, VertexSet, WeightFn};
use crate::treedecomp::TreeDecomposition;

use super::{check_balanced, half_power, SeparatorError};

/// Treewidth and an elimination ordering attaining it.
///
/// `TW(S)` is the best width for eliminating the set `S` first; eliminating
/// `v` last among `S` costs `|Q(S - v, v)|`, the number of vertices outside
/// `S` reachable from `v` through `S - v`.
pub fn exact_treewidth(g: &Graph) -> Result<(usize, Vec<usize>), CapExceeded> {
    let cap = Caps::global().treewidth.min(24);
    let n = g.n();
    if n > cap {
        return Err(CapExceeded { what: "exact treewidth", size: n as u64, cap: cap as u64 });
    }
    if n == 0 {
        return Ok((0, Vec::new()));
    }
    let adj: Vec<u32> = g.vertices().map(|v| g.neighbors(v).iter().fold(0u32, |m, &u| m | 1 << u)).collect();
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let size = 1usize << n;
    let mut tw = vec![u8::MAX; size];
    let mut last = vec![u8::MAX; size];
    tw[0] = 0;
    // Subsets in increasing numeric order visit every S - v before S.
    for s in 1..size as u32 {
        let mut best = u8::MAX;
        let mut arg = 0u8;
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros();
            rest &= rest - 1;
            let prev = s & !(1 << v);
            let prior = tw[prev as usize];
            if prior >= best {
                continue;
            }
            let q = q_size(&adj, prev, v as usize, full) as u8;
            let cost = prior.max(q);
            if cost < best {
                best = cost;
                arg = v as u8;
            }
        }
        tw[s as usize] = best;
        last[s as usize] = arg;
    }
    let mut order = Vec::with_capacity(n);
    let mut s = full;
    while s != 0 {
        let v = last[s as usize] as usize;
        order.push(v);
        s &= !(1 << v);
    }
    order.reverse();
    Ok((tw[full as usize] as usize, order))
}

/// `|Q(S, v)|`: vertices outside `S ∪ {v}` adjacent to the component of
/// `G[S ∪ {v}]` containing `v`.
fn q_size(adj: &[u32], s: u32, v: usize, full: u32) -> u32 {
    let mut reached = 1u32 << v;
    let mut frontier = reached;
    let inside = s | (1 << v);
    while frontier != 0 {
        let u = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let next = adj[u] & s & !reached;
        reached |= next;
        frontier |= next;
    }
    let mut out = 0u32;
    let mut r = reached;
    while r != 0 {
        let u = r.trailing_zeros() as usize;
        r &= r - 1;
        out |= adj[u];
    }
    (out & full & !inside).count_ones()
}

/// Tree decomposition from an elimination ordering: the bag of `v` is `v`
/// with its later neighbours in the fill graph, attached to the bag of the
/// earliest of those neighbours. Separate trees are chained together.
pub fn decomposition_from_order(g: &Graph, order: &[usize]) -> TreeDecomposition {
    let n = g.n();
    if n == 0 {
        return TreeDecomposition::single(VertexSet::new());
    }
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut fill: Vec<VertexSet> = g.vertices().map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut bags = Vec::with_capacity(n);
    let mut edges = Vec::new();
    let mut roots = Vec::new();
    for (i, &v) in order.iter().enumerate() {
        let later: VertexSet = fill[v].iter().copied().filter(|&u| pos[u] > i).collect();
        for &a in &later {
            for &b in &later {
                if a != b {
                    fill[a].insert(b);
                }
            }
        }
        match later.iter().min_by_key(|&&u| pos[u]) {
            Some(&p) => edges.push((i, pos[p])),
            None => roots.push(i),
        }
        let mut bag = later;
        bag.insert(v);
        bags.push(bag);
    }
    for pair in roots.windows(2) {
        edges.push((pair[0], pair[1]));
    }
    TreeDecomposition::new(Graph::from_edges(n, edges).expect("elimination tree is simple"), bags)
}

/// An optimal tree decomposition.
pub fn treewidth_td(g: &Graph) -> Result<(usize, TreeDecomposition), CapExceeded> {
    let (tw, order) = exact_treewidth(g)?;
    Ok((tw, decomposition_from_order(g, &order)))
}

/// Greedy min-fill elimination ordering: repeatedly eliminate the vertex
/// whose neighbourhood needs the fewest fill edges, least id on ties.
pub fn min_fill_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut adj: Vec<VertexSet> = g.vertices().map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut gone = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let fill = |v: usize| {
            let nb: Vec<usize> = adj[v].iter().copied().collect();
            let mut missing = 0;
            for (i, &a) in nb.iter().enumerate() {
                missing += nb[i + 1..].iter().filter(|&&b| !adj[a].contains(&b)).count();
            }
            missing
        };
        let v = (0..n).filter(|&v| !gone[v]).min_by_key(|&v| (fill(v), v)).expect("a vertex remains");
        let nb: Vec<usize> = adj[v].iter().copied().collect();
        for &a in &nb {
            adj[a].remove(&v);
            for &b in &nb {
                if a != b {
                    adj[a].insert(b);
                }
            }
        }
        gone[v] = true;
        order.push(v);
    }
    order
}

/// A `(w, 1/2)`-balanced bag of `td`: the end of the walk towards the heavy
/// side, or else the first balanced bag.
pub fn balanced_bag(g: &Graph, w: &WeightFn, td: &TreeDecomposition) -> Option<VertexSet> {
    let half = half_power(1);
    let bag = td.descend_to_balanced_bag(g, w);
    if check_balanced(g, w, &bag, &half).ok {
        return Some(bag);
    }
    td.bags.iter().find(|b| check_balanced(g, w, b, &half).ok).cloned()
}

/// A `(w, 1/2)`-balanced bag of an optimal tree decomposition, found by
/// walking towards the heavy side of the tree. If the walk ends on an
/// unbalanced bag (possible when `w` sums to more than one) every bag is
/// tried in turn.
pub fn treewidth_separator(g: &Graph, w: &WeightFn) -> Result<VertexSet, SeparatorError> {
    let (_, td) = treewidth_td(g)?;
    let half = half_power(1);
    let bag = td.descend_to_balanced_bag(g, w);
    if check_balanced(g, w, &bag, &half).ok {
        return Ok(bag);
    }
    td.bags
        .iter()
        .find(|b| check_balanced(g, w, b, &half).ok)
        .cloned()
        .ok_or_else(|| SeparatorError::Exhausted("no bag of an optimal decomposition is balanced".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate;

    #[test]
    fn known_widths() {
        assert_eq!(exact_treewidth(&generate::random_tree(12, 1).unwrap()).unwrap().0, 1);
        assert_eq!(exact_treewidth(&generate::cycle(8).unwrap()).unwrap().0, 2);
        assert_eq!(exact_treewidth(&generate::complete(6).unwrap()).unwrap().0, 5);
        assert_eq!(exact_treewidth(&generate::grid(4, 4).unwrap()).unwrap().0, 4);
        assert_eq!(exact_treewidth(&generate::petersen()).unwrap().0, 4);
        assert_eq!(exact_treewidth(&Graph::empty(3)).unwrap().0, 0);
    }

    #[test]
    fn decompositions_validate_and_attain_width() {
        for seed in 0..20 {
            let g = generate::gnp(11, 0.35, seed).unwrap();
            let (tw, td) = treewidth_td(&g).unwrap();
            assert!(td.validate(&g).ok, "seed {seed}");
            assert_eq!(td.width(), tw as isize);
        }
    }

    #[test]
    fn separator_examples() {
        let t = generate::random_tree(15, 4).unwrap();
        assert!(treewidth_separator(&t, &WeightFn::uniform(15)).unwrap().len() <= 2);
        let c8 = generate::cycle(8).unwrap();
        assert!(treewidth_separator(&c8, &WeightFn::uniform(8)).unwrap().len() <= 3);
        let g = generate::grid(4, 4).unwrap();
        let x = treewidth_separator(&g, &WeightFn::uniform(16)).unwrap();
        assert!(x.len() <= 5);
        assert!(check_balanced(&g, &WeightFn::uniform(16), &x, &half_power(1)).ok);
    }

    #[test]
    fn min_fill_is_exact_on_chordal_graphs() {
        for seed in 0..10 {
            let g = generate::random_chordal(12, seed).unwrap();
            let td = decomposition_from_order(&g, &min_fill_order(&g));
            assert!(td.validate(&g).ok);
            assert_eq!(td.width(), exact_treewidth(&g).unwrap().0 as isize);
        }
    }
}
