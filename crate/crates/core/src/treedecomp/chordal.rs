//! Chordal graphs: recognition by maximum cardinality search, clique trees,
//! and the clique separator oracle.

use crate::graph::{Graph, Rational, VertexSet, WeightFn};
use crate::separators::treewidth::decomposition_from_order;

use super::{SeparatorOracle, TreeDecomposition};

/// A perfect elimination ordering, or `None` if `g` is not chordal.
/// Maximum cardinality search visits vertices in the reverse of a perfect
/// elimination ordering whenever one exists.
pub fn perfect_elimination_order(g: &Graph) -> Option<Vec<usize>> {
    let n = g.n();
    let mut weight = vec![0usize; n];
    let mut done = vec![false; n];
    let mut visit = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n).filter(|&v| !done[v]).max_by_key(|&v| (weight[v], std::cmp::Reverse(v)))?;
        done[v] = true;
        visit.push(v);
        for &u in g.neighbors(v) {
            if !done[u] {
                weight[u] += 1;
            }
        }
    }
    visit.reverse();
    let mut pos = vec![0; n];
    for (i, &v) in visit.iter().enumerate() {
        pos[v] = i;
    }
    // Later neighbours of each vertex must form a clique; it suffices that the
    // earliest of them is adjacent to the rest.
    for &v in &visit {
        let later: Vec<usize> = g.neighbors(v).iter().copied().filter(|&u| pos[u] > pos[v]).collect();
        if let Some(&p) = later.iter().min_by_key(|&&u| pos[u]) {
            if later.iter().any(|&u| u != p && !g.has_edge(p, u)) {
                return None;
            }
        }
    }
    Some(visit)
}

pub fn is_chordal(g: &Graph) -> bool {
    perfect_elimination_order(g).is_some()
}

/// A decomposition whose bags are cliques, when `g` is chordal.
pub fn clique_tree(g: &Graph) -> Option<TreeDecomposition> {
    perfect_elimination_order(g).map(|order| decomposition_from_order(g, &order))
}

/// Returns a clique that is a `(w, c)`-balanced separator of a chordal graph,
/// so every answer has independence number 1.
#[derive(Clone, Copy, Debug, Default)]
pub struct CliqueSeparatorOracle;

impl SeparatorOracle for CliqueSeparatorOracle {
    fn separate(&self, g: &Graph, w: &WeightFn, c: &Rational) -> Result<VertexSet, String> {
        let td = clique_tree(g).ok_or("graph is not chordal")?;
        let bag = td.descend_to_balanced_bag(g, w);
        if crate::separators::check_balanced(g, w, &bag, c).ok {
            return Ok(bag);
        }
        td.bags
            .iter()
            .find(|b| crate::separators::check_balanced(g, w, b, c).ok)
            .cloned()
            .ok_or_else(|| "no clique bag is balanced".to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate;

    #[test]
    fn recognition() {
        assert!(is_chordal(&generate::complete(5).unwrap()));
        assert!(is_chordal(&generate::random_tree(10, 2).unwrap()));
        assert!(!is_chordal(&generate::cycle(4).unwrap()));
        assert!(!is_chordal(&generate::grid(3, 3).unwrap()));
        for seed in 0..20 {
            let g = generate::random_chordal(12, seed).unwrap();
            assert!(is_chordal(&g));
            let td = clique_tree(&g).unwrap();
            assert!(td.validate(&g).ok);
            assert_eq!(td.stats(&g).unwrap().independence_number, 1);
        }
    }
}
