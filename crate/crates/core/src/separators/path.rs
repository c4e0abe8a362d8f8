use crate::caps::Caps;
use crate::graph::{closed_nbhd, components, is_induced_path, open_nbhd, Graph, Rational, VertexSet, WeightFn};

use super::{check_balanced, half_power, SeparatorError};

/// An induced path `P` such that `N[P]` is a `(w, 1/2)`-balanced separator.
///
/// Greedy descent: let `B_i` be the component of `G - N[P_i]` heavier than
/// `1/2` (unique when it exists). Then `B_i ⊊ B_{i-1}`, and the least vertex
/// `u` of `N(B_i) ∩ B_{i-1}` lies in `N(p_i)` but outside `N[P_{i-1}]`, so
/// appending it keeps the path induced. Each step shrinks the heavy
/// component, so the loop ends with a balanced separator. The result is
/// re-checked; an exhaustive scan over induced paths backs it up.
pub fn path_separator(g: &Graph, w: &WeightFn) -> Result<Vec<usize>, SeparatorError> {
    if g.n() == 0 {
        return Ok(Vec::new());
    }
    if !g.is_connected() {
        return Err(SeparatorError::NotConnected);
    }
    let half = half_power(1);
    let path = greedy(g, w, &half);
    if verify(g, w, &path, &half) {
        return Ok(path);
    }
    exhaustive(g, w, &half, Caps::global().path_enum)
}

fn heavy(g: &Graph, w: &WeightFn, removed: &VertexSet, half: &Rational) -> Option<VertexSet> {
    components(g, removed).into_iter().find(|c| w.exceeds(&w.of(c), half))
}

fn greedy(g: &Graph, w: &WeightFn, half: &Rational) -> Vec<usize> {
    let start = g.vertices().max_by(|&a, &b| w.get(a).cmp(w.get(b)).then(b.cmp(&a))).unwrap();
    let mut path = vec![start];
    let mut prev_heavy = g.all();
    loop {
        let p: VertexSet = path.iter().copied().collect();
        let Some(b) = heavy(g, w, &closed_nbhd(g, &p), half) else { return path };
        let next = open_nbhd(g, &b).intersection(&prev_heavy).least();
        match next {
            Some(u) => path.push(u),
            None => return path,
        }
        prev_heavy = b;
    }
}

fn verify(g: &Graph, w: &WeightFn, path: &[usize], half: &Rational) -> bool {
    let p: VertexSet = path.iter().copied().collect();
    is_induced_path(g, path) && check_balanced(g, w, &closed_nbhd(g, &p), half).ok
}

/// Depth-first enumeration of induced paths from every start vertex.
fn exhaustive(g: &Graph, w: &WeightFn, half: &Rational, cap: usize) -> Result<Vec<usize>, SeparatorError> {
    if g.n() > cap {
        return Err(SeparatorError::Exhausted(format!(
            "greedy descent failed and {} vertices exceed the enumeration cap {cap}",
            g.n()
        )));
    }
    fn extend(g: &Graph, w: &WeightFn, half: &Rational, path: &mut Vec<usize>) -> bool {
        if verify(g, w, path, half) {
            return true;
        }
        let last = *path.last().unwrap();
        let nbrs: Vec<usize> = g.neighbors(last).iter().copied().collect();
        for u in nbrs {
            let fits = !path.contains(&u) && path[..path.len() - 1].iter().all(|&p| !g.has_edge(p, u));
            if fits {
                path.push(u);
                if extend(g, w, half, path) {
                    return true;
                }
                path.pop();
            }
        }
        false
    }
    for s in g.vertices() {
        let mut path = vec![s];
        if extend(g, w, half, &mut path) {
            return Ok(path);
        }
    }
    Err(SeparatorError::Exhausted("no induced path gives a balanced separator".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate;

    #[test]
    fn examples() {
        let c6 = generate::cycle(6).unwrap();
        assert_eq!(path_separator(&c6, &WeightFn::uniform(6)).unwrap().len(), 1);
        let p9 = generate::path(9).unwrap();
        let p = path_separator(&p9, &WeightFn::uniform(9)).unwrap();
        assert!(verify(&p9, &WeightFn::uniform(9), &p, &half_power(1)));
        let g = generate::connected_gnp(14, 0.25, 3).unwrap();
        let p = path_separator(&g, &WeightFn::uniform(14)).unwrap();
        assert!(verify(&g, &WeightFn::uniform(14), &p, &half_power(1)));
        assert_eq!(path_separator(&Graph::empty(2), &WeightFn::uniform(2)), Err(SeparatorError::NotConnected));
    }

    #[test]
    fn exhaustive_agrees_on_small_graphs() {
        for seed in 0..30 {
            let g = generate::connected_gnp(9, 0.3, seed).unwrap();
            let w = WeightFn::uniform(9);
            let p = exhaustive(&g, &w, &half_power(1), 18).unwrap();
            assert!(verify(&g, &w, &p, &half_power(1)));
        }
    }
}
