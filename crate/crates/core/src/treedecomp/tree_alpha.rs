use crate::caps::Caps;
use crate::graph::{CapExceeded, Graph};

/// Exact tree independence number.
///
/// Every minimal triangulation is the fill graph of some elimination
/// ordering, and the bags `{v} ∪ (later fill neighbours of v)` of an ordering
/// contain all maximal cliques of its fill graph. So the answer is the least,
/// over orderings, of the largest `α(G[bag])`. This is computed by the same
/// subset recursion as exact treewidth, with bag cost `α` instead of size.
pub fn tree_alpha_exact(g: &Graph) -> Result<usize, CapExceeded> {
    let cap = Caps::global().tree_alpha.min(20);
    let n = g.n();
    if n > cap {
        return Err(CapExceeded { what: "tree independence number", size: n as u64, cap: cap as u64 });
    }
    if n == 0 {
        return Ok(0);
    }
    let adj: Vec<u32> = g.vertices().map(|v| g.neighbors(v).iter().fold(0u32, |m, &u| m | 1 << u)).collect();
    let size = 1usize << n;
    let mut best = vec![u8::MAX; size];
    best[0] = 0;
    for s in 1..size as u32 {
        let mut here = u8::MAX;
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let prev = s & !(1 << v);
            let prior = best[prev as usize];
            if prior >= here {
                continue;
            }
            let bag = (1u32 << v) | reach_outside(&adj, prev, v, s);
            let cost = prior.max(alpha_mask(&adj, bag) as u8);
            here = here.min(cost);
        }
        best[s as usize] = here;
    }
    Ok(best[size - 1] as usize)
}

/// Vertices outside `inside` adjacent to the component of `v` in `G[prev + v]`.
fn reach_outside(adj: &[u32], prev: u32, v: usize, inside: u32) -> u32 {
    let mut reached = 1u32 << v;
    let mut frontier = reached;
    while frontier != 0 {
        let u = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let next = adj[u] & prev & !reached;
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
    let n = adj.len();
    let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    out & full & !inside
}

fn alpha_mask(adj: &[u32], p: u32) -> u32 {
    if p == 0 {
        return 0;
    }
    let v = p.trailing_zeros() as usize;
    let without = alpha_mask(adj, p & !(1 << v));
    if adj[v] & p == 0 {
        return without + 1;
    }
    without.max(1 + alpha_mask(adj, p & !(1 << v) & !adj[v]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate;

    #[test]
    fn examples() {
        assert_eq!(tree_alpha_exact(&generate::cycle(4).unwrap()).unwrap(), 2);
        assert_eq!(tree_alpha_exact(&generate::complete(6).unwrap()).unwrap(), 1);
        assert_eq!(tree_alpha_exact(&generate::random_chordal(9, 3).unwrap()).unwrap(), 1);
        assert_eq!(tree_alpha_exact(&Graph::empty(4)).unwrap(), 1);
    }

    #[test]
    fn refuses_over_cap() {
        assert!(tree_alpha_exact(&generate::cycle(11).unwrap()).is_err());
    }
}
