use crate::caps::Caps;
use crate::graph::{CapExceeded, Graph, VertexSet};

/// An induced tree of `g` holding at least three vertices of `z`, if any.
/// Every vertex subset is tried, so `g` must be within the constricted cap.
pub fn tree_through(g: &Graph, z: &VertexSet) -> Result<Option<VertexSet>, CapExceeded> {
    let cap = Caps::global().constricted.min(30);
    let n = g.n();
    if n > cap {
        return Err(CapExceeded { what: "constricted-set search", size: n as u64, cap: cap as u64 });
    }
    if z.len() < 3 {
        return Ok(None);
    }
    let adj: Vec<u32> = g.vertices().map(|v| g.neighbors(v).iter().fold(0u32, |m, &u| m | 1 << u)).collect();
    let zmask = z.iter().filter(|&&v| v < n).fold(0u32, |m, &v| m | 1 << v);
    for s in 1u32..(1u32 << n) {
        if (s & zmask).count_ones() < 3 {
            continue;
        }
        // A tree: connected with one edge fewer than vertices.
        let mut twice_edges = 0;
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            twice_edges += (adj[v] & s).count_ones();
        }
        if twice_edges / 2 + 1 != s.count_ones() {
            continue;
        }
        let start = s & s.wrapping_neg();
        let mut seen = start;
        let mut frontier = start;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let next = adj[v] & s & !seen;
            seen |= next;
            frontier |= next;
        }
        if seen == s {
            return Ok(Some((0..n).filter(|&v| s >> v & 1 == 1).collect()));
        }
    }
    Ok(None)
}

/// No induced tree of `g` contains three vertices of `z`.
pub fn is_constricted(g: &Graph, z: &VertexSet) -> Result<bool, CapExceeded> {
    Ok(tree_through(g, z)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate;

    #[test]
    fn examples() {
        assert!(is_constricted(&generate::path(5).unwrap(), &VertexSet::from([0, 4])).unwrap());
        let claw = generate::complete_bipartite(1, 3).unwrap();
        assert!(!is_constricted(&claw, &VertexSet::from([1, 2, 3])).unwrap());
        let c6 = generate::cycle(6).unwrap();
        for a in 0..6 {
            for b in a + 1..6 {
                for c in b + 1..6 {
                    assert!(!is_constricted(&c6, &VertexSet::from([a, b, c])).unwrap());
                }
            }
        }
        // Three vertices of a triangle: any tree holds at most two of them.
        assert!(is_constricted(&generate::complete(4).unwrap(), &VertexSet::from([0, 1, 2])).unwrap());
    }

    #[test]
    fn refuses_over_cap() {
        assert!(is_constricted(&generate::path(40).unwrap(), &VertexSet::from([0, 1, 2])).is_err());
    }
}
