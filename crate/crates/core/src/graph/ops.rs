use std::collections::BTreeMap;

use super::{Graph, GraphError, Rational, VertexSet, WeightFn};

/// Connected components of `g - removed`, ordered by least vertex id.
pub fn components(g: &Graph, removed: &VertexSet) -> Vec<VertexSet> {
    let mut seen: Vec<bool> = (0..g.n()).map(|v| removed.contains(&v)).collect();
    let mut out = Vec::new();
    for s in 0..g.n() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = VertexSet::new();
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            comp.insert(u);
            for &v in g.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        out.push(comp);
    }
    out
}

/// Connected components of `g[within]`.
pub fn components_within(g: &Graph, within: &VertexSet) -> Vec<VertexSet> {
    let mut seen = vec![true; g.n()];
    for &v in within {
        seen[v] = false;
    }
    let mut out = Vec::new();
    for &s in within {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = VertexSet::new();
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            comp.insert(u);
            for &v in g.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        out.push(comp);
    }
    out
}

/// Heaviest of `comps` under `w`; ties go to the least minimum vertex id.
pub fn heaviest_component(comps: &[VertexSet], w: &WeightFn) -> Option<(VertexSet, Rational)> {
    let mut best: Option<(VertexSet, Rational)> = None;
    for c in comps {
        let wc = w.of(c);
        let better = match &best {
            None => true,
            Some((b, wb)) => wc > *wb || (wc == *wb && c.least() < b.least()),
        };
        if better {
            best = Some((c.clone(), wc));
        }
    }
    best
}

/// `N[X] = X ∪ N(X)`.
pub fn closed_nbhd(g: &Graph, x: &VertexSet) -> VertexSet {
    let mut out = x.clone();
    for &v in x {
        out.extend(g.neighbors(v).iter().copied());
    }
    out
}

/// `N(X)`, which never meets `X`.
pub fn open_nbhd(g: &Graph, x: &VertexSet) -> VertexSet {
    let mut out = VertexSet::new();
    for &v in x {
        for &u in g.neighbors(v) {
            if !x.contains(&u) {
                out.insert(u);
            }
        }
    }
    out
}

/// No edge between `a` and `b` (and the two sets are disjoint).
pub fn anticomplete(g: &Graph, a: &VertexSet, b: &VertexSet) -> bool {
    a.iter().all(|&u| !b.contains(&u) && g.neighbors(u).iter().all(|v| !b.contains(v)))
}

/// `path` lists distinct vertices, consecutive ones adjacent and no others.
pub fn is_induced_path(g: &Graph, path: &[usize]) -> bool {
    let mut pos = BTreeMap::new();
    for (i, &v) in path.iter().enumerate() {
        if v >= g.n() || pos.insert(v, i).is_some() {
            return false;
        }
    }
    for (i, &v) in path.iter().enumerate() {
        for u in g.neighbors(v) {
            if let Some(&j) = pos.get(u) {
                if i.abs_diff(j) != 1 {
                    return false;
                }
            }
        }
        if i + 1 < path.len() && !g.has_edge(v, path[i + 1]) {
            return false;
        }
    }
    true
}

/// The line graph together with the edge behind each of its vertices.
#[derive(Clone, Debug)]
pub struct LineGraph {
    pub graph: Graph,
    /// `edges[i]` is the edge `(u, v)`, `u < v`, of the source graph.
    pub edges: Vec<(usize, usize)>,
}

impl LineGraph {
    pub fn vertex_of(&self, u: usize, v: usize) -> Option<usize> {
        let e = (u.min(v), u.max(v));
        self.edges.binary_search(&e).ok()
    }
}

pub fn line_graph(g: &Graph) -> LineGraph {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut at: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for (i, &(u, v)) in edges.iter().enumerate() {
        at[u].push(i);
        at[v].push(i);
    }
    let mut le = Vec::new();
    for inc in &at {
        for (a, &i) in inc.iter().enumerate() {
            for &j in &inc[a + 1..] {
                le.push((i, j));
            }
        }
    }
    LineGraph { graph: Graph::from_edges_dedup(edges.len(), le), edges }
}

/// Replace each edge `uv` by a path with `counts[uv]` new internal vertices.
/// Original ids are kept; new vertices are numbered from `n` upwards in edge
/// order, along the path from the smaller endpoint.
pub fn subdivide(g: &Graph, counts: &BTreeMap<(usize, usize), usize>) -> Result<Graph, GraphError> {
    for &(u, v) in counts.keys() {
        if !g.has_edge(u, v) {
            return Err(GraphError::UnknownEdge(u, v));
        }
    }
    let count = |u: usize, v: usize| {
        counts.get(&(u, v)).or_else(|| counts.get(&(v, u))).copied().unwrap_or(0)
    };
    let mut next = g.n();
    let mut edges = Vec::new();
    for (u, v) in g.edges() {
        let mut prev = u;
        for _ in 0..count(u, v) {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
        edges.push((prev, v));
    }
    Ok(Graph::from_edges_dedup(next, edges))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate;

    #[test]
    fn components_examples() {
        let p5 = generate::path(5).unwrap();
        let comps = components(&p5, &VertexSet::from([2]));
        assert_eq!(comps, vec![VertexSet::from([0, 1]), VertexSet::from([3, 4])]);
        assert_eq!(components(&generate::cycle(6).unwrap(), &VertexSet::new()).len(), 1);
        let k33 = generate::complete_bipartite(3, 3).unwrap();
        assert_eq!(components(&k33, &VertexSet::from([0, 1, 2])).len(), 3);
    }

    #[test]
    fn neighborhoods() {
        let star = generate::complete_bipartite(1, 4).unwrap();
        assert_eq!(closed_nbhd(&star, &VertexSet::from([0])), star.all());
        let p3 = generate::path(3).unwrap();
        assert_eq!(open_nbhd(&p3, &VertexSet::from([0])), VertexSet::from([1]));
        assert!(closed_nbhd(&p3, &VertexSet::new()).is_empty());
    }

    #[test]
    fn line_graph_examples() {
        let lp4 = line_graph(&generate::path(4).unwrap());
        assert_eq!(lp4.graph, generate::path(3).unwrap());
        let lk13 = line_graph(&generate::complete_bipartite(1, 3).unwrap());
        assert_eq!(lk13.graph, generate::complete(3).unwrap());
        let c5 = generate::cycle(5).unwrap();
        let lc5 = line_graph(&c5);
        assert_eq!(lc5.graph.n(), 5);
        assert!((0..5).all(|v| lc5.graph.degree(v) == 2) && lc5.graph.is_connected());
        for (i, &(u, v)) in lc5.edges.iter().enumerate() {
            assert_eq!(lc5.graph.degree(i), c5.degree(u) + c5.degree(v) - 2);
        }
    }

    #[test]
    fn subdivide_examples() {
        let k2 = generate::complete(2).unwrap();
        let p3 = subdivide(&k2, &BTreeMap::from([((0, 1), 1)])).unwrap();
        assert_eq!(p3.n(), 3);
        assert_eq!(p3.edge_count(), 2);
        assert_eq!(p3.degree(2), 2);
        let star = generate::complete_bipartite(1, 3).unwrap();
        let all_one: BTreeMap<_, _> = star.edges().map(|e| (e, 1)).collect();
        let s222 = subdivide(&star, &all_one).unwrap();
        assert_eq!(s222.n(), 7);
        assert_eq!(s222.degree(0), 3);
        assert_eq!(subdivide(&star, &BTreeMap::new()).unwrap(), star);
        assert!(subdivide(&star, &BTreeMap::from([((1, 2), 1)])).is_err());
    }

    #[test]
    fn induced_path_check() {
        let c5 = generate::cycle(5).unwrap();
        assert!(is_induced_path(&c5, &[0, 1, 2, 3]));
        assert!(!is_induced_path(&c5, &[0, 1, 2, 3, 4]));
        assert!(!is_induced_path(&c5, &[0, 2]));
        assert!(is_induced_path(&c5, &[3]));
    }
}
