//! Named graph families. Random families take an explicit seed and draw from
//! a ChaCha8 stream, so a seed always yields the same graph.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Graph, GraphError};

fn need(cond: bool, msg: &str) -> Result<(), GraphError> {
    if cond {
        Ok(())
    } else {
        Err(GraphError::Parameter(msg.to_string()))
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Path on `k` vertices `0-1-...-(k-1)`.
pub fn path(k: usize) -> Result<Graph, GraphError> {
    need(k >= 1, "path needs k >= 1")?;
    Ok(Graph::from_edges_dedup(k, (1..k).map(|i| (i - 1, i))))
}

pub fn cycle(k: usize) -> Result<Graph, GraphError> {
    need(k >= 3, "cycle needs k >= 3")?;
    Ok(Graph::from_edges_dedup(k, (0..k).map(|i| (i, (i + 1) % k))))
}

pub fn complete(k: usize) -> Result<Graph, GraphError> {
    need(k >= 1, "complete needs k >= 1")?;
    Ok(Graph::from_edges_dedup(k, (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j)))))
}

/// Sides `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph, GraphError> {
    need(a >= 1 && b >= 1, "complete_bipartite needs a, b >= 1")?;
    Ok(Graph::from_edges_dedup(a + b, (0..a).flat_map(|i| (a..a + b).map(move |j| (i, j)))))
}

/// `K_{1,3}` with every edge subdivided `t-1` times. The center is 0 and leg
/// `k` is `1+k*t, ..., t+k*t`, starting next to the center.
pub fn s_ttt(t: usize) -> Result<Graph, GraphError> {
    need(t >= 1, "S_ttt needs t >= 1")?;
    let mut edges = Vec::new();
    for k in 0..3 {
        let base = 1 + k * t;
        edges.push((0, base));
        for j in 1..t {
            edges.push((base + j - 1, base + j));
        }
    }
    Ok(Graph::from_edges_dedup(1 + 3 * t, edges))
}

/// `K_γ` with every edge subdivided twice. Branch vertices are `0..γ`; the
/// pair `a<b` (lexicographic order) gets the path `a-x-y-b` with fresh `x, y`.
pub fn k_gamma_2(gamma: usize) -> Result<Graph, GraphError> {
    need(gamma >= 1, "K_gamma_2 needs gamma >= 1")?;
    let mut edges = Vec::new();
    let mut next = gamma;
    for a in 0..gamma {
        for b in a + 1..gamma {
            edges.extend([(a, next), (next, next + 1), (next + 1, b)]);
            next += 2;
        }
    }
    Ok(Graph::from_edges_dedup(next, edges))
}

/// The elementary `t×t` wall.
///
/// Start from the grid with rows `0..=t` and columns `0..2t+2`. Keep every
/// horizontal edge `(r,c)-(r,c+1)` and the vertical edge `(r,c)-(r+1,c)`
/// exactly when `c ≡ r (mod 2)`. Then repeatedly delete vertices of degree at
/// most one (the two dangling corners). Survivors are renumbered in row-major
/// order. `wall(1)` is `C6`.
pub fn wall(t: usize) -> Result<Graph, GraphError> {
    need(t >= 1, "wall needs t >= 1")?;
    let rows = t + 1;
    let cols = 2 * t + 2;
    let id = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows && c % 2 == r % 2 {
                edges.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    let grid = Graph::from_edges_dedup(rows * cols, edges);
    Ok(prune_low_degree(&grid))
}

fn prune_low_degree(g: &Graph) -> Graph {
    let mut alive = vec![true; g.n()];
    let mut deg: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut stack: Vec<usize> = g.vertices().filter(|&v| deg[v] <= 1).collect();
    while let Some(v) = stack.pop() {
        if !alive[v] {
            continue;
        }
        alive[v] = false;
        for &u in g.neighbors(v) {
            if alive[u] {
                deg[u] -= 1;
                if deg[u] <= 1 {
                    stack.push(u);
                }
            }
        }
    }
    let keep = g.vertices().filter(|&v| alive[v]).collect();
    g.induced(&keep).graph
}

/// `rows × cols` grid, vertex `(r, c)` at `r*cols + c`.
pub fn grid(rows: usize, cols: usize) -> Result<Graph, GraphError> {
    need(rows >= 1 && cols >= 1, "grid needs positive dimensions")?;
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let v = r * cols + c;
            if c + 1 < cols {
                edges.push((v, v + 1));
            }
            if r + 1 < rows {
                edges.push((v, v + cols));
            }
        }
    }
    Ok(Graph::from_edges_dedup(rows * cols, edges))
}

/// Outer 5-cycle `0..5`, inner pentagram `5..10`, spokes `i-(i+5)`.
pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
        edges.push((i, i + 5));
    }
    Graph::from_edges_dedup(10, edges)
}

/// `G(n, p)`: each pair `i<j`, in lexicographic order, is an edge with
/// probability `p`.
pub fn gnp(n: usize, p: f64, seed: u64) -> Result<Graph, GraphError> {
    need((0.0..=1.0).contains(&p), "gnp needs p in [0, 1]")?;
    let mut r = rng(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if r.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    Ok(Graph::from_edges_dedup(n, edges))
}

/// `G(n, p)` made connected by joining consecutive components through their
/// least vertices.
pub fn connected_gnp(n: usize, p: f64, seed: u64) -> Result<Graph, GraphError> {
    need(n >= 1, "connected_gnp needs n >= 1")?;
    let g = gnp(n, p, seed)?;
    let comps = super::components(&g, &super::VertexSet::new());
    let mut edges: Vec<(usize, usize)> = g.edges().collect();
    for pair in comps.windows(2) {
        edges.push((pair[0].least().unwrap(), pair[1].least().unwrap()));
    }
    Ok(Graph::from_edges_dedup(n, edges))
}

/// Random recursive tree: vertex `v > 0` hangs off a uniform earlier vertex.
pub fn random_tree(n: usize, seed: u64) -> Result<Graph, GraphError> {
    need(n >= 1, "random_tree needs n >= 1")?;
    let mut r = rng(seed);
    Ok(Graph::from_edges_dedup(n, (1..n).map(|v| (r.gen_range(0..v), v))))
}

/// Connected chordal graph: vertex `v` is attached to a random clique that
/// contains an earlier vertex, so the reverse insertion order is a perfect
/// elimination ordering.
pub fn random_chordal(n: usize, seed: u64) -> Result<Graph, GraphError> {
    need(n >= 1, "random_chordal needs n >= 1")?;
    let mut r = rng(seed);
    let mut g = Graph::empty(n);
    for v in 1..n {
        let u = r.gen_range(0..v);
        let mut clique = vec![u];
        let mut cands: Vec<usize> = g.neighbors(u).iter().copied().collect();
        cands.shuffle(&mut r);
        for c in cands {
            if r.gen_bool(0.5) && clique.iter().all(|&x| g.has_edge(x, c)) {
                clique.push(c);
            }
        }
        for x in clique {
            g.adj[x].insert(v);
            g.adj[v].insert(x);
            g.edge_count += 1;
        }
    }
    Ok(g)
}

/// Random cograph built by random splits into disjoint unions and joins.
/// With `connected` the outermost operation is a join.
pub fn random_cograph(n: usize, connected: bool, seed: u64) -> Result<Graph, GraphError> {
    need(n >= 1, "random_cograph needs n >= 1")?;
    let mut r = rng(seed);
    let mut edges = Vec::new();
    cograph_rec(0, n, Some(connected).filter(|&c| c), &mut r, &mut edges);
    Ok(Graph::from_edges_dedup(n, edges))
}

fn cograph_rec(lo: usize, hi: usize, force_join: Option<bool>, r: &mut ChaCha8Rng, edges: &mut Vec<(usize, usize)>) {
    if hi - lo <= 1 {
        return;
    }
    let mid = r.gen_range(lo + 1..hi);
    let join = force_join.unwrap_or_else(|| r.gen_bool(0.5));
    cograph_rec(lo, mid, None, r, edges);
    cograph_rec(mid, hi, None, r, edges);
    if join {
        for a in lo..mid {
            for b in mid..hi {
                edges.push((a, b));
            }
        }
    }
}

/// Every family by name, for the command line and reports.
#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GraphKind {
    Path { k: usize },
    Cycle { k: usize },
    Complete { k: usize },
    CompleteBipartite { a: usize, b: usize },
    #[serde(rename = "s_ttt")]
    Sttt { t: usize },
    KGamma2 { gamma: usize },
    Wall { t: usize },
    Gnp { n: usize, p: f64 },
    ConnectedGnp { n: usize, p: f64 },
    Grid { rows: usize, cols: usize },
    Petersen,
    RandomTree { n: usize },
    RandomChordal { n: usize },
    RandomCograph { n: usize, connected: bool },
}

pub fn generate(kind: &GraphKind, seed: u64) -> Result<Graph, GraphError> {
    match *kind {
        GraphKind::Path { k } => path(k),
        GraphKind::Cycle { k } => cycle(k),
        GraphKind::Complete { k } => complete(k),
        GraphKind::CompleteBipartite { a, b } => complete_bipartite(a, b),
        GraphKind::Sttt { t } => s_ttt(t),
        GraphKind::KGamma2 { gamma } => k_gamma_2(gamma),
        GraphKind::Wall { t } => wall(t),
        GraphKind::Gnp { n, p } => gnp(n, p, seed),
        GraphKind::ConnectedGnp { n, p } => connected_gnp(n, p, seed),
        GraphKind::Grid { rows, cols } => grid(rows, cols),
        GraphKind::Petersen => Ok(petersen()),
        GraphKind::RandomTree { n } => random_tree(n, seed),
        GraphKind::RandomChordal { n } => random_chordal(n, seed),
        GraphKind::RandomCograph { n, connected } => random_cograph(n, connected, seed),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{components, VertexSet};

    fn girth(g: &Graph) -> Option<usize> {
        let mut best = None;
        for s in g.vertices() {
            let mut dist = vec![usize::MAX; g.n()];
            let mut parent = vec![usize::MAX; g.n()];
            dist[s] = 0;
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &v in g.neighbors(u) {
                    if dist[v] == usize::MAX {
                        dist[v] = dist[u] + 1;
                        parent[v] = u;
                        queue.push_back(v);
                    } else if parent[u] != v {
                        let len = dist[u] + dist[v] + 1;
                        best = Some(best.map_or(len, |b: usize| b.min(len)));
                    }
                }
            }
        }
        best
    }

    #[test]
    fn s_ttt_and_k_gamma() {
        let s1 = s_ttt(1).unwrap();
        assert_eq!((s1.n(), s1.edge_count(), s1.degree(0)), (4, 3, 3));
        let k = k_gamma_2(3).unwrap();
        assert_eq!((k.n(), k.edge_count()), (9, 9));
        assert_eq!(k_gamma_2(4).unwrap().n(), 4 + 2 * 6);
    }

    #[test]
    fn wall_shapes() {
        let w1 = wall(1).unwrap();
        assert_eq!((w1.n(), w1.edge_count()), (6, 6));
        // A connected 2-regular graph on six vertices is C6.
        assert!(w1.is_connected() && w1.vertices().all(|v| w1.degree(v) == 2));
        let w2 = wall(2).unwrap();
        assert_eq!((w2.n(), w2.edge_count()), (16, 19));
        for t in 1..=4 {
            let w = wall(t).unwrap();
            assert!(w.max_degree() <= 3);
            assert!(w.is_connected());
            assert!(w.vertices().all(|v| w.degree(v) >= 2));
            assert_eq!(girth(&w), Some(6));
        }
    }

    #[test]
    fn gnp_is_deterministic() {
        assert_eq!(gnp(12, 0.4, 7).unwrap(), gnp(12, 0.4, 7).unwrap());
        assert_ne!(gnp(20, 0.4, 7).unwrap(), gnp(20, 0.4, 8).unwrap());
        assert!(gnp(3, 1.5, 0).is_err());
        assert!(cycle(2).is_err());
        assert!(path(0).is_err());
    }

    #[test]
    fn random_families_are_connected() {
        for seed in 0..20 {
            assert!(random_tree(15, seed).unwrap().is_connected());
            assert_eq!(random_tree(15, seed).unwrap().edge_count(), 14);
            assert!(random_chordal(12, seed).unwrap().is_connected());
            assert!(random_cograph(10, true, seed).unwrap().is_connected());
            let g = connected_gnp(14, 0.1, seed).unwrap();
            assert_eq!(components(&g, &VertexSet::new()).len(), 1);
        }
    }

    #[test]
    fn petersen_shape() {
        let p = petersen();
        assert_eq!(p.edge_count(), 15);
        assert!(p.vertices().all(|v| p.degree(v) == 3));
        assert_eq!(girth(&p), Some(5));
    }
}
