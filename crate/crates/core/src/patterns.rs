//! Induced-subgraph detection for the forbidden patterns: `S_{t,t,t}`,
//! `K_{t,t}`, `K_γ^(2)`, explicit graphs, and a bounded search for line
//! graphs of wall subdivisions.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::graph::{generate, line_graph, subdivide, CapExceeded, Graph};

/// Pattern vertex `i` maps to host vertex `mapping[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Embedding {
    pub mapping: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PatternSpec {
    #[serde(rename = "s_ttt")]
    Sttt { t: usize },
    Ktt { t: usize },
    KGamma2 { gamma: usize },
    Explicit { graph: Graph },
}

impl PatternSpec {
    /// The pattern as a graph, numbered as in [`generate`].
    pub fn graph(&self) -> Graph {
        match self {
            PatternSpec::Sttt { t } => generate::s_ttt((*t).max(1)).unwrap(),
            PatternSpec::Ktt { t } => generate::complete_bipartite((*t).max(1), (*t).max(1)).unwrap(),
            PatternSpec::KGamma2 { gamma } => generate::k_gamma_2((*gamma).max(1)).unwrap(),
            PatternSpec::Explicit { graph } => graph.clone(),
        }
    }
}

/// Injective, and preserves both adjacency and non-adjacency.
pub fn verify_embedding(g: &Graph, h: &Graph, emb: &Embedding) -> bool {
    let m = &emb.mapping;
    if m.len() != h.n() || m.iter().any(|&v| v >= g.n()) {
        return false;
    }
    let mut seen = m.clone();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != m.len() {
        return false;
    }
    (0..h.n()).all(|a| (a + 1..h.n()).all(|b| h.has_edge(a, b) == g.has_edge(m[a], m[b])))
}

/// Generic exact search for an induced copy of `h` in `g`, refusing patterns
/// above the configured cap.
pub fn contains_induced(g: &Graph, h: &Graph) -> Result<Option<Embedding>, CapExceeded> {
    contains_induced_capped(g, h, Caps::global().induced)
}

pub fn contains_induced_capped(g: &Graph, h: &Graph, cap: usize) -> Result<Option<Embedding>, CapExceeded> {
    if h.n() > cap {
        return Err(CapExceeded { what: "induced pattern", size: h.n() as u64, cap: cap as u64 });
    }
    Ok(induced_search(g, h))
}

/// Backtracking matcher without a size cap. Pattern vertices are placed in
/// BFS order so most candidates come from the image of a placed neighbour.
fn induced_search(g: &Graph, h: &Graph) -> Option<Embedding> {
    if h.n() > g.n() {
        return None;
    }
    if h.n() == 0 {
        return Some(Embedding { mapping: Vec::new() });
    }
    let order = placement_order(h);
    let mut anchor = vec![None; h.n()];
    let mut placed = vec![false; h.n()];
    for &a in &order {
        anchor[a] = h.neighbors(a).iter().copied().find(|&b| placed[b]);
        placed[a] = true;
    }
    let dense = Dense::new(g);
    let mut map = vec![usize::MAX; h.n()];
    let mut used = vec![false; g.n()];
    let mut st = Search { g, h, dense: &dense, order: &order, anchor: &anchor, map: &mut map, used: &mut used };
    if st.place(0) {
        Some(Embedding { mapping: map })
    } else {
        None
    }
}

fn placement_order(h: &Graph) -> Vec<usize> {
    let mut order = Vec::with_capacity(h.n());
    let mut seen = vec![false; h.n()];
    loop {
        let start = (0..h.n()).filter(|&v| !seen[v]).max_by_key(|&v| (h.degree(v), std::cmp::Reverse(v)));
        let Some(s) = start else { break };
        seen[s] = true;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            let mut nb: Vec<usize> = h.neighbors(u).iter().copied().filter(|&v| !seen[v]).collect();
            nb.sort_by_key(|&v| std::cmp::Reverse(h.degree(v)));
            for v in nb {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    order
}

struct Dense {
    n: usize,
    bits: Vec<bool>,
}

impl Dense {
    fn new(g: &Graph) -> Self {
        let n = g.n();
        let mut bits = vec![false; n * n];
        for (u, v) in g.edges() {
            bits[u * n + v] = true;
            bits[v * n + u] = true;
        }
        Dense { n, bits }
    }

    fn adj(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.n + v]
    }
}

struct Search<'a> {
    g: &'a Graph,
    h: &'a Graph,
    dense: &'a Dense,
    order: &'a [usize],
    anchor: &'a [Option<usize>],
    map: &'a mut Vec<usize>,
    used: &'a mut Vec<bool>,
}

impl Search<'_> {
    fn place(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let a = self.order[depth];
        let cands: Vec<usize> = match self.anchor[a] {
            Some(b) => self.g.neighbors(self.map[b]).iter().copied().collect(),
            None => self.g.vertices().collect(),
        };
        for x in cands {
            if self.used[x] || self.g.degree(x) < self.h.degree(a) {
                continue;
            }
            let ok = self.order[..depth]
                .iter()
                .all(|&b| self.h.has_edge(a, b) == self.dense.adj(x, self.map[b]));
            if !ok {
                continue;
            }
            self.map[a] = x;
            self.used[x] = true;
            if self.place(depth + 1) {
                return true;
            }
            self.used[x] = false;
        }
        self.map[a] = usize::MAX;
        false
    }
}

/// Specialised search per pattern family. Explicit and `K_γ^(2)` patterns
/// use the generic matcher without a cap.
pub fn find_pattern(g: &Graph, spec: &PatternSpec) -> Option<Embedding> {
    match spec {
        PatternSpec::Sttt { t } => find_sttt(g, (*t).max(1)),
        PatternSpec::Ktt { t } => find_ktt(g, (*t).max(1)),
        PatternSpec::KGamma2 { .. } | PatternSpec::Explicit { .. } => induced_search(g, &spec.graph()),
    }
}

/// Center of degree at least 3, then three legs grown one vertex at a time.
/// A new leg vertex must see exactly one used vertex, its predecessor, which
/// is precisely what keeps the copy induced.
fn find_sttt(g: &Graph, t: usize) -> Option<Embedding> {
    let dense = Dense::new(g);
    for c in g.vertices().filter(|&c| g.degree(c) >= 3) {
        let mut used = vec![false; g.n()];
        used[c] = true;
        let mut legs: [Vec<usize>; 3] = Default::default();
        if grow_legs(g, &dense, c, t, &mut legs, &mut used) {
            let mut mapping = vec![c];
            for leg in &legs {
                mapping.extend(leg);
            }
            return Some(Embedding { mapping });
        }
    }
    None
}

fn grow_legs(g: &Graph, dense: &Dense, c: usize, t: usize, legs: &mut [Vec<usize>; 3], used: &mut [bool]) -> bool {
    let Some(k) = (0..3).find(|&k| legs[k].len() < t) else { return true };
    let prev = *legs[k].last().unwrap_or(&c);
    let cands: Vec<usize> = g.neighbors(prev).iter().copied().collect();
    for x in cands {
        if used[x] {
            continue;
        }
        // Leg starts increase with k so each unordered triple is tried once.
        if legs[k].is_empty() && k > 0 && x < legs[k - 1][0] {
            continue;
        }
        let touches_other = legs
            .iter()
            .flatten()
            .chain(std::iter::once(&c))
            .any(|&y| y != prev && dense.adj(x, y));
        if touches_other {
            continue;
        }
        used[x] = true;
        legs[k].push(x);
        if grow_legs(g, dense, c, t, legs, used) {
            return true;
        }
        legs[k].pop();
        used[x] = false;
    }
    false
}

/// Stable set `A` of size `t`, then a stable `t`-subset of the common
/// neighbourhood of `A`.
fn find_ktt(g: &Graph, t: usize) -> Option<Embedding> {
    let dense = Dense::new(g);
    let mut a = Vec::new();
    let all: Vec<usize> = g.vertices().collect();
    pick_side_a(g, &dense, t, &all, &mut a)
}

fn pick_side_a(g: &Graph, dense: &Dense, t: usize, common: &[usize], a: &mut Vec<usize>) -> Option<Embedding> {
    if a.len() == t {
        let pool: Vec<usize> = common.to_vec();
        let mut b = Vec::new();
        if stable_subset(dense, t, &pool, 0, &mut b) {
            let mut mapping = a.clone();
            mapping.extend(b);
            return Some(Embedding { mapping });
        }
        return None;
    }
    let start = a.last().map_or(0, |&x| x + 1);
    for x in start..g.n() {
        if a.iter().any(|&y| dense.adj(x, y)) {
            continue;
        }
        let next: Vec<usize> = if a.is_empty() {
            g.neighbors(x).iter().copied().collect()
        } else {
            common.iter().copied().filter(|&v| dense.adj(v, x)).collect()
        };
        if next.len() < t {
            continue;
        }
        a.push(x);
        if let Some(e) = pick_side_a(g, dense, t, &next, a) {
            return Some(e);
        }
        a.pop();
    }
    None
}

fn stable_subset(dense: &Dense, t: usize, pool: &[usize], from: usize, out: &mut Vec<usize>) -> bool {
    if out.len() == t {
        return true;
    }
    for i in from..pool.len() {
        if pool.len() - i < t - out.len() {
            break;
        }
        let x = pool[i];
        if out.iter().any(|&y| dense.adj(x, y)) {
            continue;
        }
        out.push(x);
        if stable_subset(dense, t, pool, i + 1, out) {
            return true;
        }
        out.pop();
    }
    false
}

/// Outcome of the bounded search for line graphs of wall subdivisions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum LtVerdict {
    /// Every member with at most `certified_cap` vertices was tested and none
    /// embeds, and `g` is no larger than that.
    Free { certified_cap: usize },
    Witness {
        certified_cap: usize,
        /// Extra subdivision vertices per wall edge.
        subdivision: Vec<((usize, usize), usize)>,
        embedding: Embedding,
    },
    /// Nothing found among the enumerated members, but `g` has more vertices
    /// than the cap covers.
    Inconclusive { certified_cap: usize },
}

/// Test every line graph of a subdivision of `wall(t)` with at most
/// `min(size_cap, |V(g)|)` vertices for induced containment in `g`.
/// Subdividing a wall edge `k` times stretches its line-graph vertex into a
/// path on `k+1` vertices.
pub fn lt_free_upto(g: &Graph, t: usize, size_cap: usize) -> Result<LtVerdict, crate::graph::GraphError> {
    let w = generate::wall(t)?;
    let wall_edges: Vec<(usize, usize)> = w.edges().collect();
    let limit = size_cap.min(g.n());
    let base = wall_edges.len();
    if limit >= base {
        let budget = limit - base;
        let mut counts = vec![0usize; base];
        for total in 0..=budget {
            if let Some((counts, emb)) = try_total(g, &w, &wall_edges, &mut counts, 0, total) {
                let subdivision = wall_edges.iter().copied().zip(counts).filter(|&(_, k)| k > 0).collect();
                return Ok(LtVerdict::Witness { certified_cap: size_cap, subdivision, embedding: emb });
            }
        }
    }
    if g.n() <= size_cap {
        Ok(LtVerdict::Free { certified_cap: size_cap })
    } else {
        Ok(LtVerdict::Inconclusive { certified_cap: size_cap })
    }
}

/// All count vectors with exactly `left` extra vertices on positions `i..`.
fn try_total(
    g: &Graph,
    w: &Graph,
    edges: &[(usize, usize)],
    counts: &mut Vec<usize>,
    i: usize,
    left: usize,
) -> Option<(Vec<usize>, Embedding)> {
    if i == edges.len() {
        if left > 0 {
            return None;
        }
        let map: BTreeMap<(usize, usize), usize> = edges.iter().copied().zip(counts.iter().copied()).collect();
        let sub = subdivide(w, &map).expect("wall edges are valid keys");
        let lg = line_graph(&sub).graph;
        return induced_search(g, &lg).map(|e| (counts.clone(), e));
    }
    for k in 0..=left {
        counts[i] = k;
        if let Some(found) = try_total(g, w, edges, counts, i + 1, left - k) {
            return Some(found);
        }
    }
    counts[i] = 0;
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate::*;

    #[test]
    fn generic_examples() {
        let c5 = cycle(5).unwrap();
        let p3 = path(3).unwrap();
        let e = contains_induced(&c5, &p3).unwrap().unwrap();
        assert!(verify_embedding(&c5, &p3, &e));
        assert_eq!(contains_induced(&cycle(4).unwrap(), &path(4).unwrap()).unwrap(), None);
        let g = gnp(9, 0.5, 1).unwrap();
        assert!(verify_embedding(&g, &g, &contains_induced(&g, &g).unwrap().unwrap()));
        assert!(contains_induced(&g, &path(13).unwrap()).is_err());
    }

    #[test]
    fn specialised_examples() {
        let s2 = s_ttt(2).unwrap();
        let e = find_pattern(&s2, &PatternSpec::Sttt { t: 2 }).unwrap();
        assert!(verify_embedding(&s2, &s2, &e));
        let k33 = complete_bipartite(3, 3).unwrap();
        let e = find_pattern(&k33, &PatternSpec::Ktt { t: 3 }).unwrap();
        assert!(verify_embedding(&k33, &k33, &e));
        assert_eq!(find_pattern(&cycle(9).unwrap(), &PatternSpec::Sttt { t: 2 }), None);
        // S_{2,2,2} needs legs that avoid each other's neighbourhoods.
        assert_eq!(find_pattern(&complete(7).unwrap(), &PatternSpec::Sttt { t: 1 }), None);
        assert_eq!(find_pattern(&cycle(4).unwrap(), &PatternSpec::Ktt { t: 2 }).map(|e| e.mapping.len()), Some(4));
    }

    #[test]
    fn lt_examples() {
        assert_eq!(lt_free_upto(&path(10).unwrap(), 2, 30).unwrap(), LtVerdict::Free { certified_cap: 30 });
        assert_eq!(lt_free_upto(&complete(5).unwrap(), 1, 10).unwrap(), LtVerdict::Free { certified_cap: 10 });
        let w2 = wall(2).unwrap();
        let lw = line_graph(&w2).graph;
        match lt_free_upto(&lw, 2, w2.edge_count()).unwrap() {
            LtVerdict::Witness { subdivision, embedding, .. } => {
                assert!(subdivision.is_empty());
                assert!(verify_embedding(&lw, &lw, &embedding));
            }
            other => panic!("expected a witness, got {other:?}"),
        }
        assert_eq!(lt_free_upto(&path(12).unwrap(), 1, 8).unwrap(), LtVerdict::Inconclusive { certified_cap: 8 });
        // C8 is the line graph of C6 with two subdivided edges.
        assert!(matches!(lt_free_upto(&cycle(8).unwrap(), 1, 8).unwrap(), LtVerdict::Witness { .. }));
    }
}
