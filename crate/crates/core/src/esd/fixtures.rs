//! Hand-built decompositions, constructors for the single-strip and
//! line-graph-of-tree cases, seeded random strip decompositions, and
//! single-condition mutations of any decomposition.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{anticomplete, generate, line_graph, Graph, VertexSet};

use super::{pedge, Condition, Esd, EsdError, PatternGraph};

fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::from_edges(n, edges.iter().copied()).expect("fixture graph is simple")
}

/// `P3 = 0-1-2` over the single pattern edge `0-1`, terminals at both ends.
pub fn single_strip() -> Esd {
    let mut esd = Esd::new(graph(3, &[(0, 1), (1, 2)]), VertexSet::from([0, 2]), PatternGraph::new(graph(2, &[(0, 1)])));
    esd.set_edge(0, 1, [0, 1, 2]).set_end(0, 1, 0, [0]).set_end(0, 1, 1, [2]);
    esd
}

/// Host vertex forming the vertex atom at the middle of [`two_strip_path`].
pub const TWO_STRIP_HUB: usize = 5;

/// Two strips along the pattern path `0-1-2`, with a vertex atom at `1`.
pub fn two_strip_path() -> Esd {
    let host = graph(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (5, 1), (5, 2)]);
    let mut esd = Esd::new(host, VertexSet::from([0, 4]), PatternGraph::new(generate::path(3).unwrap()));
    esd.set_edge(0, 1, [0, 1]).set_end(0, 1, 0, [0]).set_end(0, 1, 1, [1]);
    esd.set_edge(1, 2, [2, 3, 4]).set_end(1, 2, 1, [2]).set_end(1, 2, 2, [4]);
    esd.set_vertex(1, [TWO_STRIP_HUB]);
    esd
}

/// Pattern `K3`. Each edge zone is a single vertex lying in both of its
/// ends; the triangle zone and the three vertex atoms hang off them.
pub fn triangle_pattern() -> Esd {
    let host = graph(
        7,
        &[(0, 1), (1, 2), (0, 2), (3, 0), (3, 1), (3, 2), (4, 0), (4, 2), (5, 0), (5, 1), (6, 1), (6, 2)],
    );
    let mut esd = Esd::new(host, VertexSet::new(), PatternGraph::new(generate::complete(3).unwrap()));
    for (u, v, x) in [(0, 1, 0), (1, 2, 1), (0, 2, 2)] {
        esd.set_edge(u, v, [x]).set_end(u, v, u, [x]).set_end(u, v, v, [x]);
    }
    esd.set_triangle([0, 1, 2], [3]);
    esd.set_vertex(0, [4]).set_vertex(1, [5]).set_vertex(2, [6]);
    esd
}

/// The decomposition of `L(T)` with pattern `T`: each line-graph vertex is
/// its own edge zone and both of its ends. `T` must be a tree on at least
/// three vertices.
pub fn line_graph_of_tree(tree: &Graph) -> Result<Esd, EsdError> {
    if tree.n() < 3 || !tree.is_connected() || tree.edge_count() + 1 != tree.n() {
        return Err(EsdError::Precondition("pattern must be a tree on at least three vertices".into()));
    }
    let lg = line_graph(tree);
    let z: VertexSet = lg
        .edges
        .iter()
        .enumerate()
        .filter(|(_, &(u, v))| tree.degree(u) == 1 || tree.degree(v) == 1)
        .map(|(i, _)| i)
        .collect();
    let mut esd = Esd::new(lg.graph.clone(), z, PatternGraph::new(tree.clone()));
    for (i, &(u, v)) in lg.edges.iter().enumerate() {
        esd.set_edge(u, v, [i]).set_end(u, v, u, [i]).set_end(u, v, v, [i]);
    }
    Ok(esd)
}

pub fn line_graph_tree_fixture() -> Esd {
    line_graph_of_tree(&graph(6, &[(0, 1), (1, 2), (1, 3), (3, 4), (3, 5)])).unwrap()
}

/// A decomposition of one component of a larger graph.
#[derive(Clone, Debug)]
pub struct OutsideFixture {
    pub graph: Graph,
    pub esd: Esd,
    pub outside: Vec<VertexSet>,
}

/// Claw pattern with three two-vertex strips meeting in a triangle and a
/// vertex atom at the centre; the whole graph adds a path and an isolated
/// vertex.
pub fn with_outside_components() -> OutsideFixture {
    let d_edges = [(0, 1), (2, 3), (4, 5), (1, 3), (1, 5), (3, 5), (6, 1), (6, 3)];
    let mut all = d_edges.to_vec();
    all.extend([(7, 8), (8, 9)]);
    let g = graph(11, &all);
    let mut esd = Esd::new(graph(7, &d_edges), VertexSet::from([0, 2, 4]), PatternGraph::new(generate::complete_bipartite(1, 3).unwrap()));
    for (leaf, a, b) in [(1, 0, 1), (2, 2, 3), (3, 4, 5)] {
        esd.set_edge(0, leaf, [a, b]).set_end(0, leaf, leaf, [a]).set_end(0, leaf, 0, [b]);
    }
    esd.set_vertex(0, [6]);
    OutsideFixture { graph: g, esd, outside: vec![VertexSet::from([7, 8, 9]), VertexSet::from([10])] }
}

/// The five hand-built fixtures by name.
pub fn hand_built() -> Vec<(&'static str, Esd)> {
    vec![
        ("single strip", single_strip()),
        ("two-strip path pattern", two_strip_path()),
        ("triangle pattern", triangle_pattern()),
        ("line graph of a tree", line_graph_tree_fixture()),
        ("with outside components", with_outside_components().esd),
    ]
}

#[derive(Clone, Debug)]
pub struct Mutation {
    pub name: String,
    pub target: Condition,
    pub esd: Esd,
}

fn rebuild_host(g: &Graph, extra: usize, add: &[(usize, usize)], remove: &[(usize, usize)]) -> Graph {
    let mut edges: Vec<(usize, usize)> =
        g.edges().filter(|&(u, v)| !remove.contains(&(u, v)) && !remove.contains(&(v, u))).collect();
    edges.extend_from_slice(add);
    Graph::from_edges(g.n() + extra, edges).expect("mutated host is simple")
}

/// Append a disjoint pattern component; returns the id of its first vertex.
fn append_pattern(esd: &mut Esd, extra: &Graph) -> usize {
    let base = esd.pattern.base();
    let off = base.n();
    let mut edges: Vec<(usize, usize)> = base.edges().collect();
    edges.extend(extra.edges().map(|(u, v)| (u + off, v + off)));
    esd.pattern = PatternGraph::new(Graph::from_edges(off + extra.n(), edges).expect("disjoint union is simple"));
    off
}

fn insert_into(map_entry: Option<&mut VertexSet>, x: usize) -> Option<VertexSet> {
    match map_entry {
        Some(s) => {
            s.insert(x);
            None
        }
        None => Some(VertexSet::singleton(x)),
    }
}

fn add_to_vertex(esd: &mut Esd, v: usize, x: usize) {
    if let Some(s) = insert_into(esd.eta_vertex.get_mut(&v), x) {
        esd.eta_vertex.insert(v, s);
    }
}

fn add_to_edge(esd: &mut Esd, u: usize, v: usize, x: usize) {
    if let Some(s) = insert_into(esd.eta_edge.get_mut(&pedge(u, v)), x) {
        esd.eta_edge.insert(pedge(u, v), s);
    }
}

fn add_to_end(esd: &mut Esd, u: usize, v: usize, at: usize, x: usize) {
    let key = (pedge(u, v), at);
    if let Some(s) = insert_into(esd.eta_edge_end.get_mut(&key), x) {
        esd.eta_edge_end.insert(key, s);
    }
}

fn add_to_triangle(esd: &mut Esd, t: [usize; 3], x: usize) {
    if let Some(s) = insert_into(esd.eta_triangle.get_mut(&t), x) {
        esd.eta_triangle.insert(t, s);
    }
}

/// One mutation per structural condition, each breaking exactly that
/// condition of a valid decomposition whose pattern has at least two
/// vertices. When the fixture has no place to break a condition (no two
/// edges at a vertex, no triangle), a disjoint pattern gadget with empty
/// zones is appended first; on its own such a gadget keeps the
/// decomposition valid.
pub fn mutations(esd: &Esd) -> Vec<Mutation> {
    let mut out = Vec::new();
    let n = esd.host.n();
    let h = esd.pattern.base().clone();
    let mk = |name: &str, target, esd: Esd| Mutation { name: name.to_string(), target, esd };

    let mut m = esd.clone();
    m.host = rebuild_host(&esd.host, 1, &[], &[]);
    out.push(mk("new vertex outside every zone", Condition::Coverage, m));

    let mut m = esd.clone();
    m.host = rebuild_host(&esd.host, 1, &[], &[]);
    add_to_vertex(&mut m, 0, n);
    add_to_vertex(&mut m, 1, n);
    out.push(mk("new vertex in two vertex zones", Condition::Disjoint, m));

    let mut m = esd.clone();
    m.host = rebuild_host(&esd.host, 1, &[], &[]);
    if let Some(v) = h.vertices().find(|&v| h.degree(v) >= 2) {
        let e = esd.pattern.incident(v)[0];
        add_to_vertex(&mut m, v, n);
        add_to_end(&mut m, e.0, e.1, v, n);
        out.push(mk("end vertex outside its edge zone", Condition::EndInZone, m));
    } else {
        let a = append_pattern(&mut m, &generate::cycle(4).unwrap());
        add_to_vertex(&mut m, a, n);
        add_to_end(&mut m, a, a + 1, a + 1, n);
        out.push(mk("end vertex outside its edge zone (gadget)", Condition::EndInZone, m));
    }

    let mut m = esd.clone();
    let required = h.vertices().find_map(|v| {
        let inc = esd.pattern.incident(v);
        for (i, &e) in inc.iter().enumerate() {
            for &f in &inc[i + 1..] {
                for &x in esd.end(e, v).intersection(esd.edge_zone(e)).iter() {
                    for &y in esd.end(f, v).intersection(esd.edge_zone(f)).iter() {
                        if x != y && esd.host.has_edge(x, y) {
                            return Some((x, y));
                        }
                    }
                }
            }
        }
        None
    });
    if let Some((x, y)) = required {
        m.host = rebuild_host(&esd.host, 0, &[], &[(x, y)]);
        out.push(mk("required edge between ends removed", Condition::CrossEdge, m));
    } else {
        m.host = rebuild_host(&esd.host, 2, &[], &[]);
        let a = append_pattern(&mut m, &generate::cycle(4).unwrap());
        add_to_edge(&mut m, a, a + 1, n);
        add_to_end(&mut m, a, a + 1, a + 1, n);
        add_to_edge(&mut m, a + 1, a + 2, n + 1);
        add_to_end(&mut m, a + 1, a + 2, a + 1, n + 1);
        out.push(mk("required edge between ends missing (gadget)", Condition::CrossEdge, m));
    }

    let mut m = esd.clone();
    m.host = rebuild_host(&esd.host, 2, &[(n, n + 1)], &[]);
    add_to_vertex(&mut m, 0, n);
    add_to_vertex(&mut m, 1, n + 1);
    out.push(mk("edge between two vertex zones", Condition::VertexExit, m));

    let mut m = esd.clone();
    m.host = rebuild_host(&esd.host, 2, &[(n, n + 1)], &[]);
    if let Some(&t) = esd.pattern.triangles().first() {
        add_to_triangle(&mut m, t, n);
        add_to_edge(&mut m, t[0], t[1], n + 1);
        out.push(mk("triangle zone joined to an edge interior", Condition::TriangleExit, m));
    } else {
        let a = append_pattern(&mut m, &generate::complete(3).unwrap());
        add_to_triangle(&mut m, [a, a + 1, a + 2], n);
        add_to_edge(&mut m, a, a + 1, n + 1);
        out.push(mk("triangle zone joined to an edge interior (gadget)", Condition::TriangleExit, m));
    }

    let mut m = esd.clone();
    match esd.z.least() {
        Some(z) => {
            m.z.remove(&z);
            out.push(mk("terminal dropped", Condition::Terminals, m));
        }
        None => {
            m.z.insert(0);
            out.push(mk("terminal without a degree-one vertex", Condition::Terminals, m));
        }
    }
    out
}

/// A random faithful decomposition with a tree pattern: every pattern edge
/// becomes an induced path of one to three vertices, ends at each pattern
/// vertex form a clique, and some pattern vertices get a vertex atom of one
/// or two vertices attached to ends there.
pub fn random_strip_esd(tree_n: usize, seed: u64) -> Result<Esd, EsdError> {
    let tree = generate::random_tree(tree_n.max(3), seed).map_err(|e| EsdError::Precondition(e.to_string()))?;
    let mut r = generate::rng(seed ^ 0x5eed);
    let pattern = PatternGraph::new(tree.clone());
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut next = 0usize;
    let mut zones = Vec::new();
    for (u, v) in tree.edges() {
        let len = r.gen_range(1..=3);
        let path: Vec<usize> = (next..next + len).collect();
        next += len;
        edges.extend(path.windows(2).map(|p| (p[0], p[1])));
        zones.push(((u, v), path));
    }
    let mut ends_at: Vec<Vec<usize>> = vec![Vec::new(); tree.n()];
    for ((u, v), path) in &zones {
        ends_at[*u].push(path[0]);
        ends_at[*v].push(*path.last().unwrap());
    }
    for ends in &ends_at {
        for (i, &a) in ends.iter().enumerate() {
            for &b in &ends[i + 1..] {
                if a != b {
                    edges.push((a.min(b), a.max(b)));
                }
            }
        }
    }
    let mut atoms: Vec<(usize, Vec<usize>)> = Vec::new();
    for v in tree.vertices() {
        if r.gen_bool(0.5) {
            let size = r.gen_range(1..=2);
            let blob: Vec<usize> = (next..next + size).collect();
            next += size;
            for &x in &blob {
                let k = r.gen_range(1..=ends_at[v].len());
                let mut pick = ends_at[v].clone();
                pick.shuffle(&mut r);
                edges.extend(pick[..k].iter().map(|&y| (x, y)));
            }
            if size == 2 && r.gen_bool(0.5) {
                edges.push((blob[0], blob[1]));
            }
            atoms.push((v, blob));
        }
    }
    edges.sort_unstable();
    edges.dedup();
    let host = Graph::from_edges(next, edges).map_err(|e| EsdError::Internal(e.to_string()))?;
    let z: VertexSet = tree
        .vertices()
        .filter(|&w| tree.degree(w) == 1)
        .map(|w| ends_at[w][0])
        .collect();
    let mut esd = Esd::new(host, z, pattern);
    for ((u, v), path) in zones {
        esd.set_edge(u, v, path.iter().copied().collect::<VertexSet>());
        esd.set_end(u, v, u, [path[0]]);
        esd.set_end(u, v, v, [*path.last().unwrap()]);
    }
    for (v, blob) in atoms {
        esd.set_vertex(v, blob.into_iter().collect::<VertexSet>());
    }
    Ok(esd)
}

/// A decomposition with three pairwise anticomplete induced paths, each
/// starting at a terminal.
#[derive(Clone, Debug)]
pub struct ThreePaths {
    pub esd: Esd,
    pub paths: [Vec<usize>; 3],
}

pub fn three_paths_instance(seed: u64) -> ThreePaths {
    let mut r = generate::rng(seed ^ 0x3a7b);
    for attempt in 0u64.. {
        let tree_n = r.gen_range(6..=10);
        let esd = random_strip_esd(tree_n, seed.wrapping_mul(1000).wrapping_add(attempt)).expect("tree size is valid");
        let g = &esd.host;
        let mut z = esd.z.to_vec();
        if z.len() < 3 {
            continue;
        }
        z.shuffle(&mut r);
        let starts = [z[0], z[1], z[2]];
        let singles: Vec<VertexSet> = starts.iter().map(|&s| VertexSet::singleton(s)).collect();
        if !(anticomplete(g, &singles[0], &singles[1]) && anticomplete(g, &singles[0], &singles[2]) && anticomplete(g, &singles[1], &singles[2])) {
            continue;
        }
        let mut paths: [Vec<usize>; 3] = starts.map(|s| vec![s]);
        let targets: [usize; 3] = [0, 1, 2].map(|_| r.gen_range(1..=6));
        for _round in 0..6 {
            for i in 0..3 {
                if paths[i].len() >= targets[i] {
                    continue;
                }
                let last = *paths[i].last().unwrap();
                let others: VertexSet = (0..3).filter(|&j| j != i).flat_map(|j| paths[j].clone()).collect();
                let own: VertexSet = paths[i][..paths[i].len() - 1].iter().copied().collect();
                let cands: Vec<usize> = g
                    .neighbors(last)
                    .iter()
                    .copied()
                    .filter(|&c| {
                        !paths[i].contains(&c)
                            && !others.contains(&c)
                            && g.neighbors(c).iter().all(|y| !others.contains(y) && !own.contains(y))
                    })
                    .collect();
                if let Some(&c) = cands.choose(&mut r) {
                    paths[i].push(c);
                }
            }
        }
        return ThreePaths { esd, paths };
    }
    unreachable!()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::esd::{is_faithful, validate_esd};
    use crate::graph::is_induced_path;

    #[test]
    fn hand_built_fixtures_are_valid_and_faithful() {
        for (name, esd) in hand_built() {
            let v = validate_esd(&esd);
            assert!(v.ok, "{name}: {:?}", v.violations);
            assert!(is_faithful(&esd).faithful, "{name}");
        }
        let f = with_outside_components();
        assert_eq!(f.graph.induced(&(0..7).collect()).graph, f.esd.host);
    }

    #[test]
    fn each_mutation_breaks_only_its_condition() {
        for (name, esd) in hand_built() {
            let ms = mutations(&esd);
            assert_eq!(ms.len(), 7);
            for m in ms {
                let v = validate_esd(&m.esd);
                assert_eq!(v.conditions(), vec![m.target], "{name} / {}: {:?}", m.name, v.violations);
            }
        }
    }

    #[test]
    fn random_strips_are_valid_and_faithful() {
        for seed in 0..40 {
            let esd = random_strip_esd(7, seed).unwrap();
            let v = validate_esd(&esd);
            assert!(v.ok, "seed {seed}: {:?}", v.violations);
            assert!(is_faithful(&esd).faithful);
        }
    }

    #[test]
    fn three_path_instances_meet_preconditions() {
        for seed in 0..20 {
            let t = three_paths_instance(seed);
            for p in &t.paths {
                assert!(is_induced_path(&t.esd.host, p));
                assert!(t.esd.z.contains(&p[0]));
            }
        }
    }

    #[test]
    fn line_graph_constructor_rejects_non_trees() {
        assert!(line_graph_of_tree(&generate::cycle(4).unwrap()).is_err());
        assert!(line_graph_of_tree(&generate::path(2).unwrap()).is_err());
    }
}
