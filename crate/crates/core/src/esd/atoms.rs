use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::{anticomplete, closed_nbhd, is_induced_path, Graph, VertexSet};

use super::{fmt_edge, fmt_triangle, pedge, validate_esd, Esd, EsdError, PEdge};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", content = "element", rename_all = "snake_case")]
pub enum AtomSource {
    Vertex(usize),
    Triangle([usize; 3]),
    EdgeInterior(PEdge),
}

impl fmt::Display for AtomSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AtomSource::Vertex(v) => write!(f, "η({v})"),
            AtomSource::Triangle(t) => write!(f, "η({})", fmt_triangle(*t)),
            AtomSource::EdgeInterior(e) => write!(f, "interior of η({})", fmt_edge(*e)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Atom {
    pub source: AtomSource,
    pub vertices: VertexSet,
}

/// An atom with its boundary and a core of at most three vertices whose
/// closed neighbourhood covers the boundary.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtomCore {
    pub atom: Atom,
    pub boundary: VertexSet,
    pub core: VertexSet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Faithfulness {
    pub faithful: bool,
    /// A rung for every pattern edge, listed from the end at the larger
    /// pattern vertex to the end at the smaller one; `None` if none exists.
    pub rungs: BTreeMap<String, Option<Vec<usize>>>,
}

/// All atoms, vertex atoms first, then triangles, then edge interiors, each
/// group ordered by element. Empty atoms are listed too.
pub fn atoms(esd: &Esd) -> Vec<Atom> {
    let mut out = Vec::new();
    for v in esd.pattern.base().vertices() {
        out.push(Atom { source: AtomSource::Vertex(v), vertices: esd.vertex_zone(v).clone() });
    }
    for &t in esd.pattern.triangles() {
        out.push(Atom { source: AtomSource::Triangle(t), vertices: esd.triangle_zone(t).clone() });
    }
    for e in esd.pattern.edges() {
        out.push(Atom { source: AtomSource::EdgeInterior(e), vertices: esd.edge_interior(e) });
    }
    out
}

/// `δ(A)` by the kind of atom.
pub(crate) fn boundary(esd: &Esd, source: AtomSource) -> VertexSet {
    match source {
        AtomSource::Vertex(v) => esd.ends_at(v),
        AtomSource::Triangle(t) => {
            let mut out = VertexSet::new();
            for (a, b) in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
                let e = pedge(a, b);
                out.extend_from(&esd.end(e, a).intersection(esd.end(e, b)));
            }
            out
        }
        AtomSource::EdgeInterior(e) => esd.end(e, e.0).union(esd.end(e, e.1)),
    }
}

/// A shortest path inside `η(e)` from `η(e, e.1)` to `η(e, e.0)` whose
/// interior avoids both ends. Shortest implies induced.
pub(crate) fn rung(esd: &Esd, e: PEdge) -> Option<Vec<usize>> {
    let g = &esd.host;
    let from = esd.end(e, e.1);
    let to = esd.end(e, e.0);
    let zone = esd.edge_zone(e);
    if let Some(&x) = from.iter().find(|x| to.contains(x) && zone.contains(x)) {
        return Some(vec![x]);
    }
    let interior = esd.edge_interior(e);
    let mut parent: BTreeMap<usize, usize> = BTreeMap::new();
    let mut queue: VecDeque<usize> = VecDeque::new();
    for &s in from.iter().filter(|&&s| zone.contains(&s) && s < g.n()) {
        parent.insert(s, s);
        queue.push_back(s);
    }
    while let Some(x) = queue.pop_front() {
        for &y in g.neighbors(x) {
            if parent.contains_key(&y) {
                continue;
            }
            if to.contains(&y) && zone.contains(&y) {
                let mut path = vec![y, x];
                let mut at = x;
                while parent[&at] != at {
                    at = parent[&at];
                    path.push(at);
                }
                path.reverse();
                return Some(path);
            }
            if interior.contains(&y) {
                parent.insert(y, x);
                queue.push_back(y);
            }
        }
    }
    None
}

pub fn is_faithful(esd: &Esd) -> Faithfulness {
    let mut rungs = BTreeMap::new();
    let mut faithful = true;
    for e in esd.pattern.edges() {
        let r = rung(esd, e);
        faithful &= r.is_some();
        rungs.insert(fmt_edge(e), r);
    }
    Faithfulness { faithful, rungs }
}

pub(crate) fn require_valid_faithful(esd: &Esd) -> Result<(), EsdError> {
    let verdict = validate_esd(esd);
    if !verdict.ok {
        return Err(EsdError::Invalid(format!("{} violations, first: {}", verdict.violations.len(), verdict.violations[0].detail)));
    }
    for e in esd.pattern.edges() {
        if rung(esd, e).is_none() {
            return Err(EsdError::NotFaithful(e));
        }
    }
    Ok(())
}

/// Atoms with boundaries and cores of size at most three, built by the case
/// analysis below and checked before being returned.
pub fn atoms_and_boundaries(esd: &Esd) -> Result<Vec<AtomCore>, EsdError> {
    require_valid_faithful(esd)?;
    atoms(esd).into_iter().map(|atom| core_of(esd, atom)).collect()
}

/// Any vertex of `η(e, v)`; nonempty because every edge has a rung.
fn end_vertex(esd: &Esd, e: PEdge, v: usize) -> Result<usize, EsdError> {
    esd.end(e, v).least().ok_or(EsdError::NotFaithful(e))
}

/// The edges at `v` other than `e`, in order.
fn others_at(esd: &Esd, v: usize, e: PEdge) -> Vec<PEdge> {
    esd.pattern.incident(v).into_iter().filter(|&f| f != e).collect()
}

pub(crate) fn core_of(esd: &Esd, atom: Atom) -> Result<AtomCore, EsdError> {
    let h = esd.pattern.base();
    let delta = boundary(esd, atom.source);
    let core: VertexSet = match atom.source {
        AtomSource::Vertex(v) => match h.degree(v) {
            0 => VertexSet::new(),
            // The end at a degree-one vertex is a single terminal.
            1 => delta.clone(),
            _ => {
                let inc = esd.pattern.incident(v);
                // Ends at v of distinct edges are pairwise adjacent, so one
                // end from each of two edges dominates all of them.
                [end_vertex(esd, inc[0], v)?, end_vertex(esd, inc[1], v)?].into_iter().collect()
            }
        },
        AtomSource::Triangle([a, b, c]) => {
            let x = end_vertex(esd, pedge(a, b), a)?;
            let y = end_vertex(esd, pedge(a, c), a)?;
            let z = end_vertex(esd, pedge(a, b), b)?;
            [x, y, z].into_iter().collect()
        }
        AtomSource::EdgeInterior(e) => {
            let (du, dv) = (h.degree(e.0), h.degree(e.1));
            if du == 1 && dv == 1 {
                delta.clone()
            } else {
                // u has another edge f; an end of f at u dominates η(e, u).
                let (u, v) = if du >= 2 { (e.0, e.1) } else { (e.1, e.0) };
                let x = end_vertex(esd, others_at(esd, u, e)[0], u)?;
                let mut core = VertexSet::singleton(x);
                if h.degree(v) == 1 {
                    core.extend_from(esd.end(e, v));
                } else {
                    core.insert(end_vertex(esd, others_at(esd, v, e)[0], v)?);
                }
                core
            }
        }
    };
    if core.len() > 3 {
        return Err(EsdError::Internal(format!("core of {} has {} vertices", atom.source, core.len())));
    }
    let covered = closed_nbhd(&esd.host, &core);
    if !delta.is_subset(&covered) {
        return Err(EsdError::Internal(format!(
            "boundary {delta} of {} is not inside N[{core}] = {covered}",
            atom.source
        )));
    }
    Ok(AtomCore { atom, boundary: delta, core })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathsReport {
    pub atom: AtomSource,
    /// Whether `N[A] ∩ Q_i` is empty, for each of the three paths.
    pub empty: [bool; 3],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThreePathsVerdict {
    pub ok: bool,
    pub atoms: Vec<PathsReport>,
}

/// For three pairwise anticomplete induced paths, each with an end in `z`,
/// every atom should miss at least one of them with its closed
/// neighbourhood.
pub fn three_paths_check(g: &Graph, z: &VertexSet, esd: &Esd, paths: [&[usize]; 3]) -> Result<ThreePathsVerdict, EsdError> {
    if esd.host != *g || esd.z != *z {
        return Err(EsdError::Precondition("decomposition is not of (g, z)".into()));
    }
    if z.len() < 3 {
        return Err(EsdError::Precondition(format!("|Z| = {} < 3", z.len())));
    }
    let verdict = validate_esd(esd);
    if !verdict.ok {
        return Err(EsdError::Precondition(format!("decomposition is invalid: {}", verdict.violations[0].detail)));
    }
    let sets: Vec<VertexSet> = paths.iter().map(|p| p.iter().copied().collect()).collect();
    for (i, p) in paths.iter().enumerate() {
        if p.is_empty() || !is_induced_path(g, p) {
            return Err(EsdError::Precondition(format!("Q{} is not a path", i + 1)));
        }
        if !z.contains(&p[0]) && !z.contains(&p[p.len() - 1]) {
            return Err(EsdError::Precondition(format!("Q{} has no end in Z", i + 1)));
        }
    }
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        if !anticomplete(g, &sets[i], &sets[j]) {
            return Err(EsdError::Precondition(format!("Q{} and Q{} are not anticomplete", i + 1, j + 1)));
        }
    }
    let mut reports = Vec::new();
    for atom in atoms(esd) {
        let nb = closed_nbhd(g, &atom.vertices);
        let empty = [0, 1, 2].map(|i| nb.is_disjoint(&sets[i]));
        reports.push(PathsReport { atom: atom.source, empty });
    }
    let ok = reports.iter().all(|r| r.empty.iter().any(|&e| e));
    Ok(ThreePathsVerdict { ok, atoms: reports })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::esd::fixtures;

    #[test]
    fn single_strip_atoms_and_rung() {
        let esd = fixtures::single_strip();
        let f = is_faithful(&esd);
        assert!(f.faithful);
        assert_eq!(f.rungs["0-1"], Some(vec![2, 1, 0]));
        let cores = atoms_and_boundaries(&esd).unwrap();
        let edge = cores.iter().find(|c| matches!(c.atom.source, AtomSource::EdgeInterior(_))).unwrap();
        assert_eq!(edge.atom.vertices, VertexSet::from([1]));
        assert_eq!(edge.boundary, VertexSet::from([0, 2]));
        assert!(edge.core.len() <= 2);
        // Vertex atoms at degree-one pattern vertices have a one-vertex boundary.
        let at0 = cores.iter().find(|c| c.atom.source == AtomSource::Vertex(0)).unwrap();
        assert_eq!((at0.boundary.len(), at0.core.len()), (1, 1));
    }

    #[test]
    fn missing_end_is_not_faithful() {
        let mut esd = fixtures::single_strip();
        esd.set_end(0, 1, 0, VertexSet::new());
        assert!(!is_faithful(&esd).faithful);
    }

    #[test]
    fn single_vertex_rung() {
        let g = Graph::empty(1);
        let mut esd = Esd::new(g, VertexSet::new(), crate::esd::PatternGraph::new(crate::graph::generate::cycle(3).unwrap()));
        esd.set_edge(0, 1, [0]).set_end(0, 1, 0, [0]).set_end(0, 1, 1, [0]);
        assert_eq!(rung(&esd, (0, 1)), Some(vec![0]));
    }

    #[test]
    fn triangle_atom_core() {
        let esd = fixtures::triangle_pattern();
        let cores = atoms_and_boundaries(&esd).unwrap();
        let tri = cores.iter().find(|c| matches!(c.atom.source, AtomSource::Triangle(_))).unwrap();
        assert!(!tri.boundary.is_empty());
        assert!(tri.core.len() <= 3);
    }

    #[test]
    fn three_paths_preconditions() {
        let esd = fixtures::with_outside_components().esd;
        let z = esd.z.clone();
        let g = esd.host.clone();
        let z: Vec<usize> = z.to_vec();
        let ok = three_paths_check(&g, &esd.z, &esd, [&[z[0]], &[z[1]], &[z[2]]]).unwrap();
        assert!(ok.ok);
        // An atom far from all three paths misses each of them.
        assert!(ok.atoms.iter().any(|r| r.empty == [true, true, true]));
        let n0: Vec<usize> = vec![z[0], *g.neighbors(z[0]).iter().next().unwrap()];
        let n1: Vec<usize> = vec![z[1], *g.neighbors(z[1]).iter().next().unwrap()];
        assert!(matches!(three_paths_check(&g, &esd.z, &esd, [&n0, &n1, &[z[2]]]), Err(EsdError::Precondition(_))));
    }
}
