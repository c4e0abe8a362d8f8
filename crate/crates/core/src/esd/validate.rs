use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{fmt_edge, fmt_triangle, pedge, Esd, PEdge};

/// Which defining condition a violation breaks. `Domain` covers keys and
/// vertices that do not exist; the others follow the definition in order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Condition {
    #[serde(rename = "domain")]
    Domain,
    /// Every host vertex lies in some zone.
    #[serde(rename = "coverage")]
    Coverage,
    /// Zones of distinct elements are disjoint.
    #[serde(rename = "disjoint")]
    Disjoint,
    /// `η(e, v) ⊆ η(e)`.
    #[serde(rename = "end-in-zone")]
    EndInZone,
    /// Edges between distinct edge zones are exactly those between ends at a
    /// shared pattern vertex.
    #[serde(rename = "cross-edge")]
    CrossEdge,
    /// Edges leaving a vertex zone land in an end at that vertex.
    #[serde(rename = "vertex-exit")]
    VertexExit,
    /// Edges leaving a triangle zone land in both ends of a triangle edge.
    #[serde(rename = "triangle-exit")]
    TriangleExit,
    /// Terminals match the degree-one pattern vertices.
    #[serde(rename = "terminals")]
    Terminals,
}

impl Condition {
    pub fn id(self) -> &'static str {
        match self {
            Condition::Domain => "domain",
            Condition::Coverage => "coverage",
            Condition::Disjoint => "disjoint",
            Condition::EndInZone => "end-in-zone",
            Condition::CrossEdge => "cross-edge",
            Condition::VertexExit => "vertex-exit",
            Condition::TriangleExit => "triangle-exit",
            Condition::Terminals => "terminals",
        }
    }

    pub const STRUCTURAL: [Condition; 7] = [
        Condition::Coverage,
        Condition::Disjoint,
        Condition::EndInZone,
        Condition::CrossEdge,
        Condition::VertexExit,
        Condition::TriangleExit,
        Condition::Terminals,
    ];
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub condition: Condition,
    /// A vertex, or the two ends of an offending host edge or non-edge.
    pub witness: Vec<usize>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EsdVerdict {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

impl EsdVerdict {
    pub fn conditions(&self) -> Vec<Condition> {
        let mut c: Vec<Condition> = self.violations.iter().map(|v| v.condition).collect();
        c.sort_unstable();
        c.dedup();
        c
    }
}

/// Zone owners, used to name elements in reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Element {
    Vertex(usize),
    Edge(PEdge),
    Triangle([usize; 3]),
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Vertex(v) => write!(f, "vertex {v}"),
            Element::Edge(e) => write!(f, "edge {}", fmt_edge(*e)),
            Element::Triangle(t) => write!(f, "triangle {}", fmt_triangle(*t)),
        }
    }
}

/// Check every condition and report every violation, ordered by condition
/// and then by witness.
pub fn validate_esd(esd: &Esd) -> EsdVerdict {
    let mut out = Vec::new();
    let mut push = |condition, witness: Vec<usize>, detail: String| out.push(Violation { condition, witness, detail });
    let g = &esd.host;
    let h = esd.pattern.base();
    let n = g.n();

    // Domain: keys must name pattern elements, sets must name host vertices.
    for (&v, set) in &esd.eta_vertex {
        if v >= h.n() {
            push(Condition::Domain, set.to_vec(), format!("vertex zone for missing pattern vertex {v}"));
        }
    }
    for (&e, set) in &esd.eta_edge {
        if e.0 >= h.n() || e.1 >= h.n() || !h.has_edge(e.0, e.1) || e != pedge(e.0, e.1) {
            push(Condition::Domain, set.to_vec(), format!("edge zone for non-edge {}", fmt_edge(e)));
        }
    }
    for (&t, set) in &esd.eta_triangle {
        if !esd.pattern.triangles().contains(&t) {
            push(Condition::Domain, set.to_vec(), format!("triangle zone for non-triangle {}", fmt_triangle(t)));
        }
    }
    for (&(e, v), set) in &esd.eta_edge_end {
        let is_edge = e.0 < h.n() && e.1 < h.n() && h.has_edge(e.0, e.1) && e == pedge(e.0, e.1);
        if !is_edge || (v != e.0 && v != e.1) {
            push(Condition::Domain, set.to_vec(), format!("end zone for ({}, {v}) which is not an incidence", fmt_edge(e)));
        }
    }
    let all_sets = esd
        .eta_vertex
        .values()
        .chain(esd.eta_edge.values())
        .chain(esd.eta_triangle.values())
        .chain(esd.eta_edge_end.values())
        .chain(std::iter::once(&esd.z));
    let mut outside: Vec<usize> = all_sets.flat_map(|s| s.iter().copied()).filter(|&x| x >= n).collect();
    outside.sort_unstable();
    outside.dedup();
    for x in outside {
        push(Condition::Domain, vec![x], format!("vertex {x} is not in the host graph"));
    }

    // Owners of each host vertex among vertex, edge and triangle zones.
    let mut owners: Vec<Vec<Element>> = vec![Vec::new(); n];
    let zones = esd
        .eta_vertex
        .iter()
        .map(|(&v, s)| (Element::Vertex(v), s))
        .chain(esd.eta_edge.iter().map(|(&e, s)| (Element::Edge(e), s)))
        .chain(esd.eta_triangle.iter().map(|(&t, s)| (Element::Triangle(t), s)));
    for (el, set) in zones {
        for &x in set.iter().filter(|&&x| x < n) {
            owners[x].push(el);
        }
    }

    // Coverage and disjointness.
    for (x, own) in owners.iter().enumerate() {
        if own.is_empty() {
            push(Condition::Coverage, vec![x], format!("vertex {x} lies in no zone"));
        }
    }
    for (x, own) in owners.iter().enumerate() {
        if own.len() > 1 {
            let names: Vec<String> = own.iter().map(|e| e.to_string()).collect();
            push(Condition::Disjoint, vec![x], format!("vertex {x} lies in the zones of {}", names.join(", ")));
        }
    }

    // Ends inside their edge zones.
    for (&(e, v), set) in &esd.eta_edge_end {
        for &x in set.difference(esd.edge_zone(e)).iter() {
            push(Condition::EndInZone, vec![x], format!("vertex {x} is in η({}, {v}) but not in η({})", fmt_edge(e), fmt_edge(e)));
        }
    }

    // Cross edges, both directions. Unjustified edges first.
    let edge_owners = |x: usize| -> Vec<PEdge> {
        owners.get(x).map_or(Vec::new(), |o| {
            o.iter().filter_map(|el| if let Element::Edge(e) = el { Some(*e) } else { None }).collect()
        })
    };
    let justified = |x: usize, e: PEdge, y: usize, f: PEdge| -> bool {
        [e.0, e.1].into_iter().any(|v| (v == f.0 || v == f.1) && esd.end(e, v).contains(&x) && esd.end(f, v).contains(&y))
    };
    for (x, y) in g.edges() {
        for e in edge_owners(x) {
            for f in edge_owners(y) {
                if e != f && !justified(x, e, y, f) {
                    push(
                        Condition::CrossEdge,
                        vec![x, y],
                        format!("edge {x}-{y} joins η({}) and η({}) outside ends at a shared vertex", fmt_edge(e), fmt_edge(f)),
                    );
                }
            }
        }
    }
    let mut missing = Vec::new();
    for v in h.vertices() {
        let inc = esd.pattern.incident(v);
        for (i, &e) in inc.iter().enumerate() {
            for &f in &inc[i + 1..] {
                for &x in esd.end(e, v).intersection(esd.edge_zone(e)).iter() {
                    for &y in esd.end(f, v).intersection(esd.edge_zone(f)).iter() {
                        if x != y && x < n && y < n && !g.has_edge(x, y) {
                            missing.push((x.min(y), x.max(y), e, f, v));
                        }
                    }
                }
            }
        }
    }
    missing.sort_unstable();
    missing.dedup();
    for (x, y, e, f, v) in missing {
        push(
            Condition::CrossEdge,
            vec![x, y],
            format!("non-edge {x}-{y} between η({}, {v}) and η({}, {v})", fmt_edge(e), fmt_edge(f)),
        );
    }

    // Edges leaving vertex zones.
    for (&v, set) in &esd.eta_vertex {
        if v >= h.n() {
            continue;
        }
        let ends = esd.ends_at(v);
        for &x in set.iter().filter(|&&x| x < n) {
            for &y in g.neighbors(x) {
                if !set.contains(&y) && !ends.contains(&y) {
                    push(Condition::VertexExit, vec![x, y], format!("edge {x}-{y} leaves η({v}) outside the ends at {v}"));
                }
            }
        }
    }

    // Edges leaving triangle zones.
    for (&t, set) in &esd.eta_triangle {
        if !esd.pattern.triangles().contains(&t) {
            continue;
        }
        let mut gate = crate::graph::VertexSet::new();
        for (a, b) in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
            let e = pedge(a, b);
            gate.extend_from(&esd.end(e, a).intersection(esd.end(e, b)));
        }
        for &x in set.iter().filter(|&&x| x < n) {
            for &y in g.neighbors(x) {
                if !set.contains(&y) && !gate.contains(&y) {
                    push(
                        Condition::TriangleExit,
                        vec![x, y],
                        format!("edge {x}-{y} leaves η({}) outside the shared ends of its edges", fmt_triangle(t)),
                    );
                }
            }
        }
    }

    // Terminals.
    let w = esd.pattern.degree_one();
    if esd.z.len() != w.len() {
        push(
            Condition::Terminals,
            esd.z.to_vec(),
            format!("|Z| = {} but the pattern has {} vertices of degree one", esd.z.len(), w.len()),
        );
    }
    let slots: BTreeMap<usize, usize> = w
        .iter()
        .filter_map(|&wv| {
            let e = esd.pattern.incident(wv)[0];
            let end = esd.end(e, wv);
            (end.len() == 1).then(|| (end.least().unwrap(), wv))
        })
        .collect();
    for &z in esd.z.iter() {
        if !slots.contains_key(&z) {
            push(Condition::Terminals, vec![z], format!("terminal {z} is not the sole end at any degree-one vertex"));
        }
    }

    out.sort_by(|a, b| (a.condition, &a.witness).cmp(&(b.condition, &b.witness)));
    EsdVerdict { ok: out.is_empty(), violations: out }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::esd::fixtures;

    #[test]
    fn single_strip_examples() {
        let esd = fixtures::single_strip();
        assert!(validate_esd(&esd).ok);

        let mut bad = esd.clone();
        bad.set_end(0, 1, 0, [1]);
        assert_eq!(validate_esd(&bad).conditions(), vec![Condition::Terminals]);

        // With one pattern edge the cross-edge condition has no pair e ≠ f to
        // constrain, so a chord between the two ends is allowed.
        let mut chord = esd.clone();
        chord.host = crate::graph::Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(validate_esd(&chord).ok);
    }

    #[test]
    fn domain_errors() {
        let mut esd = fixtures::single_strip();
        esd.set_vertex(5, [0]);
        esd.set_end(0, 1, 7, [9]);
        let v = validate_esd(&esd);
        assert!(v.conditions().contains(&Condition::Domain));
        assert!(v.violations.iter().any(|x| x.witness == vec![9]));
    }
}
