//! JSON shape:
//! `{host:{n,edges}, Z:[..], pattern:{n,edges,triangles?},
//!   eta:{vertices:{"0":[..]}, edges:{"0-1":[..]}, triangles:{"0-1-2":[..]},
//!        edge_ends:{"0-1@0":[..]}}}`.
//! A supplied triangle list must equal the computed one.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::graph::{Graph, VertexSet};

use super::{fmt_edge, fmt_triangle, pedge, Esd, EsdError, PEdge, PatternGraph};

#[derive(Serialize, Deserialize)]
struct PatternRepr {
    n: usize,
    edges: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    triangles: Option<Vec<[usize; 3]>>,
}

#[derive(Serialize, Deserialize, Default)]
struct EtaRepr {
    #[serde(default)]
    vertices: BTreeMap<String, VertexSet>,
    #[serde(default)]
    edges: BTreeMap<String, VertexSet>,
    #[serde(default)]
    triangles: BTreeMap<String, VertexSet>,
    #[serde(default)]
    edge_ends: BTreeMap<String, VertexSet>,
}

#[derive(Serialize, Deserialize)]
struct EsdRepr {
    host: Graph,
    #[serde(rename = "Z")]
    z: VertexSet,
    pattern: PatternRepr,
    #[serde(default)]
    eta: EtaRepr,
}

pub(super) fn to_json(esd: &Esd) -> Value {
    let eta = EtaRepr {
        vertices: esd.eta_vertex.iter().map(|(v, s)| (v.to_string(), s.clone())).collect(),
        edges: esd.eta_edge.iter().map(|(e, s)| (fmt_edge(*e), s.clone())).collect(),
        triangles: esd.eta_triangle.iter().map(|(t, s)| (fmt_triangle(*t), s.clone())).collect(),
        edge_ends: esd.eta_edge_end.iter().map(|((e, v), s)| (format!("{}@{v}", fmt_edge(*e)), s.clone())).collect(),
    };
    let repr = EsdRepr {
        host: esd.host.clone(),
        z: esd.z.clone(),
        pattern: PatternRepr {
            n: esd.pattern.base().n(),
            edges: esd.pattern.edges(),
            triangles: Some(esd.pattern.triangles().to_vec()),
        },
        eta,
    };
    serde_json::to_value(repr).expect("decomposition serializes")
}

fn bad(msg: String) -> EsdError {
    EsdError::Malformed(msg)
}

fn ids(key: &str, sep: char, count: usize) -> Result<Vec<usize>, EsdError> {
    let parts: Vec<&str> = key.split(sep).collect();
    if parts.len() != count {
        return Err(bad(format!("key {key:?} should have {count} parts")));
    }
    parts.iter().map(|p| p.trim().parse::<usize>().map_err(|_| bad(format!("key {key:?} is not numeric")))).collect()
}

fn edge_key(key: &str) -> Result<PEdge, EsdError> {
    let v = ids(key, '-', 2)?;
    Ok(pedge(v[0], v[1]))
}

pub(super) fn from_json(text: &str) -> Result<Esd, EsdError> {
    let repr: EsdRepr = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
    let base = Graph::from_edges(repr.pattern.n, repr.pattern.edges).map_err(|e| bad(format!("pattern: {e}")))?;
    let pattern = match &repr.pattern.triangles {
        Some(t) => PatternGraph::with_triangles(base, t)?,
        None => PatternGraph::new(base),
    };
    let mut esd = Esd::new(repr.host, repr.z, pattern);
    for (k, s) in repr.eta.vertices {
        let v = k.trim().parse::<usize>().map_err(|_| bad(format!("vertex key {k:?} is not numeric")))?;
        esd.eta_vertex.insert(v, s);
    }
    for (k, s) in repr.eta.edges {
        esd.eta_edge.insert(edge_key(&k)?, s);
    }
    for (k, s) in repr.eta.triangles {
        let mut t: [usize; 3] = ids(&k, '-', 3)?.try_into().expect("three parts");
        t.sort_unstable();
        esd.eta_triangle.insert(t, s);
    }
    for (k, s) in repr.eta.edge_ends {
        let (e, v) = k.split_once('@').ok_or_else(|| bad(format!("edge end key {k:?} lacks '@'")))?;
        let at = v.trim().parse::<usize>().map_err(|_| bad(format!("edge end key {k:?} is not numeric")))?;
        esd.eta_edge_end.insert((edge_key(e)?, at), s);
    }
    Ok(esd)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::esd::fixtures;

    #[test]
    fn round_trip() {
        for (_, esd) in fixtures::hand_built() {
            let text = esd.to_json().to_string();
            assert_eq!(Esd::from_json(&text).unwrap(), esd);
        }
    }

    #[test]
    fn shape_and_triangle_check() {
        let v = fixtures::single_strip().to_json();
        assert_eq!(v["eta"]["edge_ends"]["0-1@0"], serde_json::json!([0]));
        assert_eq!(v["Z"], serde_json::json!([0, 2]));
        let wrong = r#"{"host":{"n":3,"edges":[[0,1],[1,2],[0,2]]},"Z":[],
            "pattern":{"n":3,"edges":[[0,1],[1,2],[0,2]],"triangles":[]},"eta":{}}"#;
        assert!(matches!(Esd::from_json(wrong), Err(EsdError::Malformed(_))));
    }
}
