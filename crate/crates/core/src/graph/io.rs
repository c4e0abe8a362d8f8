//! graph6 and whitespace edge-list formats.

use std::fmt::Write as _;
use std::str::FromStr;

use super::{Graph, GraphError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Graph6,
    Edgelist,
}

impl FromStr for Format {
    type Err = GraphError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "graph6" | "g6" => Ok(Format::Graph6),
            "edgelist" | "edges" | "el" => Ok(Format::Edgelist),
            other => Err(GraphError::Parameter(format!("unknown format {other:?}"))),
        }
    }
}

impl Format {
    /// Guess from a file name: `.g6`/`.graph6` is graph6, anything else an
    /// edge list.
    pub fn from_path(path: &str) -> Format {
        if path.ends_with(".g6") || path.ends_with(".graph6") {
            Format::Graph6
        } else {
            Format::Edgelist
        }
    }
}

pub fn parse_graph(text: &str, format: Format) -> Result<Graph, GraphError> {
    match format {
        Format::Graph6 => parse_graph6(text),
        Format::Edgelist => parse_edgelist(text),
    }
}

pub fn emit_graph(g: &Graph, format: Format) -> String {
    match format {
        Format::Graph6 => emit_graph6(g),
        Format::Edgelist => emit_edgelist(g),
    }
}

const HEADER: &str = ">>graph6<<";

pub fn parse_graph6(text: &str) -> Result<Graph, GraphError> {
    let line = text.trim_end_matches(['\n', '\r']);
    let line = line.strip_prefix(HEADER).unwrap_or(line);
    let bytes = line.as_bytes();
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(GraphError::Graph6(format!("byte {b} outside 63..=126")));
    }
    let (n, rest) = read_size(bytes)?;
    let nbits = n * n.saturating_sub(1) / 2;
    let need = nbits.div_ceil(6);
    if rest.len() != need {
        return Err(GraphError::Graph6(format!(
            "expected {need} adjacency bytes for {n} vertices, found {}",
            rest.len()
        )));
    }
    let bit = |k: usize| (rest[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    for k in nbits..need * 6 {
        if bit(k) {
            return Err(GraphError::Graph6("nonzero padding bits".into()));
        }
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, edges)
}

fn read_size(bytes: &[u8]) -> Result<(usize, &[u8]), GraphError> {
    let short = || GraphError::Graph6("truncated size header".into());
    let word = |bs: &[u8]| bs.iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
    match bytes {
        [] => Err(short()),
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err(short());
            }
            Ok((word(&rest[..6]), &rest[6..]))
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(short());
            }
            Ok((word(&rest[..3]), &rest[3..]))
        }
        [b, rest @ ..] => Ok(((b - 63) as usize, rest)),
    }
}

pub fn emit_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    let push_word = |out: &mut Vec<u8>, x: usize, len: usize| {
        for s in (0..len).rev() {
            out.push(((x >> (6 * s)) & 63) as u8 + 63);
        }
    };
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        push_word(&mut out, n, 3);
    } else {
        out.push(126);
        out.push(126);
        push_word(&mut out, n, 6);
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

/// Marker written by [`emit_edgelist`] so isolated trailing vertices survive.
const VERTEX_HEADER: &str = "# vertices:";

pub fn parse_edgelist(text: &str) -> Result<Graph, GraphError> {
    let mut declared = None;
    let mut edges = Vec::new();
    let mut max_id = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if let Some(rest) = trimmed.strip_prefix(VERTEX_HEADER) {
            let n = rest.trim().parse::<usize>().map_err(|_| GraphError::EdgeList {
                line,
                msg: format!("bad vertex count {:?}", rest.trim()),
            })?;
            declared = Some(n);
            continue;
        }
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(GraphError::EdgeList { line, msg: format!("expected 2 fields, found {}", fields.len()) });
        }
        let mut ends = [0usize; 2];
        for (slot, f) in ends.iter_mut().zip(&fields) {
            *slot = f.parse().map_err(|_| GraphError::EdgeList {
                line,
                msg: format!("{f:?} is not a nonnegative integer"),
            })?;
        }
        let [u, v] = ends;
        if u == v {
            return Err(GraphError::EdgeList { line, msg: format!("self-loop at {u}") });
        }
        max_id = Some(max_id.unwrap_or(0).max(u).max(v));
        edges.push((u, v, line));
    }
    let n = match (declared, max_id) {
        (Some(n), Some(m)) if m >= n => {
            let line = edges.iter().find(|e| e.0 >= n || e.1 >= n).map(|e| e.2).unwrap_or(0);
            return Err(GraphError::EdgeList { line, msg: format!("endpoint {m} out of range for {n} vertices") });
        }
        (Some(n), _) => n,
        (None, Some(m)) => m + 1,
        (None, None) => 0,
    };
    let mut g = Graph::empty(n);
    for (u, v, line) in edges {
        if !g.adj[u].insert(v) {
            return Err(GraphError::EdgeList { line, msg: format!("duplicate edge {}-{}", u.min(v), u.max(v)) });
        }
        g.adj[v].insert(u);
        g.edge_count += 1;
    }
    Ok(g)
}

pub fn emit_edgelist(g: &Graph) -> String {
    let mut out = format!("{VERTEX_HEADER} {}\n", g.n());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate;

    #[test]
    fn graph6_known_strings() {
        assert_eq!(emit_graph6(&Graph::empty(0)), "?");
        assert_eq!(emit_graph6(&generate::complete(3).unwrap()), "Bw");
        // Standard example: the 5-cycle 0-1-2-3-4-0 from the format description.
        let c5 = parse_graph6("Dhc").unwrap();
        assert_eq!(c5.n(), 5);
        assert_eq!(c5.edge_count(), 5);
        assert!((0..5).all(|v| c5.degree(v) == 2));
        assert_eq!(parse_graph6(">>graph6<<Bw\n").unwrap(), generate::complete(3).unwrap());
    }

    #[test]
    fn graph6_round_trip_large_header() {
        let g = generate::gnp(70, 0.1, 3).unwrap();
        let s = emit_graph6(&g);
        assert!(s.starts_with('~'));
        assert_eq!(parse_graph6(&s).unwrap(), g);
    }

    #[test]
    fn graph6_rejects_malformed() {
        assert!(parse_graph6("").is_err());
        assert!(parse_graph6("B").is_err());
        assert!(parse_graph6("Bww").is_err());
        assert!(parse_graph6("B\x7f").is_err());
        // K3 is "Bw" = 111000; set a padding bit.
        assert!(parse_graph6("Bx").is_err());
    }

    #[test]
    fn edgelist_examples() {
        let g = parse_edgelist("0 1\n1 2").unwrap();
        assert_eq!(g, generate::path(3).unwrap());
        let err = parse_edgelist("# c\n0 0\n").unwrap_err();
        assert_eq!(err, GraphError::EdgeList { line: 2, msg: "self-loop at 0".into() });
        assert!(matches!(parse_edgelist("0 1\n1 0"), Err(GraphError::EdgeList { line: 2, .. })));
        assert!(matches!(parse_edgelist("0 x"), Err(GraphError::EdgeList { line: 1, .. })));
        assert!(matches!(parse_edgelist("0 -1"), Err(GraphError::EdgeList { line: 1, .. })));
        let iso = Graph::from_edges(4, [(0, 1)]).unwrap();
        assert_eq!(parse_edgelist(&emit_edgelist(&iso)).unwrap(), iso);
        assert!(parse_edgelist("# vertices: 2\n0 5\n").is_err());
    }
}
