//! DIMACS edge format (`p edge n m`, `e u v`, 1-indexed) and the JSON graph format.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{Graph, GraphJson};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: missing or malformed `p edge <n> <m>` header")]
    Header { line: usize },
    #[error("line {line}: duplicate problem line")]
    DuplicateHeader { line: usize },
    #[error("line {line}: edge line before the problem line")]
    EdgeBeforeHeader { line: usize },
    #[error("line {line}: malformed edge line")]
    Edge { line: usize },
    #[error("line {line}: vertex {vertex} outside 1..={n}")]
    VertexOutOfRange { line: usize, vertex: usize, n: usize },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: unrecognized line")]
    Unknown { line: usize },
    #[error("invalid JSON graph: {0}")]
    Json(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DimacsWarning {
    /// The header's edge count disagrees with the number of `e` lines read.
    EdgeCountMismatch { declared: usize, found: usize },
}

/// Parses DIMACS text, returning non-fatal warnings alongside the graph.
pub fn parse_dimacs_with_warnings(text: &str) -> Result<(Graph, Vec<DimacsWarning>), ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut tok = raw.split_whitespace();
        match tok.next() {
            None | Some("c") => continue,
            Some(t) if t.starts_with('c') => continue,
            Some("p") => {
                if header.is_some() {
                    return Err(ParseError::DuplicateHeader { line });
                }
                let fmt = tok.next();
                if !matches!(fmt, Some("edge") | Some("col") | Some("edges")) {
                    return Err(ParseError::Header { line });
                }
                let n = tok.next().and_then(|s| s.parse().ok());
                let m = tok.next().and_then(|s| s.parse().ok());
                match (n, m, tok.next()) {
                    (Some(n), Some(m), None) => header = Some((n, m)),
                    _ => return Err(ParseError::Header { line }),
                }
            }
            Some("e") => {
                let Some((n, _)) = header else {
                    return Err(ParseError::EdgeBeforeHeader { line });
                };
                let u: Option<usize> = tok.next().and_then(|s| s.parse().ok());
                let v: Option<usize> = tok.next().and_then(|s| s.parse().ok());
                let (Some(u), Some(v), None) = (u, v, tok.next()) else {
                    return Err(ParseError::Edge { line });
                };
                for vertex in [u, v] {
                    if vertex == 0 || vertex > n {
                        return Err(ParseError::VertexOutOfRange { line, vertex, n });
                    }
                }
                if u == v {
                    return Err(ParseError::SelfLoop { line, vertex: u });
                }
                edges.push((u - 1, v - 1));
            }
            Some(_) => return Err(ParseError::Unknown { line }),
        }
    }
    let (n, m) = header.ok_or(ParseError::Header { line: 0 })?;
    let mut warnings = Vec::new();
    if m != edges.len() {
        warnings.push(DimacsWarning::EdgeCountMismatch {
            declared: m,
            found: edges.len(),
        });
    }
    let g = Graph::new(n, edges).expect("endpoints validated above");
    Ok((g, warnings))
}

/// Parses DIMACS text; warnings are logged.
pub fn parse_dimacs(text: &str) -> Result<Graph, ParseError> {
    let (g, warnings) = parse_dimacs_with_warnings(text)?;
    for w in warnings {
        log::warn!("dimacs: {w:?}");
    }
    Ok(g)
}

pub fn write_dimacs(g: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    out
}

pub fn parse_json(text: &str) -> Result<Graph, ParseError> {
    let j: GraphJson = serde_json::from_str(text).map_err(|e| ParseError::Json(e.to_string()))?;
    Graph::try_from(j).map_err(|e| ParseError::Json(e.to_string()))
}

pub fn write_json(g: &Graph) -> String {
    serde_json::to_string(&GraphJson::from(g)).expect("graph serializes")
}

/// Accepts either format: text starting with `{` is JSON, anything else DIMACS.
pub fn parse_any(text: &str) -> Result<Graph, ParseError> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_dimacs(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_triangle() {
        let g = parse_dimacs("c a triangle\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\n").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn parses_isolated() {
        let g = parse_dimacs("p edge 2 0").unwrap();
        assert_eq!((g.n(), g.edge_count()), (2, 0));
    }

    #[test]
    fn c5_round_trip() {
        let c5 = Graph::new(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        let text = write_dimacs(&c5);
        assert_eq!(text, "p edge 5 5\ne 1 2\ne 1 5\ne 2 3\ne 3 4\ne 4 5\n");
        assert_eq!(parse_dimacs(&text).unwrap(), c5);
    }

    #[test]
    fn edge_count_mismatch_is_a_warning() {
        let (g, w) = parse_dimacs_with_warnings("p edge 3 5\ne 1 2\n").unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(
            w,
            vec![DimacsWarning::EdgeCountMismatch {
                declared: 5,
                found: 1
            }]
        );
    }

    #[test]
    fn fatal_errors() {
        assert_eq!(
            parse_dimacs("p edge 3 1\ne 1 4\n"),
            Err(ParseError::VertexOutOfRange {
                line: 2,
                vertex: 4,
                n: 3
            })
        );
        assert!(matches!(parse_dimacs("p edge x 1\n"), Err(ParseError::Header { .. })));
        assert!(matches!(parse_dimacs("e 1 2\n"), Err(ParseError::EdgeBeforeHeader { .. })));
        assert!(matches!(parse_dimacs(""), Err(ParseError::Header { .. })));
        assert!(matches!(parse_dimacs("p edge 2 1\ne 1\n"), Err(ParseError::Edge { .. })));
        assert!(matches!(parse_dimacs("p edge 2 1\ne 2 2\n"), Err(ParseError::SelfLoop { .. })));
    }

    #[test]
    fn json_format() {
        let g = parse_json(r#"{"n": 3, "edges": [[0, 1], [1, 2]]}"#).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(write_json(&g), r#"{"n":3,"edges":[[0,1],[1,2]]}"#);
        assert!(parse_json(r#"{"n": 2, "edges": [[0, 2]]}"#).is_err());
        assert_eq!(parse_any(&write_json(&g)).unwrap(), g);
    }

    proptest! {
        #[test]
        fn round_trip(n in 1usize..20, raw in prop::collection::vec((0usize..20, 0usize..20), 0..60)) {
            let edges: Vec<_> = raw.into_iter().map(|(u, v)| (u % n, v % n)).filter(|(u, v)| u != v).collect();
            let g = Graph::new(n, edges).unwrap();
            let once = parse_dimacs(&write_dimacs(&g)).unwrap();
            prop_assert_eq!(&once, &g);
            prop_assert_eq!(write_dimacs(&once), write_dimacs(&g));
            prop_assert_eq!(parse_json(&write_json(&g)).unwrap(), g);
        }
    }
}
