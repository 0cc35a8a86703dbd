//! Text formats for [`MultiDigraph`].
//!
//! Edge list:
//!
//! ```text
//! vertices 2
//! 0 1 2
//! 1 0 2
//! ```
//!
//! A `vertices N` header followed by one `u v m` line per arc pair, sorted by
//! `(u, v)`. The parser also accepts blank lines, `#` comments, unsorted
//! lines and repeated pairs (multiplicities add up).
//!
//! JSON: `{"vertices": N, "arcs": [[u, v, m], ...]}` in the same order.
//!
//! DOT output repeats an edge `m` times for multiplicity `m`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::multidigraph::MultiDigraph;

/// Largest vertex count accepted from text input.
pub const MAX_PARSED_VERTICES: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("missing `vertices N` header")]
    MissingHeader,
    #[error("invalid JSON graph: {0}")]
    Json(String),
}

fn line_error(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Line {
        line,
        message: message.into(),
    }
}

pub fn to_edge_list(g: &MultiDigraph) -> String {
    let mut out = format!("vertices {}\n", g.vertex_count());
    for (u, v, m) in g.arcs() {
        writeln!(out, "{u} {v} {m}").expect("writing to a String");
    }
    out
}

pub fn parse_edge_list(text: &str) -> Result<MultiDigraph, ParseError> {
    let mut graph: Option<MultiDigraph> = None;
    for (index, raw) in text.lines().enumerate() {
        let line_no = index + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let Some(g) = graph.as_mut() else {
            graph = Some(parse_header(&fields, line_no)?);
            continue;
        };
        if fields.len() != 3 {
            return Err(line_error(
                line_no,
                format!("expected `u v m`, found {} fields", fields.len()),
            ));
        }
        let number = |s: &str, what: &str| {
            s.parse::<u64>()
                .map_err(|_| line_error(line_no, format!("invalid {what} `{s}`")))
        };
        let u = number(fields[0], "tail")?;
        let v = number(fields[1], "head")?;
        let m = number(fields[2], "multiplicity")?;
        let u = usize::try_from(u).map_err(|_| line_error(line_no, "tail out of range"))?;
        let v = usize::try_from(v).map_err(|_| line_error(line_no, "head out of range"))?;
        g.add_arc(u, v, m)
            .map_err(|e| line_error(line_no, e.to_string()))?;
    }
    graph.ok_or(ParseError::MissingHeader)
}

fn parse_header(fields: &[&str], line_no: usize) -> Result<MultiDigraph, ParseError> {
    match fields {
        ["vertices", n] => {
            let n: usize = n
                .parse()
                .map_err(|_| line_error(line_no, format!("invalid vertex count `{n}`")))?;
            if n > MAX_PARSED_VERTICES {
                return Err(line_error(
                    line_no,
                    format!("vertex count {n} exceeds the limit of {MAX_PARSED_VERTICES}"),
                ));
            }
            Ok(MultiDigraph::new(n))
        }
        _ => Err(line_error(line_no, "expected header `vertices N`")),
    }
}

pub fn to_dot(g: &MultiDigraph) -> String {
    let mut out = String::from("digraph G {\n");
    for v in 0..g.vertex_count() {
        writeln!(out, "  {v};").expect("writing to a String");
    }
    for (u, v, m) in g.arcs() {
        for _ in 0..m {
            writeln!(out, "  {u} -> {v};").expect("writing to a String");
        }
    }
    out.push_str("}\n");
    out
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonGraph {
    vertices: usize,
    arcs: Vec<(usize, usize, u64)>,
}

pub fn to_json(g: &MultiDigraph) -> String {
    let doc = JsonGraph {
        vertices: g.vertex_count(),
        arcs: g.arcs().collect(),
    };
    serde_json::to_string(&doc).expect("graph serializes")
}

pub fn parse_json(text: &str) -> Result<MultiDigraph, ParseError> {
    let doc: JsonGraph = serde_json::from_str(text).map_err(|e| ParseError::Json(e.to_string()))?;
    if doc.vertices > MAX_PARSED_VERTICES {
        return Err(ParseError::Json(format!(
            "vertex count {} exceeds the limit of {MAX_PARSED_VERTICES}",
            doc.vertices
        )));
    }
    MultiDigraph::from_arcs(doc.vertices, doc.arcs).map_err(|e| ParseError::Json(e.to_string()))
}

/// Parses JSON when the first non-blank character is `{`, the edge list otherwise.
pub fn parse_graph(text: &str) -> Result<MultiDigraph, ParseError> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_edge_list(text)
    }
}
