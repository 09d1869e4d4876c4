//! Line-oriented text format for hypergraphs.
//!
//! ```text
//! # comment
//! v 1 2 3 7        optional vertex declarations
//! e 1 2 3          one edge occurrence; repeats add multiplicity
//! e*2 3 4          edge {3,4} with multiplicity 2
//! ```
//!
//! Everything after `#` on a line is ignored. Vertices named only in edges
//! are added automatically.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, PartSet, Vertex};

/// A parsed document: the hypergraph plus where each vertex and edge came from.
#[derive(Debug, Clone)]
pub struct HgDocument {
    pub hypergraph: Hypergraph,
    /// First line mentioning each vertex.
    pub vertex_lines: BTreeMap<Vertex, usize>,
    /// Lines contributing to each edge.
    pub edge_lines: BTreeMap<PartSet, Vec<usize>>,
}

impl HgDocument {
    pub fn line_of_vertex(&self, v: &Vertex) -> Option<usize> {
        self.vertex_lines.get(v).copied()
    }
}

fn perr(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

pub fn parse_hypergraph(text: &str) -> Result<HgDocument> {
    let mut declared: Vec<Vertex> = Vec::new();
    let mut vertex_lines = BTreeMap::new();
    let mut raw: Vec<(Vec<Vertex>, u64, usize)> = Vec::new();

    for (i, line) in text.lines().enumerate() {
        let no = i + 1;
        let body = line.split('#').next().unwrap_or("");
        let mut tokens = body.split_whitespace();
        let Some(head) = tokens.next() else { continue };
        let rest: Vec<&str> = tokens.collect();
        match head {
            "v" => {
                for t in rest {
                    let v = Vertex::parse(t);
                    vertex_lines.entry(v.clone()).or_insert(no);
                    declared.push(v);
                }
            }
            _ if head == "e" || head.starts_with("e*") => {
                let mult = match head.strip_prefix("e*") {
                    None => 1,
                    Some(k) => match k.parse::<u64>() {
                        Ok(m) if m >= 1 => m,
                        _ => return Err(perr(no, format!("bad multiplicity `{k}`"))),
                    },
                };
                if rest.is_empty() {
                    return Err(perr(no, "edge with no vertices"));
                }
                let mut members: Vec<Vertex> = Vec::with_capacity(rest.len());
                for t in rest {
                    let v = Vertex::parse(t);
                    if members.contains(&v) {
                        return Err(perr(no, format!("vertex `{v}` repeated in edge")));
                    }
                    vertex_lines.entry(v.clone()).or_insert(no);
                    members.push(v);
                }
                raw.push((members, mult, no));
            }
            other => return Err(perr(no, format!("unknown directive `{other}`"))),
        }
    }

    let h = Hypergraph::new(declared, raw.iter().map(|(m, k, _)| (m.clone(), *k))).map_err(|e| match e {
        Error::SizeCap(_) => e,
        other => perr(0, other.to_string()),
    })?;
    let mut edge_lines: BTreeMap<PartSet, Vec<usize>> = BTreeMap::new();
    for (members, _, no) in &raw {
        let e = h.part_of(members)?;
        edge_lines.entry(e).or_default().push(*no);
    }
    Ok(HgDocument { hypergraph: h, vertex_lines, edge_lines })
}

/// Canonical text: one `v` line with every vertex, then one line per
/// distinct edge in index order.
pub fn emit_hypergraph(h: &Hypergraph) -> String {
    let mut out = String::new();
    if h.vertex_count() > 0 {
        out.push('v');
        for v in h.vertices() {
            let _ = write!(out, " {v}");
        }
        out.push('\n');
    }
    for (e, m) in h.edges() {
        if m == 1 {
            out.push('e');
        } else {
            let _ = write!(out, "e*{m}");
        }
        for v in h.labels(e) {
            let _ = write!(out, " {v}");
        }
        out.push('\n');
    }
    out
}
