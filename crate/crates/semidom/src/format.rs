//! Text formats: edge lists, graph6 lines, JSON reports, and the catalog
//! export table.
//!
//! The graph6 codec covers the single-byte size header (orders up to 62):
//! one byte `63 + n`, then the upper-triangle adjacency bits in column order
//! `(0,1),(0,2),(1,2),(0,3),...`, packed big-endian six per byte, zero-padded,
//! each payload byte offset by 63.

use crate::families::FamilyCatalog;
use crate::graph::{Graph, GraphError};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    MalformedLine { line: usize, message: String },
    #[error("line {line}: vertex id {id} out of range for declared order {order}")]
    IdOutOfRange { line: usize, id: usize, order: usize },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoopAt { line: usize, vertex: usize },
    #[error("missing vertex count header")]
    MissingHeader,
    #[error("graph6 byte {byte:#04x} at position {position} outside the printable range 63..=126")]
    Graph6ByteOutOfRange { position: usize, byte: u8 },
    #[error("graph6 payload holds {got} bytes, an order-{order} graph needs {expected}")]
    Graph6PayloadLength {
        order: usize,
        expected: usize,
        got: usize,
    },
    #[error("graph6 order {0} exceeds the single-byte header limit 62")]
    Graph6TooLarge(usize),
    #[error("empty graph6 line")]
    Graph6Empty,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Parses the edge-list format: the first non-comment line declares the
/// order, each further non-comment line holds one `u v` pair; `#` starts a
/// comment.
pub fn parse_edgelist(text: &str) -> Result<Graph, FormatError> {
    let mut order: Option<usize> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        match order {
            None => {
                let n = content.parse::<usize>().map_err(|_| FormatError::MalformedLine {
                    line,
                    message: format!("expected a vertex count, found `{content}`"),
                })?;
                order = Some(n);
            }
            Some(n) => {
                let mut parts = content.split_whitespace();
                let (a, b) = match (parts.next(), parts.next(), parts.next()) {
                    (Some(a), Some(b), None) => (a, b),
                    _ => {
                        return Err(FormatError::MalformedLine {
                            line,
                            message: format!("expected `u v`, found `{content}`"),
                        })
                    }
                };
                let parse = |tok: &str| {
                    tok.parse::<usize>().map_err(|_| FormatError::MalformedLine {
                        line,
                        message: format!("expected a vertex id, found `{tok}`"),
                    })
                };
                let (u, v) = (parse(a)?, parse(b)?);
                for id in [u, v] {
                    if id >= n {
                        return Err(FormatError::IdOutOfRange { line, id, order: n });
                    }
                }
                if u == v {
                    return Err(FormatError::SelfLoopAt { line, vertex: u });
                }
                edges.push((u, v));
            }
        }
    }
    let n = order.ok_or(FormatError::MissingHeader)?;
    Ok(Graph::from_edges(n, edges)?)
}

pub fn write_edgelist(g: &Graph) -> String {
    let mut out = format!("{}\n", g.n());
    for e in g.edges() {
        out.push_str(&format!("{} {}\n", e.u(), e.v()));
    }
    out
}

/// Decodes one graph6 line.
pub fn parse_graph6(line: &str) -> Result<Graph, FormatError> {
    let bytes = line.trim().as_bytes();
    if bytes.is_empty() {
        return Err(FormatError::Graph6Empty);
    }
    for (position, &byte) in bytes.iter().enumerate() {
        if !(63..=126).contains(&byte) {
            return Err(FormatError::Graph6ByteOutOfRange { position, byte });
        }
    }
    let n = (bytes[0] - 63) as usize;
    if n > 62 {
        return Err(FormatError::Graph6TooLarge(n));
    }
    let expected = (n * n.saturating_sub(1) / 2).div_ceil(6);
    let payload = &bytes[1..];
    if payload.len() != expected {
        return Err(FormatError::Graph6PayloadLength {
            order: n,
            expected,
            got: payload.len(),
        });
    }
    let mut edges = Vec::new();
    let mut cursor = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = payload[cursor / 6] - 63;
            let bit = (byte >> (5 - cursor % 6)) & 1;
            if bit == 1 {
                edges.push((i, j));
            }
            cursor += 1;
        }
    }
    Ok(Graph::from_edges(n, edges)?)
}

/// Encodes a graph of order at most 62 as one graph6 line.
pub fn encode_graph6(g: &Graph) -> Result<String, FormatError> {
    let n = g.n();
    if n > 62 {
        return Err(FormatError::Graph6TooLarge(n));
    }
    let mut out = vec![63 + n as u8];
    let mut acc: u8 = 0;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.has_edge(i, j));
            filled += 1;
            if filled == 6 {
                out.push(63 + acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(63 + (acc << (6 - filled)));
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are printable ASCII"))
}

/// Decodes a whole stream, one graph per non-empty line.
pub fn parse_graph6_stream(text: &str) -> Result<Vec<Graph>, FormatError> {
    let mut graphs = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        graphs.push(parse_graph6(line).map_err(|e| match e {
            FormatError::Graph6Empty => FormatError::MalformedLine {
                line: idx + 1,
                message: "empty graph6 record".into(),
            },
            other => other,
        })?);
    }
    Ok(graphs)
}

/// Serializes any report type with its stable field order.
pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("report types serialize")
}

/// Header of the catalog export table.
pub const CATALOG_HEADER: &str = "family\tn\tcanonical_code\tstatus_string\tderivation";

/// Renders a catalog as tab-separated lines: family, order, canonical code of
/// the unlabeled tree, statuses in vertex-id order, and the primary
/// derivation. The header line always comes first.
pub fn catalog_tsv(catalog: &FamilyCatalog) -> String {
    let mut out = String::from(CATALOG_HEADER);
    out.push('\n');
    for (code, members) in catalog.members() {
        for member in members {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\n",
                catalog.family,
                member.labeled.order(),
                code,
                member.labeled.status_string(),
                member.derivations[0].to_compact(),
            ));
        }
    }
    out
}
