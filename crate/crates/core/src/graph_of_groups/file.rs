//! Line-oriented text format for graphs of groups.
//!
//! ```text
//! # comment
//! vertex v1 free 2
//! vertex c cyclic
//! vertex s opaque [label]
//! edge e1 v1 c abAB 2
//! ```
//!
//! Free attachments are one token in word syntax (numeric words separate
//! letters by commas), cyclic attachments are signed integers and opaque
//! attachments are `-`. Vertices may be declared after the edges using them.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph_of_groups::model::{Attachment, GraphOfGroups, VertexGroup};
use crate::word::Alphabet;

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

/// Parses the text format. Only syntax is checked here; see
/// [`GraphOfGroups::validate`] for the structural checks.
pub fn parse_graph(text: &str) -> Result<GraphOfGroups> {
    let mut graph = GraphOfGroups::new();
    let mut pending = Vec::new();
    for (number, raw) in text.lines().enumerate().map(|(i, l)| (i + 1, l)) {
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match tokens.first().copied() {
            None => {}
            Some("vertex") => {
                let group = match tokens.get(2).copied() {
                    Some("free") => {
                        let [_, _, _, rank] = tokens[..] else {
                            return Err(parse_error(number, "expected `vertex <id> free <rank>`"));
                        };
                        let rank = rank.parse().map_err(|_| parse_error(number, format!("bad rank {rank:?}")))?;
                        VertexGroup::Free { rank }
                    }
                    Some("cyclic") if tokens.len() == 3 => VertexGroup::Cyclic,
                    Some("opaque") => {
                        let label = if tokens.len() > 3 { tokens[3..].join(" ") } else { tokens[1].to_string() };
                        VertexGroup::OpaqueOneEnded { label }
                    }
                    _ => return Err(parse_error(number, "expected `vertex <id> free <rank>|cyclic|opaque`")),
                };
                graph.add_vertex(tokens[1], group);
            }
            Some("edge") => {
                if tokens.len() != 6 {
                    return Err(parse_error(number, "expected `edge <id> <v1> <v2> <attach1> <attach2>`"));
                }
                pending.push((number, tokens[1..].iter().map(|t| t.to_string()).collect::<Vec<_>>()));
            }
            Some(other) => return Err(parse_error(number, format!("unknown directive {other:?}"))),
        }
    }
    for (number, t) in pending {
        let a1 = parse_attachment(&graph, number, &t[1], &t[3])?;
        let a2 = parse_attachment(&graph, number, &t[2], &t[4])?;
        graph.add_edge(t[0].clone(), t[1].clone(), t[2].clone(), a1, a2);
    }
    Ok(graph)
}

fn parse_attachment(graph: &GraphOfGroups, line: usize, vertex: &str, token: &str) -> Result<Attachment> {
    let index = graph.vertex_index(vertex).ok_or_else(|| parse_error(line, format!("unknown vertex {vertex:?}")))?;
    match &graph.vertices[index].group {
        VertexGroup::Free { rank } => {
            let alphabet = Alphabet::new(*rank).map_err(|e| parse_error(line, e.to_string()))?;
            let word = alphabet.parse_word(token).map_err(|e| parse_error(line, e.to_string()))?;
            Ok(Attachment::Word(word))
        }
        VertexGroup::Cyclic => token
            .parse()
            .map(Attachment::Exponent)
            .map_err(|_| parse_error(line, format!("expected an integer exponent at {vertex}, found {token:?}"))),
        VertexGroup::OpaqueOneEnded { .. } => {
            if token == "-" {
                Ok(Attachment::Opaque)
            } else {
                Err(parse_error(line, format!("expected `-` at opaque vertex {vertex}, found {token:?}")))
            }
        }
    }
}

/// Writes the text format; [`parse_graph`] reads it back unchanged.
pub fn write_graph(graph: &GraphOfGroups) -> String {
    let mut out = String::new();
    for v in &graph.vertices {
        match &v.group {
            VertexGroup::Free { rank } => writeln!(out, "vertex {} free {rank}", v.id),
            VertexGroup::Cyclic => writeln!(out, "vertex {} cyclic", v.id),
            VertexGroup::OpaqueOneEnded { label } => writeln!(out, "vertex {} opaque {label}", v.id),
        }
        .expect("writing to a string");
    }
    for e in &graph.edges {
        let a1 = format_attachment(&e.attachments.0);
        let a2 = format_attachment(&e.attachments.1);
        writeln!(out, "edge {} {} {} {a1} {a2}", e.id, e.endpoints.0, e.endpoints.1).expect("writing to a string");
    }
    out
}

fn format_attachment(attachment: &Attachment) -> String {
    match attachment {
        Attachment::Word(w) if w.max_generator() <= 26 => w.letters().iter().map(|l| l.shorthand()).collect(),
        Attachment::Word(w) => w.letters().iter().map(|l| l.signed().to_string()).collect::<Vec<_>>().join(","),
        Attachment::Exponent(k) => k.to_string(),
        Attachment::Opaque => "-".into(),
    }
}
