//! Pajek `.net` reader and writer.

use super::{IngestError, RawEdge, RawNetwork};
use crate::graph::Graph;
use std::fmt::Write as _;

#[derive(Debug, Clone, PartialEq)]
enum Section {
    Preamble,
    Vertices,
    Edges { directed: bool, list: bool, layer: Option<String> },
}

fn err(line: usize, msg: impl Into<String>) -> IngestError {
    IngestError::Parse { line, msg: msg.into() }
}

/// Splits on whitespace, keeping double-quoted runs together (quotes stripped).
fn tokens(line: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut chars = line.chars().peekable();
    while let Some(&c) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c == '"' {
            chars.next();
            let mut tok = String::new();
            for c in chars.by_ref() {
                if c == '"' {
                    break;
                }
                tok.push(c);
            }
            out.push(tok);
        } else {
            let mut tok = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_whitespace() {
                    break;
                }
                tok.push(c);
                chars.next();
            }
            out.push(tok);
        }
    }
    out
}

fn parse_index(tok: &str, n: usize, line: usize) -> Result<usize, IngestError> {
    let i: usize = tok
        .parse()
        .map_err(|_| err(line, format!("expected a vertex number, found {tok:?}")))?;
    if i == 0 || i > n {
        return Err(err(line, format!("vertex {i} out of range 1..={n}")));
    }
    Ok(i - 1)
}

/// `*Edges :2 "friends"` → layer "friends"; `*Edges :2` → layer "2".
fn layer_tag(rest: &[String]) -> Option<String> {
    let first = rest.first()?;
    let id = first.strip_prefix(':')?;
    Some(rest.get(1).cloned().unwrap_or_else(|| id.to_string()))
}

pub fn parse_pajek(text: &str) -> Result<RawNetwork, IngestError> {
    let mut section = Section::Preamble;
    let mut n: Option<usize> = None;
    let mut labels: Vec<String> = Vec::new();
    let mut sides: Option<Vec<u8>> = None;
    let mut edges = Vec::new();
    let mut saw_edges = false;
    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw_line.trim();
        if line.is_empty() || line.starts_with('%') {
            continue;
        }
        if line.starts_with('*') {
            let toks = tokens(line);
            let head = toks[0].to_ascii_lowercase();
            match head.as_str() {
                "*network" => section = Section::Preamble,
                "*vertices" => {
                    let count: usize = toks
                        .get(1)
                        .and_then(|t| t.parse().ok())
                        .ok_or_else(|| err(line_no, "*Vertices needs a vertex count"))?;
                    labels = (1..=count).map(|i| i.to_string()).collect();
                    if let Some(t) = toks.get(2) {
                        let first: usize = t
                            .parse()
                            .map_err(|_| err(line_no, format!("bad two-mode size {t:?}")))?;
                        if first > count {
                            return Err(err(line_no, "two-mode size exceeds vertex count"));
                        }
                        sides = Some((0..count).map(|i| u8::from(i >= first)).collect());
                    }
                    n = Some(count);
                    section = Section::Vertices;
                }
                "*edges" | "*arcs" | "*edgeslist" | "*arcslist" => {
                    if n.is_none() {
                        return Err(err(line_no, "edge section before *Vertices"));
                    }
                    saw_edges = true;
                    section = Section::Edges {
                        directed: head.starts_with("*arcs"),
                        list: head.ends_with("list"),
                        layer: layer_tag(&toks[1..]),
                    };
                }
                _ => return Err(err(line_no, format!("unsupported section {}", toks[0]))),
            }
            continue;
        }
        let count = n.unwrap_or(0);
        match &section {
            Section::Preamble => return Err(err(line_no, "data before *Vertices")),
            Section::Vertices => {
                let toks = tokens(line);
                let v = parse_index(&toks[0], count, line_no)?;
                if let Some(label) = toks.get(1) {
                    labels[v] = label.clone();
                }
            }
            Section::Edges { directed, list, layer } => {
                let toks = tokens(line);
                let u = parse_index(&toks[0], count, line_no)?;
                if *list {
                    for t in &toks[1..] {
                        let v = parse_index(t, count, line_no)?;
                        edges.push(RawEdge {
                            u,
                            v,
                            directed: *directed,
                            weight: None,
                            layer: layer.clone(),
                        });
                    }
                } else {
                    let v = toks
                        .get(1)
                        .ok_or_else(|| err(line_no, "edge line needs two vertices"))
                        .and_then(|t| parse_index(t, count, line_no))?;
                    let weight = match toks.get(2) {
                        Some(t) => Some(
                            t.parse::<f64>()
                                .map_err(|_| err(line_no, format!("non-numeric weight {t:?}")))?,
                        ),
                        None => None,
                    };
                    edges.push(RawEdge {
                        u,
                        v,
                        directed: *directed,
                        weight,
                        layer: layer.clone(),
                    });
                }
            }
        }
    }
    if n.is_none() {
        return Err(err(0, "missing *Vertices section"));
    }
    if !saw_edges {
        return Err(err(0, "no *Edges or *Arcs section"));
    }
    RawNetwork::new(labels, edges, sides)
}

/// Writes `*Vertices` (with quoted labels when given) and one `*Edges` line per edge.
pub fn write_pajek(g: &Graph, labels: Option<&[String]>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "*Vertices {}", g.n());
    if let Some(labels) = labels {
        for (i, label) in labels.iter().enumerate() {
            let _ = writeln!(out, "{} \"{}\"", i + 1, label.replace('"', "'"));
        }
    }
    out.push_str("*Edges\n");
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{} {}", u + 1, v + 1);
    }
    out
}
