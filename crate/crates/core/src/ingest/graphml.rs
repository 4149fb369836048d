//! GraphML reader. Keeps node ids, direction, and the data keys named
//! `weight`, `layer` and `bipartite`; everything else is dropped.

use super::{IngestError, RawEdge, RawNetwork};
use roxmltree::{Document, Node};
use std::collections::HashMap;

fn err(line: usize, msg: impl Into<String>) -> IngestError {
    IngestError::Parse { line, msg: msg.into() }
}

fn line_of(doc: &Document, node: Node) -> usize {
    doc.text_pos_at(node.range().start).row as usize
}

#[derive(Default)]
struct Keys {
    weight: Vec<String>,
    layer: Vec<String>,
    side: Vec<String>,
}

fn data_value<'a>(node: Node<'a, '_>, keys: &[String]) -> Option<&'a str> {
    node.children()
        .filter(|c| c.has_tag_name("data"))
        .find(|c| c.attribute("key").is_some_and(|k| keys.iter().any(|x| x == k)))
        .map(|c| c.text().unwrap_or("").trim())
}

pub fn parse_graphml(text: &str) -> Result<RawNetwork, IngestError> {
    let doc = Document::parse(text).map_err(|e| err(e.pos().row as usize, e.to_string()))?;
    let root = doc.root_element();
    if !root.has_tag_name("graphml") {
        return Err(err(line_of(&doc, root), "root element is not <graphml>"));
    }
    let mut keys = Keys::default();
    for key in root.children().filter(|c| c.has_tag_name("key")) {
        let Some(id) = key.attribute("id") else { continue };
        let name = key.attribute("attr.name").unwrap_or(id).to_ascii_lowercase();
        let target = match name.as_str() {
            "weight" => &mut keys.weight,
            "layer" => &mut keys.layer,
            "bipartite" => &mut keys.side,
            _ => continue,
        };
        target.push(id.to_string());
    }
    let Some(graph) = root.children().find(|c| c.has_tag_name("graph")) else {
        return Err(err(line_of(&doc, root), "no <graph> element"));
    };
    let default_directed = graph.attribute("edgedefault") == Some("directed");

    let mut labels = Vec::new();
    let mut index: HashMap<&str, usize> = HashMap::new();
    let mut side_values: Vec<Option<u8>> = Vec::new();
    for node in graph.children().filter(|c| c.has_tag_name("node")) {
        let id = node
            .attribute("id")
            .ok_or_else(|| err(line_of(&doc, node), "node without id"))?;
        if index.insert(id, labels.len()).is_some() {
            return Err(err(line_of(&doc, node), format!("duplicate node id {id:?}")));
        }
        labels.push(id.to_string());
        let side = match data_value(node, &keys.side) {
            Some(v) => Some(match v {
                "0" | "false" => 0,
                "1" | "true" => 1,
                _ => return Err(err(line_of(&doc, node), format!("bipartite value {v:?} is not 0/1"))),
            }),
            None => None,
        };
        side_values.push(side);
    }

    let mut edges = Vec::new();
    for edge in graph.children().filter(|c| c.has_tag_name("edge")) {
        let line = line_of(&doc, edge);
        let endpoint = |attr: &str| -> Result<usize, IngestError> {
            let id = edge
                .attribute(attr)
                .ok_or_else(|| err(line, format!("edge without {attr}")))?;
            index
                .get(id)
                .copied()
                .ok_or_else(|| err(line, format!("edge {attr} {id:?} is not a declared node")))
        };
        let (u, v) = (endpoint("source")?, endpoint("target")?);
        let directed = match edge.attribute("directed") {
            Some("true") => true,
            Some("false") => false,
            _ => default_directed,
        };
        let weight = match data_value(edge, &keys.weight) {
            Some(w) => Some(
                w.parse::<f64>()
                    .map_err(|_| err(line, format!("non-numeric weight {w:?}")))?,
            ),
            None => None,
        };
        let layer = data_value(edge, &keys.layer).map(str::to_string);
        edges.push(RawEdge {
            u,
            v,
            directed,
            weight,
            layer,
        });
    }
    let sides = if side_values.iter().any(Option::is_some) {
        let sides: Option<Vec<u8>> = side_values.into_iter().collect();
        Some(sides.ok_or_else(|| err(0, "bipartite attribute missing on some nodes"))?)
    } else {
        None
    };
    RawNetwork::new(labels, edges, sides)
}
