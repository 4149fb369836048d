//! Whitespace edge lists: `u v [weight]` per line, `#` comments.

use super::{IngestError, RawEdge, RawNetwork};
use std::collections::HashMap;

pub fn parse_edgelist(text: &str) -> Result<RawNetwork, IngestError> {
    let mut labels: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut edges = Vec::new();
    let mut id_of = |tok: &str| -> usize {
        if let Some(&i) = index.get(tok) {
            return i;
        }
        index.insert(tok.to_string(), labels.len());
        labels.push(tok.to_string());
        labels.len() - 1
    };
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if !(2..=3).contains(&toks.len()) {
            return Err(IngestError::Parse {
                line: idx + 1,
                msg: format!("expected 2 or 3 tokens, found {}", toks.len()),
            });
        }
        let weight = match toks.get(2) {
            Some(t) => Some(t.parse::<f64>().map_err(|_| IngestError::Parse {
                line: idx + 1,
                msg: format!("non-numeric weight {t:?}"),
            })?),
            None => None,
        };
        let u = id_of(toks[0]);
        let v = id_of(toks[1]);
        edges.push(RawEdge {
            u,
            v,
            directed: false,
            weight,
            layer: None,
        });
    }
    RawNetwork::new(labels, edges, None)
}
