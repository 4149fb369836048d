//! Reading network files and reducing them to simple undirected graphs.
//!
//! Every reduction is recorded in a [`PreprocessLog`]: dropped orientation and
//! weights, the bipartite projection or multiplex layer that was kept, and the
//! number of loops, repeated edges and isolated nodes removed.

mod edgelist;
mod graphml;
mod pajek;

pub use edgelist::parse_edgelist;
pub use graphml::parse_graphml;
pub use pajek::{parse_pajek, write_pajek};

use crate::graph::{connected_components, Graph};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IngestError {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("edge {0:?} -- {1:?} joins two nodes on the same side")]
    NotBipartite(String, String),
    #[error("no nodes left after simplification")]
    EmptyResult,
    #[error("cannot read {path}: {msg}")]
    Io { path: String, msg: String },
    #[error("unknown network format for {0}")]
    UnknownFormat(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Pajek,
    Graphml,
    Edgelist,
}

impl Format {
    pub fn from_path(path: &Path) -> Option<Format> {
        let ext = path.extension()?.to_str()?.to_ascii_lowercase();
        match ext.as_str() {
            "net" | "paj" => Some(Format::Pajek),
            "graphml" | "xml" => Some(Format::Graphml),
            "txt" | "edges" | "edgelist" | "el" | "tsv" => Some(Format::Edgelist),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RawEdge {
    pub u: usize,
    pub v: usize,
    pub directed: bool,
    pub weight: Option<f64>,
    pub layer: Option<String>,
}

/// A parsed file before any reduction. Node `i` carries `labels[i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct RawNetwork {
    pub labels: Vec<String>,
    pub edges: Vec<RawEdge>,
    /// Side (0 or 1) per node for two-mode networks.
    pub sides: Option<Vec<u8>>,
}

impl RawNetwork {
    pub fn new(labels: Vec<String>, edges: Vec<RawEdge>, sides: Option<Vec<u8>>) -> Result<Self, IngestError> {
        let n = labels.len();
        if let Some(e) = edges.iter().find(|e| e.u >= n || e.v >= n) {
            return Err(IngestError::Parse {
                line: 0,
                msg: format!("edge ({}, {}) references a node beyond {n}", e.u, e.v),
            });
        }
        if sides.as_ref().is_some_and(|s| s.len() != n) {
            return Err(IngestError::Parse {
                line: 0,
                msg: "side assignment does not cover every node".into(),
            });
        }
        let tagged = edges.iter().filter(|e| e.layer.is_some()).count();
        if tagged != 0 && tagged != edges.len() {
            return Err(IngestError::Parse {
                line: 0,
                msg: "layer tags must cover every edge or none".into(),
            });
        }
        Ok(RawNetwork { labels, edges, sides })
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    /// Distinct layer tags in order of first appearance.
    pub fn layers(&self) -> Vec<String> {
        let mut seen = Vec::new();
        for e in &self.edges {
            if let Some(l) = &e.layer {
                if !seen.contains(l) {
                    seen.push(l.clone());
                }
            }
        }
        seen
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "step", rename_all = "kebab-case")]
pub enum Step {
    DropDirection,
    DropWeights,
    BipartiteProjection { side: u8, nodes: usize, density: f64 },
    MultiplexLayer { layer: String, connected: bool },
    RemoveLoops { count: usize },
    RemoveMultiedges { count: usize },
    RemoveIsolates { count: usize },
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct PreprocessLog {
    pub steps: Vec<Step>,
}

impl PreprocessLog {
    fn push(&mut self, step: Step) {
        self.steps.push(step);
    }

    /// `;`-separated step names for one-line reports.
    pub fn summary(&self) -> String {
        let parts: Vec<String> = self
            .steps
            .iter()
            .map(|s| match s {
                Step::DropDirection => "drop-direction".to_string(),
                Step::DropWeights => "drop-weights".to_string(),
                Step::BipartiteProjection { side, .. } => format!("bipartite-projection({side})"),
                Step::MultiplexLayer { layer, .. } => format!("multiplex-layer({layer})"),
                Step::RemoveLoops { count } => format!("remove-loops({count})"),
                Step::RemoveMultiedges { count } => format!("remove-multiedges({count})"),
                Step::RemoveIsolates { count } => format!("remove-isolates({count})"),
            })
            .collect();
        parts.join(";")
    }
}

/// A reduced network: `labels[i]` is the source label of node `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct Normalized {
    pub graph: Graph,
    pub labels: Vec<String>,
    pub log: PreprocessLog,
}

fn log_attribute_drops(raw: &RawNetwork, log: &mut PreprocessLog) {
    if raw.edges.iter().any(|e| e.directed) {
        log.push(Step::DropDirection);
    }
    if raw.edges.iter().any(|e| e.weight.is_some()) {
        log.push(Step::DropWeights);
    }
}

/// Keeps nodes that have at least one edge, renumbering them in their
/// original order. `pairs` must already be loop-free and deduplicated.
fn drop_isolates(n: usize, pairs: &[(usize, usize)], labels: &[String], log: &mut PreprocessLog) -> Result<Normalized, IngestError> {
    let mut used = vec![false; n];
    for &(u, v) in pairs {
        used[u] = true;
        used[v] = true;
    }
    let mut new_id = vec![usize::MAX; n];
    let mut kept_labels = Vec::new();
    for (i, _) in used.iter().enumerate().filter(|(_, &u)| u) {
        new_id[i] = kept_labels.len();
        kept_labels.push(labels[i].clone());
    }
    log.push(Step::RemoveIsolates {
        count: n - kept_labels.len(),
    });
    if kept_labels.is_empty() {
        return Err(IngestError::EmptyResult);
    }
    let graph = Graph::from_edges(kept_labels.len(), pairs.iter().map(|&(u, v)| (new_id[u], new_id[v])))
        .expect("pairs are simple");
    Ok(Normalized {
        graph,
        labels: kept_labels,
        log: std::mem::take(log),
    })
}

fn simplify_into(raw: &RawNetwork, mut log: PreprocessLog) -> Result<Normalized, IngestError> {
    let mut loops = 0;
    let mut pairs = BTreeSet::new();
    for e in &raw.edges {
        if e.u == e.v {
            loops += 1;
        } else {
            pairs.insert((e.u.min(e.v), e.u.max(e.v)));
        }
    }
    let multi = raw.edges.len() - loops - pairs.len();
    log.push(Step::RemoveLoops { count: loops });
    log.push(Step::RemoveMultiedges { count: multi });
    let pairs: Vec<_> = pairs.into_iter().collect();
    drop_isolates(raw.n(), &pairs, &raw.labels, &mut log)
}

/// Drops orientation and weights, loops, repeated edges and isolated nodes.
pub fn simplify(raw: &RawNetwork) -> Result<Normalized, IngestError> {
    let mut log = PreprocessLog::default();
    log_attribute_drops(raw, &mut log);
    simplify_into(raw, log)
}

/// One-mode projection onto `side`: two nodes of the side are adjacent when
/// they share a neighbour. Returns all nodes of the side, isolated or not.
fn projection(raw: &RawNetwork, sides: &[u8], side: u8) -> (Vec<usize>, Vec<(usize, usize)>) {
    let members: Vec<usize> = (0..raw.n()).filter(|&i| sides[i] == side).collect();
    let mut local = vec![usize::MAX; raw.n()];
    for (k, &i) in members.iter().enumerate() {
        local[i] = k;
    }
    let mut neighbours: Vec<Vec<usize>> = vec![Vec::new(); raw.n()];
    for e in &raw.edges {
        let (s, o) = if sides[e.u] == side { (e.u, e.v) } else { (e.v, e.u) };
        neighbours[o].push(local[s]);
    }
    let mut pairs = BTreeSet::new();
    for list in &mut neighbours {
        list.sort_unstable();
        list.dedup();
        for (x, &a) in list.iter().enumerate() {
            for &b in &list[x + 1..] {
                pairs.insert((a, b));
            }
        }
    }
    (members, pairs.into_iter().collect())
}

fn pair_density(n: usize, m: usize) -> f64 {
    if n < 2 {
        0.0
    } else {
        2.0 * m as f64 / (n as f64 * (n as f64 - 1.0))
    }
}

/// Keeps the sparser of the two one-mode projections (ties go to the side
/// with more nodes, then to side 0), then removes its isolated nodes. A
/// projection with no edges at all is returned unreduced so that callers see
/// a too-small graph rather than an empty one.
pub fn project_bipartite(raw: &RawNetwork) -> Result<Normalized, IngestError> {
    let sides = raw.sides.as_ref().ok_or_else(|| IngestError::Parse {
        line: 0,
        msg: "no bipartite side assignment".into(),
    })?;
    if let Some(e) = raw.edges.iter().find(|e| sides[e.u] == sides[e.v]) {
        return Err(IngestError::NotBipartite(raw.labels[e.u].clone(), raw.labels[e.v].clone()));
    }
    let mut log = PreprocessLog::default();
    log_attribute_drops(raw, &mut log);
    let candidates: Vec<(u8, Vec<usize>, Vec<(usize, usize)>)> = [0u8, 1]
        .into_iter()
        .map(|s| {
            let (members, pairs) = projection(raw, sides, s);
            (s, members, pairs)
        })
        .collect();
    let (side, members, pairs) = candidates
        .into_iter()
        .min_by(|a, b| {
            let da = pair_density(a.1.len(), a.2.len());
            let db = pair_density(b.1.len(), b.2.len());
            da.total_cmp(&db).then(b.1.len().cmp(&a.1.len())).then(a.0.cmp(&b.0))
        })
        .expect("two candidates");
    log.push(Step::BipartiteProjection {
        side,
        nodes: members.len(),
        density: pair_density(members.len(), pairs.len()),
    });
    let labels: Vec<String> = members.iter().map(|&i| raw.labels[i].clone()).collect();
    if pairs.is_empty() {
        log.push(Step::RemoveIsolates { count: 0 });
        return Ok(Normalized {
            graph: Graph::empty(members.len()),
            labels,
            log,
        });
    }
    drop_isolates(members.len(), &pairs, &labels, &mut log)
}

fn layer_network(raw: &RawNetwork, layer: &str) -> RawNetwork {
    RawNetwork {
        labels: raw.labels.clone(),
        edges: raw
            .edges
            .iter()
            .filter(|e| e.layer.as_deref() == Some(layer))
            .cloned()
            .collect(),
        sides: None,
    }
}

/// Among layers whose graph (isolated nodes removed) is connected, keeps the
/// sparsest. If none is connected, keeps the layer whose largest component
/// covers the largest fraction of its nodes and records `connected: false`.
/// Ties go to the layer that appears first.
pub fn select_multiplex_layer(raw: &RawNetwork) -> Result<Normalized, IngestError> {
    let layers = raw.layers();
    if layers.is_empty() {
        return simplify(raw);
    }
    let mut best: Option<(bool, f64, Normalized, String)> = None;
    for layer in &layers {
        let Ok(reduced) = simplify(&layer_network(raw, layer)) else {
            continue;
        };
        let comps = connected_components(&reduced.graph);
        let connected = comps.len() == 1;
        let giant = comps.iter().map(Vec::len).max().unwrap_or(0) as f64 / reduced.graph.n() as f64;
        // Higher score wins: connected first, then sparser; otherwise larger giant share.
        let score = if connected { -reduced.graph.density() } else { giant };
        let better = match &best {
            None => true,
            Some((bc, bs, _, _)) => (connected && !bc) || (connected == *bc && score > *bs),
        };
        if better {
            best = Some((connected, score, reduced, layer.clone()));
        }
    }
    let (connected, _, mut chosen, layer) = best.ok_or(IngestError::EmptyResult)?;
    let mut steps = Vec::new();
    let drops = chosen.log.steps.iter().take_while(|s| matches!(s, Step::DropDirection | Step::DropWeights));
    steps.extend(drops.cloned());
    let rest: Vec<Step> = chosen.log.steps[steps.len()..].to_vec();
    steps.push(Step::MultiplexLayer { layer, connected });
    steps.extend(rest);
    chosen.log.steps = steps;
    Ok(chosen)
}

/// Picks the reduction the network needs: bipartite projection when sides
/// are declared, layer selection when edges carry two or more layer tags,
/// plain simplification otherwise.
pub fn normalize(raw: &RawNetwork) -> Result<Normalized, IngestError> {
    if raw.sides.is_some() {
        project_bipartite(raw)
    } else if raw.layers().len() > 1 {
        select_multiplex_layer(raw)
    } else {
        simplify(raw)
    }
}

pub fn parse(text: &str, format: Format) -> Result<RawNetwork, IngestError> {
    match format {
        Format::Pajek => parse_pajek(text),
        Format::Graphml => parse_graphml(text),
        Format::Edgelist => parse_edgelist(text),
    }
}

/// Reads and parses a file, choosing the format from its extension.
pub fn read_network(path: &Path) -> Result<RawNetwork, IngestError> {
    let format = Format::from_path(path).ok_or_else(|| IngestError::UnknownFormat(path.display().to_string()))?;
    let bytes = std::fs::read(path).map_err(|e| IngestError::Io {
        path: path.display().to_string(),
        msg: e.to_string(),
    })?;
    let text = String::from_utf8_lossy(&bytes);
    parse(&text, format)
}
