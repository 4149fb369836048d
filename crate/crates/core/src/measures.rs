//! Mean geodesic distance and transitivity.

use crate::graph::{Graph, GraphError};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Which clustering convention to use for T.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum TransitivityMode {
    /// 3 × triangles / connected triples.
    Global,
    /// Average of the local clustering coefficients; nodes of degree < 2 count as 0.
    #[default]
    MeanLocal,
}

impl fmt::Display for TransitivityMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TransitivityMode::Global => "global",
            TransitivityMode::MeanLocal => "mean-local",
        })
    }
}

impl FromStr for TransitivityMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "global" => Ok(TransitivityMode::Global),
            "mean-local" | "local" => Ok(TransitivityMode::MeanLocal),
            other => Err(format!("unknown transitivity mode '{other}'")),
        }
    }
}

struct Bfs {
    dist: Vec<u32>,
    queue: Vec<usize>,
}

impl Bfs {
    fn new(n: usize) -> Self {
        Bfs {
            dist: vec![u32::MAX; n],
            queue: Vec::with_capacity(n),
        }
    }

    /// Sum of distances from `src` and the number of nodes reached.
    fn sweep(&mut self, g: &Graph, src: usize) -> (u64, usize) {
        self.dist.fill(u32::MAX);
        self.queue.clear();
        self.dist[src] = 0;
        self.queue.push(src);
        let mut head = 0;
        let mut total = 0u64;
        while head < self.queue.len() {
            let u = self.queue[head];
            head += 1;
            let du = self.dist[u];
            total += du as u64;
            for &v in g.neighbors(u) {
                if self.dist[v] == u32::MAX {
                    self.dist[v] = du + 1;
                    self.queue.push(v);
                }
            }
        }
        (total, self.queue.len())
    }
}

/// Mean shortest-path length over unordered pairs of distinct nodes.
///
/// One BFS per source, O(mn) overall. Sources are swept in parallel; the
/// reduction is an integer sum so the result does not depend on scheduling.
pub fn average_path_length(g: &Graph) -> Result<f64, GraphError> {
    let n = g.n();
    if n < 2 {
        return Err(GraphError::TooSmall { n, m: g.m() });
    }
    let sums: Vec<(u64, usize)> = (0..n)
        .into_par_iter()
        .map_init(|| Bfs::new(n), |bfs, src| bfs.sweep(g, src))
        .collect();
    if sums.iter().any(|&(_, reached)| reached != n) {
        let components = crate::graph::connected_components(g).len();
        return Err(GraphError::DisconnectedGraph { components });
    }
    let total: u64 = sums.iter().map(|&(s, _)| s).sum();
    Ok(total as f64 / (n as f64 * (n - 1) as f64))
}

/// Number of edges among the neighbours of each node.
///
/// Cost is Σ_v k_v², i.e. O(n⟨k⟩²) for degree-homogeneous graphs.
pub fn triangles_per_node(g: &Graph) -> Vec<u64> {
    let n = g.n();
    (0..n)
        .into_par_iter()
        .map_init(
            || vec![usize::MAX; n],
            |mark, u| {
                for &v in g.neighbors(u) {
                    mark[v] = u;
                }
                let mut links = 0u64;
                for &v in g.neighbors(u) {
                    for &w in g.neighbors(v) {
                        if w > v && mark[w] == u {
                            links += 1;
                        }
                    }
                }
                links
            },
        )
        .collect()
}

/// Transitivity T in `[0, 1]`; 0 when no node has two neighbours.
pub fn transitivity(g: &Graph, mode: TransitivityMode) -> f64 {
    let n = g.n();
    if n == 0 {
        return 0.0;
    }
    let tri = triangles_per_node(g);
    match mode {
        TransitivityMode::Global => {
            let closed: u64 = tri.iter().sum();
            let triples: u64 = (0..n)
                .map(|u| {
                    let k = g.degree(u) as u64;
                    k * k.saturating_sub(1) / 2
                })
                .sum();
            if triples == 0 {
                0.0
            } else {
                closed as f64 / triples as f64
            }
        }
        TransitivityMode::MeanLocal => {
            let mut acc = 0.0;
            for (u, &t) in tri.iter().enumerate() {
                let k = g.degree(u) as u64;
                if k >= 2 {
                    acc += t as f64 / (k * (k - 1) / 2) as f64;
                }
            }
            acc / n as f64
        }
    }
}
