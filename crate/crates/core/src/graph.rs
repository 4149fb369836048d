//! Simple undirected graphs on contiguous node ids.
//!
//! Every [`Graph`] is loop-free and has no parallel edges; adjacency lists are
//! kept sorted so membership tests are binary searches. Graphs are immutable
//! from the outside. Only the rewiring code mutates a private copy.

use serde::Serialize;
use std::collections::VecDeque;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop on node {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("node {node} out of range for graph with {n} nodes")]
    NodeOutOfRange { node: usize, n: usize },
    #[error("graph is disconnected ({components} components)")]
    DisconnectedGraph { components: usize },
    #[error("graph too small: n = {n}, m = {m}")]
    TooSmall { n: usize, m: usize },
    #[error("adjacency invariant violated: {0}")]
    Corrupt(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl Graph {
    /// Graph with `n` nodes and no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    /// Builds a graph, rejecting loops, repeated pairs and unknown nodes.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        let mut m = 0;
        for (u, v) in edges {
            for node in [u, v] {
                if node >= n {
                    return Err(GraphError::NodeOutOfRange { node, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
            m += 1;
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::DuplicateEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        Ok(Graph { adj, m })
    }

    /// Builds a graph from arbitrary pairs, silently dropping loops and repeats.
    pub fn from_edges_lossy<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            for node in [u, v] {
                if node >= n {
                    return Err(GraphError::NodeOutOfRange { node, n });
                }
            }
            if u != v {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        let mut m = 0;
        for list in adj.iter_mut() {
            list.sort_unstable();
            list.dedup();
            m += list.len();
        }
        Ok(Graph { adj, m: m / 2 })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    #[inline]
    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adj[u]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| {
            let start = list.partition_point(|&v| v <= u);
            list[start..].iter().map(move |&v| (u, v))
        })
    }

    /// `2m / (n (n - 1))`, or 0 when fewer than two nodes.
    pub fn density(&self) -> f64 {
        let n = self.n();
        if n < 2 {
            return 0.0;
        }
        2.0 * self.m as f64 / (n as f64 * (n - 1) as f64)
    }

    pub fn degree_sequence(&self) -> DegreeSequence {
        DegreeSequence(self.adj.iter().map(|l| l.len() as u64).collect())
    }

    /// Subgraph induced by `nodes`; node `nodes[i]` becomes node `i`.
    pub fn induced_subgraph(&self, nodes: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &u) in nodes.iter().enumerate() {
            index[u] = i;
        }
        let adj: Vec<Vec<usize>> = nodes
            .iter()
            .map(|&u| {
                let mut list: Vec<usize> = self.adj[u]
                    .iter()
                    .filter_map(|&v| (index[v] != usize::MAX).then_some(index[v]))
                    .collect();
                list.sort_unstable();
                list
            })
            .collect();
        let m = adj.iter().map(Vec::len).sum::<usize>() / 2;
        Graph { adj, m }
    }

    /// Verifies loop-freeness, sortedness, uniqueness, symmetry and the edge count.
    pub fn check_invariants(&self) -> Result<(), GraphError> {
        let n = self.n();
        let mut half_degree_sum = 0;
        for (u, list) in self.adj.iter().enumerate() {
            for w in list.windows(2) {
                if w[0] >= w[1] {
                    return Err(GraphError::Corrupt(format!("adjacency of {u} not strictly sorted")));
                }
            }
            for &v in list {
                if v >= n {
                    return Err(GraphError::NodeOutOfRange { node: v, n });
                }
                if v == u {
                    return Err(GraphError::SelfLoop(u));
                }
                if !self.has_edge(v, u) {
                    return Err(GraphError::Corrupt(format!("edge {u}->{v} not mirrored")));
                }
            }
            half_degree_sum += list.len();
        }
        if half_degree_sum != 2 * self.m {
            return Err(GraphError::Corrupt(format!(
                "degree sum {half_degree_sum} != 2m = {}",
                2 * self.m
            )));
        }
        Ok(())
    }

    pub(crate) fn insert_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v);
        for (a, b) in [(u, v), (v, u)] {
            let list = &mut self.adj[a];
            match list.binary_search(&b) {
                Ok(_) => panic!("edge {{{u}, {v}}} already present"),
                Err(pos) => list.insert(pos, b),
            }
        }
        self.m += 1;
    }

    pub(crate) fn remove_edge(&mut self, u: usize, v: usize) {
        for (a, b) in [(u, v), (v, u)] {
            let list = &mut self.adj[a];
            let pos = list.binary_search(&b).expect("edge to remove is present");
            list.remove(pos);
        }
        self.m -= 1;
    }
}

/// Per-node degrees, indexed by node id.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Default)]
pub struct DegreeSequence(pub Vec<u64>);

impl DegreeSequence {
    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    /// Mean degree ⟨k⟩; 0 for an empty sequence.
    pub fn mean(&self) -> f64 {
        if self.0.is_empty() {
            0.0
        } else {
            self.total() as f64 / self.0.len() as f64
        }
    }
}

impl From<Vec<u64>> for DegreeSequence {
    fn from(v: Vec<u64>) -> Self {
        DegreeSequence(v)
    }
}

pub fn degree_sequence(g: &Graph) -> DegreeSequence {
    g.degree_sequence()
}

/// Connected components, each sorted, listed by their smallest node.
pub fn connected_components(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        queue.push_back(start);
        let mut comp = Vec::new();
        while let Some(u) = queue.pop_front() {
            comp.push(u);
            for &v in g.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

pub fn is_connected(g: &Graph) -> bool {
    if g.n() <= 1 {
        return true;
    }
    let mut seen = vec![false; g.n()];
    let mut stack = vec![0];
    seen[0] = true;
    let mut reached = 1;
    while let Some(u) = stack.pop() {
        for &v in g.neighbors(u) {
            if !seen[v] {
                seen[v] = true;
                reached += 1;
                stack.push(v);
            }
        }
    }
    reached == g.n()
}

/// Largest component (ties go to the one holding the smallest node) and the
/// original ids of its nodes, in increasing order.
pub fn giant_component(g: &Graph) -> (Graph, Vec<usize>) {
    let comps = connected_components(g);
    let Some(best) = comps
        .into_iter()
        .reduce(|best, c| if c.len() > best.len() { c } else { best })
    else {
        return (Graph::empty(0), Vec::new());
    };
    (g.induced_subgraph(&best), best)
}
