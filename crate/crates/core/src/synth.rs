//! Synthetic graph generators used as fixtures and oracles.

use crate::graph::Graph;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SynthError {
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
}

fn invalid(msg: impl Into<String>) -> SynthError {
    SynthError::InvalidParam(msg.into())
}

/// Ring of `n` nodes, each joined to its `k / 2` nearest neighbours on either side.
pub fn ring_lattice(n: usize, k: usize) -> Result<Graph, SynthError> {
    if k == 0 || k % 2 != 0 || k >= n {
        return Err(invalid(format!("ring lattice needs even 0 < k < n (n={n}, k={k})")));
    }
    let edges = (0..n).flat_map(|i| (1..=k / 2).map(move |j| (i, (i + j) % n)));
    Ok(Graph::from_edges_lossy(n, edges).expect("indices in range"))
}

/// G(n, p), sampled with geometric skips over the pair list.
pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Result<Graph, SynthError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(invalid(format!("p = {p} outside [0, 1]")));
    }
    if p == 0.0 || n < 2 {
        return Ok(Graph::empty(n));
    }
    if p == 1.0 {
        return Ok(complete_graph(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let log_q = (1.0 - p).ln();
    let mut edges = Vec::new();
    let (mut v, mut w) = (1usize, -1i64);
    while v < n {
        let r: f64 = rng.gen();
        w += 1 + ((1.0 - r).ln() / log_q).floor() as i64;
        while w >= v as i64 && v < n {
            w -= v as i64;
            v += 1;
        }
        if v < n {
            edges.push((w as usize, v));
        }
    }
    Ok(Graph::from_edges(n, edges).expect("skip sampler yields distinct pairs"))
}

/// G(n, p) with p chosen so the expected mean degree is `mean_degree`.
pub fn erdos_renyi_mean_degree(n: usize, mean_degree: f64, seed: u64) -> Result<Graph, SynthError> {
    if n < 2 {
        return Err(invalid("need at least two nodes"));
    }
    erdos_renyi(n, mean_degree / (n - 1) as f64, seed)
}

/// Watts–Strogatz: each lattice edge has its far endpoint moved with probability `beta`.
pub fn watts_strogatz(n: usize, k: usize, beta: f64, seed: u64) -> Result<Graph, SynthError> {
    if !(0.0..=1.0).contains(&beta) {
        return Err(invalid(format!("beta = {beta} outside [0, 1]")));
    }
    let mut g = ring_lattice(n, k)?;
    if beta == 0.0 {
        return Ok(g);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for j in 1..=k / 2 {
        for i in 0..n {
            let target = (i + j) % n;
            if rng.gen::<f64>() >= beta || !g.has_edge(i, target) {
                continue;
            }
            if g.degree(i) >= n - 1 {
                continue;
            }
            let w = loop {
                let w = rng.gen_range(0..n);
                if w != i && !g.has_edge(i, w) {
                    break w;
                }
            };
            g.remove_edge(i, target);
            g.insert_edge(i, w);
        }
    }
    Ok(g)
}

/// Barabási–Albert growth from a clique of `m0` nodes; every new node attaches
/// `m_per_step` edges to distinct existing nodes chosen proportionally to degree.
pub fn barabasi_albert(n: usize, m0: usize, m_per_step: usize, seed: u64) -> Result<Graph, SynthError> {
    if m_per_step == 0 || m_per_step > m0 || m0 > n || m0 == 0 {
        return Err(invalid(format!(
            "need 1 <= m_per_step <= m0 <= n (n={n}, m0={m0}, m_per_step={m_per_step})"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(usize, usize)> = (0..m0).flat_map(|u| (u + 1..m0).map(move |v| (u, v))).collect();
    // Each node appears once per incident edge, so a uniform pick is degree-proportional.
    let mut endpoints: Vec<usize> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
    let mut chosen = Vec::with_capacity(m_per_step);
    for v in m0..n {
        chosen.clear();
        while chosen.len() < m_per_step {
            let t = if endpoints.is_empty() {
                rng.gen_range(0..v)
            } else {
                endpoints[rng.gen_range(0..endpoints.len())]
            };
            if !chosen.contains(&t) {
                chosen.push(t);
            }
        }
        for &t in &chosen {
            edges.push((t, v));
            endpoints.push(t);
            endpoints.push(v);
        }
    }
    Ok(Graph::from_edges(n, edges).expect("attachment avoids duplicates"))
}

/// `rows × cols` square grid, nodes numbered row-major.
pub fn grid_2d(rows: usize, cols: usize) -> Result<Graph, SynthError> {
    if rows == 0 || cols == 0 {
        return Err(invalid("grid dimensions must be positive"));
    }
    let id = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    Ok(Graph::from_edges(rows * cols, edges).expect("grid edges are distinct"))
}

pub fn complete_graph(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).expect("complete graph")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::{transitivity, TransitivityMode};

    #[test]
    fn ring_lattice_cases() {
        let c6 = ring_lattice(6, 2).unwrap();
        assert_eq!(c6.m(), 6);
        assert!((0..6).all(|u| c6.degree(u) == 2 && c6.has_edge(u, (u + 1) % 6)));
        assert_eq!(ring_lattice(5, 4).unwrap(), complete_graph(5));
        assert!(ring_lattice(5, 3).is_err());
        assert!(ring_lattice(4, 4).is_err());
        assert!(ring_lattice(4, 0).is_err());
        let big = ring_lattice(1000, 4).unwrap();
        assert_eq!(transitivity(&big, TransitivityMode::MeanLocal), 0.5);
        assert_eq!(transitivity(&big, TransitivityMode::Global), 0.5);
    }

    #[test]
    fn erdos_renyi_cases() {
        assert_eq!(erdos_renyi(50, 0.0, 1).unwrap().m(), 0);
        assert_eq!(erdos_renyi(20, 1.0, 1).unwrap(), complete_graph(20));
        assert!(erdos_renyi(10, 1.5, 1).is_err());
        let g = erdos_renyi(1000, 0.01, 7).unwrap();
        g.check_invariants().unwrap();
        let mean = 4995.0;
        let sd = (mean * 0.99f64).sqrt();
        assert!((g.m() as f64 - mean).abs() < 4.0 * sd, "m = {}", g.m());
        assert_eq!(g, erdos_renyi(1000, 0.01, 7).unwrap());
    }

    #[test]
    fn watts_strogatz_cases() {
        assert_eq!(watts_strogatz(30, 4, 0.0, 3).unwrap(), ring_lattice(30, 4).unwrap());
        for beta in [0.0, 0.1, 0.5, 1.0] {
            let g = watts_strogatz(200, 6, beta, 11).unwrap();
            g.check_invariants().unwrap();
            assert_eq!(g.m() * 2, 200 * 6);
        }
        for seed in 0..5 {
            let g = watts_strogatz(1000, 4, 1.0, seed).unwrap();
            assert!(transitivity(&g, TransitivityMode::MeanLocal) < 0.05);
        }
        assert!(watts_strogatz(10, 4, -0.1, 0).is_err());
    }

    #[test]
    fn barabasi_albert_cases() {
        assert_eq!(barabasi_albert(5, 5, 2, 0).unwrap(), complete_graph(5));
        let (n, m0, mps) = (2000, 4, 3);
        let g = barabasi_albert(n, m0, mps, 9).unwrap();
        g.check_invariants().unwrap();
        assert_eq!(g.m(), m0 * (m0 - 1) / 2 + (n - m0) * mps);
        assert_eq!(g, barabasi_albert(n, m0, mps, 9).unwrap());
        assert!(barabasi_albert(10, 2, 3, 0).is_err());
        assert!(barabasi_albert(10, 1, 1, 0).unwrap().m() == 9);
    }

    #[test]
    fn grid_counts() {
        let g = grid_2d(3, 4).unwrap();
        assert_eq!(g.n(), 12);
        assert_eq!(g.m(), 3 * 3 + 2 * 4);
        assert_eq!(transitivity(&g, TransitivityMode::MeanLocal), 0.0);
    }
}
