//! The ω small-world measure: path length relative to randomized references
//! minus transitivity relative to latticized references.

use crate::graph::{Graph, GraphError};
use crate::measures::{average_path_length, transitivity, TransitivityMode};
use crate::rewire::{rewire, LatticeMetric, RewireError, RewireMode, RewirePlan, DEFAULT_LATTICIZE_SWAPS_PER_EDGE, DEFAULT_RANDOMIZE_SWAPS_PER_EDGE};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

pub const DEFAULT_REALIZATIONS: usize = 8;
pub const DEFAULT_OMEGA_BAND: f64 = 0.5;
pub const DEFAULT_DEGENERATE_THRESHOLD: f64 = 0.5;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SmallWorldError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Rewire(#[from] RewireError),
    #[error("latticized references have zero transitivity while the graph has T = {0}")]
    DegenerateTransitivity(f64),
    #[error("realizations must be at least 1")]
    InvalidRealizations,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OmegaClass {
    LatticeLike,
    SmallWorld,
    RandomLike,
    Degenerate,
}

impl OmegaClass {
    pub const ALL: [OmegaClass; 4] = [
        OmegaClass::LatticeLike,
        OmegaClass::SmallWorld,
        OmegaClass::RandomLike,
        OmegaClass::Degenerate,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            OmegaClass::LatticeLike => "lattice-like",
            OmegaClass::SmallWorld => "small-world",
            OmegaClass::RandomLike => "random-like",
            OmegaClass::Degenerate => "degenerate",
        }
    }
}

impl fmt::Display for OmegaClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for OmegaClass {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        OmegaClass::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| format!("unknown omega class {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OmegaConfig {
    pub realizations: usize,
    pub randomize_swaps_per_edge: u32,
    pub latticize_swaps_per_edge: u32,
    pub seed: u64,
    pub connectivity_guard: bool,
    pub metric: LatticeMetric,
    pub transitivity_mode: TransitivityMode,
    /// Use max(T, lattice mean) as the lattice transitivity, so a reference
    /// that ended less clustered than the graph cannot push ratio_T above 1.
    pub clamp_lattice: bool,
    /// Half-width of the small-world band around ω = 0.
    pub band: f64,
    /// Both ratios below this marks the graph degenerate.
    pub degenerate_threshold: f64,
}

impl Default for OmegaConfig {
    fn default() -> Self {
        OmegaConfig {
            realizations: DEFAULT_REALIZATIONS,
            randomize_swaps_per_edge: DEFAULT_RANDOMIZE_SWAPS_PER_EDGE,
            latticize_swaps_per_edge: DEFAULT_LATTICIZE_SWAPS_PER_EDGE,
            seed: 0,
            connectivity_guard: true,
            metric: LatticeMetric::default(),
            transitivity_mode: TransitivityMode::default(),
            clamp_lattice: true,
            band: DEFAULT_OMEGA_BAND,
            degenerate_threshold: DEFAULT_DEGENERATE_THRESHOLD,
        }
    }
}

impl OmegaConfig {
    /// Reference run `i` of `2 * realizations`: the first half randomizes, the
    /// second half latticizes, each seeded with `seed + i`.
    pub fn reference_plan(&self, i: usize) -> RewirePlan {
        let seed = self.seed.wrapping_add(i as u64);
        let plan = if i < self.realizations {
            RewirePlan::randomize(seed).with_swaps_per_edge(self.randomize_swaps_per_edge)
        } else {
            RewirePlan::latticize(seed).with_swaps_per_edge(self.latticize_swaps_per_edge)
        };
        plan.with_guard(self.connectivity_guard).with_metric(self.metric)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SmallWorldReport {
    pub n: usize,
    pub m: usize,
    pub path_length: f64,
    pub transitivity: f64,
    /// Mean path length of the randomized references.
    pub random_path_length: f64,
    /// Lattice transitivity used in ratio_T.
    pub lattice_transitivity: f64,
    /// Plain mean over the latticized references, before clamping.
    pub lattice_transitivity_mean: f64,
    pub ratio_l: f64,
    pub ratio_t: f64,
    pub omega: f64,
    pub realizations: usize,
    pub seed: u64,
    pub classification: OmegaClass,
}

impl SmallWorldReport {
    pub const CSV_HEADER: &'static str = "id,n,m,L,T,L_A,T_T,ratio_L,ratio_T,omega,classification,realizations,seed";

    pub fn csv_row(&self, id: &str) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{}",
            id,
            self.n,
            self.m,
            self.path_length,
            self.transitivity,
            self.random_path_length,
            self.lattice_transitivity,
            self.ratio_l,
            self.ratio_t,
            self.omega,
            self.classification,
            self.realizations,
            self.seed
        )
    }
}

pub fn classify_omega_with(omega: f64, ratio_l: f64, ratio_t: f64, band: f64, degenerate_threshold: f64) -> OmegaClass {
    if omega < -band {
        OmegaClass::LatticeLike
    } else if omega > band {
        OmegaClass::RandomLike
    } else if ratio_l < degenerate_threshold && ratio_t < degenerate_threshold {
        OmegaClass::Degenerate
    } else {
        OmegaClass::SmallWorld
    }
}

pub fn classify_omega(report: &SmallWorldReport) -> OmegaClass {
    classify_omega_with(
        report.omega,
        report.ratio_l,
        report.ratio_t,
        DEFAULT_OMEGA_BAND,
        DEFAULT_DEGENERATE_THRESHOLD,
    )
}

enum Reference {
    PathLength(f64),
    Transitivity(f64),
}

pub fn omega_with(g: &Graph, config: &OmegaConfig) -> Result<SmallWorldReport, SmallWorldError> {
    if config.realizations < 1 {
        return Err(SmallWorldError::InvalidRealizations);
    }
    if g.n() < 4 || g.m() < 2 {
        return Err(GraphError::TooSmall { n: g.n(), m: g.m() }.into());
    }
    let path_length = average_path_length(g)?;
    let t = transitivity(g, config.transitivity_mode);
    let refs: Vec<Result<Reference, SmallWorldError>> = (0..2 * config.realizations)
        .into_par_iter()
        .map(|i| {
            let plan = config.reference_plan(i);
            let (reference, _) = rewire(g, &plan)?;
            Ok(match plan.mode {
                RewireMode::Randomize => Reference::PathLength(average_path_length(&reference)?),
                RewireMode::Latticize => Reference::Transitivity(transitivity(&reference, config.transitivity_mode)),
            })
        })
        .collect();
    let (mut l_sum, mut t_sum) = (0.0, 0.0);
    for r in refs {
        match r? {
            Reference::PathLength(l) => l_sum += l,
            Reference::Transitivity(t) => t_sum += t,
        }
    }
    let k = config.realizations as f64;
    let (random_path_length, lattice_transitivity_mean) = (l_sum / k, t_sum / k);
    if lattice_transitivity_mean == 0.0 && t > 0.0 {
        return Err(SmallWorldError::DegenerateTransitivity(t));
    }
    let lattice_transitivity = if config.clamp_lattice {
        lattice_transitivity_mean.max(t)
    } else {
        lattice_transitivity_mean
    };
    let ratio_t = if lattice_transitivity == 0.0 {
        0.0
    } else {
        t / lattice_transitivity
    };
    let ratio_l = random_path_length / path_length;
    let omega = ratio_l - ratio_t;
    Ok(SmallWorldReport {
        n: g.n(),
        m: g.m(),
        path_length,
        transitivity: t,
        random_path_length,
        lattice_transitivity,
        lattice_transitivity_mean,
        ratio_l,
        ratio_t,
        omega,
        realizations: config.realizations,
        seed: config.seed,
        classification: classify_omega_with(omega, ratio_l, ratio_t, config.band, config.degenerate_threshold),
    })
}

/// ω with both references built from `plan` (its swap budget, seed, guard and metric).
pub fn omega(g: &Graph, plan: &RewirePlan, realizations: usize) -> Result<SmallWorldReport, SmallWorldError> {
    plan.validate()?;
    let config = OmegaConfig {
        realizations,
        randomize_swaps_per_edge: plan.swaps_per_edge,
        latticize_swaps_per_edge: plan.swaps_per_edge,
        seed: plan.seed,
        connectivity_guard: plan.connectivity_guard,
        metric: plan.metric,
        ..OmegaConfig::default()
    };
    omega_with(g, &config)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth::{complete_graph, ring_lattice};

    fn quick(seed: u64) -> OmegaConfig {
        OmegaConfig {
            realizations: 2,
            seed,
            ..OmegaConfig::default()
        }
    }

    #[test]
    fn complete_graph_is_exactly_zero() {
        let r = omega_with(&complete_graph(10), &quick(1)).unwrap();
        assert_eq!(r.omega, 0.0);
        assert_eq!(r.ratio_l, 1.0);
        assert_eq!(r.ratio_t, 1.0);
        assert_eq!(r.classification, OmegaClass::SmallWorld);
    }

    #[test]
    fn ring_is_lattice_like() {
        let r = omega_with(&ring_lattice(100, 4).unwrap(), &quick(3)).unwrap();
        assert!(r.omega < -0.3, "{r:?}");
        assert!((r.omega - (r.ratio_l - r.ratio_t)).abs() < 1e-12);
    }

    #[test]
    fn tree_has_zero_transitivity_ratio() {
        // binary tree on 63 nodes
        let edges = (1..63usize).map(|v| ((v - 1) / 2, v));
        let g = Graph::from_edges(63, edges).unwrap();
        let r = omega_with(&g, &quick(2)).unwrap();
        assert_eq!(r.ratio_t, 0.0);
        assert_eq!(r.omega, r.ratio_l);
    }

    #[test]
    fn threshold_rule() {
        assert_eq!(classify_omega_with(0.0, 1.0, 1.0, 0.5, 0.1), OmegaClass::SmallWorld);
        assert_eq!(classify_omega_with(-0.8, 0.2, 1.0, 0.5, 0.1), OmegaClass::LatticeLike);
        assert_eq!(classify_omega_with(0.9, 1.0, 0.1, 0.5, 0.1), OmegaClass::RandomLike);
        assert_eq!(classify_omega_with(0.05, 0.05, 0.0, 0.5, 0.1), OmegaClass::Degenerate);
        assert_eq!(classify_omega_with(0.5, 1.0, 0.5, 0.5, 0.1), OmegaClass::SmallWorld);
    }

    #[test]
    fn rejects_disconnected_and_tiny() {
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (3, 4), (4, 5)]).unwrap();
        assert!(matches!(
            omega_with(&g, &quick(0)),
            Err(SmallWorldError::Graph(GraphError::DisconnectedGraph { .. }))
        ));
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert!(matches!(omega_with(&g, &quick(0)), Err(SmallWorldError::Graph(GraphError::TooSmall { .. }))));
        let zero = OmegaConfig {
            realizations: 0,
            ..quick(0)
        };
        assert_eq!(
            omega_with(&complete_graph(5), &zero),
            Err(SmallWorldError::InvalidRealizations)
        );
    }

    #[test]
    fn deterministic_for_seed() {
        let g = ring_lattice(60, 4).unwrap();
        assert_eq!(omega_with(&g, &quick(9)).unwrap(), omega_with(&g, &quick(9)).unwrap());
    }
}
