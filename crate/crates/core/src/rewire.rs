//! Degree-preserving double-edge swaps.
//!
//! A swap takes edges `(a, b)` and `(c, d)` and replaces them with `(a, d)` and
//! `(c, b)`. Randomization accepts any swap that keeps the graph simple (and,
//! with the guard on, connected). Latticization additionally requires
//! `|a-d| + |c-b| <= |a-b| + |c-d|`, pulling edges toward the diagonal of the
//! adjacency matrix under the current node numbering.

use crate::graph::Graph;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const DEFAULT_RANDOMIZE_SWAPS_PER_EDGE: u32 = 10;
pub const DEFAULT_LATTICIZE_SWAPS_PER_EDGE: u32 = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RewireError {
    #[error("rewiring needs at least two edges (m = {m})")]
    TooSmall { m: usize },
    #[error("invalid rewiring plan: {0}")]
    InvalidPlan(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RewireMode {
    Randomize,
    Latticize,
}

/// Node distance used by the latticize constraint and [`lattice_cost`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LatticeMetric {
    /// |u − v| on the line 0..n.
    #[default]
    Linear,
    /// min(|u − v|, n − |u − v|): nodes sit on a ring, so a ring lattice
    /// numbered in order is already optimal.
    Circular,
}

impl LatticeMetric {
    #[inline]
    pub fn distance(self, n: usize, x: usize, y: usize) -> usize {
        let d = x.abs_diff(y);
        match self {
            LatticeMetric::Linear => d,
            LatticeMetric::Circular => d.min(n - d),
        }
    }
}

impl std::str::FromStr for LatticeMetric {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "linear" => Ok(LatticeMetric::Linear),
            "circular" => Ok(LatticeMetric::Circular),
            _ => Err(format!("unknown lattice metric {s:?} (expected linear or circular)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RewirePlan {
    pub mode: RewireMode,
    /// Attempted swaps per edge; the total budget is this times m.
    pub swaps_per_edge: u32,
    pub seed: u64,
    pub connectivity_guard: bool,
    #[serde(default)]
    pub metric: LatticeMetric,
}

impl RewirePlan {
    pub fn randomize(seed: u64) -> Self {
        RewirePlan {
            mode: RewireMode::Randomize,
            swaps_per_edge: DEFAULT_RANDOMIZE_SWAPS_PER_EDGE,
            seed,
            connectivity_guard: true,
            metric: LatticeMetric::default(),
        }
    }

    pub fn latticize(seed: u64) -> Self {
        RewirePlan {
            mode: RewireMode::Latticize,
            swaps_per_edge: DEFAULT_LATTICIZE_SWAPS_PER_EDGE,
            seed,
            connectivity_guard: true,
            metric: LatticeMetric::default(),
        }
    }

    pub fn with_swaps_per_edge(mut self, swaps_per_edge: u32) -> Self {
        self.swaps_per_edge = swaps_per_edge;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_guard(mut self, on: bool) -> Self {
        self.connectivity_guard = on;
        self
    }

    pub fn with_metric(mut self, metric: LatticeMetric) -> Self {
        self.metric = metric;
        self
    }

    pub fn validate(&self) -> Result<(), RewireError> {
        if self.swaps_per_edge == 0 {
            return Err(RewireError::InvalidPlan("swaps_per_edge must be >= 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RejectReason {
    /// The four endpoints are not distinct.
    SharedEndpoint,
    /// One of the input pairs is not an edge of the graph.
    MissingEdge,
    /// `(a, d)` or `(c, b)` already exists.
    WouldDuplicate,
    LatticeConstraint,
    /// Accepted, then reverted because it split a component.
    WouldDisconnect,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SwapOutcome {
    Accepted,
    Rejected(RejectReason),
}

impl SwapOutcome {
    pub fn is_accepted(self) -> bool {
        self == SwapOutcome::Accepted
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct RewireStats {
    pub attempted: u64,
    pub accepted: u64,
    pub reverted: u64,
}

/// Σ distance(u, v) over the edges: the quantity latticization never increases.
pub fn lattice_cost(g: &Graph, metric: LatticeMetric) -> u64 {
    let n = g.n();
    g.edges().map(|(u, v)| metric.distance(n, u, v) as u64).sum()
}

/// Bidirectional BFS scratch space for the connectivity guard.
struct Reach {
    seen: Vec<u32>,
    epoch: u32,
    front_a: Vec<usize>,
    front_b: Vec<usize>,
    next: Vec<usize>,
}

impl Reach {
    fn new(n: usize) -> Self {
        Reach {
            seen: vec![0; n],
            epoch: 0,
            front_a: Vec::new(),
            front_b: Vec::new(),
            next: Vec::new(),
        }
    }

    /// Whether `a` and `b` lie in the same component. Marks are `2e` for the
    /// side grown from `a` and `2e + 1` for the side grown from `b`.
    fn connected(&mut self, g: &Graph, a: usize, b: usize) -> bool {
        if a == b {
            return true;
        }
        if self.epoch >= u32::MAX / 2 - 1 {
            self.seen.fill(0);
            self.epoch = 0;
        }
        self.epoch += 1;
        let (tag_a, tag_b) = (2 * self.epoch, 2 * self.epoch + 1);
        self.seen[a] = tag_a;
        self.seen[b] = tag_b;
        self.front_a.clear();
        self.front_b.clear();
        self.front_a.push(a);
        self.front_b.push(b);
        loop {
            if self.front_a.is_empty() || self.front_b.is_empty() {
                return false;
            }
            let grow_a = self.front_a.len() <= self.front_b.len();
            let (front, mine, theirs) = if grow_a {
                (&mut self.front_a, tag_a, tag_b)
            } else {
                (&mut self.front_b, tag_b, tag_a)
            };
            self.next.clear();
            for &u in front.iter() {
                for &v in g.neighbors(u) {
                    let s = self.seen[v];
                    if s == theirs {
                        return true;
                    }
                    if s != mine {
                        self.seen[v] = mine;
                        self.next.push(v);
                    }
                }
            }
            std::mem::swap(front, &mut self.next);
        }
    }
}

fn check_swap(g: &Graph, e1: (usize, usize), e2: (usize, usize), mode: RewireMode, metric: LatticeMetric) -> Option<RejectReason> {
    let ((a, b), (c, d)) = (e1, e2);
    if a == b || a == c || a == d || b == c || b == d || c == d {
        return Some(RejectReason::SharedEndpoint);
    }
    if !g.has_edge(a, b) || !g.has_edge(c, d) {
        return Some(RejectReason::MissingEdge);
    }
    if g.has_edge(a, d) || g.has_edge(c, b) {
        return Some(RejectReason::WouldDuplicate);
    }
    if mode == RewireMode::Latticize {
        let gap = |x, y| metric.distance(g.n(), x, y);
        if gap(a, d) + gap(c, b) > gap(a, b) + gap(c, d) {
            return Some(RejectReason::LatticeConstraint);
        }
    }
    None
}

fn apply_swap(g: &mut Graph, (a, b): (usize, usize), (c, d): (usize, usize)) {
    g.remove_edge(a, b);
    g.remove_edge(c, d);
    g.insert_edge(a, d);
    g.insert_edge(c, b);
}

fn revert_swap(g: &mut Graph, (a, b): (usize, usize), (c, d): (usize, usize)) {
    g.remove_edge(a, d);
    g.remove_edge(c, b);
    g.insert_edge(a, b);
    g.insert_edge(c, d);
}

/// Tries to turn `(a, b), (c, d)` into `(a, d), (c, b)` in place.
///
/// With the guard on, a swap that would split a component is applied, detected
/// and reverted; `g` is left unchanged on every rejection.
pub fn attempt_swap(
    g: &mut Graph,
    e1: (usize, usize),
    e2: (usize, usize),
    mode: RewireMode,
    metric: LatticeMetric,
    connectivity_guard: bool,
) -> SwapOutcome {
    if let Some(reason) = check_swap(g, e1, e2, mode, metric) {
        return SwapOutcome::Rejected(reason);
    }
    apply_swap(g, e1, e2);
    // After the swap a, b, c, d share a component iff a still reaches b.
    if connectivity_guard && !Reach::new(g.n()).connected(g, e1.0, e1.1) {
        revert_swap(g, e1, e2);
        return SwapOutcome::Rejected(RejectReason::WouldDisconnect);
    }
    SwapOutcome::Accepted
}

/// Runs `plan` on a copy of `g`, calling `on_accept` after every accepted swap.
pub fn rewire_observed<F>(g: &Graph, plan: &RewirePlan, mut on_accept: F) -> Result<(Graph, RewireStats), RewireError>
where
    F: FnMut(&Graph),
{
    plan.validate()?;
    let m = g.m();
    if m < 2 {
        return Err(RewireError::TooSmall { m });
    }
    let mut work = g.clone();
    let mut edges: Vec<(usize, usize)> = g.edges().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(plan.seed);
    let mut reach = Reach::new(g.n());
    let mut stats = RewireStats::default();
    let budget = plan.swaps_per_edge as u64 * m as u64;
    for _ in 0..budget {
        stats.attempted += 1;
        let i = rng.gen_range(0..m);
        let j = rng.gen_range(0..m);
        let (mut a, mut b) = edges[i];
        let (mut c, mut d) = edges[j];
        if rng.gen::<bool>() {
            std::mem::swap(&mut a, &mut b);
        }
        if rng.gen::<bool>() {
            std::mem::swap(&mut c, &mut d);
        }
        if i == j || check_swap(&work, (a, b), (c, d), plan.mode, plan.metric).is_some() {
            continue;
        }
        apply_swap(&mut work, (a, b), (c, d));
        if plan.connectivity_guard && !reach.connected(&work, a, b) {
            revert_swap(&mut work, (a, b), (c, d));
            stats.reverted += 1;
            continue;
        }
        edges[i] = (a.min(d), a.max(d));
        edges[j] = (c.min(b), c.max(b));
        stats.accepted += 1;
        on_accept(&work);
    }
    Ok((work, stats))
}

/// Runs `plan` on a copy of `g`, honouring the plan's mode.
pub fn rewire(g: &Graph, plan: &RewirePlan) -> Result<(Graph, RewireStats), RewireError> {
    rewire_observed(g, plan, |_| {})
}

/// Randomized reference G_A with the same degree sequence as `g`.
pub fn randomize(g: &Graph, plan: &RewirePlan) -> Result<Graph, RewireError> {
    let plan = RewirePlan {
        mode: RewireMode::Randomize,
        ..*plan
    };
    rewire(g, &plan).map(|(out, _)| out)
}

/// Latticized reference G_T with the same degree sequence as `g`.
pub fn latticize(g: &Graph, plan: &RewirePlan) -> Result<Graph, RewireError> {
    let plan = RewirePlan {
        mode: RewireMode::Latticize,
        ..*plan
    };
    rewire(g, &plan).map(|(out, _)| out)
}
