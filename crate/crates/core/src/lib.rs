//! Small-world and scale-free profiling of real-world networks.
//!
//! Networks are read from Pajek, GraphML or edge-list files, reduced to simple
//! undirected graphs, and then classified twice: by the ω small-world measure
//! against degree-preserving rewired references, and by a power-law fitting
//! pipeline (maximum likelihood, bootstrap goodness of fit, likelihood-ratio
//! comparison against alternative distributions).

pub mod degreedist;
pub mod graph;
pub mod ingest;
pub mod measures;
pub mod pipeline;
pub mod rewire;
pub mod smallworld;
pub mod synth;

pub use graph::{connected_components, degree_sequence, giant_component, is_connected, DegreeSequence, Graph, GraphError};
pub use measures::{average_path_length, transitivity, TransitivityMode};
pub use rewire::{attempt_swap, latticize, randomize, LatticeMetric, RewireMode, RewirePlan, SwapOutcome};
