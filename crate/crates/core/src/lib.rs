//! Annihilating-ideal graphs of finite commutative principal rings.
//!
//! A ring is described by the nilpotency orders of its local chain-ring
//! factors ([`RingSpec`]); its ideals are exponent vectors ([`IdealVector`]).
//! From these the crate builds `AG(R)` ([`AgGraph`]), computes distances by
//! closed form and by BFS, finds the exact metric dimension with a
//! lexicographically smallest basis, builds explicit resolving sets, and
//! compares everything against the closed-form dimension values and bounds.

mod bitset;
pub mod constructions;
pub mod distance;
pub mod error;
pub mod formulas;
pub mod graph;
pub mod harness;
pub mod metdim;
pub mod ring;

pub use constructions::{constructed_resolving_set, ideal_i, ideal_l};
pub use distance::{DistanceMatrix, Metric, PackedDistances, UNREACHABLE};
pub use error::{Error, Result};
pub use formulas::{dim_bounds, epsilon_general, Case, DimBounds};
pub use graph::{adjacent, distance_branch, distance_closed_form, AgGraph, DistanceBranch, ExportFormat};
pub use harness::{dim_report, spec_grid, sweep, DimReport, Oracle, ReportOptions, Verdict};
pub use metdim::{
    brute_force_metric_dimension, exact_metric_dimension, graph_metric_dimension, is_resolving, representation,
    twin_partition, Basis, Hints, Representation, ResolvingSetCertificate, TwinPartition,
};
pub use ring::{parse_spec, spec_from_modulus, IdealVector, RingSpec};
