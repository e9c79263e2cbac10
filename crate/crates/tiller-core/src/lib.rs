//! Fuzzy heading control for an autonomous sailboat, plus everything needed
//! to study it: a type-1 Mamdani pipeline, an interval type-2 extension with
//! a parameterised footprint of uncertainty, a deterministic sailing
//! simulator with a bounded stochastic wind process, and a batch harness
//! that sweeps FOU sizes against wind configurations and scores the result
//! with RMSE metrics and one-sided rank-sum tests.
//!
//! Layout:
//!
//! * [`fuzzy`] — triangular membership functions, rule base, type-1
//!   inference and centroid defuzzification.
//! * [`it2`] — FOU construction by horizontal movement, interval firing,
//!   Karnik-Mendel type reduction.
//! * [`controller`] — heading/delta-error computation and the 1 Hz helm
//!   controller built from either pipeline.
//! * [`sim`] — courses, wind process, kinematic boat physics and the
//!   episode loop.
//! * [`stats`] — RMSE, Wilcoxon rank-sum tests, batch comparisons.
//! * [`harness`] — experiment matrix expansion, batch execution, result
//!   store and report emission.
//!
//! All randomness flows through a ChaCha8 stream seeded per run from a
//! splitmix64 derivation, and all transcendental math goes through `libm`,
//! so runs replay bit-exactly across machines.

pub mod angles;
pub mod controller;
pub mod fuzzy;
pub mod harness;
pub mod it2;
pub mod sim;
pub mod stats;

pub use controller::{ControllerConfig, ControllerKind, HelmController, HelmState};
pub use fuzzy::{CrispOutput, MFBank, OutputFuzzySet, RuleBase, TriangularMF};
pub use it2::{CentroidInterval, IntervalMF, IntervalOutputSet};
pub use sim::{BoatState, CourseSpec, RunRecord, SimParams, Wind, WindConfig};
pub use stats::{BatchResult, ComparisonRow, RunSummary};
