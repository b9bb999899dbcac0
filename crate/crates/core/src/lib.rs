//! Exact and kernelized 1-planarity testing with verifiable crossing witnesses.
//!
//! A graph is 1-planar when it can be drawn in the plane with every edge
//! crossed at most once. The exact [`solver`] searches over crossing
//! matchings; the kernels in [`kernel`] shrink structured inputs (small
//! vertex cover, tree-depth or cyclomatic number) first and lift the
//! witness back afterwards.

pub mod cli;
pub mod constraints;
pub mod embedding;
pub mod generate;
pub mod graph;
pub mod kernel;
pub mod par;
pub mod plan;
pub mod solver;

pub use constraints::ConstraintSet;
pub use embedding::{verify_witness, CrossingWitness};
pub use graph::{Edge, Graph, Vertex};
pub use plan::LiftPlan;
pub use solver::{decide, exhaustive_oracle, NotOnePlanarReason, SolveOutcome};
