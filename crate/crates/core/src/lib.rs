//! Polynomial-time approximation schemes for the minimum 3-edge-connected
//! (3-ECSS) and 3-vertex-connected (3-VCSS) spanning subgraph problems on
//! planar graphs.
//!
//! The pipeline: cap parallel edges, peel the embedding into levels, pick a
//! cheap residual class of double layers, cut the graph into slices of bounded
//! outerplanarity, solve each slice exactly over a branch decomposition, and
//! return the union with the residual edges.

pub mod connectivity;
pub mod decomposition;
pub mod error;
pub mod graph;
pub mod io;
pub mod layering;
pub mod planarity;
pub mod problem;
pub mod ptas;
pub mod slicing;
pub mod solver;
pub mod toolkit;
pub(crate) mod util;

pub use decomposition::{decompose, verify_width, BranchDecomposition};
pub use error::{Error, Result};
pub use graph::{Dart, EdgeId, EdgeRef, EmbeddedMultigraph, VertexId, VertexKind};
pub use layering::{compute_levels, plan_shift, LevelAssignment, ShiftPlan};
pub use problem::Mode;
pub use ptas::{accounting, solve, verify, Solution, SolveOptions};
pub use slicing::{build_slice_tree, build_slices, Slice, SliceTree};
pub use solver::{SolverChoice, SolverLimits, SolverUsed};
