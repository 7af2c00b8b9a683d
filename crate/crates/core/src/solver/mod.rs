//! Exact minimum-weight 3-ECSS and 3-VCSS on a slice.

pub mod characteristic;
pub mod demands;
pub mod exact;
pub mod profile;

pub use characteristic::{combine, leaf_characteristic, Characteristic, Configuration, SeparatorCompletion};
pub use demands::solve_demands;
pub use exact::{solve_exact, ExactLimits};
pub use profile::{solve_dp, DpLimits, DpStats};

use crate::decomposition::{decompose, BranchDecomposition};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, EmbeddedMultigraph};
use crate::problem::Mode;
use crate::slicing::Slice;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Which solver to run on each slice.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolverChoice {
    Dp,
    Exact,
    /// DP, then the exact search, then the whole slice.
    #[default]
    Auto,
}

impl FromStr for SolverChoice {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dp" => Ok(SolverChoice::Dp),
            "exact" => Ok(SolverChoice::Exact),
            "auto" => Ok(SolverChoice::Auto),
            _ => Err(Error::InvalidParameter(format!("unknown solver `{s}`"))),
        }
    }
}

impl fmt::Display for SolverChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SolverChoice::Dp => "dp",
            SolverChoice::Exact => "exact",
            SolverChoice::Auto => "auto",
        })
    }
}

/// The path actually taken for a slice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolverUsed {
    Dp,
    Exact,
    /// Both solvers gave up; every slice edge is kept, which is feasible
    /// but not optimal.
    WholeSlice,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolverLimits {
    pub dp: DpLimits,
    pub exact: ExactLimits,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceSolution {
    /// Sorted slice edge ids.
    pub edges: Vec<EdgeId>,
    pub weight: u64,
    pub solver: SolverUsed,
    pub width: usize,
}

/// Minimum-weight spanning 3-edge-connected subgraph over `bd`.
pub fn solve_min3ecss(
    g: &EmbeddedMultigraph,
    weights: &[u32],
    bd: &BranchDecomposition,
    limits: &DpLimits,
) -> Result<(Vec<EdgeId>, u64)> {
    solve_dp(g, weights, Mode::Ecss, bd, limits).map(|(e, w, _)| (e, w))
}

/// Minimum-weight spanning triconnected subgraph over `bd`.
pub fn solve_min3vcss(
    g: &EmbeddedMultigraph,
    weights: &[u32],
    bd: &BranchDecomposition,
    limits: &DpLimits,
) -> Result<(Vec<EdgeId>, u64)> {
    solve_dp(g, weights, Mode::Vcss, bd, limits).map(|(e, w, _)| (e, w))
}

/// Solves a weighted embedded graph with the chosen strategy.
pub fn solve_weighted(
    g: &EmbeddedMultigraph,
    weights: &[u32],
    mode: Mode,
    choice: SolverChoice,
    limits: &SolverLimits,
) -> Result<SliceSolution> {
    if !mode.is_feasible_plane(g) {
        return Err(Error::InfeasibleSlice(format!("slice is not {mode} feasible")));
    }
    let exact = || -> Result<SliceSolution> {
        let (edges, weight) = solve_exact(g.vertex_count(), g.edges(), weights, mode, &limits.exact)?;
        Ok(SliceSolution { edges, weight, solver: SolverUsed::Exact, width: 0 })
    };
    if choice == SolverChoice::Exact {
        return exact();
    }
    let bd = decompose(g)?;
    let dp = solve_dp(g, weights, mode, &bd, &limits.dp).map(|(edges, weight, _)| SliceSolution {
        edges,
        weight,
        solver: SolverUsed::Dp,
        width: bd.width,
    });
    match (choice, dp) {
        (SolverChoice::Auto, Err(Error::BudgetExceeded(_))) => match exact() {
            Err(Error::BudgetExceeded(_)) => {
                let edges: Vec<EdgeId> = (0..g.edge_count()).collect();
                let weight = weights.iter().map(|&w| w as u64).sum();
                Ok(SliceSolution { edges, weight, solver: SolverUsed::WholeSlice, width: bd.width })
            }
            other => other.map(|s| SliceSolution { width: bd.width, ..s }),
        },
        (_, res) => res,
    }
}

pub fn solve_slice(slice: &Slice, mode: Mode, choice: SolverChoice, limits: &SolverLimits) -> Result<SliceSolution> {
    solve_weighted(&slice.graph, &slice.weights, mode, choice, limits)
}
