//! The two connectivity problems.

use crate::connectivity::{
    is_k_edge_connected, is_k_vertex_connected, is_three_edge_connected_plane, is_three_vertex_connected_plane,
};
use crate::error::{Error, Result};
use crate::graph::EmbeddedMultigraph;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    /// Minimum 3-edge-connected spanning subgraph.
    #[serde(rename = "3ecss")]
    Ecss,
    /// Minimum 3-vertex-connected spanning subgraph.
    #[serde(rename = "3vcss")]
    Vcss,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Ecss => "3ecss",
            Mode::Vcss => "3vcss",
        }
    }

    /// Parallel copies worth keeping: an optimum never uses more.
    pub fn parallel_cap(self) -> usize {
        match self {
            Mode::Ecss => 3,
            Mode::Vcss => 1,
        }
    }

    /// Constant `c` in `k = ceil(c / epsilon)`.
    pub fn ratio_constant(self) -> usize {
        match self {
            Mode::Ecss => 36,
            Mode::Vcss => 12,
        }
    }

    /// Window width for a target approximation `1 + epsilon`, `0 < epsilon <= 1`.
    pub fn k_for_epsilon(self, epsilon: f64) -> Result<usize> {
        if !(epsilon > 0.0 && epsilon <= 1.0) {
            return Err(Error::InvalidParameter(format!("epsilon must lie in (0, 1], got {epsilon}")));
        }
        // tolerate representation error such as 36 / 0.9 = 40.000000000000007
        Ok((self.ratio_constant() as f64 / epsilon - 1e-9).ceil().max(2.0) as usize)
    }

    pub fn is_feasible(self, n: usize, edges: &[(usize, usize)]) -> bool {
        match self {
            Mode::Ecss => n >= 2 && is_k_edge_connected(n, edges, 3),
            Mode::Vcss => is_k_vertex_connected(n, edges, 3),
        }
    }

    /// Same answer as [`is_feasible`](Self::is_feasible), in near-linear time
    /// using the embedding.
    pub fn is_feasible_plane(self, g: &EmbeddedMultigraph) -> bool {
        match self {
            Mode::Ecss => g.vertex_count() >= 2 && is_three_edge_connected_plane(g),
            Mode::Vcss => is_three_vertex_connected_plane(g),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "3ecss" => Ok(Mode::Ecss),
            "3vcss" => Ok(Mode::Vcss),
            _ => Err(Error::InvalidParameter(format!("unknown problem `{s}`"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k_from_epsilon() {
        assert_eq!(Mode::Ecss.k_for_epsilon(0.5).unwrap(), 72);
        assert_eq!(Mode::Vcss.k_for_epsilon(0.5).unwrap(), 24);
        assert_eq!(Mode::Ecss.k_for_epsilon(0.9).unwrap(), 40);
        assert!(Mode::Ecss.k_for_epsilon(0.0).is_err());
        assert!(Mode::Ecss.k_for_epsilon(1.5).is_err());
    }
}
