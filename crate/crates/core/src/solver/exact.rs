//! Exact branch and bound over edge subsets, used as an oracle and as the
//! fallback when the DP gives up.

use crate::error::{Error, Result};
use crate::graph::EdgeId;
use crate::problem::Mode;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExactLimits {
    /// Positive-weight edges allowed; weight-0 edges are always taken.
    pub max_edges: usize,
    /// Search nodes before giving up.
    pub max_nodes: u64,
}

impl Default for ExactLimits {
    fn default() -> Self {
        ExactLimits { max_edges: 24, max_nodes: 20_000_000 }
    }
}

struct Search<'a> {
    n: usize,
    edges: &'a [(usize, usize)],
    weights: &'a [u32],
    mode: Mode,
    free: Vec<EdgeId>,
    /// 0 undecided, 1 taken, 2 dropped.
    status: Vec<u8>,
    best: Option<(u64, Vec<u8>)>,
    nodes: u64,
    max_nodes: u64,
}

impl Search<'_> {
    fn upper_feasible(&self) -> bool {
        let kept: Vec<(usize, usize)> =
            (0..self.edges.len()).filter(|&e| self.status[e] != 2).map(|e| self.edges[e]).collect();
        self.mode.is_feasible(self.n, &kept)
    }

    /// Taken weight plus half the remaining degree deficit.
    fn lower_bound(&self, taken: u64) -> u64 {
        let mut deg = vec![0usize; self.n];
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            if self.status[e] == 1 {
                deg[u] += 1;
                deg[v] += 1;
            }
        }
        let deficit: usize = deg.iter().map(|&d| 3usize.saturating_sub(d)).sum();
        taken + deficit.div_ceil(2) as u64
    }

    fn go(&mut self, i: usize, taken: u64) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(Error::BudgetExceeded(format!("exact search passed {} nodes", self.max_nodes)));
        }
        if self.best.as_ref().is_some_and(|(w, _)| self.lower_bound(taken) >= *w) {
            return Ok(());
        }
        if i == self.free.len() {
            // the upper graph is feasible by construction
            self.best = Some((taken, self.status.clone()));
            return Ok(());
        }
        let e = self.free[i];
        self.status[e] = 2;
        if self.upper_feasible() {
            self.go(i + 1, taken)?;
        }
        self.status[e] = 1;
        self.go(i + 1, taken + self.weights[e] as u64)?;
        self.status[e] = 0;
        Ok(())
    }
}

/// Minimum-weight feasible edge set; ties go to the first solution met
/// when dropping heavier edges first.
pub fn solve_exact(
    n: usize,
    edges: &[(usize, usize)],
    weights: &[u32],
    mode: Mode,
    limits: &ExactLimits,
) -> Result<(Vec<EdgeId>, u64)> {
    if !mode.is_feasible(n, edges) {
        return Err(Error::InfeasibleSlice(format!("graph is not {mode} feasible")));
    }
    let mut free: Vec<EdgeId> = (0..edges.len()).filter(|&e| weights[e] > 0).collect();
    if free.len() > limits.max_edges {
        return Err(Error::BudgetExceeded(format!(
            "{} weighted edges exceed the exact budget of {}",
            free.len(),
            limits.max_edges
        )));
    }
    free.sort_by_key(|&e| (std::cmp::Reverse(weights[e]), e));
    let mut status = vec![0u8; edges.len()];
    for (e, s) in status.iter_mut().enumerate() {
        if weights[e] == 0 {
            *s = 1;
        }
    }
    let mut search =
        Search { n, edges, weights, mode, free, status, best: None, nodes: 0, max_nodes: limits.max_nodes };
    search.go(0, 0)?;
    let (w, status) = search.best.ok_or_else(|| Error::Internal("feasible graph without a solution".into()))?;
    let chosen = (0..edges.len()).filter(|&e| status[e] == 1).collect();
    Ok((chosen, w))
}
