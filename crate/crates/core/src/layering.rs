//! Outerplanarity levels, double layers and the shifting plan.
//!
//! Level 0 is the outer face boundary; level `i + 1` is the outer boundary of
//! what remains after deleting levels `0..=i`. The double layer `D_i` holds
//! the edges `E_{i-1,i} ∪ E_i ∪ E_{i,i+1} ∪ E_{i+1}`, the residual class
//! `R_j` is the union of the `D_i` with `i ≡ j (mod k)`, and the plan keeps
//! the smallest class `R_t`.

use crate::error::{Error, Result};
use crate::graph::{EdgeId, EmbeddedMultigraph, VertexId};
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;

/// Level of each vertex and the stratum of each edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelAssignment {
    pub level: Vec<usize>,
    pub max_level: usize,
    /// `(min level, max level)` of the endpoints; they differ by at most 1.
    pub edge_levels: Vec<(usize, usize)>,
}

impl LevelAssignment {
    /// Indices of the (one or two) double layers containing edge `e`.
    pub fn double_layers(&self, e: EdgeId) -> [Option<usize>; 2] {
        let (a, b) = self.edge_levels[e];
        if a == b {
            [Some(a), a.checked_sub(1)]
        } else {
            [Some(a), Some(b)]
        }
    }

    pub fn in_double_layer(&self, e: EdgeId, i: usize) -> bool {
        self.double_layers(e).contains(&Some(i))
    }

    /// Number of vertices on each level.
    pub fn level_sizes(&self) -> Vec<usize> {
        let mut out = vec![0; self.max_level + 1];
        for &l in &self.level {
            out[l] += 1;
        }
        out
    }
}

/// Peels the embedding level by level.
///
/// Works on the vertex-face incidence graph: starting from the outer face,
/// a vertex at incidence distance `2i + 1` lies on level `i`.
pub fn compute_levels(g: &EmbeddedMultigraph) -> Result<LevelAssignment> {
    let n = g.vertex_count();
    if g.edge_count() == 0 {
        if n > 1 {
            return Err(Error::Disconnected);
        }
        return Ok(LevelAssignment { level: vec![0; n], max_level: 0, edge_levels: Vec::new() });
    }
    let faces = g.faces();
    let mut vdist = vec![usize::MAX; n];
    let mut fdist = vec![usize::MAX; faces.len()];
    // queue entries: (is_face, index)
    let mut queue = VecDeque::new();
    fdist[g.outer_face()] = 0;
    queue.push_back((true, g.outer_face()));
    while let Some((is_face, x)) = queue.pop_front() {
        if is_face {
            for &d in &faces[x] {
                let v = g.tail(d);
                if vdist[v] == usize::MAX {
                    vdist[v] = fdist[x] + 1;
                    queue.push_back((false, v));
                }
            }
        } else {
            for &e in g.rotation(x) {
                let f = g.face_of_dart(g.dart_from(x, e));
                if fdist[f] == usize::MAX {
                    fdist[f] = vdist[x] + 1;
                    queue.push_back((true, f));
                }
            }
        }
    }
    if vdist.contains(&usize::MAX) {
        return Err(Error::Disconnected);
    }
    let level: Vec<usize> = vdist.iter().map(|&d| (d - 1) / 2).collect();
    let max_level = level.iter().copied().max().unwrap_or(0);
    let edge_levels = g
        .edges()
        .iter()
        .map(|&(u, v)| {
            let (a, b) = (level[u].min(level[v]), level[u].max(level[v]));
            debug_assert!(b - a <= 1);
            (a, b)
        })
        .collect();
    Ok(LevelAssignment { level, max_level, edge_levels })
}

/// The chosen residual class and window layout.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftPlan {
    pub k: usize,
    pub t: usize,
    pub max_level: usize,
    /// `|D_i|` for `i = 0..=max_level`.
    pub double_layer_sizes: Vec<usize>,
    /// `|R_j|` for `j = 0..k`.
    pub residual_sizes: Vec<usize>,
    /// Membership of each edge in `R = R_t`.
    pub residual: Vec<bool>,
    /// Number of windows `W`.
    pub windows: usize,
}

impl ShiftPlan {
    /// Window boundary `f(i) = max(0, ik - k + t)`.
    pub fn boundary(&self, i: usize) -> usize {
        ((i * self.k + self.t) as i64 - self.k as i64).max(0) as usize
    }

    /// Levels `(f(i), f(i+1))` delimiting window `i`.
    pub fn window_levels(&self, i: usize) -> (usize, usize) {
        (self.boundary(i), self.boundary(i + 1))
    }

    pub fn residual_edges(&self) -> Vec<EdgeId> {
        self.residual.iter().enumerate().filter(|(_, &r)| r).map(|(e, _)| e).collect()
    }

    pub fn residual_size(&self) -> usize {
        self.residual_sizes[self.t]
    }
}

/// Chooses `t = argmin_j |R_j|` (ties to the smallest `j`) for `k >= 2`.
pub fn plan_shift(levels: &LevelAssignment, k: usize) -> Result<ShiftPlan> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("k must be at least 2, got {k}")));
    }
    let m = levels.edge_levels.len();
    let mut double_layer_sizes = vec![0usize; levels.max_level + 1];
    let mut residual_sizes = vec![0usize; k];
    for e in 0..m {
        let dl = levels.double_layers(e);
        let mut classes = [usize::MAX; 2];
        for (slot, i) in dl.iter().enumerate() {
            if let Some(i) = *i {
                double_layer_sizes[i] += 1;
                classes[slot] = i % k;
            }
        }
        residual_sizes[classes[0]] += 1;
        if classes[1] != usize::MAX && classes[1] != classes[0] {
            residual_sizes[classes[1]] += 1;
        }
    }
    let t = (0..k).min_by_key(|&j| (residual_sizes[j], j)).unwrap();
    let residual = (0..m).map(|e| levels.double_layers(e).iter().any(|i| matches!(i, Some(i) if i % k == t))).collect();
    let mut plan =
        ShiftPlan { k, t, max_level: levels.max_level, double_layer_sizes, residual_sizes, residual, windows: 1 };
    while plan.boundary(plan.windows) < levels.max_level {
        plan.windows += 1;
    }
    Ok(plan)
}

/// Edge sets of window `i`: `G_i` spans levels `f(i)-1 ..= f(i+1)+1` and
/// `H_i = D_{f(i)} ∪ .. ∪ D_{f(i+1)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    pub index: usize,
    pub lo: usize,
    pub hi: usize,
    pub vertices: Vec<VertexId>,
    pub g_edges: Vec<EdgeId>,
    pub h_edges: Vec<EdgeId>,
}

pub fn window(g: &EmbeddedMultigraph, levels: &LevelAssignment, plan: &ShiftPlan, i: usize) -> Window {
    let (lo, hi) = plan.window_levels(i);
    let in_g = |l: usize| l + 1 >= lo && l <= hi + 1;
    let vertices = (0..g.vertex_count()).filter(|&v| in_g(levels.level[v])).collect();
    let mut g_edges = Vec::new();
    let mut h_edges = Vec::new();
    for (e, &(a, b)) in levels.edge_levels.iter().enumerate() {
        if in_g(a) && in_g(b) {
            g_edges.push(e);
        }
        if (lo..=hi).any(|d| levels.in_double_layer(e, d)) {
            h_edges.push(e);
        }
    }
    Window { index: i, lo, hi, vertices, g_edges, h_edges }
}
