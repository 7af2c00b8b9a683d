//! Cutting the graph into slices of bounded outerplanarity.
//!
//! Window `i` covers levels `f(i) ..= f(i+1)`. Each nontrivial 2-edge-connected
//! component (edge mode) or block (vertex mode) of the level-`f(i)` subgraph
//! becomes a unit; the deeper vertices up to level `f(i+1)` are attached to the
//! unit that encloses them. A slice keeps every edge touching its unit's
//! vertex set `U` and contracts each component of `G - U` to a node: inner
//! nodes for components below level `f(i+1)`, an outer node for the rest.

use crate::connectivity::{biconnected_components, two_edge_components};
use crate::error::{Error, Result};
use crate::graph::{Dart, EdgeId, EdgeRef, EmbeddedMultigraph, OuterChoice, VertexId, VertexKind};
use crate::layering::{LevelAssignment, ShiftPlan};
use crate::problem::Mode;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap, VecDeque};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slice {
    pub window: usize,
    /// Index of the unit inside its window.
    pub unit: usize,
    pub lo: usize,
    pub hi: usize,
    pub graph: EmbeddedMultigraph,
    pub kinds: Vec<VertexKind>,
    /// 0 for edges already paid for by the residual set, 1 otherwise.
    pub weights: Vec<u32>,
    pub origins: Vec<EdgeRef>,
}

impl Slice {
    pub fn origin(&self, e: EdgeId) -> EdgeId {
        self.origins[e].origin.expect("slice edges always have an origin")
    }

    pub fn outer_node(&self) -> Option<VertexId> {
        self.kinds.iter().position(|k| *k == VertexKind::OuterNode)
    }

    pub fn free_edges(&self) -> usize {
        self.weights.iter().filter(|&&w| w > 0).count()
    }
}

/// Builds all slices, ordered by window and then by unit.
pub fn build_slices(
    g: &EmbeddedMultigraph,
    levels: &LevelAssignment,
    plan: &ShiftPlan,
    mode: Mode,
) -> Result<Vec<Slice>> {
    let n = g.vertex_count();
    let mut by_level: Vec<Vec<VertexId>> = vec![Vec::new(); levels.max_level + 2];
    for v in 0..n {
        by_level[levels.level[v]].push(v);
    }
    let mut within: Vec<Vec<EdgeId>> = vec![Vec::new(); levels.max_level + 2];
    for (e, &(a, b)) in levels.edge_levels.iter().enumerate() {
        if a == b {
            within[a].push(e);
        }
    }
    let mut scratch = Scratch { local: vec![usize::MAX; n], mark: vec![0; n], stamp: 0 };
    let mut slices = Vec::new();
    for i in 0..plan.windows {
        let (lo, hi) = plan.window_levels(i);
        let units = window_units(g, levels, &by_level[lo], &within[lo], hi, mode, &mut scratch)?;
        for (u_idx, unit) in units.into_iter().enumerate() {
            slices.push(make_slice(g, levels, plan, mode, i, u_idx, lo, hi, unit, &mut scratch)?);
        }
    }
    Ok(slices)
}

struct Scratch {
    local: Vec<usize>,
    mark: Vec<u32>,
    stamp: u32,
}

impl Scratch {
    fn next_stamp(&mut self) -> u32 {
        self.stamp += 1;
        self.stamp
    }
}

/// Vertex sets `U` of the units of one window, in unit order.
fn window_units(
    g: &EmbeddedMultigraph,
    levels: &LevelAssignment,
    base: &[VertexId],
    base_edges: &[EdgeId],
    hi: usize,
    mode: Mode,
    scratch: &mut Scratch,
) -> Result<Vec<Vec<VertexId>>> {
    let lo = base.first().map(|&v| levels.level[v]).unwrap_or(0);
    for (i, &v) in base.iter().enumerate() {
        scratch.local[v] = i;
    }
    let local_edges: Vec<(usize, usize)> = base_edges
        .iter()
        .map(|&e| {
            let (u, v) = g.endpoints(e);
            (scratch.local[u], scratch.local[v])
        })
        .collect();
    // unit ids of each base vertex (several for cut vertices in vertex mode)
    let mut unit_of: Vec<Vec<usize>> = vec![Vec::new(); base.len()];
    let mut members: Vec<Vec<VertexId>> = Vec::new();
    match mode {
        Mode::Ecss => {
            let label = two_edge_components(base.len(), &local_edges);
            let mut size = vec![0usize; base.len()];
            for &l in &label {
                size[l] += 1;
            }
            let mut unit_id = vec![usize::MAX; base.len()];
            for (i, &l) in label.iter().enumerate() {
                if size[l] < 2 {
                    continue;
                }
                if unit_id[l] == usize::MAX {
                    unit_id[l] = members.len();
                    members.push(Vec::new());
                }
                unit_of[i].push(unit_id[l]);
                members[unit_id[l]].push(base[i]);
            }
        }
        Mode::Vcss => {
            let (blocks, _) = biconnected_components(base.len(), &local_edges);
            for block in blocks.iter().filter(|b| b.len() >= 2) {
                let id = members.len();
                let mut vs = BTreeSet::new();
                for &le in block {
                    let (a, b) = local_edges[le];
                    vs.insert(a);
                    vs.insert(b);
                }
                for &a in &vs {
                    unit_of[a].push(id);
                }
                members.push(vs.into_iter().map(|a| base[a]).collect());
            }
        }
    }
    // attach the pieces of levels lo+1 ..= hi
    if hi > lo {
        let stamp = scratch.next_stamp();
        let seeds: Vec<VertexId> =
            base.iter().flat_map(|&b| g.neighbors(b)).filter(|&w| levels.level[w] == lo + 1).collect();
        for s in seeds {
            if scratch.mark[s] == stamp {
                continue;
            }
            scratch.mark[s] = stamp;
            let mut piece = vec![s];
            let mut queue = VecDeque::from([s]);
            let mut candidates: Option<Vec<usize>> = None;
            while let Some(x) = queue.pop_front() {
                for y in g.neighbors(x) {
                    let ly = levels.level[y];
                    if ly == lo {
                        let units = &unit_of[scratch.local[y]];
                        candidates = Some(match candidates {
                            None => units.clone(),
                            Some(c) => c.into_iter().filter(|u| units.contains(u)).collect(),
                        });
                    } else if ly > lo && ly <= hi && scratch.mark[y] != stamp {
                        scratch.mark[y] = stamp;
                        piece.push(y);
                        queue.push_back(y);
                    }
                }
            }
            let unit = candidates.and_then(|c| c.into_iter().min()).ok_or_else(|| {
                Error::MalformedSliceSet(format!("vertices below level {lo} near {s} are not enclosed by a unit"))
            })?;
            members[unit].extend(piece);
        }
    }
    for m in &mut members {
        m.sort_unstable();
    }
    Ok(members)
}

#[allow(clippy::too_many_arguments)]
fn make_slice(
    g: &EmbeddedMultigraph,
    levels: &LevelAssignment,
    plan: &ShiftPlan,
    mode: Mode,
    window: usize,
    unit: usize,
    lo: usize,
    hi: usize,
    u_set: Vec<VertexId>,
    scratch: &mut Scratch,
) -> Result<Slice> {
    let stamp = scratch.next_stamp();
    for (i, &v) in u_set.iter().enumerate() {
        scratch.mark[v] = stamp;
        scratch.local[v] = i;
    }
    let in_u = |v: VertexId, s: &Scratch| s.mark[v] == stamp;
    let mut edge_ids: Vec<EdgeId> = u_set.iter().flat_map(|&v| g.rotation(v).iter().copied()).collect();
    edge_ids.sort_unstable();
    edge_ids.dedup();
    let mut slice_edge: HashMap<EdgeId, usize> = HashMap::with_capacity(edge_ids.len());
    for (i, &e) in edge_ids.iter().enumerate() {
        slice_edge.insert(e, i);
    }
    // group spokes into contracted nodes by walking around each component
    let mut node_of_spoke: HashMap<EdgeId, usize> = HashMap::new();
    let mut node_rot: Vec<Vec<usize>> = Vec::new();
    let mut kinds: Vec<VertexKind> = u_set.iter().map(|&v| VertexKind::Original(v)).collect();
    let limit = 4 * g.edge_count() + 4;
    for &e in &edge_ids {
        let (a, b) = g.endpoints(e);
        let far = match (in_u(a, scratch), in_u(b, scratch)) {
            (true, true) => continue,
            (true, false) => b,
            (false, true) => a,
            (false, false) => unreachable!(),
        };
        if node_of_spoke.contains_key(&e) {
            continue;
        }
        let node = node_rot.len();
        let start: Dart = g.dart_from(far, e);
        let mut rot = vec![slice_edge[&e]];
        node_of_spoke.insert(e, node);
        let mut min_far = far;
        let mut d = start;
        let mut steps = 0;
        loop {
            d = g.cw_next(d);
            if d == start {
                break;
            }
            let y = g.head(d);
            if in_u(y, scratch) {
                let se = d / 2;
                if node_of_spoke.insert(se, node).is_some() {
                    return Err(Error::Internal("spoke reached twice while contracting".into()));
                }
                rot.push(slice_edge[&se]);
                min_far = min_far.min(g.tail(d));
            } else {
                d ^= 1;
            }
            steps += 1;
            if steps > limit {
                return Err(Error::Internal("contraction walk did not close".into()));
            }
        }
        node_rot.push(rot);
        kinds.push(if levels.level[far] > hi { VertexKind::InnerNode(min_far) } else { VertexKind::OuterNode });
    }
    let base = u_set.len();
    let edges: Vec<(VertexId, VertexId)> = edge_ids
        .iter()
        .map(|&e| {
            let (a, b) = g.endpoints(e);
            let map = |x: VertexId| if in_u(x, scratch) { scratch.local[x] } else { base + node_of_spoke[&e] };
            (map(a), map(b))
        })
        .collect();
    let mut rotation: Vec<Vec<usize>> =
        u_set.iter().map(|&v| g.rotation(v).iter().map(|e| slice_edge[e]).collect()).collect();
    rotation.extend(node_rot);
    let outer = match kinds.iter().position(|k| *k == VertexKind::OuterNode) {
        Some(r) => {
            let e = rotation[r][0];
            OuterChoice::Dart(if edges[e].0 == r { 2 * e } else { 2 * e + 1 })
        }
        None => g.faces()[g.outer_face()]
            .iter()
            .filter_map(|&d| slice_edge.get(&(d / 2)).map(|&se| 2 * se + d % 2))
            .min()
            .map_or(OuterChoice::Longest, OuterChoice::Dart),
    };
    let full = EmbeddedMultigraph::from_rotation(kinds.len(), edges, rotation, outer)?;
    let (graph, kept) = full.cap_parallel(mode.parallel_cap());
    let origins: Vec<EdgeRef> =
        kept.iter().enumerate().map(|(i, &se)| EdgeRef { slice_edge: i, origin: Some(edge_ids[se]) }).collect();
    let weights = origins
        .iter()
        .map(|r| {
            let e = r.origin.unwrap();
            let paid = plan.residual[e] && (levels.in_double_layer(e, lo) || levels.in_double_layer(e, hi));
            u32::from(!paid)
        })
        .collect();
    Ok(Slice { window, unit, lo, hi, graph, kinds, weights, origins })
}

/// Parent links between slices of consecutive windows that share edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceTree {
    pub root: usize,
    pub parent: Vec<Option<usize>>,
    pub children: Vec<Vec<usize>>,
}

/// Links slices of windows `i` and `i + 1` that share an input edge and
/// checks that the links form a tree.
pub fn build_slice_tree(slices: &[Slice]) -> Result<SliceTree> {
    let s = slices.len();
    if s == 0 {
        return Err(Error::MalformedSliceSet("no slices".into()));
    }
    let mut holders: HashMap<EdgeId, Vec<usize>> = HashMap::new();
    for (i, sl) in slices.iter().enumerate() {
        for r in &sl.origins {
            holders.entry(r.origin.unwrap()).or_default().push(i);
        }
    }
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); s];
    for hs in holders.values() {
        for &a in hs {
            for &b in hs {
                if slices[a].window + 1 == slices[b].window {
                    adj[a].insert(b);
                    adj[b].insert(a);
                }
            }
        }
    }
    let links: usize = adj.iter().map(|a| a.len()).sum::<usize>() / 2;
    let root = (0..s).min_by_key(|&i| (slices[i].window, i)).unwrap();
    let mut parent = vec![None; s];
    let mut children = vec![Vec::new(); s];
    let mut seen = vec![false; s];
    seen[root] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(x) = queue.pop_front() {
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                parent[y] = Some(x);
                children[x].push(y);
                queue.push_back(y);
            }
        }
    }
    if seen.iter().any(|&b| !b) {
        return Err(Error::MalformedSliceSet("slices do not form a connected tree".into()));
    }
    if links != s - 1 {
        return Err(Error::MalformedSliceSet(format!("{links} links between {s} slices: not a tree")));
    }
    Ok(SliceTree { root, parent, children })
}

/// Violations of the structural slice guarantees, empty when all hold:
/// every slice is feasible for `mode`, has at most one outer node, and edges
/// shared between slices lie in the strata around the window boundaries.
pub fn slice_invariant_violations(levels: &LevelAssignment, slices: &[Slice], mode: Mode) -> Vec<String> {
    let mut out = Vec::new();
    let mut holders: HashMap<EdgeId, Vec<usize>> = HashMap::new();
    for (i, s) in slices.iter().enumerate() {
        let g = &s.graph;
        if !mode.is_feasible(g.vertex_count(), g.edges()) {
            out.push(format!("slice {i} (window {}) is not {}-feasible", s.window, mode));
        }
        let outer = s.kinds.iter().filter(|k| **k == VertexKind::OuterNode).count();
        if outer > 1 {
            out.push(format!("slice {i} has {outer} outer nodes"));
        }
        for r in &s.origins {
            holders.entry(r.origin.unwrap()).or_default().push(i);
        }
    }
    for (&e, hs) in &holders {
        for (x, &a) in hs.iter().enumerate() {
            for &b in &hs[x + 1..] {
                let (wa, wb) = (slices[a].window.min(slices[b].window), slices[a].window.max(slices[b].window));
                // boundary level shared by the two windows
                let level = if wa == wb { slices[a].lo } else { slices[a].hi.min(slices[b].hi) };
                let (p, q) = levels.edge_levels[e];
                let ok = wb <= wa + 1 && (p == level || q == level) && p + 1 >= level && q <= level + 1;
                if !ok {
                    out.push(format!("edge {e} shared by slices {a} and {b} lies outside the boundary strata"));
                }
            }
        }
    }
    out.sort();
    out
}
