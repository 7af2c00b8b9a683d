//! Cut-profile dynamic program over a branch decomposition.
//!
//! For a node with edge set `E_a`, separator `L` and inside vertices `I`
//! (vertices whose edges all lie in `E_a`), a chosen subgraph `S` is
//! summarised by how cheaply it can be cut along `L`:
//!
//! * edge mode: `c(T) = min |d_S(T + X)|` over `X` in `I`, for `T` in `L`;
//! * vertex mode: `s(Z, T)` is the fewest inside vertices whose removal,
//!   together with `Z`, leaves no `S` edge between `T + A` and
//!   `L - Z - T + B` for some split `A + B` of the remaining inside.
//!
//! Values are capped where they stop mattering (3 for cuts, `3 - |Z|` for
//! vertex separators). A state also dies as soon as some inside vertex
//! can be separated from the rest with fewer than three edges or vertices,
//! which is how the spanning requirement is enforced. In vertex mode a
//! node with at most two separator vertices additionally records `iab`,
//! the cheapest way to split its inside into two nonempty parts once the
//! whole separator is removed.
//!
//! By Menger these tables carry the same information as disjoint path
//! counts to and between separator vertices, and states are compared by
//! dominance: larger values everywhere at no greater weight.

use crate::decomposition::BranchDecomposition;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, EmbeddedMultigraph, VertexId};
use crate::problem::Mode;

use rustc_hash::FxHashMap;

/// Bounds that make the DP give up with `BudgetExceeded`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DpLimits {
    /// States kept per table after pruning.
    pub max_states: usize,
    /// Total term evaluations.
    pub max_ops: u64,
    /// Largest union of two child separators.
    pub max_boundary: usize,
}

impl Default for DpLimits {
    fn default() -> Self {
        DpLimits { max_states: 100_000, max_ops: 300_000_000, max_boundary: 16 }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DpStats {
    pub width: usize,
    pub max_table: usize,
    pub total_states: usize,
    pub ops: u64,
}

/// Index layout of a profile over a separator of `w` vertices.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Layout {
    w: usize,
    vertex: bool,
}

impl Layout {
    pub(crate) fn new(w: usize, vertex: bool) -> Self {
        Layout { w, vertex }
    }

    fn singles(&self) -> usize {
        1 << self.w
    }

    pub(crate) fn len(&self) -> usize {
        let w = self.w;
        if !self.vertex {
            return 1 << w;
        }
        let mut len = 1 << w;
        if w >= 1 {
            len += w << (w - 1);
        }
        if w >= 2 {
            len += (w * (w - 1) / 2) << (w - 2);
        }
        len
    }

    /// Removal sets in layout order.
    pub(crate) fn zsets(&self) -> Vec<u32> {
        let mut out = vec![0];
        if self.vertex {
            out.extend((0..self.w).map(|i| 1u32 << i));
            for i in 0..self.w {
                for j in i + 1..self.w {
                    out.push((1 << i) | (1 << j));
                }
            }
        }
        out
    }

    pub(crate) fn index(&self, z: u32, t: u32) -> usize {
        if !self.vertex {
            return t as usize;
        }
        let w = self.w;
        let full = if w == 32 { u32::MAX } else { (1u32 << w) - 1 };
        let compressed = pext(t, !z & full) as usize;
        match z.count_ones() {
            0 => compressed,
            1 => self.singles() + ((z.trailing_zeros() as usize) << (w - 1)) + compressed,
            _ => {
                let i = z.trailing_zeros() as usize;
                let j = 31 - z.leading_zeros() as usize;
                let pair = i * w - i * (i + 1) / 2 + (j - i - 1);
                self.singles() + (w << (w - 1)) + (pair << (w - 2)) + compressed
            }
        }
    }
}

fn submasks(mask: u32) -> impl Iterator<Item = u32> {
    crate::util::submasks(mask as u64).map(|m| m as u32)
}

fn pext(x: u32, mask: u32) -> u32 {
    let mut out = 0;
    let mut bit = 0;
    let mut m = mask;
    while m != 0 {
        let low = m & m.wrapping_neg();
        if x & low != 0 {
            out |= 1 << bit;
        }
        bit += 1;
        m &= m - 1;
    }
    out
}

/// Projects a mask over `from` positions onto `to` positions.
fn project(mask: u32, map: &[Option<usize>]) -> u32 {
    let mut out = 0;
    let mut m = mask;
    while m != 0 {
        let i = m.trailing_zeros() as usize;
        if let Some(j) = map[i] {
            out |= 1 << j;
        }
        m &= m - 1;
    }
    out
}

const ZERO: u32 = u32::MAX;
const IAB: u32 = u32::MAX - 1;

#[derive(Clone, Copy, Debug)]
struct Term {
    slot: u32,
    a: u32,
    b: u32,
    extra: u8,
}

/// Per-node combination recipe, independent of the states.
struct Plan {
    terms: Vec<Term>,
    /// Initial slot values: the cap, lowered by structural bounds.
    init: Vec<u8>,
    cap: Vec<u8>,
    entries: usize,
    dead_from: usize,
    iab_slot: Option<usize>,
}

#[derive(Clone, Debug)]
pub(crate) struct State {
    pub(crate) prof: Box<[u8]>,
    pub(crate) iab: u8,
    pub(crate) weight: u64,
    /// Leaf: (taken, ZERO); inner: child state indices.
    pub(crate) from: (u32, u32),
}

struct NodeInfo {
    layout: Layout,
    has_inside: bool,
    has_iab: bool,
}

fn iab_exists(vertex: bool, w: usize) -> bool {
    if vertex {
        w <= 2
    } else {
        w == 0
    }
}

fn entry_caps(layout: &Layout) -> Vec<u8> {
    let mut cap = vec![3u8; layout.len()];
    if layout.vertex {
        let full = (1u32 << layout.w) - 1;
        for z in layout.zsets() {
            for t in submasks(full & !z) {
                cap[layout.index(z, t)] = 3 - z.count_ones() as u8;
            }
        }
    }
    cap
}

fn build_plan(
    vertex: bool,
    lp: &[VertexId],
    la: &[VertexId],
    lb: &[VertexId],
    info_a: &NodeInfo,
    info_b: &NodeInfo,
) -> Plan {
    let mut u: Vec<VertexId> = la.iter().chain(lb).copied().collect();
    u.sort_unstable();
    u.dedup();
    let pos = |l: &[VertexId]| -> Vec<Option<usize>> { u.iter().map(|x| l.binary_search(x).ok()).collect() };
    let (to_a, to_b, to_p) = (pos(la), pos(lb), pos(lp));
    let full_u: u32 = if u.is_empty() { 0 } else { (1u32 << u.len()) - 1 };
    let fmask: u32 = (0..u.len()).filter(|&i| to_p[i].is_none()).fold(0, |m, i| m | (1 << i));
    let amask_u = covered(&to_a);
    let bmask_u = covered(&to_b);

    let layout_p = Layout::new(lp.len(), vertex);
    let entries = layout_p.len();
    let mut cap = entry_caps(&layout_p);
    let zsets_p: Vec<u32> = layout_p.zsets();
    let full_p: u32 = if lp.is_empty() { 0 } else { (1u32 << lp.len()) - 1 };
    let mut dead_index: FxHashMap<u32, usize> = FxHashMap::default();
    for &z in &zsets_p {
        if z != full_p {
            dead_index.insert(z, cap.len());
            cap.push(3 - z.count_ones() as u8);
        }
    }
    let dead_from = entries;
    let iab_slot = iab_exists(vertex, lp.len()).then(|| {
        cap.push(3 - lp.len() as u8);
        cap.len() - 1
    });
    let mut init = cap.clone();
    let mut terms = Vec::new();

    let zsets_u: Vec<u32> = if vertex {
        let mut z = vec![0u32];
        for i in 0..u.len() {
            z.push(1 << i);
            for j in i + 1..u.len() {
                z.push((1 << i) | (1 << j));
            }
        }
        z
    } else {
        vec![0]
    };
    for z in zsets_u {
        let free = full_u & !z;
        let extra = (z & fmask).count_ones() as u8;
        let zp = project(z, &to_p);
        let (za, zb) = (project(z, &to_a), project(z, &to_b));
        for a in submasks(free) {
            let bset = free & !a;
            let (ap, bp) = (project(a, &to_p), project(bset, &to_p));
            let ia = info_a.layout.index(za, project(a, &to_a)) as u32;
            let ib = info_b.layout.index(zb, project(a, &to_b)) as u32;
            let (ya, yb) = (a & fmask, bset & fmask);
            terms.push(Term { slot: layout_p.index(zp, ap) as u32, a: ia, b: ib, extra });
            let one_sided = (ap == 0 && bp != 0, bp == 0 && ap != 0);
            if (one_sided.0 && ya != 0) || (one_sided.1 && yb != 0) {
                terms.push(Term { slot: dead_index[&zp] as u32, a: ia, b: ib, extra });
            }
            if vertex && (one_sided.0 && ya == 0 || one_sided.1 && yb == 0) {
                // the empty side could only be filled from a child's inside
                for (lc_u, info) in [(amask_u, info_a), (bmask_u, info_b)] {
                    if lc_u & !z == 0 && info.has_inside {
                        let s = dead_index[&zp];
                        init[s] = init[s].min(extra);
                    }
                }
            }
            if let Some(slot) = iab_slot {
                if ap == 0 && bp == 0 {
                    if ya != 0 && yb != 0 {
                        terms.push(Term { slot: slot as u32, a: ia, b: ib, extra });
                    }
                    if vertex && ya == 0 && yb == 0 {
                        if info_a.has_iab {
                            terms.push(Term { slot: slot as u32, a: IAB, b: ZERO, extra });
                        }
                        if info_b.has_iab {
                            terms.push(Term { slot: slot as u32, a: ZERO, b: IAB, extra });
                        }
                        if info_a.has_inside && info_b.has_inside {
                            init[slot] = init[slot].min(extra);
                        }
                    }
                    if vertex && (ya == 0) != (yb == 0) {
                        for (lc_u, info) in [(amask_u, info_a), (bmask_u, info_b)] {
                            if lc_u & !z == 0 && info.has_inside {
                                init[slot] = init[slot].min(extra);
                            }
                        }
                    }
                }
            }
        }
    }
    Plan { terms, init, cap, entries, dead_from, iab_slot }
}

/// Mask over union positions covered by a child separator.
fn covered(map: &[Option<usize>]) -> u32 {
    map.iter().enumerate().filter(|(_, m)| m.is_some()).fold(0, |acc, (i, _)| acc | (1 << i))
}

fn leaf_states(vertex: bool, weight: u32) -> Vec<State> {
    let layout = Layout::new(2, vertex);
    let mut out = Vec::new();
    for taken in [false, true] {
        if !taken && weight == 0 {
            continue;
        }
        let mut prof = vec![0u8; layout.len()];
        if taken {
            // the only nontrivial split puts the endpoints on opposite sides
            let v = if vertex { 3 } else { 1 };
            prof[layout.index(0, 0b01)] = v;
            prof[layout.index(0, 0b10)] = v;
        }
        out.push(State {
            prof: prof.into_boxed_slice(),
            iab: if vertex { 1 } else { 0 },
            weight: if taken { weight as u64 } else { 0 },
            from: (taken as u32, ZERO),
        });
    }
    out
}

fn dominates(x: &State, y: &State) -> bool {
    x.weight <= y.weight && x.iab >= y.iab && x.prof.iter().zip(y.prof.iter()).all(|(a, b)| a >= b)
}

/// Orders by weight and strength, then drops dominated states.
fn prune(mut states: Vec<State>, ops: &mut u64) -> Vec<State> {
    states.sort_by(|x, y| {
        let sx: u32 = x.prof.iter().map(|&v| v as u32).sum::<u32>() + x.iab as u32;
        let sy: u32 = y.prof.iter().map(|&v| v as u32).sum::<u32>() + y.iab as u32;
        x.weight.cmp(&y.weight).then(sy.cmp(&sx)).then_with(|| x.from.cmp(&y.from))
    });
    if states.len() > 20_000 {
        return states;
    }
    let mut kept: Vec<State> = Vec::new();
    for s in states {
        *ops += kept.len() as u64;
        if !kept.iter().any(|k| dominates(k, &s)) {
            kept.push(s);
        }
    }
    kept
}

/// Tables of every node, kept for back-tracking.
pub(crate) struct Tables {
    pub(crate) states: Vec<Vec<State>>,
    pub(crate) best: Option<(u32, u32, u64)>,
    pub(crate) stats: DpStats,
}

pub(crate) fn run_tables(
    g: &EmbeddedMultigraph,
    weights: &[u32],
    mode: Mode,
    bd: &BranchDecomposition,
    limits: &DpLimits,
    keep_profiles: bool,
) -> Result<Tables> {
    let vertex = mode == Mode::Vcss;
    let nodes = &bd.nodes;
    let mut info: Vec<Option<NodeInfo>> = (0..nodes.len()).map(|_| None).collect();
    let mut states: Vec<Vec<State>> = vec![Vec::new(); nodes.len()];
    let mut stats = DpStats { width: bd.width, ..Default::default() };
    let mut best = None;
    for x in bd.postorder() {
        let node = &nodes[x];
        let l = &node.separator;
        match node.children {
            None => {
                let e = node.edge.unwrap();
                let (u, v) = g.endpoints(e);
                if l.len() != 2 || u == v {
                    return Err(Error::InfeasibleSlice(format!("edge {e} ends at a vertex of degree one")));
                }
                info[x] = Some(NodeInfo { layout: Layout::new(2, vertex), has_inside: false, has_iab: vertex });
                states[x] = leaf_states(vertex, weights[e]);
            }
            Some((a, b)) => {
                let (la, lb) = (&nodes[a].separator, &nodes[b].separator);
                let mut union: Vec<VertexId> = la.iter().chain(lb).copied().collect();
                union.sort_unstable();
                union.dedup();
                if union.len() > limits.max_boundary {
                    return Err(Error::BudgetExceeded(format!(
                        "separator union of {} exceeds {}",
                        union.len(),
                        limits.max_boundary
                    )));
                }
                let (ia, ib) = (info[a].take().unwrap(), info[b].take().unwrap());
                let plan = build_plan(vertex, l, la, lb, &ia, &ib);
                let pairs = states[a].len() as u64 * states[b].len() as u64;
                let cost = pairs * plan.terms.len() as u64;
                stats.ops += cost;
                if stats.ops > limits.max_ops {
                    return Err(Error::BudgetExceeded(format!("{} term evaluations", stats.ops)));
                }
                let root = x == bd.root;
                let forgotten = union.len() > l.len();
                let has_inside = ia.has_inside || ib.has_inside || forgotten;
                let mut seen: FxHashMap<(Box<[u8]>, u8), usize> = FxHashMap::default();
                let mut out: Vec<State> = Vec::new();
                let mut vals = vec![0u8; plan.init.len()];
                for (i, sa) in states[a].iter().enumerate() {
                    for (j, sb) in states[b].iter().enumerate() {
                        let weight = sa.weight + sb.weight;
                        if root && best.is_some_and(|(_, _, w)| w <= weight) {
                            continue;
                        }
                        vals.copy_from_slice(&plan.init);
                        for t in &plan.terms {
                            let av = match t.a {
                                ZERO => 0,
                                IAB => sa.iab,
                                k => sa.prof[k as usize],
                            };
                            let bv = match t.b {
                                ZERO => 0,
                                IAB => sb.iab,
                                k => sb.prof[k as usize],
                            };
                            let v = t.extra + av + bv;
                            let s = &mut vals[t.slot as usize];
                            if v < *s {
                                *s = v;
                            }
                        }
                        let dead_end = plan.iab_slot.unwrap_or(vals.len());
                        if (plan.dead_from..dead_end).any(|s| vals[s] < plan.cap[s]) {
                            continue;
                        }
                        if root {
                            let s = plan.iab_slot.expect("root has no separator");
                            if vals[s] >= plan.cap[s] {
                                best = Some((i as u32, j as u32, weight));
                            }
                            continue;
                        }
                        let prof: Box<[u8]> = vals[..plan.entries].into();
                        let iab = plan.iab_slot.map_or(0, |s| vals[s]);
                        let state = State { prof, iab, weight, from: (i as u32, j as u32) };
                        match seen.get(&(state.prof.clone(), iab)) {
                            Some(&k) if out[k].weight <= weight => {}
                            Some(&k) => out[k] = state,
                            None => {
                                seen.insert((state.prof.clone(), iab), out.len());
                                out.push(state);
                            }
                        }
                    }
                }
                if !root {
                    let kept = prune(out, &mut stats.ops);
                    if kept.is_empty() {
                        return Err(Error::InfeasibleSlice("no subgraph survives a separator".into()));
                    }
                    if kept.len() > limits.max_states {
                        return Err(Error::BudgetExceeded(format!("{} states in one table", kept.len())));
                    }
                    stats.max_table = stats.max_table.max(kept.len());
                    stats.total_states += kept.len();
                    states[x] = kept;
                }
                if !keep_profiles {
                    for c in [a, b] {
                        for s in states[c].iter_mut() {
                            s.prof = Box::new([]);
                        }
                    }
                }
                info[x] = Some(NodeInfo {
                    layout: Layout::new(l.len(), vertex),
                    has_inside,
                    has_iab: iab_exists(vertex, l.len()),
                });
            }
        }
    }
    Ok(Tables { states, best, stats })
}

/// Minimum-weight spanning 3-edge- or 3-vertex-connected subgraph by the
/// profile DP. Returns sorted edge ids, the weight and run statistics.
pub fn solve_dp(
    g: &EmbeddedMultigraph,
    weights: &[u32],
    mode: Mode,
    bd: &BranchDecomposition,
    limits: &DpLimits,
) -> Result<(Vec<EdgeId>, u64, DpStats)> {
    if !mode.is_feasible_plane(g) {
        return Err(Error::InfeasibleSlice(format!("graph is not {mode} feasible")));
    }
    if g.edge_count() == 0 {
        return Ok((Vec::new(), 0, DpStats::default()));
    }
    let tables = run_tables(g, weights, mode, bd, limits, false)?;
    let (i, j, weight) = tables.best.ok_or_else(|| Error::InfeasibleSlice("no feasible root state".into()))?;
    let mut edges = Vec::new();
    let (a, b) = bd.nodes[bd.root].children.expect("root is internal");
    let mut stack = vec![(a, i), (b, j)];
    while let Some((x, k)) = stack.pop() {
        let st = &tables.states[x][k as usize];
        match bd.nodes[x].children {
            None => {
                if st.from.0 == 1 {
                    edges.push(bd.nodes[x].edge.unwrap());
                }
            }
            Some((ca, cb)) => {
                stack.push((ca, st.from.0));
                stack.push((cb, st.from.1));
            }
        }
    }
    edges.sort_unstable();
    Ok((edges, weight, tables.stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::decompose;
    use crate::solver::exact::{solve_exact, ExactLimits};
    use crate::toolkit::generators::{generate, Family, GeneratorSpec};
    use proptest::prelude::*;

    #[test]
    fn layout_indices_are_a_bijection() {
        for vertex in [false, true] {
            for w in 0..6 {
                let layout = Layout::new(w, vertex);
                let full = (1u32 << w) - 1;
                let mut seen = vec![false; layout.len()];
                for z in layout.zsets() {
                    for t in submasks(full & !z) {
                        let i = layout.index(z, t);
                        assert!(!seen[i], "w={w} z={z:b} t={t:b}");
                        seen[i] = true;
                    }
                }
                assert!(seen.iter().all(|&s| s));
            }
        }
    }

    /// Profile of `taken` as seen from the node with edge set `below`,
    /// computed by enumerating every cut.
    fn brute_profile(
        g: &EmbeddedMultigraph,
        below: &[EdgeId],
        taken: &[EdgeId],
        sep: &[VertexId],
        vertex: bool,
    ) -> (Vec<u8>, u8, bool) {
        let n = g.vertex_count();
        let mut in_below = vec![false; n];
        for &e in below {
            let (u, v) = g.endpoints(e);
            in_below[u] = true;
            in_below[v] = true;
        }
        let inside: Vec<VertexId> = (0..n).filter(|&v| in_below[v] && sep.binary_search(&v).is_err()).collect();
        let layout = Layout::new(sep.len(), vertex);
        let mut prof = vec![0u8; layout.len()];
        let full = if sep.is_empty() { 0 } else { (1u32 << sep.len()) - 1 };
        let ni = inside.len();
        // label: 0 = removed, 1 = A, 2 = B
        let mut best_dead = true;
        let sep_set: Vec<VertexId> = sep.to_vec();
        let mut iab = 3 - sep.len().min(3) as u8;
        let mut labels_inside = vec![0u8; ni];
        let total = 3usize.pow(ni as u32);
        for z in layout.zsets() {
            for t in submasks(full & !z) {
                let cap = 3 - z.count_ones() as u8;
                let mut value = cap;
                let mut dead_value = cap;
                let mut iab_value = iab;
                for code in 0..total {
                    let mut c = code;
                    let mut removed = 0u8;
                    for l in labels_inside.iter_mut() {
                        *l = (c % 3) as u8;
                        c /= 3;
                        removed += (*l == 0) as u8;
                    }
                    if !vertex && removed > 0 {
                        continue;
                    }
                    let label = |v: VertexId| -> u8 {
                        if let Ok(p) = sep_set.binary_search(&v) {
                            if z >> p & 1 == 1 {
                                0
                            } else if t >> p & 1 == 1 {
                                1
                            } else {
                                2
                            }
                        } else {
                            labels_inside[inside.binary_search(&v).unwrap()]
                        }
                    };
                    let mut crossing = 0u8;
                    for &e in taken {
                        let (u, v) = g.endpoints(e);
                        let (lu, lv) = (label(u), label(v));
                        if lu != 0 && lv != 0 && lu != lv {
                            crossing += 1;
                        }
                    }
                    let cost = if vertex {
                        if crossing > 0 {
                            continue;
                        }
                        removed
                    } else {
                        crossing
                    };
                    value = value.min(cost);
                    let a_in = labels_inside.contains(&1);
                    let b_in = labels_inside.contains(&2);
                    let a_l = t != 0;
                    let b_l = full & !z & !t != 0;
                    if (!a_l && b_l && a_in) || (!b_l && a_l && b_in) {
                        dead_value = dead_value.min(cost);
                    }
                    if !a_l && !b_l && a_in && b_in && iab_exists(vertex, sep.len()) {
                        iab_value = iab_value.min(cost);
                    }
                }
                prof[layout.index(z, t)] = value;
                if dead_value < cap {
                    best_dead = false;
                }
                iab = iab_value;
            }
        }
        (prof, if iab_exists(vertex, sep.len()) { iab } else { 0 }, best_dead)
    }

    fn witness(bd: &BranchDecomposition, tables: &Tables, x: usize, k: usize) -> Vec<EdgeId> {
        let mut out = Vec::new();
        let mut stack = vec![(x, k as u32)];
        while let Some((y, k)) = stack.pop() {
            let st = &tables.states[y][k as usize];
            match bd.nodes[y].children {
                None => {
                    if st.from.0 == 1 {
                        out.push(bd.nodes[y].edge.unwrap());
                    }
                }
                Some((a, b)) => {
                    stack.push((a, st.from.0));
                    stack.push((b, st.from.1));
                }
            }
        }
        out
    }

    fn small_graphs() -> Vec<EmbeddedMultigraph> {
        let mut out = Vec::new();
        for f in Family::ALL {
            for n in [5, 6, 7, 8] {
                for seed in 0..2 {
                    if let Ok(g) = generate(&GeneratorSpec::new(f, n, seed)) {
                        if g.edge_count() <= 16 {
                            out.push(g);
                        }
                    }
                }
            }
        }
        out
    }

    #[test]
    fn stored_profiles_match_their_witnesses() {
        for g in small_graphs().into_iter().take(12) {
            for mode in [Mode::Ecss, Mode::Vcss] {
                let vertex = mode == Mode::Vcss;
                let bd = decompose(&g).unwrap();
                let weights = vec![1; g.edge_count()];
                // keep the profiles around by running the tables node by node
                let tables = run_tables(&g, &weights, mode, &bd, &DpLimits::default(), true).unwrap();
                for x in 0..bd.nodes.len() {
                    if x == bd.root {
                        continue;
                    }
                    let below = bd.edges_below(x);
                    for (k, st) in tables.states[x].iter().enumerate() {
                        let taken = witness(&bd, &tables, x, k);
                        let (prof, iab, alive) = brute_profile(&g, &below, &taken, &bd.nodes[x].separator, vertex);
                        assert!(alive, "stored a dead state");
                        assert_eq!(&prof[..], &st.prof[..], "node {x} state {k} mode {mode}");
                        assert_eq!(iab, st.iab, "node {x} state {k} mode {mode}");
                    }
                }
            }
        }
    }

    #[test]
    fn k4_and_octahedron() {
        let k4 =
            EmbeddedMultigraph::build(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)], None, None).unwrap();
        for mode in [Mode::Ecss, Mode::Vcss] {
            let bd = decompose(&k4).unwrap();
            let (edges, w, _) = solve_dp(&k4, &[1; 6], mode, &bd, &DpLimits::default()).unwrap();
            assert_eq!((edges.len(), w), (6, 6));
            let (_, w, _) = solve_dp(&k4, &[0, 1, 1, 1, 1, 1], mode, &bd, &DpLimits::default()).unwrap();
            assert_eq!(w, 5);
        }
        let oct = crate::toolkit::curated::octahedron();
        for mode in [Mode::Ecss, Mode::Vcss] {
            let bd = decompose(&oct).unwrap();
            let (edges, w, _) = solve_dp(&oct, &[1; 12], mode, &bd, &DpLimits::default()).unwrap();
            assert_eq!((edges.len(), w), (9, 9));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn dp_matches_exact(f in 0usize..5, n in 5usize..10, seed in 0u64..200, wseed in any::<u64>(), vertex in any::<bool>()) {
            let mode = if vertex { Mode::Vcss } else { Mode::Ecss };
            let Ok(g) = generate(&GeneratorSpec::new(Family::ALL[f], n, seed)) else { return Ok(()); };
            prop_assume!(g.edge_count() <= 20);
            let weights: Vec<u32> = (0..g.edge_count()).map(|e| ((wseed >> (e % 64)) & 1) as u32 | ((e % 5 != 0) as u32)).collect();
            let bd = decompose(&g).unwrap();
            let (edges, w, _) = solve_dp(&g, &weights, mode, &bd, &DpLimits::default()).unwrap();
            let (_, we) = solve_exact(g.vertex_count(), g.edges(), &weights, mode, &ExactLimits::default()).unwrap();
            prop_assert_eq!(w, we);
            prop_assert_eq!(edges.iter().map(|&e| weights[e] as u64).sum::<u64>(), w);
            let sub: Vec<(usize, usize)> = edges.iter().map(|&e| g.endpoints(e)).collect();
            prop_assert!(mode.is_feasible(g.vertex_count(), &sub));
        }
    }
}
