//! Branch decompositions of embedded graphs.
//!
//! A branch decomposition here is a rooted binary tree whose leaves are the
//! edges. The separator of a node is the set of vertices incident both to an
//! edge below it and to an edge elsewhere; the root's separator is empty.

use crate::error::{Error, Result};
use crate::graph::{EdgeId, EmbeddedMultigraph, VertexId};
use rustc_hash::{FxHashMap, FxHashSet};
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BdNode {
    pub children: Option<(usize, usize)>,
    pub edge: Option<EdgeId>,
    pub parent: Option<usize>,
    /// Sorted separator vertices.
    pub separator: Vec<VertexId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchDecomposition {
    pub nodes: Vec<BdNode>,
    pub root: usize,
    pub width: usize,
}

impl BranchDecomposition {
    /// Node indices with every child before its parent.
    pub fn postorder(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![(self.root, false)];
        while let Some((x, done)) = stack.pop() {
            if done {
                out.push(x);
                continue;
            }
            stack.push((x, true));
            if let Some((a, b)) = self.nodes[x].children {
                stack.push((b, false));
                stack.push((a, false));
            }
        }
        out
    }

    /// Edges below node `x`.
    pub fn edges_below(&self, x: usize) -> Vec<EdgeId> {
        let mut out = Vec::new();
        let mut stack = vec![x];
        while let Some(y) = stack.pop() {
            match self.nodes[y].children {
                Some((a, b)) => {
                    stack.push(b);
                    stack.push(a);
                }
                None => out.extend(self.nodes[y].edge),
            }
        }
        out
    }

    /// Nested edge-index arrays: a leaf is its edge id, an inner node the
    /// pair of its children.
    pub fn nested(&self) -> serde_json::Value {
        fn go(bd: &BranchDecomposition, x: usize) -> serde_json::Value {
            match bd.nodes[x].children {
                Some((a, b)) => serde_json::Value::Array(vec![go(bd, a), go(bd, b)]),
                None => serde_json::Value::from(bd.nodes[x].edge.unwrap()),
            }
        }
        // iterative depth would be nicer but nesting depth equals tree height,
        // which is bounded by the edge count of a slice
        go(self, self.root)
    }
}

/// Incremental tree builder.
#[derive(Default)]
struct Builder {
    nodes: Vec<BdNode>,
}

impl Builder {
    fn leaf(&mut self, e: EdgeId) -> usize {
        self.nodes.push(BdNode { children: None, edge: Some(e), parent: None, separator: Vec::new() });
        self.nodes.len() - 1
    }

    fn join(&mut self, a: usize, b: usize) -> usize {
        let id = self.nodes.len();
        self.nodes.push(BdNode { children: Some((a, b)), edge: None, parent: None, separator: Vec::new() });
        self.nodes[a].parent = Some(id);
        self.nodes[b].parent = Some(id);
        id
    }

    fn join_opt(&mut self, a: Option<usize>, b: Option<usize>) -> Option<usize> {
        match (a, b) {
            (Some(a), Some(b)) => Some(self.join(a, b)),
            (x, None) | (None, x) => x,
        }
    }

    fn finish(self, g: &EmbeddedMultigraph, root: usize) -> BranchDecomposition {
        let mut bd = BranchDecomposition { nodes: self.nodes, root, width: 0 };
        fill_separators(&mut bd, g);
        bd
    }
}

/// Separators by merging per-vertex edge counts, small into large.
fn fill_separators(bd: &mut BranchDecomposition, g: &EmbeddedMultigraph) {
    struct Acc {
        cnt: FxHashMap<VertexId, u32>,
        partial: FxHashSet<VertexId>,
    }
    let deg: Vec<u32> = (0..g.vertex_count()).map(|v| g.degree(v) as u32).collect();
    let mut accs: Vec<Option<Acc>> = (0..bd.nodes.len()).map(|_| None).collect();
    let mut width = 0;
    for x in bd.postorder() {
        let acc = match bd.nodes[x].children {
            None => {
                let (u, v) = g.endpoints(bd.nodes[x].edge.unwrap());
                let mut acc = Acc { cnt: FxHashMap::default(), partial: FxHashSet::default() };
                for w in [u, v] {
                    *acc.cnt.entry(w).or_insert(0) += 1;
                }
                for w in [u, v] {
                    if acc.cnt[&w] < deg[w] {
                        acc.partial.insert(w);
                    }
                }
                acc
            }
            Some((a, b)) => {
                let mut big = accs[a].take().unwrap();
                let mut small = accs[b].take().unwrap();
                if big.cnt.len() < small.cnt.len() {
                    std::mem::swap(&mut big, &mut small);
                }
                for (w, c) in small.cnt {
                    let e = big.cnt.entry(w).or_insert(0);
                    *e += c;
                    if *e < deg[w] {
                        big.partial.insert(w);
                    } else {
                        big.partial.remove(&w);
                    }
                }
                big
            }
        };
        let mut sep: Vec<VertexId> = acc.partial.iter().copied().collect();
        sep.sort_unstable();
        width = width.max(sep.len());
        bd.nodes[x].separator = sep;
        accs[x] = Some(acc);
    }
    bd.width = width;
}

/// Left-deep tree over the given edge order.
pub fn caterpillar(g: &EmbeddedMultigraph, order: &[EdgeId]) -> BranchDecomposition {
    let mut b = Builder::default();
    let mut acc = b.leaf(order[0]);
    for &e in &order[1..] {
        let l = b.leaf(e);
        acc = b.join(acc, l);
    }
    b.finish(g, acc)
}

/// Width of the caterpillar over `order` without building it.
fn caterpillar_width(g: &EmbeddedMultigraph, order: &[EdgeId]) -> usize {
    let mut cnt = vec![0usize; g.vertex_count()];
    let mut active = 0usize;
    let mut width = 0;
    for &e in order {
        let (u, v) = g.endpoints(e);
        width = width.max([u, v].iter().filter(|&&w| g.degree(w) > 1).count());
        for w in [u, v] {
            if cnt[w] == 0 && g.degree(w) > 1 {
                active += 1;
            }
            cnt[w] += 1;
            if cnt[w] == g.degree(w) && g.degree(w) > 1 {
                active -= 1;
            }
        }
        width = width.max(active);
    }
    width
}

/// Greedy edge order that keeps the frontier small, starting at `start`.
fn greedy_order(g: &EmbeddedMultigraph, start: VertexId) -> Vec<EdgeId> {
    let m = g.edge_count();
    let n = g.vertex_count();
    let mut cnt = vec![0usize; n];
    let mut used = vec![false; m];
    let mut active: Vec<VertexId> = Vec::new();
    let mut is_active = vec![false; n];
    let mut order = Vec::with_capacity(m);
    let mut next_unused = 0;
    let delta = |cnt: &[usize], e: EdgeId| -> (i64, i64) {
        let (u, v) = g.endpoints(e);
        let mut d = 0i64;
        let mut closeness = 0i64;
        for w in [u, v] {
            let add = if u == v { 2 } else { 1 } - if w == v && u == v { 1 } else { 0 };
            let before = cnt[w];
            let after = before + add;
            let deg = g.degree(w);
            let was = before > 0 && before < deg;
            let now = after > 0 && after < deg;
            d += now as i64 - was as i64;
            closeness -= (deg - after) as i64;
        }
        // parallel copies of the same pair count twice above; good enough
        (d, closeness)
    };
    while order.len() < m {
        let mut best: Option<((i64, i64, usize), EdgeId)> = None;
        let seeds: Vec<VertexId> = if active.is_empty() {
            if order.is_empty() {
                vec![start]
            } else {
                while used[next_unused] {
                    next_unused += 1;
                }
                vec![g.endpoints(next_unused).0]
            }
        } else {
            active.clone()
        };
        for &w in &seeds {
            for &e in g.rotation(w) {
                if used[e] {
                    continue;
                }
                let (d, c) = delta(&cnt, e);
                let key = (d, c, e);
                if best.is_none_or(|(k, _)| key < k) {
                    best = Some((key, e));
                }
            }
        }
        let (_, e) = best.expect("an unused edge next to the frontier");
        used[e] = true;
        order.push(e);
        let (u, v) = g.endpoints(e);
        for w in [u, v] {
            cnt[w] += 1;
            let now = cnt[w] < g.degree(w);
            if now && !is_active[w] {
                is_active[w] = true;
                active.push(w);
            } else if !now && is_active[w] {
                is_active[w] = false;
                active.retain(|&x| x != w);
            }
        }
    }
    order
}

/// Edges sorted by the later BFS position of their endpoints.
fn bfs_order(g: &EmbeddedMultigraph, start: VertexId) -> Vec<EdgeId> {
    let n = g.vertex_count();
    let mut pos = vec![usize::MAX; n];
    let mut queue = VecDeque::from([start]);
    pos[start] = 0;
    let mut next = 1;
    while let Some(x) = queue.pop_front() {
        for y in g.neighbors(x) {
            if pos[y] == usize::MAX {
                pos[y] = next;
                next += 1;
                queue.push_back(y);
            }
        }
    }
    for p in pos.iter_mut() {
        if *p == usize::MAX {
            *p = next;
            next += 1;
        }
    }
    let mut order: Vec<EdgeId> = (0..g.edge_count()).collect();
    order.sort_by_key(|&e| {
        let (u, v) = g.endpoints(e);
        (pos[u].max(pos[v]), pos[u].min(pos[v]), e)
    });
    order
}

/// Decomposition from a BFS tree rooted at `root` and the dual cotree of a
/// fan triangulation of every face. Each node's separator lies on a
/// fundamental cycle, so the width is at most `2 * depth + 1`.
pub fn planar_decomposition(g: &EmbeddedMultigraph, root: VertexId) -> BranchDecomposition {
    let n = g.vertex_count();
    let m = g.edge_count();
    let mut depth = vec![usize::MAX; n];
    let mut tree_edge = vec![false; m];
    depth[root] = 0;
    let mut queue = VecDeque::from([root]);
    while let Some(x) = queue.pop_front() {
        for &e in g.rotation(x) {
            let y = g.other(e, x);
            if depth[y] == usize::MAX {
                depth[y] = depth[x] + 1;
                tree_edge[e] = true;
                queue.push_back(y);
            }
        }
    }
    // triangles of the fan triangulation; dual links are cotree real edges
    // and chords
    let mut tri_of_dart = vec![usize::MAX; 2 * m];
    let mut tri_links: Vec<Vec<(usize, Option<EdgeId>)>> = Vec::new();
    for face in g.faces() {
        let len = face.len();
        let tris = len.saturating_sub(2).max(1);
        let base = tri_links.len();
        for _ in 0..tris {
            tri_links.push(Vec::new());
        }
        for (j, &d) in face.iter().enumerate() {
            let t = if tris == 1 { 0 } else { j.saturating_sub(1).min(tris - 1) };
            tri_of_dart[d] = base + t;
        }
        for t in 1..tris {
            tri_links[base + t - 1].push((base + t, None));
            tri_links[base + t].push((base + t - 1, None));
        }
    }
    for e in 0..m {
        if !tree_edge[e] {
            let (a, b) = (tri_of_dart[2 * e], tri_of_dart[2 * e + 1]);
            tri_links[a].push((b, Some(e)));
            tri_links[b].push((a, Some(e)));
        }
    }
    let t_count = tri_links.len();
    let start_tri = tri_of_dart[g.faces()[g.outer_face()][0]];
    let mut parent: Vec<Option<(usize, Option<EdgeId>)>> = vec![None; t_count];
    let mut seen = vec![false; t_count];
    let mut order = Vec::with_capacity(t_count);
    seen[start_tri] = true;
    let mut queue = VecDeque::from([start_tri]);
    while let Some(t) = queue.pop_front() {
        order.push(t);
        for &(u, via) in &tri_links[t] {
            if !seen[u] {
                seen[u] = true;
                parent[u] = Some((t, via));
                queue.push_back(u);
            }
        }
    }
    let mut own: Vec<Vec<EdgeId>> = vec![Vec::new(); t_count];
    for e in 0..m {
        if tree_edge[e] {
            own[tri_of_dart[2 * e]].push(e);
        }
    }
    let mut b = Builder::default();
    let mut sub: Vec<Option<usize>> = vec![None; t_count];
    let mut pending: Vec<Vec<Option<usize>>> = vec![Vec::new(); t_count];
    for &t in order.iter().rev() {
        let mut acc: Option<usize> = None;
        for &e in &own[t] {
            let l = b.leaf(e);
            acc = b.join_opt(acc, Some(l));
        }
        for item in std::mem::take(&mut pending[t]) {
            acc = b.join_opt(acc, item);
        }
        sub[t] = acc;
        if let Some((p, via)) = parent[t] {
            let item = match via {
                Some(e) => {
                    let l = b.leaf(e);
                    b.join_opt(Some(l), acc)
                }
                None => acc,
            };
            pending[p].push(item);
        }
    }
    let root_node = sub[start_tri].expect("graph has edges");
    b.finish(g, root_node)
}

/// Builds a decomposition of a connected graph with at least one edge,
/// keeping the narrowest of several constructions.
pub fn decompose(g: &EmbeddedMultigraph) -> Result<BranchDecomposition> {
    let m = g.edge_count();
    if m == 0 {
        return Err(Error::CorruptDecomposition("graph has no edges".into()));
    }
    if m == 1 {
        let mut b = Builder::default();
        let l = b.leaf(0);
        return Ok(b.finish(g, l));
    }
    let n = g.vertex_count();
    let mut starts: Vec<VertexId> = g.outer_vertices();
    let stride = (n / 8).max(1);
    starts.extend((0..n).step_by(stride));
    starts.sort_unstable();
    starts.dedup();
    if starts.len() > 16 {
        let step = starts.len().div_ceil(16);
        starts = starts.into_iter().step_by(step).collect();
    }
    let mut best: Option<(usize, Vec<EdgeId>)> = None;
    for &s in &starts {
        if g.degree(s) == 0 {
            continue;
        }
        for order in [greedy_order(g, s), bfs_order(g, s)] {
            let w = caterpillar_width(g, &order);
            if best.as_ref().is_none_or(|(bw, _)| w < *bw) {
                best = Some((w, order));
            }
        }
    }
    let (cat_width, cat_order) = best.expect("some start vertex has an edge");
    let mut planar_best: Option<BranchDecomposition> = None;
    for &s in starts.iter().take(4) {
        let bd = planar_decomposition(g, s);
        if planar_best.as_ref().is_none_or(|p| bd.width < p.width) {
            planar_best = Some(bd);
        }
    }
    let planar = planar_best.unwrap();
    if cat_width <= planar.width {
        Ok(caterpillar(g, &cat_order))
    } else {
        Ok(planar)
    }
}

/// Recomputes every separator from scratch, checks the tree shape and the
/// leaf-to-edge bijection, and returns the width.
pub fn verify_width(bd: &BranchDecomposition, g: &EmbeddedMultigraph) -> Result<usize> {
    let m = g.edge_count();
    let n = g.vertex_count();
    let corrupt = |msg: String| Err(Error::CorruptDecomposition(msg));
    if bd.root >= bd.nodes.len() || bd.nodes[bd.root].parent.is_some() {
        return corrupt("root is missing or has a parent".into());
    }
    let mut seen_edge = vec![false; m];
    let mut reached = vec![false; bd.nodes.len()];
    let mut stack = vec![bd.root];
    while let Some(x) = stack.pop() {
        if reached[x] {
            return corrupt(format!("node {x} reached twice"));
        }
        reached[x] = true;
        let node = &bd.nodes[x];
        match (node.children, node.edge) {
            (Some((a, b)), None) => {
                for c in [a, b] {
                    if c >= bd.nodes.len() || bd.nodes[c].parent != Some(x) {
                        return corrupt(format!("child {c} of node {x} has a wrong parent link"));
                    }
                    stack.push(c);
                }
            }
            (None, Some(e)) => {
                if e >= m || seen_edge[e] {
                    return corrupt(format!("edge {e} appears on zero or several leaves"));
                }
                seen_edge[e] = true;
            }
            _ => return corrupt(format!("node {x} is neither a leaf nor binary")),
        }
    }
    if reached.iter().any(|&r| !r) {
        return corrupt("unreachable nodes".into());
    }
    if let Some(e) = seen_edge.iter().position(|&s| !s) {
        return corrupt(format!("edge {e} has no leaf"));
    }
    let mut width = 0;
    for x in 0..bd.nodes.len() {
        let mut inside = vec![false; m];
        for e in bd.edges_below(x) {
            inside[e] = true;
        }
        let mut touch_in = vec![false; n];
        let mut touch_out = vec![false; n];
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            let side = if inside[e] { &mut touch_in } else { &mut touch_out };
            side[u] = true;
            side[v] = true;
        }
        let sep: Vec<VertexId> = (0..n).filter(|&v| touch_in[v] && touch_out[v]).collect();
        if sep != bd.nodes[x].separator {
            return corrupt(format!("separator of node {x} is {:?}, recorded {:?}", sep, bd.nodes[x].separator));
        }
        width = width.max(sep.len());
    }
    if width != bd.width {
        return corrupt(format!("recorded width {} but separators give {width}", bd.width));
    }
    Ok(width)
}
