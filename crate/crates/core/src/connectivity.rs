//! Connectivity primitives on loop-free multigraphs given as edge lists.

use crate::graph::EmbeddedMultigraph;
use crate::util::DisjointSets;
use rustc_hash::FxHashSet;
use std::collections::VecDeque;

/// Connected component label of every vertex, numbered by smallest vertex.
pub fn components(n: usize, edges: &[(usize, usize)]) -> (usize, Vec<usize>) {
    let mut ds = DisjointSets::new(n);
    for &(u, v) in edges {
        ds.union(u, v);
    }
    let mut label = vec![usize::MAX; n];
    let mut root_label = vec![usize::MAX; n];
    let mut count = 0;
    for v in 0..n {
        let r = ds.find(v);
        if root_label[r] == usize::MAX {
            root_label[r] = count;
            count += 1;
        }
        label[v] = root_label[r];
    }
    (count, label)
}

pub fn is_connected(n: usize, edges: &[(usize, usize)]) -> bool {
    n <= 1 || components(n, edges).0 == 1
}

fn adjacency(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<(usize, usize)>> {
    let mut adj = vec![Vec::new(); n];
    for (e, &(u, v)) in edges.iter().enumerate() {
        adj[u].push((v, e));
        adj[v].push((u, e));
    }
    adj
}

/// Marks the bridges. Parallel copies are never bridges.
pub fn bridges(n: usize, edges: &[(usize, usize)]) -> Vec<bool> {
    let adj = adjacency(n, edges);
    let mut is_bridge = vec![false; edges.len()];
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut time = 0;
    // stack frames: (vertex, parent edge, next adjacency index)
    let mut stack: Vec<(usize, usize, usize)> = Vec::new();
    for s in 0..n {
        if disc[s] != usize::MAX {
            continue;
        }
        disc[s] = time;
        low[s] = time;
        time += 1;
        stack.push((s, usize::MAX, 0));
        while let Some(top) = stack.last_mut() {
            let (v, pe, i) = *top;
            if i < adj[v].len() {
                top.2 += 1;
                let (w, e) = adj[v][i];
                if e == pe {
                    continue;
                }
                if disc[w] == usize::MAX {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    stack.push((w, e, 0));
                } else {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[v]);
                    if low[v] > disc[p] {
                        is_bridge[pe] = true;
                    }
                }
            }
        }
    }
    is_bridge
}

/// Component labels of the graph with its bridges removed. Components that
/// contain at least one edge are the 2-edge-connected components.
pub fn two_edge_components(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let br = bridges(n, edges);
    let kept: Vec<(usize, usize)> = edges.iter().zip(&br).filter(|(_, &b)| !b).map(|(&e, _)| e).collect();
    components(n, &kept).1
}

/// Biconnected components as lists of edge ids (each sorted), ordered by
/// their smallest edge, and the articulation points.
pub fn biconnected_components(n: usize, edges: &[(usize, usize)]) -> (Vec<Vec<usize>>, Vec<bool>) {
    let adj = adjacency(n, edges);
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut articulation = vec![false; n];
    let mut blocks = Vec::new();
    let mut estack: Vec<usize> = Vec::new();
    let mut time = 0;
    let mut stack: Vec<(usize, usize, usize)> = Vec::new();
    for s in 0..n {
        if disc[s] != usize::MAX {
            continue;
        }
        disc[s] = time;
        low[s] = time;
        time += 1;
        let mut root_children = 0;
        stack.push((s, usize::MAX, 0));
        while let Some(top) = stack.last_mut() {
            let (v, pe, i) = *top;
            if i < adj[v].len() {
                top.2 += 1;
                let (w, e) = adj[v][i];
                if e == pe {
                    continue;
                }
                if disc[w] == usize::MAX {
                    estack.push(e);
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    if v == s {
                        root_children += 1;
                    }
                    stack.push((w, e, 0));
                } else if disc[w] < disc[v] {
                    estack.push(e);
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[v]);
                    if low[v] >= disc[p] {
                        if p != s {
                            articulation[p] = true;
                        }
                        let mut block = Vec::new();
                        while let Some(e) = estack.pop() {
                            block.push(e);
                            if e == pe {
                                break;
                            }
                        }
                        block.sort_unstable();
                        blocks.push(block);
                    }
                }
            }
        }
        if root_children > 1 {
            articulation[s] = true;
        }
    }
    blocks.sort();
    (blocks, articulation)
}

/// Whether removing fewer than `k` edges never disconnects the graph.
pub fn is_k_edge_connected(n: usize, edges: &[(usize, usize)], k: usize) -> bool {
    if n <= 1 {
        return true;
    }
    if !is_connected(n, edges) {
        return false;
    }
    match k {
        0 | 1 => true,
        2 => !bridges(n, edges).iter().any(|&b| b),
        3 => {
            if bridges(n, edges).iter().any(|&b| b) {
                return false;
            }
            let mut rest = Vec::with_capacity(edges.len());
            for skip in 0..edges.len() {
                rest.clear();
                rest.extend(edges.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &e)| e));
                if bridges(n, &rest).iter().any(|&b| b) {
                    return false;
                }
            }
            true
        }
        _ => stoer_wagner(n, edges) >= k,
    }
}

fn is_biconnected_ignoring(n: usize, edges: &[(usize, usize)], removed: Option<usize>) -> bool {
    let alive = n - removed.is_some() as usize;
    if alive <= 1 {
        return true;
    }
    let mut map = vec![usize::MAX; n];
    let mut next = 0;
    for v in 0..n {
        if Some(v) != removed {
            map[v] = next;
            next += 1;
        }
    }
    let sub: Vec<(usize, usize)> = edges
        .iter()
        .filter(|&&(u, v)| Some(u) != removed && Some(v) != removed)
        .map(|&(u, v)| (map[u], map[v]))
        .collect();
    if !is_connected(alive, &sub) {
        return false;
    }
    if alive == 2 {
        return true;
    }
    !biconnected_components(alive, &sub).1.iter().any(|&a| a)
}

/// Whether the graph has more than `k` vertices and removing fewer than `k`
/// vertices never disconnects it. Supports `k <= 3`; larger `k` falls back
/// to pairwise local connectivity.
pub fn is_k_vertex_connected(n: usize, edges: &[(usize, usize)], k: usize) -> bool {
    if k == 0 {
        return true;
    }
    if n <= k {
        return false;
    }
    match k {
        1 => is_connected(n, edges),
        2 => is_biconnected_ignoring(n, edges, None),
        3 => {
            if !is_biconnected_ignoring(n, edges, None) {
                return false;
            }
            (0..n).all(|v| is_biconnected_ignoring(n, edges, Some(v)))
        }
        _ => {
            for s in 0..n {
                for t in s + 1..n {
                    if vertex_connectivity_between(n, edges, s, t, k) < k {
                        return false;
                    }
                }
            }
            true
        }
    }
}

/// Global minimum edge cut weight (edge multiplicities count).
pub fn stoer_wagner(n: usize, edges: &[(usize, usize)]) -> usize {
    if n <= 1 {
        return usize::MAX;
    }
    if !is_connected(n, edges) {
        return 0;
    }
    let mut w = vec![vec![0usize; n]; n];
    for &(u, v) in edges {
        w[u][v] += 1;
        w[v][u] += 1;
    }
    let mut active: Vec<usize> = (0..n).collect();
    let mut best = usize::MAX;
    while active.len() > 1 {
        let mut added = vec![false; n];
        let mut weight = vec![0usize; n];
        let mut prev = active[0];
        let mut last = active[0];
        for step in 0..active.len() {
            let mut sel = usize::MAX;
            for &v in &active {
                if !added[v] && (sel == usize::MAX || weight[v] > weight[sel]) {
                    sel = v;
                }
            }
            added[sel] = true;
            if step == active.len() - 1 {
                best = best.min(weight[sel]);
                prev = last;
                last = sel;
            } else {
                last = sel;
                for &v in &active {
                    if !added[v] {
                        weight[v] += w[sel][v];
                    }
                }
            }
        }
        // merge last into prev
        for &v in &active {
            if v != prev && v != last {
                w[prev][v] += w[last][v];
                w[v][prev] = w[prev][v];
            }
        }
        active.retain(|&v| v != last);
    }
    best
}

/// Number of edge-disjoint `s`-`t` paths, stopping once `cap` is reached.
pub fn edge_connectivity_between(n: usize, edges: &[(usize, usize)], s: usize, t: usize, cap: usize) -> usize {
    if s == t {
        return cap;
    }
    // residual over arcs: arc 2e goes u->v, 2e+1 goes v->u, capacity 1 each
    let adj = adjacency(n, edges);
    let mut flow = vec![0i8; edges.len()]; // +1: u->v used, -1: v->u used
    let mut total = 0;
    while total < cap {
        let mut pred: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[s] = true;
        let mut q = VecDeque::from([s]);
        while let Some(x) = q.pop_front() {
            if x == t {
                break;
            }
            for &(y, e) in &adj[x] {
                if seen[y] {
                    continue;
                }
                let forward = edges[e].0 == x;
                let usable = if forward { flow[e] < 1 } else { flow[e] > -1 };
                if usable {
                    seen[y] = true;
                    pred[y] = Some((x, e));
                    q.push_back(y);
                }
            }
        }
        if !seen[t] {
            break;
        }
        let mut y = t;
        while let Some((x, e)) = pred[y] {
            if edges[e].0 == x {
                flow[e] += 1;
            } else {
                flow[e] -= 1;
            }
            y = x;
        }
        total += 1;
    }
    total
}

/// Number of internally vertex-disjoint `s`-`t` paths, capped at `cap`.
/// Adjacent `s` and `t` count one path per parallel edge.
pub fn vertex_connectivity_between(n: usize, edges: &[(usize, usize)], s: usize, t: usize, cap: usize) -> usize {
    if s == t {
        return cap;
    }
    // split x into x_in = 2x, x_out = 2x + 1 with capacity 1 (s, t unbounded)
    let nodes = 2 * n;
    let mut arcs: Vec<(usize, usize, i32)> = Vec::new(); // (from, to, cap)
    for x in 0..n {
        let c = if x == s || x == t { cap as i32 } else { 1 };
        arcs.push((2 * x, 2 * x + 1, c));
    }
    for &(u, v) in edges {
        arcs.push((2 * u + 1, 2 * v, 1));
        arcs.push((2 * v + 1, 2 * u, 1));
    }
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); nodes];
    let mut res: Vec<(usize, usize, i32)> = Vec::new();
    for &(a, b, c) in &arcs {
        out[a].push(res.len());
        res.push((a, b, c));
        out[b].push(res.len());
        res.push((b, a, 0));
    }
    let (src, dst) = (2 * s + 1, 2 * t);
    let mut total = 0;
    while total < cap {
        let mut pred = vec![usize::MAX; nodes];
        let mut seen = vec![false; nodes];
        seen[src] = true;
        let mut q = VecDeque::from([src]);
        while let Some(x) = q.pop_front() {
            for &a in &out[x] {
                let (_, y, c) = res[a];
                if c > 0 && !seen[y] {
                    seen[y] = true;
                    pred[y] = a;
                    q.push_back(y);
                }
            }
        }
        if !seen[dst] {
            break;
        }
        let mut y = dst;
        while y != src {
            let a = pred[y];
            res[a].2 -= 1;
            res[a ^ 1].2 += 1;
            y = res[a].0;
        }
        total += 1;
    }
    total
}

/// Linear-time 3-edge-connectivity of a plane multigraph: its minimal cuts
/// are the cycles of the dual, so the dual must have no loop and no two
/// edges joining the same pair of faces.
pub fn is_three_edge_connected_plane(g: &EmbeddedMultigraph) -> bool {
    let n = g.vertex_count();
    if n <= 1 {
        return true;
    }
    if !g.is_connected() {
        return false;
    }
    let mut pairs: Vec<(usize, usize)> = Vec::with_capacity(g.edge_count());
    for e in 0..g.edge_count() {
        let (f, h) = (g.face_of_dart(2 * e), g.face_of_dart(2 * e + 1));
        if f == h {
            return false;
        }
        pairs.push((f.min(h), f.max(h)));
    }
    pairs.sort_unstable();
    pairs.windows(2).all(|w| w[0] != w[1])
}

/// 3-vertex-connectivity of a plane multigraph. Once parallel copies are
/// dropped and the graph is 2-connected, it is 3-connected exactly when any
/// two faces meet in nothing, one vertex or one edge. Runs in
/// `O(m + sum deg^2)`.
pub fn is_three_vertex_connected_plane(g: &EmbeddedMultigraph) -> bool {
    let n = g.vertex_count();
    if n <= 3 {
        return false;
    }
    let mut seen = FxHashSet::default();
    let keep: Vec<bool> = g.edges().iter().map(|&(u, v)| seen.insert((u.min(v), u.max(v)))).collect();
    let (s, _) = g.edge_subgraph(&keep);
    if !is_biconnected_ignoring(n, s.edges(), None) {
        return false;
    }
    let faces = s.faces();
    let mut around: Vec<Vec<usize>> = vec![Vec::new(); n];
    for d in 0..2 * s.edge_count() {
        around[s.tail(d)].push(s.face_of_dart(d));
    }
    let mut adjacent = FxHashSet::default();
    for e in 0..s.edge_count() {
        let (f, h) = (s.face_of_dart(2 * e), s.face_of_dart(2 * e + 1));
        adjacent.insert((f.min(h), f.max(h)));
    }
    let mut count = vec![0usize; faces.len()];
    let mut touched = Vec::new();
    for (f, darts) in faces.iter().enumerate() {
        for &d in darts {
            for &h in &around[s.tail(d)] {
                if h != f {
                    if count[h] == 0 {
                        touched.push(h);
                    }
                    count[h] += 1;
                }
            }
        }
        for h in touched.drain(..) {
            let c = std::mem::take(&mut count[h]);
            if c > 2 || (c == 2 && !adjacent.contains(&(f.min(h), f.max(h)))) {
                return false;
            }
        }
    }
    true
}
