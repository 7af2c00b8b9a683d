//! Left-right planarity test with embedding (de Fraysseix-Rosenstiehl,
//! in the formulation of Brandes).

/// Returns, for each vertex, its neighbours in clockwise order, or `None` when
/// the simple graph given by `edges` is not planar. Edges must be distinct
/// unordered pairs without loops.
pub fn planar_embedding(n: usize, edges: &[(usize, usize)]) -> Option<Vec<Vec<usize>>> {
    if n > 2 && edges.len() > 3 * n - 6 {
        return None;
    }
    let edges = edges.to_vec();
    // The depth-first searches recurse once per tree level; run them on a
    // thread with a stack sized for the input.
    let stack = (64usize << 20).max(n.saturating_mul(1024));
    std::thread::Builder::new()
        .stack_size(stack)
        .spawn(move || Lr::new(n, &edges).run())
        .expect("spawn planarity worker")
        .join()
        .expect("planarity worker panicked")
}

const NONE: usize = usize::MAX;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
struct Interval {
    low: Option<usize>,
    high: Option<usize>,
}

impl Interval {
    fn empty(&self) -> bool {
        self.low.is_none() && self.high.is_none()
    }
}

#[derive(Clone, Copy, Debug, Default)]
struct ConflictPair {
    id: usize,
    left: Interval,
    right: Interval,
}

impl ConflictPair {
    fn swap(&mut self) {
        std::mem::swap(&mut self.left, &mut self.right);
    }
}

struct Lr {
    n: usize,
    adj: Vec<Vec<usize>>,
    src: Vec<usize>,
    dst: Vec<usize>,
    oriented: Vec<bool>,
    height: Vec<usize>,
    parent_edge: Vec<usize>,
    lowpt: Vec<usize>,
    lowpt2: Vec<usize>,
    nesting_depth: Vec<i64>,
    out: Vec<Vec<usize>>,
    roots: Vec<usize>,
    refs: Vec<Option<usize>>,
    side: Vec<i64>,
    stack: Vec<ConflictPair>,
    next_pair_id: usize,
    stack_bottom: Vec<Option<usize>>,
    lowpt_edge: Vec<usize>,
    // embedding: half-edge 2e leaves src[e], 2e+1 leaves dst[e]
    cw: Vec<usize>,
    ccw: Vec<usize>,
    first: Vec<Option<usize>>,
    left_ref: Vec<usize>,
    right_ref: Vec<usize>,
}

impl Lr {
    fn new(n: usize, edges: &[(usize, usize)]) -> Self {
        let m = edges.len();
        let mut adj = vec![Vec::new(); n];
        for (e, &(u, v)) in edges.iter().enumerate() {
            adj[u].push(e);
            adj[v].push(e);
        }
        Lr {
            n,
            adj,
            src: edges.iter().map(|e| e.0).collect(),
            dst: edges.iter().map(|e| e.1).collect(),
            oriented: vec![false; m],
            height: vec![NONE; n],
            parent_edge: vec![NONE; n],
            lowpt: vec![0; m],
            lowpt2: vec![0; m],
            nesting_depth: vec![0; m],
            out: vec![Vec::new(); n],
            roots: Vec::new(),
            refs: vec![None; m],
            side: vec![1; m],
            stack: Vec::new(),
            next_pair_id: 0,
            stack_bottom: vec![None; m],
            lowpt_edge: vec![NONE; m],
            cw: vec![NONE; 2 * m],
            ccw: vec![NONE; 2 * m],
            first: vec![None; n],
            left_ref: vec![NONE; n],
            right_ref: vec![NONE; n],
        }
    }

    fn run(mut self) -> Option<Vec<Vec<usize>>> {
        for v in 0..self.n {
            if self.height[v] == NONE {
                self.height[v] = 0;
                self.roots.push(v);
                self.orient(v);
            }
        }
        for v in 0..self.n {
            let mut o = std::mem::take(&mut self.out[v]);
            o.sort_by_key(|&e| self.nesting_depth[e]);
            self.out[v] = o;
        }
        for r in self.roots.clone() {
            if !self.test(r) {
                return None;
            }
        }
        for e in 0..self.src.len() {
            let s = self.sign(e);
            self.nesting_depth[e] *= s;
        }
        for v in 0..self.n {
            let mut o = std::mem::take(&mut self.out[v]);
            o.sort_by_key(|&e| self.nesting_depth[e]);
            let mut prev = None;
            for &e in &o {
                let he = 2 * e;
                self.add_cw(v, he, prev);
                prev = Some(he);
            }
            self.out[v] = o;
        }
        for r in self.roots.clone() {
            self.embed(r);
        }
        let mut result = vec![Vec::new(); self.n];
        for v in 0..self.n {
            if let Some(start) = self.first[v] {
                let mut he = start;
                loop {
                    result[v].push(self.half_target(he));
                    he = self.cw[he];
                    if he == start {
                        break;
                    }
                }
            }
        }
        Some(result)
    }

    fn half_target(&self, he: usize) -> usize {
        if he.is_multiple_of(2) {
            self.dst[he / 2]
        } else {
            self.src[he / 2]
        }
    }

    fn other(&self, e: usize, v: usize) -> usize {
        if self.src[e] == v {
            self.dst[e]
        } else {
            self.src[e]
        }
    }

    fn orient(&mut self, v: usize) {
        let pe = self.parent_edge[v];
        for i in 0..self.adj[v].len() {
            let e = self.adj[v][i];
            if self.oriented[e] {
                continue;
            }
            self.oriented[e] = true;
            let w = self.other(e, v);
            self.src[e] = v;
            self.dst[e] = w;
            self.out[v].push(e);
            self.lowpt[e] = self.height[v];
            self.lowpt2[e] = self.height[v];
            if self.height[w] == NONE {
                self.parent_edge[w] = e;
                self.height[w] = self.height[v] + 1;
                self.orient(w);
            } else {
                self.lowpt[e] = self.height[w];
            }
            self.nesting_depth[e] = 2 * self.lowpt[e] as i64;
            if self.lowpt2[e] < self.height[v] {
                self.nesting_depth[e] += 1;
            }
            if pe != NONE {
                if self.lowpt[e] < self.lowpt[pe] {
                    self.lowpt2[pe] = self.lowpt[pe].min(self.lowpt2[e]);
                    self.lowpt[pe] = self.lowpt[e];
                } else if self.lowpt[e] > self.lowpt[pe] {
                    self.lowpt2[pe] = self.lowpt2[pe].min(self.lowpt[e]);
                } else {
                    self.lowpt2[pe] = self.lowpt2[pe].min(self.lowpt2[e]);
                }
            }
        }
    }

    fn top_id(&self) -> Option<usize> {
        self.stack.last().map(|p| p.id)
    }

    fn conflicting(&self, i: &Interval, b: usize) -> bool {
        match i.high {
            Some(h) => !i.empty() && self.lowpt[h] > self.lowpt[b],
            None => false,
        }
    }

    fn lowest(&self, p: &ConflictPair) -> usize {
        if p.left.empty() {
            return self.lowpt[p.right.low.unwrap()];
        }
        if p.right.empty() {
            return self.lowpt[p.left.low.unwrap()];
        }
        self.lowpt[p.left.low.unwrap()].min(self.lowpt[p.right.low.unwrap()])
    }

    fn new_pair(&mut self, left: Interval, right: Interval) -> ConflictPair {
        self.next_pair_id += 1;
        ConflictPair { id: self.next_pair_id, left, right }
    }

    fn test(&mut self, v: usize) -> bool {
        let pe = self.parent_edge[v];
        let out = self.out[v].clone();
        for (idx, &ei) in out.iter().enumerate() {
            let w = self.dst[ei];
            self.stack_bottom[ei] = self.top_id();
            if self.parent_edge[w] == ei {
                if !self.test(w) {
                    return false;
                }
            } else {
                self.lowpt_edge[ei] = ei;
                let p = self.new_pair(Interval::default(), Interval { low: Some(ei), high: Some(ei) });
                self.stack.push(p);
            }
            if self.lowpt[ei] < self.height[v] {
                if idx == 0 {
                    if pe != NONE {
                        self.lowpt_edge[pe] = self.lowpt_edge[ei];
                    }
                } else if !self.add_constraints(ei, pe) {
                    return false;
                }
            }
        }
        if pe != NONE {
            self.remove_back_edges(pe);
        }
        true
    }

    fn add_constraints(&mut self, ei: usize, e: usize) -> bool {
        let mut p = ConflictPair::default();
        loop {
            let mut q = self.stack.pop().expect("conflict stack underflow");
            if !q.left.empty() {
                q.swap();
            }
            if !q.left.empty() {
                return false;
            }
            let qrl = q.right.low.unwrap();
            if self.lowpt[qrl] > self.lowpt[e] {
                if p.right.empty() {
                    p.right.high = q.right.high;
                } else {
                    self.refs[p.right.low.unwrap()] = q.right.high;
                }
                p.right.low = q.right.low;
            } else {
                self.refs[qrl] = Some(self.lowpt_edge[e]);
            }
            if self.top_id() == self.stack_bottom[ei] {
                break;
            }
        }
        loop {
            let Some(top) = self.stack.last() else { break };
            if !(self.conflicting(&top.left, ei) || self.conflicting(&top.right, ei)) {
                break;
            }
            let mut q = self.stack.pop().unwrap();
            if self.conflicting(&q.right, ei) {
                q.swap();
            }
            if self.conflicting(&q.right, ei) {
                return false;
            }
            if let Some(l) = p.right.low {
                self.refs[l] = q.right.high;
            }
            if q.right.low.is_some() {
                p.right.low = q.right.low;
            }
            if p.left.empty() {
                p.left.high = q.left.high;
            } else {
                self.refs[p.left.low.unwrap()] = q.left.high;
            }
            p.left.low = q.left.low;
        }
        if !(p.left.empty() && p.right.empty()) {
            let pair = self.new_pair(p.left, p.right);
            self.stack.push(pair);
        }
        true
    }

    fn remove_back_edges(&mut self, e: usize) {
        let u = self.src[e];
        while let Some(top) = self.stack.last() {
            if self.lowest(top) != self.height[u] {
                break;
            }
            let p = self.stack.pop().unwrap();
            if let Some(l) = p.left.low {
                self.side[l] = -1;
            }
        }
        if let Some(mut p) = self.stack.pop() {
            while let Some(h) = p.left.high {
                if self.dst[h] != u {
                    break;
                }
                p.left.high = self.refs[h];
            }
            if p.left.high.is_none() {
                if let Some(l) = p.left.low {
                    self.refs[l] = p.right.low;
                    self.side[l] = -1;
                    p.left.low = None;
                }
            }
            while let Some(h) = p.right.high {
                if self.dst[h] != u {
                    break;
                }
                p.right.high = self.refs[h];
            }
            if p.right.high.is_none() {
                if let Some(l) = p.right.low {
                    self.refs[l] = p.left.low;
                    self.side[l] = -1;
                    p.right.low = None;
                }
            }
            self.stack.push(p);
        }
        if self.lowpt[e] < self.height[u] {
            let top = self.stack.last().expect("return edge without conflict pair");
            let (hl, hr) = (top.left.high, top.right.high);
            self.refs[e] = match (hl, hr) {
                (Some(l), None) => Some(l),
                (Some(l), Some(r)) if self.lowpt[l] > self.lowpt[r] => Some(l),
                _ => hr,
            };
        }
    }

    fn sign(&mut self, e: usize) -> i64 {
        let mut chain = vec![e];
        let mut cur = e;
        while let Some(r) = self.refs[cur] {
            chain.push(r);
            cur = r;
        }
        // chain ends at an edge without reference; fold signs backwards
        let mut acc = self.side[*chain.last().unwrap()];
        for &x in chain.iter().rev().skip(1) {
            self.side[x] *= acc;
            self.refs[x] = None;
            acc = self.side[x];
        }
        self.side[e]
    }

    fn add_cw(&mut self, v: usize, he: usize, reference: Option<usize>) {
        match reference {
            None => {
                self.cw[he] = he;
                self.ccw[he] = he;
                self.first[v] = Some(he);
            }
            Some(r) => {
                let nxt = self.cw[r];
                self.cw[r] = he;
                self.ccw[he] = r;
                self.cw[he] = nxt;
                self.ccw[nxt] = he;
            }
        }
    }

    fn add_ccw(&mut self, v: usize, he: usize, reference: Option<usize>) {
        match reference {
            None => self.add_cw(v, he, None),
            Some(r) => {
                let prv = self.ccw[r];
                self.add_cw(v, he, Some(prv));
                if self.first[v] == Some(r) {
                    self.first[v] = Some(he);
                }
            }
        }
    }

    fn embed(&mut self, v: usize) {
        let out = self.out[v].clone();
        for &ei in &out {
            let w = self.dst[ei];
            if self.parent_edge[w] == ei {
                let he = 2 * ei + 1;
                let f = self.first[w];
                self.add_ccw(w, he, f);
                self.left_ref[v] = 2 * ei;
                self.right_ref[v] = 2 * ei;
                self.embed(w);
            } else {
                let he = 2 * ei + 1;
                if self.side[ei] == 1 {
                    let r = self.right_ref[w];
                    self.add_cw(w, he, Some(r));
                } else {
                    let l = self.left_ref[w];
                    self.add_ccw(w, he, Some(l));
                    self.left_ref[w] = he;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Vec<(usize, usize)> {
        let mut e = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                e.push((u, v));
            }
        }
        e
    }

    #[test]
    fn small_complete_graphs() {
        assert!(planar_embedding(4, &complete(4)).is_some());
        assert!(planar_embedding(5, &complete(5)).is_none());
    }

    #[test]
    fn petersen_is_not_planar() {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((i, i + 5));
            e.push((5 + i, 5 + (i + 2) % 5));
        }
        assert!(planar_embedding(10, &e).is_none());
    }

    #[test]
    fn grid_is_planar() {
        let w = 6;
        let mut e = Vec::new();
        for r in 0..w {
            for c in 0..w {
                let v = r * w + c;
                if c + 1 < w {
                    e.push((v, v + 1));
                }
                if r + 1 < w {
                    e.push((v, v + w));
                }
            }
        }
        let emb = planar_embedding(w * w, &e).unwrap();
        assert_eq!(emb.iter().map(|l| l.len()).sum::<usize>(), 2 * e.len());
    }
}
