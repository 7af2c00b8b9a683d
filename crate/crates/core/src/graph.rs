//! Embedded planar multigraphs stored as rotation systems.
//!
//! Each edge `e = (u, v)` owns two darts: `2e` runs from `u` to `v` and
//! `2e + 1` runs back. `rotation[v]` lists the edges at `v` in clockwise order.
//! Faces are traced with the rule "arrive at `v`, leave along the clockwise
//! successor of the arrival edge".

use crate::error::{Error, Result};
use crate::planarity;
use crate::util::DisjointSets;
use serde::{Deserialize, Serialize};

pub type VertexId = usize;
pub type EdgeId = usize;
pub type Dart = usize;

/// What a vertex of a (possibly contracted) graph stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VertexKind {
    /// A vertex of the input graph.
    Original(VertexId),
    /// A contracted component lying strictly inside the slice; the payload is
    /// the smallest original vertex adjacent to the slice through it.
    InnerNode(VertexId),
    /// The contracted component outside the slice.
    OuterNode,
}

/// Slice edge together with the input edge it was copied from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EdgeRef {
    pub slice_edge: EdgeId,
    pub origin: Option<EdgeId>,
}

/// How to pick the outer face when building.
#[derive(Clone, Copy, Debug)]
pub(crate) enum OuterChoice {
    Longest,
    Face(usize),
    Dart(Dart),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddedMultigraph {
    n: usize,
    edges: Vec<(VertexId, VertexId)>,
    rotation: Vec<Vec<EdgeId>>,
    outer_face: usize,
    /// Position of each dart inside the rotation of its tail.
    dart_pos: Vec<u32>,
    face_of_dart: Vec<u32>,
    faces: Vec<Vec<Dart>>,
}

impl EmbeddedMultigraph {
    /// Builds a graph with at most three parallel copies per vertex pair.
    ///
    /// Without a rotation an embedding is computed; without an outer face the
    /// longest face is used (ties go to the smallest face index).
    pub fn build(
        n: usize,
        edges: Vec<(VertexId, VertexId)>,
        rotation: Option<Vec<Vec<EdgeId>>>,
        outer_face: Option<usize>,
    ) -> Result<Self> {
        check_multiplicity(&edges)?;
        Self::build_lenient(n, edges, rotation, outer_face)
    }

    /// Like [`build`](Self::build) but without the multiplicity limit.
    pub fn build_lenient(
        n: usize,
        edges: Vec<(VertexId, VertexId)>,
        rotation: Option<Vec<Vec<EdgeId>>>,
        outer_face: Option<usize>,
    ) -> Result<Self> {
        for (e, &(u, v)) in edges.iter().enumerate() {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop { edge: e });
            }
        }
        let rotation = match rotation {
            Some(r) => r,
            None => embed(n, &edges)?,
        };
        let outer = match outer_face {
            Some(f) => OuterChoice::Face(f),
            None => OuterChoice::Longest,
        };
        Self::from_rotation(n, edges, rotation, outer)
    }

    pub(crate) fn from_rotation(
        n: usize,
        edges: Vec<(VertexId, VertexId)>,
        rotation: Vec<Vec<EdgeId>>,
        outer: OuterChoice,
    ) -> Result<Self> {
        if rotation.len() != n {
            return Err(Error::InvalidRotation(format!("expected {} rotation lists, got {}", n, rotation.len())));
        }
        let m = edges.len();
        let mut dart_pos = vec![u32::MAX; 2 * m];
        for (v, rot) in rotation.iter().enumerate() {
            for (i, &e) in rot.iter().enumerate() {
                if e >= m {
                    return Err(Error::InvalidRotation(format!("edge {e} at vertex {v} does not exist")));
                }
                let (a, b) = edges[e];
                let d = if a == v {
                    2 * e
                } else if b == v {
                    2 * e + 1
                } else {
                    return Err(Error::InvalidRotation(format!("edge {e} is not incident to vertex {v}")));
                };
                if dart_pos[d] != u32::MAX {
                    return Err(Error::InvalidRotation(format!("edge {e} listed twice at vertex {v}")));
                }
                dart_pos[d] = i as u32;
            }
        }
        if let Some(d) = dart_pos.iter().position(|&p| p == u32::MAX) {
            return Err(Error::InvalidRotation(format!("edge {} missing from a rotation", d / 2)));
        }
        let mut g = EmbeddedMultigraph {
            n,
            edges,
            rotation,
            outer_face: 0,
            dart_pos,
            face_of_dart: Vec::new(),
            faces: Vec::new(),
        };
        g.trace_faces();
        g.check_euler()?;
        g.outer_face = match outer {
            OuterChoice::Longest => g.longest_face(),
            OuterChoice::Face(f) => {
                if f >= g.faces.len().max(1) {
                    return Err(Error::InvalidOuterFace(f));
                }
                f
            }
            OuterChoice::Dart(d) => {
                if d >= 2 * m {
                    return Err(Error::Internal(format!("outer dart {d} out of range")));
                }
                g.face_of_dart[d] as usize
            }
        };
        Ok(g)
    }

    fn trace_faces(&mut self) {
        let darts = 2 * self.edges.len();
        self.face_of_dart = vec![u32::MAX; darts];
        self.faces.clear();
        for start in 0..darts {
            if self.face_of_dart[start] != u32::MAX {
                continue;
            }
            let f = self.faces.len() as u32;
            let mut walk = Vec::new();
            let mut d = start;
            loop {
                self.face_of_dart[d] = f;
                walk.push(d);
                d = self.next_dart(d);
                if d == start {
                    break;
                }
            }
            self.faces.push(walk);
        }
    }

    fn check_euler(&self) -> Result<()> {
        let mut ds = DisjointSets::new(self.n);
        for &(u, v) in &self.edges {
            ds.union(u, v);
        }
        let mut verts = vec![0i64; self.n];
        let mut edges = vec![0i64; self.n];
        let mut faces = vec![0i64; self.n];
        for v in 0..self.n {
            verts[ds.find(v)] += 1;
        }
        for &(u, _) in &self.edges {
            edges[ds.find(u)] += 1;
        }
        for walk in &self.faces {
            faces[ds.find(self.tail(walk[0]))] += 1;
        }
        for r in 0..self.n {
            if edges[r] > 0 && verts[r] - edges[r] + faces[r] != 2 {
                return Err(Error::InvalidRotation(format!(
                    "rotation system has genus > 0 (V - E + F = {})",
                    verts[r] - edges[r] + faces[r]
                )));
            }
        }
        Ok(())
    }

    fn longest_face(&self) -> usize {
        let mut best = 0;
        for (i, f) in self.faces.iter().enumerate() {
            if f.len() > self.faces[best].len() {
                best = i;
            }
        }
        best
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e]
    }

    pub fn rotation(&self, v: VertexId) -> &[EdgeId] {
        &self.rotation[v]
    }

    pub fn rotations(&self) -> &[Vec<EdgeId>] {
        &self.rotation
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.rotation[v].len()
    }

    pub fn outer_face(&self) -> usize {
        self.outer_face
    }

    pub fn faces(&self) -> &[Vec<Dart>] {
        &self.faces
    }

    pub fn face_of_dart(&self, d: Dart) -> usize {
        self.face_of_dart[d] as usize
    }

    pub fn tail(&self, d: Dart) -> VertexId {
        let (u, v) = self.edges[d / 2];
        if d.is_multiple_of(2) {
            u
        } else {
            v
        }
    }

    pub fn head(&self, d: Dart) -> VertexId {
        self.tail(d ^ 1)
    }

    /// The dart of edge `e` leaving `v`.
    pub fn dart_from(&self, v: VertexId, e: EdgeId) -> Dart {
        if self.edges[e].0 == v {
            2 * e
        } else {
            2 * e + 1
        }
    }

    /// Clockwise successor of dart `d` around its tail.
    pub fn cw_next(&self, d: Dart) -> Dart {
        let v = self.tail(d);
        let rot = &self.rotation[v];
        let i = self.dart_pos[d] as usize;
        let e = rot[(i + 1) % rot.len()];
        self.dart_from(v, e)
    }

    /// Next dart along the face to the left of `d`.
    pub fn next_dart(&self, d: Dart) -> Dart {
        self.cw_next(d ^ 1)
    }

    /// Neighbours of `v` in rotation order (with repetition for parallel edges).
    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.rotation[v].iter().map(move |&e| {
            let (a, b) = self.edges[e];
            if a == v {
                b
            } else {
                a
            }
        })
    }

    pub fn other(&self, e: EdgeId, v: VertexId) -> VertexId {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    /// Edges on the outer face, sorted and deduplicated.
    pub fn outer_boundary(&self) -> Vec<EdgeId> {
        let mut out: Vec<EdgeId> = match self.faces.get(self.outer_face) {
            Some(f) => f.iter().map(|d| d / 2).collect(),
            None => Vec::new(),
        };
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Vertices on the outer face, sorted. A graph without edges reports all
    /// of its vertices.
    pub fn outer_vertices(&self) -> Vec<VertexId> {
        if self.edges.is_empty() {
            return (0..self.n).collect();
        }
        let mut out: Vec<VertexId> = self.faces[self.outer_face].iter().map(|&d| self.tail(d)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut ds = DisjointSets::new(self.n);
        let mut parts = self.n;
        for &(u, v) in &self.edges {
            if ds.union(u, v) {
                parts -= 1;
            }
        }
        parts == 1
    }

    /// Keeps the edges with `keep[e]` set, preserving the embedding.
    ///
    /// Returns the subgraph and the list mapping new edge ids to old ones. The
    /// outer face becomes the face that absorbs the old outer face.
    pub fn edge_subgraph(&self, keep: &[bool]) -> (EmbeddedMultigraph, Vec<EdgeId>) {
        let mut new_id = vec![usize::MAX; self.edges.len()];
        let mut kept = Vec::new();
        for e in 0..self.edges.len() {
            if keep[e] {
                new_id[e] = kept.len();
                kept.push(e);
            }
        }
        let edges = kept.iter().map(|&e| self.edges[e]).collect();
        let rotation =
            self.rotation.iter().map(|rot| rot.iter().filter(|&&e| keep[e]).map(|&e| new_id[e]).collect()).collect();
        let outer = match self.surviving_outer_dart(keep) {
            Some(d) => OuterChoice::Dart(2 * new_id[d / 2] + d % 2),
            None => OuterChoice::Longest,
        };
        let g = EmbeddedMultigraph::from_rotation(self.n, edges, rotation, outer)
            .expect("deleting edges keeps a planar rotation system");
        (g, kept)
    }

    /// A kept dart on the face that contains the old outer face after the
    /// deletion, found by crossing deleted edges breadth first.
    fn surviving_outer_dart(&self, keep: &[bool]) -> Option<Dart> {
        if self.faces.is_empty() {
            return None;
        }
        let mut seen = vec![false; self.faces.len()];
        let mut queue = std::collections::VecDeque::new();
        seen[self.outer_face] = true;
        queue.push_back(self.outer_face);
        while let Some(f) = queue.pop_front() {
            if let Some(&d) = self.faces[f].iter().find(|&&d| keep[d / 2]) {
                return Some(d);
            }
            for &d in &self.faces[f] {
                let g = self.face_of_dart[d ^ 1] as usize;
                if !seen[g] {
                    seen[g] = true;
                    queue.push_back(g);
                }
            }
        }
        None
    }

    /// Removes parallel copies beyond `cap` per vertex pair, keeping the
    /// smallest edge ids. Returns the new graph and new-to-old edge ids.
    pub fn cap_parallel(&self, cap: usize) -> (EmbeddedMultigraph, Vec<EdgeId>) {
        let mut count = rustc_hash::FxHashMap::default();
        let keep: Vec<bool> = self
            .edges
            .iter()
            .map(|&(u, v)| {
                let c = count.entry((u.min(v), u.max(v))).or_insert(0usize);
                *c += 1;
                *c <= cap
            })
            .collect();
        self.edge_subgraph(&keep)
    }

    /// Contracts every connected component of `G - keep` to a single vertex.
    ///
    /// The result lists the kept vertices first (in increasing id order) and
    /// then one node per component, ordered by the smallest vertex in it.
    /// Edges inside a component disappear; the remaining edges keep their
    /// relative order. `map[v]` gives the new vertex of every old vertex and
    /// the returned edge list maps new edge ids to old ones.
    pub fn contract_components(&self, keep: &[VertexId]) -> Contraction {
        let mut is_kept = vec![false; self.n];
        for &v in keep {
            is_kept[v] = true;
        }
        let mut ds = DisjointSets::new(self.n);
        // Spanning forest of G - keep; every tree edge is contracted by
        // splicing the rotations of its endpoints.
        let darts = 2 * self.edges.len();
        let mut next = vec![0usize; darts];
        let mut prev = vec![0usize; darts];
        let mut head: Vec<Option<Dart>> = vec![None; self.n];
        for v in 0..self.n {
            let rot = &self.rotation[v];
            let k = rot.len();
            for i in 0..k {
                let d = self.dart_from(v, rot[i]);
                next[d] = self.dart_from(v, rot[(i + 1) % k]);
                prev[d] = self.dart_from(v, rot[(i + k - 1) % k]);
            }
            head[v] = rot.first().map(|&e| self.dart_from(v, e));
        }
        let mut alive = vec![true; darts];
        let unlink = |d: Dart, next: &mut Vec<usize>, prev: &mut Vec<usize>| {
            let (p, s) = (prev[d], next[d]);
            next[p] = s;
            prev[s] = p;
        };
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            if is_kept[u] || is_kept[v] {
                continue;
            }
            let (ru, rv) = (ds.find(u), ds.find(v));
            if ru == rv {
                continue;
            }
            // Splice: s_u .. p_u, s_v .. p_v with the edge's darts removed.
            let (du, dv) = (2 * e, 2 * e + 1);
            let (pu, su) = (prev[du], next[du]);
            let (pv, sv) = (prev[dv], next[dv]);
            let u_alone = su == du;
            let v_alone = sv == dv;
            alive[du] = false;
            alive[dv] = false;
            let merged_head = match (u_alone, v_alone) {
                (true, true) => None,
                (true, false) => {
                    unlink(dv, &mut next, &mut prev);
                    Some(sv)
                }
                (false, true) => {
                    unlink(du, &mut next, &mut prev);
                    Some(su)
                }
                (false, false) => {
                    next[pu] = sv;
                    prev[sv] = pu;
                    next[pv] = su;
                    prev[su] = pv;
                    Some(su)
                }
            };
            ds.union(ru, rv);
            let r = ds.find(ru);
            head[r] = merged_head;
        }
        // Edges between two vertices of the same component are now loops.
        let mut kept_edges = Vec::new();
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            if !is_kept[u] && !is_kept[v] {
                if alive[2 * e] {
                    for d in [2 * e, 2 * e + 1] {
                        let r = ds.find(self.tail(d));
                        if next[d] == d {
                            head[r] = None;
                        } else {
                            if head[r] == Some(d) {
                                head[r] = Some(next[d]);
                            }
                            unlink(d, &mut next, &mut prev);
                        }
                        alive[d] = false;
                    }
                }
            } else {
                kept_edges.push(e);
            }
        }
        let mut map = vec![usize::MAX; self.n];
        let mut kinds = Vec::new();
        let mut sorted_keep: Vec<VertexId> = keep.to_vec();
        sorted_keep.sort_unstable();
        sorted_keep.dedup();
        for &v in &sorted_keep {
            map[v] = kinds.len();
            kinds.push(ContractedVertex::Kept(v));
        }
        let mut root_new = vec![usize::MAX; self.n];
        for v in 0..self.n {
            if is_kept[v] {
                continue;
            }
            let r = ds.find(v);
            if root_new[r] == usize::MAX {
                root_new[r] = kinds.len();
                kinds.push(ContractedVertex::Component(v));
            }
            map[v] = root_new[r];
        }
        let mut new_edge = vec![usize::MAX; self.edges.len()];
        let edges: Vec<(VertexId, VertexId)> = kept_edges
            .iter()
            .enumerate()
            .map(|(i, &e)| {
                new_edge[e] = i;
                let (u, v) = self.edges[e];
                (map[u], map[v])
            })
            .collect();
        let mut rotation = vec![Vec::new(); kinds.len()];
        for v in 0..self.n {
            let nv = map[v];
            let start = if is_kept[v] {
                head[v]
            } else {
                if ds.find(v) != v {
                    continue;
                }
                head[v]
            };
            let Some(start) = start else { continue };
            // Start from the smallest edge id for a canonical listing.
            let mut best = start;
            let mut d = next[start];
            while d != start {
                if d < best {
                    best = d;
                }
                d = next[d];
            }
            let mut d = best;
            loop {
                rotation[nv].push(new_edge[d / 2]);
                d = next[d];
                if d == best {
                    break;
                }
            }
        }
        let outer_dart = self
            .faces
            .get(self.outer_face)
            .and_then(|f| f.iter().copied().filter(|&d| new_edge[d / 2] != usize::MAX).min())
            .map(|d| 2 * new_edge[d / 2] + d % 2);
        let outer = match outer_dart {
            Some(d) => OuterChoice::Dart(d),
            None => OuterChoice::Longest,
        };
        let graph = EmbeddedMultigraph::from_rotation(kinds.len(), edges, rotation, outer)
            .expect("contraction keeps the rotation system planar");
        Contraction { graph, vertex_map: map, kinds, edge_map: kept_edges }
    }
}

/// Output of [`EmbeddedMultigraph::contract_components`].
#[derive(Clone, Debug)]
pub struct Contraction {
    pub graph: EmbeddedMultigraph,
    pub vertex_map: Vec<VertexId>,
    pub kinds: Vec<ContractedVertex>,
    pub edge_map: Vec<EdgeId>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ContractedVertex {
    Kept(VertexId),
    /// Component represented by its smallest vertex.
    Component(VertexId),
}

fn check_multiplicity(edges: &[(VertexId, VertexId)]) -> Result<()> {
    let mut count = rustc_hash::FxHashMap::default();
    for &(u, v) in edges {
        let c = count.entry((u.min(v), u.max(v))).or_insert(0usize);
        *c += 1;
        if *c > 3 {
            return Err(Error::TooManyParallel { u: u.min(v), v: u.max(v), count: *c });
        }
    }
    Ok(())
}

/// Computes a planar rotation system for a loop-free multigraph.
///
/// Parallel copies are placed next to each other: increasing edge id at the
/// smaller endpoint's side of the pair order, decreasing at the other, so
/// consecutive copies bound digon faces.
pub fn embed(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Vec<Vec<EdgeId>>> {
    let mut classes: rustc_hash::FxHashMap<(usize, usize), Vec<EdgeId>> = Default::default();
    let mut simple = Vec::new();
    for (e, &(u, v)) in edges.iter().enumerate() {
        let key = (u.min(v), u.max(v));
        let entry = classes.entry(key).or_default();
        if entry.is_empty() {
            simple.push(key);
        }
        entry.push(e);
    }
    let order = planarity::planar_embedding(n, &simple).ok_or(Error::NonPlanar)?;
    let mut rotation = vec![Vec::new(); n];
    for v in 0..n {
        for &w in &order[v] {
            let key = (v.min(w), v.max(w));
            let class = &classes[&key];
            if v < w {
                rotation[v].extend(class.iter().copied());
            } else {
                rotation[v].extend(class.iter().rev().copied());
            }
        }
    }
    Ok(rotation)
}
