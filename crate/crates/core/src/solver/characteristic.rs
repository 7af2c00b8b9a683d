//! Path-based connectivity characteristics of small explicit subgraphs.
//!
//! This is the path-counting view of a partial solution: which extra
//! separator pairs would make two separator vertices 3-connected
//! (completions), how many disjoint paths each separator vertex has to the
//! others (configurations), and which bundles of paths between separator
//! vertices can be routed at once. Everything is computed by brute force
//! from a witness edge list, so it only scales to separators of two or
//! three vertices. The DP in [`super::profile`] carries the equivalent cut
//! values instead.

use super::demands::solve_demands;
use crate::connectivity::{
    edge_connectivity_between, is_k_edge_connected, is_k_vertex_connected, vertex_connectivity_between,
};
use crate::graph::VertexId;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Path counts from one separator vertex: `to_separator[i]` paths to the
/// i-th separator vertex (3 for itself) and `between` extra paths joining
/// separator pairs, all mutually disjoint.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Configuration {
    pub to_separator: Vec<u8>,
    pub between: Vec<(VertexId, VertexId, u8)>,
}

/// A multiset of separator pairs, each at most three times, sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SeparatorCompletion(pub Vec<(VertexId, VertexId)>);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Characteristic {
    pub separator: Vec<VertexId>,
    /// Minimal completions per separator pair.
    pub completions: BTreeMap<(VertexId, VertexId), Vec<SeparatorCompletion>>,
    /// Maximal configurations per separator vertex.
    pub vertex_configs: BTreeMap<VertexId, Vec<Configuration>>,
    /// Maximal sets of simultaneously routable separator paths.
    pub joint_paths: Vec<Vec<(VertexId, VertexId, u8)>>,
    /// Every vertex off the separator reaches it by three disjoint paths
    /// (or, with an empty separator, the witness is 3-connected).
    pub connecting: bool,
    pub witness: Vec<(VertexId, VertexId)>,
    pub vertex_disjoint: bool,
}

fn pairs(sep: &[VertexId]) -> Vec<(VertexId, VertexId)> {
    let mut out = Vec::new();
    for i in 0..sep.len() {
        for j in i + 1..sep.len() {
            out.push((sep[i], sep[j]));
        }
    }
    out
}

/// All count vectors in `0..=3` of the given length.
fn count_vectors(len: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=3u8).map(move |c| {
                    let mut w = v.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out
}

fn le(a: &[u8], b: &[u8]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Keeps vectors not strictly below another one.
fn maximal(vs: Vec<Vec<u8>>) -> Vec<Vec<u8>> {
    vs.iter().filter(|v| !vs.iter().any(|w| w != *v && le(v, w))).cloned().collect()
}

fn minimal(vs: Vec<Vec<u8>>) -> Vec<Vec<u8>> {
    vs.iter().filter(|v| !vs.iter().any(|w| w != *v && le(w, v))).cloned().collect()
}

fn triples(ps: &[(VertexId, VertexId)], counts: &[u8]) -> Vec<(VertexId, VertexId, u8)> {
    ps.iter().zip(counts).filter(|(_, &c)| c > 0).map(|(&(x, y), &c)| (x, y, c)).collect()
}

impl Characteristic {
    /// Characteristic of the subgraph with the given edges, seen through
    /// `separator`.
    pub fn of_subgraph(edges: &[(VertexId, VertexId)], separator: &[VertexId], vertex_disjoint: bool) -> Self {
        let mut sep = separator.to_vec();
        sep.sort_unstable();
        sep.dedup();
        let n = edges.iter().flat_map(|&(u, v)| [u + 1, v + 1]).chain(sep.iter().map(|&v| v + 1)).max().unwrap_or(0);
        let ps = pairs(&sep);
        let between_vectors = count_vectors(ps.len());
        let local = |g: &[(VertexId, VertexId)], s: VertexId, t: VertexId| {
            if vertex_disjoint {
                vertex_connectivity_between(n, g, s, t, 3)
            } else {
                edge_connectivity_between(n, g, s, t, 3)
            }
        };

        let mut completions = BTreeMap::new();
        for &(s, t) in &ps {
            let ok: Vec<Vec<u8>> = between_vectors
                .iter()
                .filter(|counts| {
                    let mut g = edges.to_vec();
                    for (&(x, y), &c) in ps.iter().zip(counts.iter()) {
                        g.extend(std::iter::repeat_n((x, y), c as usize));
                    }
                    local(&g, s, t) >= 3
                })
                .cloned()
                .collect();
            let comps = minimal(ok)
                .into_iter()
                .map(|counts| {
                    let mut pairs: Vec<(VertexId, VertexId)> = Vec::new();
                    for (&p, &c) in ps.iter().zip(&counts) {
                        pairs.extend(std::iter::repeat_n(p, c as usize));
                    }
                    SeparatorCompletion(pairs)
                })
                .collect();
            completions.insert((s, t), comps);
        }

        let joint: Vec<Vec<u8>> = between_vectors
            .iter()
            .filter(|counts| solve_demands(n, edges, &triples(&ps, counts), vertex_disjoint))
            .cloned()
            .collect();
        let joint_paths = maximal(joint).iter().map(|c| triples(&ps, c)).collect();

        let mut vertex_configs = BTreeMap::new();
        for (i, &v) in sep.iter().enumerate() {
            let others: Vec<VertexId> = sep.iter().copied().filter(|&x| x != v).collect();
            let mut found: Vec<Vec<u8>> = Vec::new();
            for a in count_vectors(others.len()) {
                for b in &between_vectors {
                    let mut demands: Vec<(VertexId, VertexId, u8)> =
                        others.iter().zip(&a).filter(|(_, &c)| c > 0).map(|(&x, &c)| (v, x, c)).collect();
                    demands.extend(triples(&ps, b));
                    if solve_demands(n, edges, &demands, vertex_disjoint) {
                        let mut key = a.clone();
                        key.extend(b);
                        found.push(key);
                    }
                }
            }
            let configs = maximal(found)
                .into_iter()
                .map(|key| {
                    let (a, b) = key.split_at(others.len());
                    let mut to_separator = a.to_vec();
                    to_separator.insert(i, 3);
                    Configuration { to_separator, between: triples(&ps, b) }
                })
                .collect();
            vertex_configs.insert(v, configs);
        }

        let mut present = vec![false; n];
        for &(u, v) in edges {
            present[u] = true;
            present[v] = true;
        }
        let connecting = if sep.is_empty() {
            let verts: Vec<VertexId> = (0..n).filter(|&v| present[v]).collect();
            let relabel: Vec<(VertexId, VertexId)> = edges
                .iter()
                .map(|&(u, v)| (verts.binary_search(&u).unwrap(), verts.binary_search(&v).unwrap()))
                .collect();
            if vertex_disjoint {
                is_k_vertex_connected(verts.len(), &relabel, 3)
            } else {
                is_k_edge_connected(verts.len(), &relabel, 3)
            }
        } else {
            // a super sink joined to the separator by three parallel edges each
            let sink = n;
            let mut g = edges.to_vec();
            for &x in &sep {
                g.extend(std::iter::repeat_n((x, sink), 3));
            }
            (0..n).filter(|&v| present[v] && sep.binary_search(&v).is_err()).all(|v| {
                if vertex_disjoint {
                    vertex_connectivity_between(n + 1, &g, v, sink, 3) >= 3
                } else {
                    edge_connectivity_between(n + 1, &g, v, sink, 3) >= 3
                }
            })
        };
        Characteristic {
            separator: sep,
            completions,
            vertex_configs,
            joint_paths,
            connecting,
            witness: edges.to_vec(),
            vertex_disjoint,
        }
    }
}

/// The single-edge base case, seen through both endpoints.
pub fn leaf_characteristic(u: VertexId, v: VertexId) -> Characteristic {
    Characteristic::of_subgraph(&[(u, v)], &[u, v], false)
}

/// Characteristic of the union of two witnessed subgraphs, seen through
/// `separator`.
pub fn combine(a: &Characteristic, b: &Characteristic, separator: &[VertexId]) -> Characteristic {
    let mut edges = a.witness.clone();
    edges.extend(&b.witness);
    Characteristic::of_subgraph(&edges, separator, a.vertex_disjoint)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge() {
        let c = leaf_characteristic(0, 1);
        assert_eq!(c.completions[&(0, 1)], vec![SeparatorCompletion(vec![(0, 1), (0, 1)])]);
        let mut configs = c.vertex_configs[&0].clone();
        configs.sort();
        assert_eq!(
            configs,
            vec![
                Configuration { to_separator: vec![3, 0], between: vec![(0, 1, 1)] },
                Configuration { to_separator: vec![3, 1], between: vec![] },
            ]
        );
        assert_eq!(c.vertex_configs[&1].len(), 2);
        assert_eq!(c.joint_paths, vec![vec![(0, 1, 1)]]);
        assert!(c.connecting);
    }

    #[test]
    fn parallel_pair_routes_two_paths() {
        let c = combine(&leaf_characteristic(0, 1), &leaf_characteristic(0, 1), &[0, 1]);
        assert!(c.joint_paths.contains(&vec![(0, 1, 2)]));
        assert_eq!(c.completions[&(0, 1)], vec![SeparatorCompletion(vec![(0, 1)])]);
    }

    #[test]
    fn k4_root_has_no_obligations() {
        let k4 = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        let mut acc = Characteristic::of_subgraph(&k4[..1], &[0, 1], false);
        for (i, &(u, v)) in k4.iter().enumerate().skip(1) {
            let leaf = leaf_characteristic(u, v);
            let sep: &[VertexId] = if i + 1 == k4.len() { &[] } else { &[0, 1, 2, 3] };
            acc = combine(&acc, &leaf, sep);
        }
        assert!(acc.completions.is_empty() && acc.vertex_configs.is_empty());
        assert!(acc.connecting);
        let c4 = [(0, 1), (1, 2), (2, 3), (3, 0)];
        assert!(!Characteristic::of_subgraph(&c4, &[], false).connecting);
    }

    #[test]
    fn forgotten_vertex_must_reach_the_separator() {
        // vertex 2 hangs off the separator {0, 1} by two edges only
        let c = Characteristic::of_subgraph(&[(0, 2), (1, 2)], &[0, 1], false);
        assert!(!c.connecting);
        let c = Characteristic::of_subgraph(&[(0, 2), (1, 2), (1, 2)], &[0, 1], false);
        assert!(c.connecting);
    }
}
