//! Small named graphs with known optima, used as DP oracles.

use crate::graph::EmbeddedMultigraph;
use crate::problem::Mode;

fn build(n: usize, edges: Vec<(usize, usize)>) -> EmbeddedMultigraph {
    EmbeddedMultigraph::build(n, edges, None, None).expect("curated graphs are planar")
}

pub fn k4() -> EmbeddedMultigraph {
    build(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
}

/// Opposite vertices `i` and `i + 3` are the only non-adjacent pairs.
pub fn octahedron() -> EmbeddedMultigraph {
    build(6, (0..6).flat_map(|a| (a + 1..6).map(move |b| (a, b))).filter(|&(a, b)| b != a + 3).collect())
}

/// Hub 0 joined to a rim of `rim` vertices.
pub fn wheel(rim: usize) -> EmbeddedMultigraph {
    let mut e: Vec<(usize, usize)> = (1..=rim).map(|i| (0, i)).collect();
    e.extend((1..=rim).map(|i| (i, i % rim + 1)));
    build(rim + 1, e)
}

/// Two `len`-cycles joined by a perfect matching.
pub fn prism(len: usize) -> EmbeddedMultigraph {
    let mut e = Vec::new();
    for i in 0..len {
        e.push((i, (i + 1) % len));
        e.push((len + i, len + (i + 1) % len));
        e.push((i, len + i));
    }
    build(2 * len, e)
}

/// A cycle with every edge repeated `copies` times.
pub fn thick_cycle(len: usize, copies: usize) -> EmbeddedMultigraph {
    let mut e = Vec::new();
    for i in 0..len {
        for _ in 0..copies {
            e.push((i, (i + 1) % len));
        }
    }
    build(len, e)
}

fn with_extra(g: EmbeddedMultigraph, extra: &[(usize, usize)]) -> EmbeddedMultigraph {
    let mut e = g.edges().to_vec();
    e.extend_from_slice(extra);
    build(g.vertex_count(), e)
}

fn without(g: EmbeddedMultigraph, drop: usize) -> EmbeddedMultigraph {
    let mut e = g.edges().to_vec();
    e.remove(drop);
    build(g.vertex_count(), e)
}

/// Named graphs that are feasible for `mode`, with at most 14 edges.
pub fn curated(mode: Mode) -> Vec<(String, EmbeddedMultigraph)> {
    let mut out: Vec<(String, EmbeddedMultigraph)> = vec![
        ("k4".into(), k4()),
        ("octahedron".into(), octahedron()),
        ("octahedron_minus_edge".into(), without(octahedron(), 0)),
        ("triangular_prism".into(), prism(3)),
        ("triangular_prism_chord".into(), with_extra(prism(3), &[(0, 4)])),
        ("triangular_prism_two_chords".into(), with_extra(prism(3), &[(0, 4), (1, 5)])),
        ("cube".into(), prism(4)),
        ("cube_diagonal".into(), with_extra(prism(4), &[(0, 5)])),
        ("cube_two_diagonals".into(), with_extra(prism(4), &[(0, 5), (2, 7)])),
        (
            "k4_subdivided_face".into(),
            build(5, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (4, 1), (4, 2), (4, 3)]),
        ),
    ];
    for rim in 3..=7 {
        out.push((format!("wheel_{rim}"), wheel(rim)));
    }
    out.push(("wheel_5_chord".into(), with_extra(wheel(5), &[(1, 3)])));
    out.push(("wheel_6_chord".into(), with_extra(wheel(6), &[(1, 4)])));
    out.push(("wheel_6_two_chords".into(), with_extra(wheel(6), &[(1, 3), (4, 6)])));
    out.push(("triangular_prism_three_chords".into(), with_extra(prism(3), &[(0, 4), (1, 5), (2, 3)])));
    out.push((
        "k4_stacked_twice".into(),
        build(6, [k4().edges(), &[(4, 0), (4, 1), (4, 2), (5, 0), (5, 2), (5, 3)]].concat()),
    ));
    if mode == Mode::Ecss {
        out.push(("triple_edge".into(), build(2, vec![(0, 1); 3])));
        for len in 3..=7 {
            out.push((format!("double_cycle_{len}"), thick_cycle(len, 2)));
        }
        out.push(("triple_triangle".into(), thick_cycle(3, 3)));
        out.push(("triple_square".into(), thick_cycle(4, 3)));
        out.push(("k4_doubled_edge".into(), with_extra(k4(), &[(0, 1)])));
        out.push(("k4_two_doubled_edges".into(), with_extra(k4(), &[(0, 1), (2, 3)])));
        out.push(("prism_doubled_rungs".into(), with_extra(prism(3), &[(0, 3), (1, 4), (2, 5)])));
        out.push(("double_square_chord".into(), with_extra(thick_cycle(4, 2), &[(0, 2)])));
        out.push(("double_pentagon_chord".into(), with_extra(thick_cycle(5, 2), &[(0, 2), (0, 3)])));
        out.push(("wheel_4_doubled_spoke".into(), with_extra(wheel(4), &[(0, 1)])));
        out.push(("k4_tripled_edge".into(), with_extra(k4(), &[(0, 1), (0, 1)])));
        out.push(("mixed_triangle".into(), build(3, vec![(0, 1), (0, 1), (0, 1), (1, 2), (1, 2), (2, 0), (2, 0)])));
        out.push(("mixed_square".into(), with_extra(thick_cycle(4, 2), &[(2, 3)])));
        out.push(("double_hexagon_chords".into(), with_extra(thick_cycle(6, 2), &[(0, 3)])));
        out.push(("prism_doubled_rim".into(), with_extra(prism(3), &[(0, 1), (1, 2), (2, 0)])));
    }
    out.retain(|(_, g)| g.edge_count() <= 14 && mode.is_feasible(g.vertex_count(), g.edges()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalogue_is_feasible_and_small() {
        assert!(curated(Mode::Ecss).len() >= 30);
        assert!(curated(Mode::Vcss).len() >= 15);
        for mode in [Mode::Ecss, Mode::Vcss] {
            for (name, g) in curated(mode) {
                assert!(g.edge_count() <= 14, "{name}");
                assert!(mode.is_feasible(g.vertex_count(), g.edges()), "{name}");
            }
        }
        assert_eq!(octahedron().edge_count(), 12);
        assert_eq!(wheel(4).edge_count(), 8);
    }
}
