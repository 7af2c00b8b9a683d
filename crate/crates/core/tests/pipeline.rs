use proptest::prelude::*;
use tricon_core::io::{read_graph, to_json_line, write_graph};
use tricon_core::ptas::spanner;
use tricon_core::solver::{solve_exact, ExactLimits};
use tricon_core::toolkit::curated::thick_cycle;
use tricon_core::toolkit::{generate, Family, GeneratorSpec};
use tricon_core::{
    accounting, build_slice_tree, build_slices, compute_levels, plan_shift, solve, verify, EmbeddedMultigraph, Error,
    Mode, SolveOptions,
};

fn family() -> impl Strategy<Value = Family> {
    (0..Family::ALL.len()).prop_map(|i| Family::ALL[i])
}

fn mode() -> impl Strategy<Value = Mode> {
    prop_oneof![Just(Mode::Ecss), Just(Mode::Vcss)]
}

fn forced(k: usize) -> SolveOptions {
    SolveOptions { force_k: Some(k), ..Default::default() }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn forced_runs_are_feasible_and_accounted(
        family in family(), n in 8usize..160, seed in 0u64..1000, mode in mode(), k in 2usize..5,
    ) {
        let g = generate(&GeneratorSpec::new(family, n, seed)).unwrap();
        let s = solve(&g, mode, None, &forced(k)).unwrap();
        prop_assert!(verify(&g, &s.edges, mode).feasible);
        prop_assert!(s.edges.windows(2).all(|w| w[0] < w[1]));
        prop_assert_eq!(s.size, s.edges.len());
        let acc = accounting(&s, None, None);
        prop_assert!(acc.residual_bound_holds);
        prop_assert!(acc.slice_weight_bound_holds);
        prop_assert_eq!(s.meta.slice_count, s.meta.slices.len());
    }

    #[test]
    fn one_window_is_exact(family in family(), n in 4usize..9, seed in 0u64..1000, mode in mode()) {
        let g = generate(&GeneratorSpec::new(family, n, seed)).unwrap();
        prop_assume!(g.edge_count() <= 20 && mode.is_feasible(g.vertex_count(), g.edges()));
        let (_, opt) = solve_exact(g.vertex_count(), g.edges(), &vec![1; g.edge_count()], mode, &ExactLimits::default())
            .unwrap();
        let s = solve(&g, mode, Some(1.0), &SolveOptions::default()).unwrap();
        prop_assert_eq!(s.meta.slice_count, 1);
        prop_assert_eq!(s.size as u64, opt);
    }

    #[test]
    fn slices_form_a_tree(family in family(), n in 20usize..200, seed in 0u64..1000, mode in mode(), k in 2usize..5) {
        let g = generate(&GeneratorSpec::new(family, n, seed)).unwrap();
        let (h, _) = spanner(&g, mode);
        let levels = compute_levels(&h).unwrap();
        let plan = plan_shift(&levels, k).unwrap();
        let slices = build_slices(&h, &levels, &plan, mode).unwrap();
        let tree = build_slice_tree(&slices).unwrap();
        prop_assert_eq!(tree.parent.iter().filter(|p| p.is_none()).count(), 1);
        prop_assert!(tree.parent[tree.root].is_none());
    }
}

#[test]
fn file_round_trip_keeps_the_solution() {
    let dir = tempfile::tempdir().unwrap();
    let g = generate(&GeneratorSpec::new(Family::TwinPocket, 120, 5)).unwrap();
    let path = dir.path().join("g.json");
    write_graph(&path, &g).unwrap();
    let back = read_graph(&path).unwrap();
    assert_eq!(back, g);
    let a = solve(&g, Mode::Vcss, None, &forced(3)).unwrap();
    let b = solve(&back, Mode::Vcss, None, &forced(3)).unwrap();
    assert_eq!(to_json_line(&a).unwrap(), to_json_line(&b).unwrap());
}

#[test]
fn heavy_parallel_classes_are_capped() {
    // each of the four classes has five copies; cuts cross two classes, so
    // the optimum is one class with a single copy and three with two
    let edges = (0..4).flat_map(|i| std::iter::repeat_n((i, (i + 1) % 4), 5)).collect();
    let g = EmbeddedMultigraph::build_lenient(4, edges, None, None).unwrap();
    let s = solve(&g, Mode::Ecss, Some(0.5), &SolveOptions::default()).unwrap();
    assert_eq!(s.meta.spanner_edges, 12);
    assert_eq!(s.size, 7);
    assert!(verify(&g, &s.edges, Mode::Ecss).feasible);
    assert!(matches!(solve(&g, Mode::Vcss, Some(0.5), &SolveOptions::default()), Err(Error::InfeasibleInput(_))));
}

#[test]
fn solution_json_has_the_documented_fields() {
    let g = generate(&GeneratorSpec::new(Family::Wheel, 9, 0)).unwrap();
    let s = solve(&g, Mode::Ecss, Some(0.9), &SolveOptions::default()).unwrap();
    let v: serde_json::Value = serde_json::from_str(&to_json_line(&s).unwrap()).unwrap();
    for key in ["mode", "epsilon", "k", "edges", "size", "meta"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert_eq!(v["mode"], "3ecss");
    assert_eq!(v["k"], 40);
    assert_eq!(v["size"], 16);
}

#[test]
fn disconnected_input_is_infeasible() {
    let mut edges = thick_cycle(3, 3).edges().to_vec();
    edges.extend([(3, 4), (3, 4), (3, 4)]);
    let g = EmbeddedMultigraph::build(5, edges, None, None).unwrap();
    let err = solve(&g, Mode::Ecss, Some(0.5), &SolveOptions::default()).unwrap_err();
    assert_eq!(err.exit_code(), 2);
}
