//! The end-to-end pipeline: spanner, levels and shifting, slices, per-slice
//! optimum, and the union with the residual edges.

use crate::error::{Error, Result};
use crate::graph::{EdgeId, EmbeddedMultigraph};
use crate::layering::{compute_levels, plan_shift, ShiftPlan};
use crate::problem::Mode;
use crate::slicing::build_slices;
use crate::solver::{solve_slice, SolverChoice, SolverLimits, SolverUsed};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SolveOptions {
    /// Use this window width instead of the one derived from epsilon.
    pub force_k: Option<usize>,
    pub solver: SolverChoice,
    /// Worker threads for the slice stage; 0 lets rayon decide.
    pub jobs: usize,
    pub limits: SolverLimits,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceReport {
    pub window: usize,
    pub edges: usize,
    /// Weight of the slice optimum: chosen edges outside the residual set.
    pub weight: u64,
    pub width: usize,
    pub solver: SolverUsed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionMeta {
    pub t: usize,
    pub max_level: usize,
    /// Edges of the capped graph the solver actually worked on.
    pub spanner_edges: usize,
    pub residual_size: usize,
    pub slice_count: usize,
    pub slices: Vec<SliceReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Solution {
    pub mode: Mode,
    pub epsilon: Option<f64>,
    pub k: usize,
    /// Sorted edge ids of the input graph.
    pub edges: Vec<EdgeId>,
    pub size: usize,
    pub meta: SolutionMeta,
}

/// Parallel classes capped to what an optimum can use.
pub fn spanner(g: &EmbeddedMultigraph, mode: Mode) -> (EmbeddedMultigraph, Vec<EdgeId>) {
    g.cap_parallel(mode.parallel_cap())
}

/// Runs the scheme with window width from `epsilon` or `options.force_k`.
pub fn solve(g: &EmbeddedMultigraph, mode: Mode, epsilon: Option<f64>, options: &SolveOptions) -> Result<Solution> {
    let k = match (options.force_k, epsilon) {
        (Some(k), _) => k,
        (None, Some(eps)) => mode.k_for_epsilon(eps)?,
        (None, None) => return Err(Error::InvalidParameter("either epsilon or a forced k is required".into())),
    };
    let (h, to_g) = spanner(g, mode);
    if !mode.is_feasible_plane(&h) {
        let what = match mode {
            Mode::Ecss => "3-edge-connected",
            Mode::Vcss => "3-vertex-connected",
        };
        return Err(Error::InfeasibleInput(format!("input graph is not {what}")));
    }
    let levels = compute_levels(&h)?;
    let plan = plan_shift(&levels, k)?;
    let slices = build_slices(&h, &levels, &plan, mode)?;

    let work = || -> Result<Vec<_>> {
        slices.par_iter().map(|s| solve_slice(s, mode, options.solver, &options.limits)).collect()
    };
    let solved = if options.jobs > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(options.jobs)
            .build()
            .map_err(|e| Error::Internal(e.to_string()))?
            .install(work)?
    } else {
        work()?
    };

    let mut chosen = plan.residual.clone();
    let mut reports = Vec::with_capacity(slices.len());
    for (slice, sol) in slices.iter().zip(&solved) {
        for &e in &sol.edges {
            chosen[slice.origin(e)] = true;
        }
        reports.push(SliceReport {
            window: slice.window,
            edges: slice.graph.edge_count(),
            weight: sol.weight,
            width: sol.width,
            solver: sol.solver,
        });
    }
    let mut edges: Vec<EdgeId> = (0..h.edge_count()).filter(|&e| chosen[e]).map(|e| to_g[e]).collect();
    edges.sort_unstable();
    let report = verify(g, &edges, mode);
    if !report.feasible {
        return Err(Error::Internal("combined edge set is not feasible".into()));
    }
    Ok(Solution {
        mode,
        epsilon,
        k,
        size: edges.len(),
        edges,
        meta: SolutionMeta {
            t: plan.t,
            max_level: plan.max_level,
            spanner_edges: h.edge_count(),
            residual_size: plan.residual_size(),
            slice_count: slices.len(),
            slices: reports,
        },
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub mode: Mode,
    pub size: usize,
    pub spanning: bool,
    pub feasible: bool,
    /// `size / optimum` when an optimum was supplied.
    pub ratio: Option<f64>,
}

/// Checks an edge subset of `g`. Out-of-range or repeated ids make the
/// report infeasible.
pub fn verify(g: &EmbeddedMultigraph, edges: &[EdgeId], mode: Mode) -> VerifyReport {
    let n = g.vertex_count();
    let mut seen = vec![false; g.edge_count()];
    let mut valid = true;
    let mut touched = vec![false; n];
    for &e in edges {
        if e >= g.edge_count() || seen[e] {
            valid = false;
            continue;
        }
        seen[e] = true;
        let (u, v) = g.endpoints(e);
        touched[u] = true;
        touched[v] = true;
    }
    let spanning = n <= 1 || touched.iter().all(|&t| t);
    let feasible = valid && spanning && mode.is_feasible_plane(&g.edge_subgraph(&seen).0);
    VerifyReport { mode, size: edges.len(), spanning, feasible, ratio: None }
}

pub fn verify_against(g: &EmbeddedMultigraph, edges: &[EdgeId], mode: Mode, optimum: usize) -> VerifyReport {
    let mut r = verify(g, edges, mode);
    r.ratio = (optimum > 0).then(|| edges.len() as f64 / optimum as f64);
    r
}

/// The quantities behind the approximation bound of one run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Accounting {
    pub k: usize,
    pub residual_size: usize,
    pub spanner_edges: usize,
    pub slice_weight: u64,
    pub size: usize,
    /// `k * |R| <= 2 |E|` for the capped graph.
    pub residual_bound_holds: bool,
    /// Per-slice weights never exceed the final size.
    pub slice_weight_bound_holds: bool,
    pub optimum: Option<usize>,
    /// `size <= (1 + c / k) * optimum` with c = 36 or 12.
    pub ratio_bound_holds: Option<bool>,
}

pub fn accounting(solution: &Solution, plan: Option<&ShiftPlan>, optimum: Option<usize>) -> Accounting {
    let k = solution.k;
    let residual_size = plan.map_or(solution.meta.residual_size, |p| p.residual_size());
    let spanner_edges = solution.meta.spanner_edges;
    let slice_weight: u64 = solution.meta.slices.iter().map(|s| s.weight).sum();
    let c = solution.mode.ratio_constant();
    Accounting {
        k,
        residual_size,
        spanner_edges,
        slice_weight,
        size: solution.size,
        residual_bound_holds: k * residual_size <= 2 * spanner_edges,
        slice_weight_bound_holds: slice_weight <= solution.size as u64,
        optimum,
        ratio_bound_holds: optimum.map(|opt| solution.size * k <= (k + c) * opt),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::{solve_exact, ExactLimits};
    use crate::toolkit::curated::{k4, octahedron, wheel};
    use crate::toolkit::generators::{generate, Family, GeneratorSpec};

    fn opts(k: Option<usize>) -> SolveOptions {
        SolveOptions { force_k: k, ..Default::default() }
    }

    #[test]
    fn spanner_caps_parallels() {
        let g = EmbeddedMultigraph::build_lenient(2, vec![(0, 1); 4], None, None).unwrap();
        assert_eq!(spanner(&g, Mode::Ecss).0.edge_count(), 3);
        assert_eq!(spanner(&g, Mode::Vcss).0.edge_count(), 1);
        let k = k4();
        assert_eq!(spanner(&k, Mode::Ecss).0, k);
    }

    #[test]
    fn small_examples() {
        let s = solve(&k4(), Mode::Ecss, Some(0.5), &opts(None)).unwrap();
        assert_eq!((s.k, s.size), (72, 6));
        let s = solve(&octahedron(), Mode::Ecss, Some(0.5), &opts(None)).unwrap();
        assert_eq!(s.size, 9);
        let s = solve(&octahedron(), Mode::Vcss, Some(0.5), &opts(None)).unwrap();
        assert_eq!(s.size, 9);
        let s = solve(&wheel(4), Mode::Vcss, Some(1.0), &opts(None)).unwrap();
        assert_eq!(s.size, 8);
    }

    #[test]
    fn infeasible_input_is_rejected() {
        let c4 = EmbeddedMultigraph::build(4, vec![(0, 1), (1, 2), (2, 3), (3, 0)], None, None).unwrap();
        assert!(matches!(solve(&c4, Mode::Ecss, Some(0.5), &opts(None)), Err(Error::InfeasibleInput(_))));
        let double =
            EmbeddedMultigraph::build(3, vec![(0, 1), (0, 1), (1, 2), (1, 2), (2, 0), (2, 0)], None, None).unwrap();
        assert!(solve(&double, Mode::Ecss, Some(0.5), &opts(None)).is_ok());
        assert!(matches!(solve(&double, Mode::Vcss, Some(0.5), &opts(None)), Err(Error::InfeasibleInput(_))));
    }

    #[test]
    fn verify_examples() {
        let k = k4();
        assert!(verify(&k, &[0, 1, 2, 3, 4, 5], Mode::Ecss).feasible);
        let oct = octahedron();
        let (prism, _) = solve_exact(6, oct.edges(), &[1; 12], Mode::Vcss, &ExactLimits::default()).unwrap();
        let r = verify(&oct, &prism, Mode::Vcss);
        assert!(r.feasible && r.size == 9);
        assert!(!verify(&oct, &[0, 1, 2, 3, 4, 5, 6, 7], Mode::Ecss).feasible);
        assert!(!verify(&k, &[0, 0, 1, 2, 3, 4, 5], Mode::Ecss).feasible);
        assert_eq!(verify_against(&k, &[0, 1, 2, 3, 4, 5], Mode::Ecss, 6).ratio, Some(1.0));
    }

    #[test]
    fn forced_small_k_stays_feasible_and_bounded() {
        for family in Family::ALL {
            for mode in [Mode::Ecss, Mode::Vcss] {
                for k in [2, 3] {
                    let g = generate(&GeneratorSpec::new(family, 60, 3)).unwrap();
                    let s = solve(&g, mode, None, &opts(Some(k))).unwrap();
                    assert!(verify(&g, &s.edges, mode).feasible);
                    let acc = accounting(&s, None, None);
                    assert!(acc.residual_bound_holds && acc.slice_weight_bound_holds, "{family} {mode} {k}");
                }
            }
        }
    }

    #[test]
    fn wheel_residual_accounting() {
        let g = generate(&GeneratorSpec::new(Family::Wheel, 6, 0)).unwrap();
        let s = solve(&g, Mode::Ecss, None, &opts(Some(2))).unwrap();
        let acc = accounting(&s, None, Some(10));
        assert_eq!(acc.residual_size, 5);
        assert!(acc.residual_bound_holds);
    }

    #[test]
    fn output_is_deterministic() {
        let g = generate(&GeneratorSpec::new(Family::Triangulation, 80, 9)).unwrap();
        let a = solve(&g, Mode::Ecss, None, &SolveOptions { force_k: Some(2), jobs: 1, ..Default::default() }).unwrap();
        let b = solve(&g, Mode::Ecss, None, &SolveOptions { force_k: Some(2), jobs: 4, ..Default::default() }).unwrap();
        assert_eq!(a, b);
    }
}
