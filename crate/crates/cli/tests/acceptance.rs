//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails. Runs sequentially so timings are not
//! disturbed by other tests.

use std::path::Path;
use std::process::Command;
use std::time::Instant;
use tricon_core::io::write_graph;
use tricon_core::ptas::spanner;
use tricon_core::slicing::slice_invariant_violations;
use tricon_core::solver::{solve_dp, solve_exact, DpLimits, ExactLimits};
use tricon_core::toolkit::curated::{curated, k4, wheel};
use tricon_core::toolkit::{generate, Family, GeneratorSpec};
use tricon_core::{
    accounting, build_slices, compute_levels, decompose, plan_shift, solve, verify, verify_width, EmbeddedMultigraph,
    Mode, SolveOptions,
};

const BIN: &str = env!("CARGO_BIN_EXE_tricon");
const MODES: [Mode; 2] = [Mode::Ecss, Mode::Vcss];

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome { pass, detail: detail.into() }
    }
}

/// Collects the first few failures of a sweep.
#[derive(Default)]
struct Failures(Vec<String>);

impl Failures {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.0.push(what());
        }
    }

    fn summary(&self) -> String {
        match self.0.len() {
            0 => String::new(),
            n => format!("; {n} failures, first: {}", self.0[0]),
        }
    }
}

fn tricon(args: &[&str]) -> std::process::Output {
    Command::new(BIN).args(args).output().expect("run tricon")
}

fn json_size(path: &Path) -> Option<u64> {
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(path).ok()?).ok()?;
    v.get("size")?.as_u64()
}

fn forced_optima(dir: &Path) -> Outcome {
    let k4_path = dir.join("k4.json");
    let w5_path = dir.join("w5.json");
    write_graph(&k4_path, &k4()).unwrap();
    write_graph(&w5_path, &wheel(5)).unwrap();
    let start = Instant::now();
    let mut sizes = Vec::new();
    for (mode, input) in [("3ecss", &k4_path), ("3vcss", &w5_path)] {
        let out = dir.join(format!("{mode}.out.json"));
        let run = tricon(&[
            "solve",
            "--problem",
            mode,
            "--epsilon",
            "0.9",
            "--input",
            input.to_str().unwrap(),
            "--output",
            out.to_str().unwrap(),
        ]);
        sizes.push(if run.status.success() { json_size(&out) } else { None });
    }
    let secs = start.elapsed().as_secs_f64();
    let pass = sizes == [Some(6), Some(10)] && secs < 1.0;
    Outcome::new(
        pass,
        format!("K4 3ecss {:?}, W5 3vcss {:?} edges (want 6, 10); {secs:.3} s < 1 s", sizes[0], sizes[1]),
    )
}

/// Feasible generated instances with at most 24 edges.
fn small_instances() -> Vec<(String, EmbeddedMultigraph)> {
    let mut specs = Vec::new();
    for seed in 0..8 {
        for n in 4..=10 {
            specs.push(GeneratorSpec::new(Family::Triangulation, n, seed));
        }
        for n in 4..=13 {
            specs.push(GeneratorSpec::new(Family::Wheel, n, seed));
            specs.push(GeneratorSpec::new(Family::NestedRings, n, seed));
        }
        for n in 7..=13 {
            specs.push(GeneratorSpec::new(Family::NestedRings, n, seed).with_depth(2));
        }
        for depth in 2..=4 {
            specs.push(GeneratorSpec::new(Family::PrismStack, 3 * depth, seed).with_depth(depth));
        }
        for depth in 0..=1 {
            specs.push(GeneratorSpec::new(Family::TwinPocket, 10, seed).with_depth(depth));
        }
    }
    specs
        .into_iter()
        .filter_map(|s| {
            let g = generate(&s).ok()?;
            let name = format!("{}(n={}, seed={}, depth={:?})", s.family, s.n, s.seed, s.depth);
            (g.edge_count() <= 24).then_some((name, g))
        })
        .collect()
}

fn oracle_ratio(shift: &mut Failures) -> Outcome {
    let start = Instant::now();
    let instances = small_instances();
    let mut families = std::collections::BTreeSet::new();
    let mut graphs = std::collections::BTreeSet::new();
    let mut runs = 0;
    let mut f = Failures::default();
    for (name, g) in &instances {
        for mode in MODES {
            if !mode.is_feasible(g.vertex_count(), g.edges()) {
                continue;
            }
            runs += 1;
            graphs.insert(name.clone());
            families.insert(name.split('(').next().unwrap().to_string());
            let (h, _) = spanner(g, mode);
            let unit = vec![1; h.edge_count()];
            let opt = match solve_exact(h.vertex_count(), h.edges(), &unit, mode, &ExactLimits::default()) {
                Ok((_, w)) => w as usize,
                Err(e) => {
                    f.check(false, || format!("{name} {mode}: exact failed: {e}"));
                    continue;
                }
            };
            match solve(g, mode, Some(0.5), &SolveOptions::default()) {
                Ok(s) => f.check(s.size == opt, || format!("{name} {mode}: eps 0.5 size {} != exact {opt}", s.size)),
                Err(e) => f.check(false, || format!("{name} {mode}: eps 0.5 failed: {e}")),
            }
            let options = SolveOptions { force_k: Some(2), ..Default::default() };
            match solve(g, mode, None, &options) {
                Ok(s) => {
                    let acc = accounting(&s, None, Some(opt));
                    let r = acc.residual_size;
                    f.check(s.size <= opt + 3 * r, || format!("{name} {mode}: k=2 size {} > {opt} + 3*{r}", s.size));
                    f.check(acc.ratio_bound_holds == Some(true), || {
                        format!("{name} {mode}: k=2 size {} breaks the ratio bound over {opt}", s.size)
                    });
                    shift.check(acc.residual_bound_holds, || format!("{name} {mode} k=2: k|R| > 2|E|"));
                }
                Err(e) => f.check(false, || format!("{name} {mode}: k=2 failed: {e}")),
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let pass = f.0.is_empty() && graphs.len() >= 200 && families.len() == Family::ALL.len() && secs < 300.0;
    Outcome::new(
        pass,
        format!(
            "{} graphs, {runs} runs, {} families, <= 24 edges; {secs:.1} s < 300 s{}",
            graphs.len(),
            families.len(),
            f.summary()
        ),
    )
}

/// Runs criteria 3 to 6 over the same sweep of generated instances.
fn large_sweep(shift: &mut Failures) -> (Outcome, Outcome, Outcome) {
    let start = Instant::now();
    let mut feas = Failures::default();
    let mut inv = Failures::default();
    let mut width = Failures::default();
    let (mut runs, mut slices_seen) = (0, 0);
    let mut widest = (0, 0);
    for family in Family::ALL {
        for n in [30, 120, 500, 1000, 2000] {
            let g = generate(&GeneratorSpec::new(family, n, 1)).unwrap();
            for mode in MODES {
                for k in [2, 3, 4] {
                    runs += 1;
                    let tag = format!("{family} n={n} {mode} k={k}");
                    match solve(&g, mode, None, &SolveOptions { force_k: Some(k), ..Default::default() }) {
                        Ok(s) => {
                            feas.check(verify(&g, &s.edges, mode).feasible, || format!("{tag}: output infeasible"));
                            let acc = accounting(&s, None, None);
                            shift.check(acc.residual_bound_holds, || {
                                format!("{tag}: {k}*{} > 2*{}", acc.residual_size, acc.spanner_edges)
                            });
                        }
                        Err(e) => feas.check(false, || format!("{tag}: {e}")),
                    }
                    let (h, _) = spanner(&g, mode);
                    let levels = compute_levels(&h).unwrap();
                    let plan = plan_shift(&levels, k).unwrap();
                    let slices = build_slices(&h, &levels, &plan, mode).unwrap();
                    slices_seen += slices.len();
                    for v in slice_invariant_violations(&levels, &slices, mode) {
                        inv.check(false, || format!("{tag}: {v}"));
                    }
                    for (i, s) in slices.iter().enumerate() {
                        let checked = decompose(&s.graph).and_then(|bd| verify_width(&bd, &s.graph));
                        match checked {
                            Ok(w) => {
                                widest = widest.max((w, k));
                                width.check(w <= 2 * (k + 4), || format!("{tag} slice {i}: width {w}"));
                            }
                            Err(e) => width.check(false, || format!("{tag} slice {i}: {e}")),
                        }
                    }
                }
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let feasibility = Outcome::new(
        feas.0.is_empty() && secs < 600.0,
        format!("{runs} runs up to 2000 vertices, k in 2..=4; sweep {secs:.1} s < 600 s{}", feas.summary()),
    );
    let invariants = Outcome::new(inv.0.is_empty(), format!("{slices_seen} slices over {runs} runs{}", inv.summary()));
    let widths = Outcome::new(
        width.0.is_empty(),
        format!("{slices_seen} slices, widest {} at k={} (bound 2(k+4)){}", widest.0, widest.1, width.summary()),
    );
    (feasibility, invariants, widths)
}

fn dp_oracle() -> Outcome {
    let start = Instant::now();
    let mut f = Failures::default();
    let (mut graphs, mut instances, mut multigraphs) = (0, 0, 0);
    for mode in MODES {
        for (name, g) in curated(mode) {
            let bd = decompose(&g).unwrap();
            if bd.width > 4 {
                continue;
            }
            graphs += 1;
            let simple = {
                let mut p: Vec<_> = g.edges().iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
                p.sort_unstable();
                p.windows(2).all(|w| w[0] != w[1])
            };
            multigraphs += usize::from(!simple);
            let m = g.edge_count();
            let variants: [Vec<u32>; 3] = [
                vec![1; m],
                (0..m).map(|e| 1 + (e as u32 * 7 + 3) % 4).collect(),
                (0..m).map(|e| (e as u32 * 5 + 1) % 3).collect(),
            ];
            for weights in &variants {
                instances += 1;
                let dp = solve_dp(&g, weights, mode, &bd, &DpLimits::default()).map(|r| r.1);
                let exact =
                    solve_exact(g.vertex_count(), g.edges(), weights, mode, &ExactLimits::default()).map(|r| r.1);
                match (dp, exact) {
                    (Ok(a), Ok(b)) => f.check(a == b, || format!("{name} {mode} {weights:?}: dp {a} != exact {b}")),
                    (a, b) => f.check(false, || format!("{name} {mode}: dp {a:?}, exact {b:?}")),
                }
            }
            if name == "octahedron" {
                let dp = solve_dp(&g, &vec![1; m], mode, &bd, &DpLimits::default()).map(|r| r.1);
                f.check(matches!(dp, Ok(9)), || format!("octahedron {mode}: {dp:?} != 9"));
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    Outcome::new(
        f.0.is_empty() && graphs >= 50 && multigraphs > 0 && secs < 600.0,
        format!(
            "{graphs} graphs ({multigraphs} multigraphs), {instances} weighted instances, width <= 4; {secs:.1} s < 600 s{}",
            f.summary()
        ),
    )
}

fn scaling() -> Outcome {
    let start = Instant::now();
    let run = tricon(&[
        "bench",
        "--family",
        "nested_rings",
        "--sizes",
        "1000,2000,4000,8000",
        "--problem",
        "3ecss",
        "--force-k",
        "3",
    ]);
    let secs = start.elapsed().as_secs_f64();
    let stdout = String::from_utf8_lossy(&run.stdout);
    let ratio = stdout
        .lines()
        .find_map(|l| l.strip_prefix("median doubling ratio "))
        .and_then(|r| r.trim().parse::<f64>().ok());
    let pass = run.status.success() && ratio.is_some_and(|r| r <= 2.5) && secs < 900.0;
    Outcome::new(pass, format!("median doubling ratio {ratio:?} (bound 2.5); {secs:.1} s < 900 s"))
}

fn determinism(dir: &Path) -> Outcome {
    let mut f = Failures::default();
    let mut cases = 0;
    for (family, n) in [(Family::Triangulation, 300), (Family::NestedRings, 400), (Family::TwinPocket, 200)] {
        let input = dir.join(format!("{family}.json"));
        write_graph(&input, &generate(&GeneratorSpec::new(family, n, 7)).unwrap()).unwrap();
        for mode in ["3ecss", "3vcss"] {
            cases += 1;
            let outputs: Vec<Vec<u8>> = ["1", "4"]
                .iter()
                .map(|jobs| {
                    let out = dir.join(format!("{family}.{mode}.{jobs}.json"));
                    let run = tricon(&[
                        "solve",
                        "--problem",
                        mode,
                        "--force-k",
                        "3",
                        "--jobs",
                        jobs,
                        "--input",
                        input.to_str().unwrap(),
                        "--output",
                        out.to_str().unwrap(),
                    ]);
                    if run.status.success() {
                        std::fs::read(&out).unwrap_or_default()
                    } else {
                        Vec::new()
                    }
                })
                .collect();
            f.check(!outputs[0].is_empty() && outputs[0] == outputs[1], || format!("{family} {mode}"));
        }
    }
    Outcome::new(f.0.is_empty(), format!("{cases} instance and mode pairs solved twice (jobs 1 and 4){}", f.summary()))
}

fn main() {
    let dir = tempfile::tempdir().expect("temp dir");
    let mut shift = Failures::default();
    let mut results: Vec<(u8, &str, Outcome)> = Vec::new();
    let mut report = |id: u8, name: &'static str, o: Outcome| {
        println!("criterion {id} {name}: {} ({})", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        results.push((id, name, o));
    };

    report(1, "forced optima", forced_optima(dir.path()));
    report(2, "oracle ratio", oracle_ratio(&mut shift));
    let (feasibility, invariants, widths) = large_sweep(&mut shift);
    report(3, "feasibility", feasibility);
    report(
        4,
        "shifting bound",
        Outcome::new(shift.0.is_empty(), format!("k|R| <= 2|E(spanner)| on every run{}", shift.summary())),
    );
    report(5, "slice invariants", invariants);
    report(6, "branch decomposition", widths);
    report(7, "dp vs oracle", dp_oracle());
    report(8, "scaling", scaling());
    report(9, "determinism", determinism(dir.path()));

    let failed: Vec<u8> = results.iter().filter(|r| !r.2.pass).map(|r| r.0).collect();
    if failed.is_empty() {
        println!("acceptance: all {} criteria pass", results.len());
    } else {
        println!("acceptance: failing criteria {failed:?}");
        std::process::exit(1);
    }
}
