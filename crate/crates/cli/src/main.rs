use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use tricon_core::io::{read_graph, read_json, to_json_line, write_graph, write_json, SliceFile};
use tricon_core::toolkit::bench::median_doubling_ratio;
use tricon_core::toolkit::{generate, run_bench, BenchConfig, Family, GeneratorSpec};
use tricon_core::{
    build_slice_tree, build_slices, compute_levels, decompose, plan_shift, ptas, solve, verify, Error, Mode, Result,
    SolveOptions, SolverChoice,
};

#[derive(Parser)]
#[command(name = "tricon", version, about = "Approximate minimum 3-connected spanning subgraphs of planar graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance and write the solution JSON.
    Solve {
        #[arg(long)]
        problem: Mode,
        #[arg(long)]
        epsilon: Option<f64>,
        #[arg(long = "force-k")]
        force_k: Option<usize>,
        #[arg(long)]
        input: PathBuf,
        /// Defaults to standard output.
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, default_value = "auto")]
        solver: SolverChoice,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// Check a solution against its instance.
    Verify {
        #[arg(long)]
        problem: Mode,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        solution: PathBuf,
    },
    /// Generate an instance.
    Gen {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Dump the shift plan, slices, slice tree and decompositions.
    Slice {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value = "3ecss")]
        problem: Mode,
        #[arg(long)]
        epsilon: Option<f64>,
        #[arg(long = "force-k")]
        force_k: Option<usize>,
        #[arg(long)]
        dump: PathBuf,
    },
    /// Time the pipeline on doubling sizes.
    Bench {
        #[arg(long)]
        family: Family,
        #[arg(long, value_delimiter = ',')]
        sizes: Vec<usize>,
        #[arg(long)]
        problem: Mode,
        #[arg(long = "force-k")]
        force_k: usize,
        #[arg(long, default_value_t = 5)]
        repeat: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// Levels, double layer sizes, residual classes and the chosen shift.
    Stats {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value = "3ecss")]
        problem: Mode,
        #[arg(long)]
        epsilon: Option<f64>,
        #[arg(long = "force-k")]
        force_k: Option<usize>,
    },
}

fn window_width(problem: Mode, epsilon: Option<f64>, force_k: Option<usize>) -> Result<usize> {
    match (force_k, epsilon) {
        (Some(k), _) => Ok(k),
        (None, Some(eps)) => problem.k_for_epsilon(eps),
        (None, None) => Err(Error::InvalidParameter("pass --epsilon or --force-k".into())),
    }
}

fn emit(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Solve { problem, epsilon, force_k, input, output, solver, jobs } => {
            if epsilon.is_none() && force_k.is_none() {
                return Err(Error::InvalidParameter("pass --epsilon or --force-k".into()));
            }
            let g = read_graph(&input)?;
            let options = SolveOptions { force_k, solver, jobs, ..Default::default() };
            let solution = solve(&g, problem, epsilon, &options)?;
            emit(output.as_deref(), &to_json_line(&solution)?)?;
        }
        Command::Verify { problem, input, solution } => {
            let g = read_graph(&input)?;
            let value: Value = read_json(&solution)?;
            let edges: Vec<usize> = value
                .get("edges")
                .cloned()
                .ok_or_else(|| Error::Format("solution has no `edges` field".into()))
                .and_then(|e| serde_json::from_value(e).map_err(|e| Error::Format(e.to_string())))?;
            let report = verify(&g, &edges, problem);
            print!("{}", to_json_line(&report)?);
            if !report.feasible {
                return Ok(ExitCode::from(2));
            }
        }
        Command::Gen { family, n, seed, depth, output } => {
            let mut spec = GeneratorSpec::new(family, n, seed);
            if let Some(d) = depth {
                spec = spec.with_depth(d);
            }
            let g = generate(&spec)?;
            match output {
                Some(path) => write_graph(&path, &g)?,
                None => print!("{}", to_json_line(&tricon_core::io::GraphFile::from_graph(&g))?),
            }
        }
        Command::Slice { input, problem, epsilon, force_k, dump } => {
            let k = window_width(problem, epsilon, force_k)?;
            let g = read_graph(&input)?;
            let (h, _) = ptas::spanner(&g, problem);
            let levels = compute_levels(&h)?;
            let plan = plan_shift(&levels, k)?;
            let slices = build_slices(&h, &levels, &plan, problem)?;
            std::fs::create_dir_all(&dump)?;
            write_json(&dump.join("plan.json"), &plan)?;
            write_json(&dump.join("levels.json"), &levels)?;
            if !slices.is_empty() {
                write_json(&dump.join("tree.json"), &build_slice_tree(&slices)?)?;
            }
            for (i, s) in slices.iter().enumerate() {
                write_json(&dump.join(format!("slice_{i}.json")), &SliceFile::from_slice(s))?;
                let bd = decompose(&s.graph)?;
                let doc = json!({
                    "width": bd.width,
                    "tree": bd.nested(),
                    "separators": bd.nodes.iter().map(|n| n.separator.clone()).collect::<Vec<_>>(),
                });
                write_json(&dump.join(format!("bd_{i}.json")), &doc)?;
            }
            println!("{} slices written to {}", slices.len(), dump.display());
        }
        Command::Bench { family, sizes, problem, force_k, repeat, seed, jobs } => {
            let config = BenchConfig { family, sizes, mode: problem, force_k, repeat, seed, jobs };
            let rows = run_bench(&config)?;
            println!(
                "{:>8} {:>8} {:>8} {:>7} {:>12} {:>12} {:>7}",
                "n", "vertices", "edges", "slices", "slicing_s", "total_s", "ratio"
            );
            let mut prev: Option<f64> = None;
            for r in &rows {
                let ratio = prev.map_or("-".to_string(), |p| format!("{:.2}", r.total_secs / p));
                println!(
                    "{:>8} {:>8} {:>8} {:>7} {:>12.6} {:>12.6} {:>7}",
                    r.n, r.vertices, r.edges, r.slices, r.slicing_secs, r.total_secs, ratio
                );
                prev = Some(r.total_secs);
            }
            if let Some(m) = median_doubling_ratio(&rows) {
                println!("median doubling ratio {m:.3}");
            }
        }
        Command::Stats { input, problem, epsilon, force_k } => {
            // Without either flag, report the smallest window width.
            let k = window_width(problem, epsilon, force_k.or(epsilon.is_none().then_some(2)))?;
            let g = read_graph(&input)?;
            let (h, _) = ptas::spanner(&g, problem);
            let levels = compute_levels(&h)?;
            let plan = plan_shift(&levels, k)?;
            let doc = json!({
                "vertices": h.vertex_count(),
                "edges": h.edge_count(),
                "max_level": levels.max_level,
                "level_sizes": levels.level_sizes(),
                "k": k,
                "double_layer_sizes": plan.double_layer_sizes,
                "residual_sizes": plan.residual_sizes,
                "t": plan.t,
                "residual_size": plan.residual_size(),
            });
            print!("{}", to_json_line(&doc)?);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
