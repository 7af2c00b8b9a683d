//! Wall-clock scaling harness.

use super::generators::{generate, Family, GeneratorSpec};
use crate::error::Result;
use crate::layering::{compute_levels, plan_shift};
use crate::problem::Mode;
use crate::ptas::{solve, spanner, SolveOptions};
use crate::slicing::build_slices;
use crate::util::median;
use serde::{Deserialize, Serialize};
use std::time::Instant;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchConfig {
    pub family: Family,
    pub sizes: Vec<usize>,
    pub mode: Mode,
    pub force_k: usize,
    /// Timed repetitions per size; the median is reported.
    pub repeat: usize,
    pub seed: u64,
    pub jobs: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub n: usize,
    pub vertices: usize,
    pub edges: usize,
    pub slices: usize,
    /// Median seconds for levels, shift plan and slices only.
    pub slicing_secs: f64,
    /// Median seconds for the whole pipeline.
    pub total_secs: f64,
    pub size: usize,
}

/// Times the pipeline on one generated instance per size. Generation is
/// not timed and repetitions run one after another.
pub fn run_bench(config: &BenchConfig) -> Result<Vec<BenchRow>> {
    let options = SolveOptions { force_k: Some(config.force_k), jobs: config.jobs, ..Default::default() };
    let repeat = config.repeat.max(1);
    let mut rows = Vec::new();
    for &n in &config.sizes {
        let g = generate(&GeneratorSpec::new(config.family, n, config.seed))?;
        let mut slicing = Vec::with_capacity(repeat);
        let mut total = Vec::with_capacity(repeat);
        let mut slices = 0;
        let mut size = 0;
        for _ in 0..repeat {
            let start = Instant::now();
            let (h, _) = spanner(&g, config.mode);
            let levels = compute_levels(&h)?;
            let plan = plan_shift(&levels, config.force_k)?;
            slices = build_slices(&h, &levels, &plan, config.mode)?.len();
            slicing.push(start.elapsed().as_secs_f64());

            let start = Instant::now();
            size = solve(&g, config.mode, None, &options)?.size;
            total.push(start.elapsed().as_secs_f64());
        }
        rows.push(BenchRow {
            n,
            vertices: g.vertex_count(),
            edges: g.edge_count(),
            slices,
            slicing_secs: median(&slicing),
            total_secs: median(&total),
            size,
        });
    }
    Ok(rows)
}

/// Ratios of consecutive values, for sizes that double.
pub fn doubling_ratios(times: &[f64]) -> Vec<f64> {
    times.windows(2).map(|w| if w[0] > 0.0 { w[1] / w[0] } else { f64::INFINITY }).collect()
}

/// Median of the consecutive ratios of total time.
pub fn median_doubling_ratio(rows: &[BenchRow]) -> Option<f64> {
    let times: Vec<f64> = rows.iter().map(|r| r.total_secs).collect();
    let ratios = doubling_ratios(&times);
    (!ratios.is_empty()).then(|| median(&ratios))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratios() {
        assert_eq!(doubling_ratios(&[1.0, 2.0, 6.0]), vec![2.0, 3.0]);
        assert!(doubling_ratios(&[1.0]).is_empty());
    }

    #[test]
    fn small_run() {
        let config = BenchConfig {
            family: Family::NestedRings,
            sizes: vec![60, 120],
            mode: Mode::Ecss,
            force_k: 3,
            repeat: 1,
            seed: 1,
            jobs: 1,
        };
        let rows = run_bench(&config).unwrap();
        assert_eq!(rows.len(), 2);
        assert!(rows.iter().all(|r| r.slices > 0 && r.total_secs >= 0.0));
        assert!(median_doubling_ratio(&rows).is_some());
    }
}
