//! Instance generators and timing harness.

pub mod bench;
pub mod curated;
pub mod generators;

pub use bench::{run_bench, BenchConfig, BenchRow};
pub use generators::{generate, Family, GeneratorSpec};
