//! Criterion benchmarks for the solver pipeline live in `benches/`.
