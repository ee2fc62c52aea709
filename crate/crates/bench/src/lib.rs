//! Criterion benchmarks for the `pseudoalg` kernels live in `benches/kernels.rs`.
