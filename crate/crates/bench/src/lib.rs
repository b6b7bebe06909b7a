//! Criterion benchmarks for weincalc-core; see `benches/kernels.rs`.
