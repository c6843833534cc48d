//! Criterion benchmarks for evoent-core live in `benches/`.
