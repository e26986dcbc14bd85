//! Criterion benchmarks for `dcmoments-core`; see `benches/`.
