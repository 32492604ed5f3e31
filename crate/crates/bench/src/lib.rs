//! Criterion benchmarks for bejaia-core live in `benches/`.
