//! Criterion benchmarks for the decision engine; see `benches/decide.rs`.
