//! Benchmark-only crate; see `benches/qfa.rs`.
