//! Benchmark-only crate; see `benches/enumeration.rs`.
