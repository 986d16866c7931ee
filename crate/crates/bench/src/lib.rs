//! Benchmark-only crate; see `benches/benchmarks.rs`.
//!
//! Run with `cargo bench -p projcon-bench`.
