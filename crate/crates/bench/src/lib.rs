//! Benchmarks only; see `benches/partition.rs`. Run with `cargo bench -p sos-bench`.
