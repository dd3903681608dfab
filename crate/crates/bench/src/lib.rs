//! Benchmarks for the cohomology engine live under `benches/`.
