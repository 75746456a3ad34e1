//! Benchmarks for the tensor diagram toolkit live in `benches/`.
