//! Benchmarks for the enumeration kernels live under `benches/`.
