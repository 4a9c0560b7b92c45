//! Criterion benchmarks for the `supertable` crate; see `benches/`.
