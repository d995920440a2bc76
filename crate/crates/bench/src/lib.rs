//! Criterion benchmarks for `convpave`; see `benches/`.
