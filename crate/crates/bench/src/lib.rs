//! Benchmark-only crate; see `benches/kernels.rs`.
use orbilat_core as _;
