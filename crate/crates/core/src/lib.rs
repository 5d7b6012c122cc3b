//! Exact-arithmetic library for even lattices, their isometries, codes over
//! `Z_p` and the numerics of cyclic lattice-VOA orbifolds.
//!
//! Everything here is computed over arbitrary-precision integers and
//! rationals; there is no floating point anywhere in the crate. The main
//! entry points are:
//!
//! * [`exact`] — big-integer matrices (Smith normal form, characteristic
//!   polynomials), integer polynomials and cyclotomic arithmetic;
//! * [`lattice`] — even lattices given by Gram matrices, dual lattices,
//!   discriminant groups and exact short-vector enumeration;
//! * [`isometry`] — isometries, cyclotomic profiles, fixed and coinvariant
//!   sublattices, and randomized representative searches;
//! * [`permgrp`] — permutation actions on root shells, Schreier–Sims group
//!   orders and centralizer/normalizer backtracking;
//! * [`codes`] — codes over `Z_p`, Construction A/B and the named lattices
//!   (`A_n`, `E8`, `sqrt2E8`, `Leech`);
//! * [`orbifold`] — conformal weights of twisted sectors, graded traces and
//!   the orbifold self-duality check;
//! * [`classify`] — the case-by-case searches and the end-to-end
//!   necessary-condition verdict for a pair `(L, g)`.

// Index loops mirror the matrix arithmetic throughout; the iterator forms
// the lint suggests read worse for this kind of code.
#![allow(clippy::needless_range_loop)]

pub mod classify;
pub mod codes;
pub mod error;
pub mod exact;
pub mod isometry;
pub mod json;
pub mod lattice;
pub mod orbifold;
pub mod permgrp;

pub use error::{Error, Result};
pub use exact::matrix::{IntMatrix, SnfResult};
pub use exact::poly::IntPoly;
pub use exact::{Int, Rat};
pub use isometry::{ClassInvariant, CyclotomicProfile, Isometry};
pub use lattice::{CosetShell, DiscriminantGroup, GramLattice, Sublattice};

/// Convenience constructor for a big integer from a machine integer.
pub fn int(v: i64) -> Int {
    Int::from(v)
}

/// Convenience constructor for an exact rational `p/q`.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(Int::from(p), Int::from(q))
}
