//! Exact integer and rational arithmetic: number-theoretic helpers,
//! integer polynomials, cyclotomic polynomials and big-integer matrices.

pub mod arith;
pub mod cyclotomic;
pub mod matrix;
pub mod poly;
pub mod ratmat;

pub use arith::{coprime_sum, coprime_weighted_sum, divisors, euler_phi, factorize};
pub use cyclotomic::{cyclotomic, cyclotomic_at_one};

/// Arbitrary-precision integer.
pub type Int = num_bigint::BigInt;

/// Exact rational number.
pub type Rat = num_rational::BigRational;
