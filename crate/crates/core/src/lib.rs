//! Exact higher-order (iterated exponential) Bell numbers.
//!
//! `B_n^(m)` is `n!` times the `x^n` coefficient of the iterate
//! `E_0 = exp(x)`, `E_{m+1} = exp(E_m - 1)`. For fixed `n` it is a
//! polynomial in `m` of degree `n - 1` with leading coefficient
//! `n! / 2^(n-1)`. This crate computes the numbers by two independent routes
//! (series iteration and the Stirling recursion), recovers the polynomial by
//! interpolation and by telescoping Faulhaber sums, and checks that
//! everything agrees.

pub mod bell_numbers;
pub mod cli;
pub mod combinatorics;
mod error;
pub mod partitions;
pub mod polynomial;

pub use error::{Error, Result};

/// Arbitrary-precision signed integer.
pub type ExactInteger = num_bigint::BigInt;
/// Normalized arbitrary-precision fraction (positive denominator, reduced).
pub type ExactRational = num_rational::BigRational;
