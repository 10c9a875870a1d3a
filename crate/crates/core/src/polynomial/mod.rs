//! Exact rational polynomials in `m` and the Bell polynomial `B_n^(m)` for
//! fixed `n`.

mod bell;
mod rational;

pub use bell::{
    asymptotic_report, construct_bell_polynomial, construct_bell_polynomial_with,
    difference_polynomial, difference_polynomial_with, interpolate_bell_polynomial,
    interpolate_bell_polynomial_with, leading_coefficient, leading_coefficient_closed_form,
    telescoped_bell_polynomials, AsymptoticReport, BellPolynomial, DifferencePolynomial,
};
pub use rational::{fraction_string, RationalPolynomial};
