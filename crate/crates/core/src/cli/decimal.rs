use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Exact decimal expansion of `r` to `digits` places, rounding half to even on
/// the last digit. No floating point is involved.
pub fn decimal_expansion(r: &BigRational, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let (mut q, rem) = (r.numer().abs() * &scale).div_rem(r.denom());
    let twice = rem * 2;
    if twice > *r.denom() || (twice == *r.denom() && q.is_odd()) {
        q += 1;
    }
    let sign = if r.is_negative() && !q.is_zero() {
        "-"
    } else {
        ""
    };
    if digits == 0 {
        return format!("{sign}{q}");
    }
    let (whole, frac) = q.div_rem(&scale);
    format!("{sign}{whole}.{:0>digits$}", frac.to_string())
}
