use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::bell_numbers::BellTable;
use crate::combinatorics::{factorial, faulhaber_polynomial};
use crate::{Error, Result};

use super::rational::{fraction_string, RationalPolynomial};

/// `B_n^(m) = c_{n-1} m^{n-1} + ... + c_1 m + c_0` for a fixed `n`.
///
/// `n = 0` is accepted as an extension and gives the constant `1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BellPolynomial {
    n: usize,
    poly: RationalPolynomial,
}

impl BellPolynomial {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn poly(&self) -> &RationalPolynomial {
        &self.poly
    }

    pub fn leading_coefficient(&self) -> BigRational {
        self.poly
            .leading()
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// `B_n^(m)`, failing if the polynomial does not take an integer value.
    pub fn value(&self, m: &BigInt) -> Result<BigInt> {
        let v = self.poly.eval(m);
        if !v.is_integer() {
            return Err(Error::NotInteger(fraction_string(&v)));
        }
        Ok(v.to_integer())
    }
}

/// `D_n(m) = B_n^(m) - B_n^(m-1) = sum_{k=1}^{n-1} S(n, k) B_k^(m-1)` as a
/// polynomial in `m`, of degree `n - 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferencePolynomial {
    n: usize,
    poly: RationalPolynomial,
}

impl DifferencePolynomial {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn poly(&self) -> &RationalPolynomial {
        &self.poly
    }
}

/// Newton divided differences through `(i, ys[i])`, expanded to monomial form.
fn newton_interpolate(ys: &[BigInt]) -> RationalPolynomial {
    let mut table: Vec<BigRational> = ys.iter().cloned().map(BigRational::from_integer).collect();
    let count = table.len();
    // After pass `level`, table[i] holds f[x_{i-level}, ..., x_i].
    for level in 1..count {
        for i in (level..count).rev() {
            table[i] = (&table[i] - &table[i - 1]) / BigInt::from(level);
        }
    }
    let mut poly = RationalPolynomial::zero();
    for (i, c) in table.iter().enumerate().rev() {
        let node = RationalPolynomial::from_integers(&[-(i as i64), 1]);
        poly = &(&poly * &node) + &RationalPolynomial::constant(c.clone());
    }
    poly
}

/// Fits the degree-`(n-1)` polynomial through `B_n^(0..n)` and checks it
/// against the held-out value `B_n^(n)`.
pub fn interpolate_bell_polynomial_with(table: &mut BellTable, n: usize) -> Result<BellPolynomial> {
    if n == 0 {
        return Ok(BellPolynomial {
            n,
            poly: RationalPolynomial::constant(BigRational::one()),
        });
    }
    let samples: Vec<BigInt> = (0..n as u64).map(|m| table.get(n, m)).collect();
    let poly = newton_interpolate(&samples);
    let held_out = table.get(n, n as u64);
    let predicted = poly.eval(&BigInt::from(n));
    if predicted != BigRational::from_integer(held_out.clone()) {
        return Err(Error::HeldOutMismatch {
            n,
            m: n as u64,
            predicted: fraction_string(&predicted),
            actual: held_out.to_string(),
        });
    }
    Ok(BellPolynomial { n, poly })
}

pub fn interpolate_bell_polynomial(n: usize) -> Result<BellPolynomial> {
    interpolate_bell_polynomial_with(&mut BellTable::new(), n)
}

/// `sum_{k=1}^{n-1} S(n, k) B_k(m - 1)`, with `lower[k-1]` the polynomial for `k`.
pub fn difference_polynomial_with(
    table: &mut BellTable,
    n: usize,
    lower: &[BellPolynomial],
) -> Result<DifferencePolynomial> {
    if n < 2 {
        return Err(Error::Domain(format!(
            "difference polynomial needs n >= 2, got {n}"
        )));
    }
    let complete = lower.len() >= n - 1
        && lower
            .iter()
            .take(n - 1)
            .enumerate()
            .all(|(i, p)| p.n == i + 1);
    if !complete {
        return Err(Error::IncompleteLower {
            expected: n - 1,
            got: lower.len(),
        });
    }
    let minus_one = BigInt::from(-1);
    let stirling = table.stirling_mut();
    let poly = lower[..n - 1]
        .iter()
        .fold(RationalPolynomial::zero(), |acc, p| {
            let weight = BigRational::from_integer(stirling.get(n, p.n));
            &acc + &p.poly.shift(&minus_one).scale(&weight)
        });
    Ok(DifferencePolynomial { n, poly })
}

pub fn difference_polynomial(n: usize, lower: &[BellPolynomial]) -> Result<DifferencePolynomial> {
    difference_polynomial_with(&mut BellTable::new(), n, lower)
}

/// Bell polynomials for `1..=n` built bottom-up by telescoping:
/// `B_n(m) = 1 + sum_r d_r P_r(m)` where `d_r` are the coefficients of the
/// difference polynomial and `P_r` the Faulhaber polynomials. Never consults
/// sampled values.
pub fn telescoped_bell_polynomials(table: &mut BellTable, n: usize) -> Result<Vec<BellPolynomial>> {
    let one = RationalPolynomial::constant(BigRational::one());
    let mut built: Vec<BellPolynomial> = Vec::with_capacity(n);
    for level in 1..=n {
        let poly = if level == 1 {
            one.clone()
        } else {
            let diff = difference_polynomial_with(table, level, &built)?;
            diff.poly
                .coeffs()
                .iter()
                .enumerate()
                .fold(one.clone(), |acc, (r, d)| {
                    &acc + &faulhaber_polynomial(r).scale(d)
                })
        };
        built.push(BellPolynomial { n: level, poly });
    }
    Ok(built)
}

/// The telescoped Bell polynomial for `n`, cross-checked coefficient by
/// coefficient against interpolation at every level.
pub fn construct_bell_polynomial_with(table: &mut BellTable, n: usize) -> Result<BellPolynomial> {
    if n == 0 {
        return interpolate_bell_polynomial_with(table, 0);
    }
    let built = telescoped_bell_polynomials(table, n)?;
    for constructed in &built {
        let interpolated = interpolate_bell_polynomial_with(table, constructed.n)?;
        let top = constructed
            .poly
            .coeffs()
            .len()
            .max(interpolated.poly.coeffs().len());
        if let Some(degree) =
            (0..top).find(|&j| constructed.poly.coeff(j) != interpolated.poly.coeff(j))
        {
            return Err(Error::ConstructionMismatch {
                n: constructed.n,
                degree,
                constructed: fraction_string(&constructed.poly.coeff(degree)),
                interpolated: fraction_string(&interpolated.poly.coeff(degree)),
            });
        }
    }
    Ok(built.into_iter().last().expect("n >= 1 levels"))
}

pub fn construct_bell_polynomial(n: usize) -> Result<BellPolynomial> {
    construct_bell_polynomial_with(&mut BellTable::new(), n)
}

/// `c_{n-1}` from `c_0^(1) = 1` and `c_{k-1}^(k) = (k/2) c_{k-2}^(k-1)`.
///
/// `n = 0` gives `1`, the top coefficient of the constant extension.
pub fn leading_coefficient(n: usize) -> BigRational {
    (2..=n).fold(BigRational::one(), |c, k| {
        c * BigRational::new(BigInt::from(k), BigInt::from(2))
    })
}

/// `n! / 2^(n-1)` for `n >= 1`.
pub fn leading_coefficient_closed_form(n: usize) -> BigRational {
    assert!(n >= 1, "closed form is stated for n >= 1");
    BigRational::new(factorial(n), BigInt::one() << (n - 1))
}

/// Exact value against its leading term for fixed `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AsymptoticReport {
    pub n: usize,
    pub m: BigInt,
    pub exact: BigInt,
    /// `(n! / 2^(n-1)) m^(n-1)`; integral whenever `m` is even or `n <= 2`.
    pub leading: BigRational,
    /// `exact / leading`, reduced.
    pub ratio: BigRational,
}

pub fn asymptotic_report(n: usize, m: &BigInt) -> Result<AsymptoticReport> {
    if n == 0 || !m.is_positive() {
        return Err(Error::Domain(format!(
            "asymptotic report needs n >= 1 and m >= 1, got n = {n}, m = {m}"
        )));
    }
    let bell = interpolate_bell_polynomial(n)?;
    let exact = bell.value(m)?;
    let leading = leading_coefficient_closed_form(n)
        * BigRational::from_integer(num_traits::pow(m.clone(), n - 1));
    let ratio = BigRational::from_integer(exact.clone()) / &leading;
    Ok(AsymptoticReport {
        n,
        m: m.clone(),
        exact,
        leading,
        ratio,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::StirlingTable;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn poly(cs: &[(i64, i64)]) -> RationalPolynomial {
        RationalPolynomial::new(cs.iter().map(|&(n, d)| q(n, d)).collect())
    }

    // Frozen from an independent interpolation of brute-force recursion values.
    fn frozen(n: usize) -> RationalPolynomial {
        match n {
            1 => poly(&[(1, 1)]),
            2 => poly(&[(1, 1), (1, 1)]),
            3 => poly(&[(1, 1), (5, 2), (3, 2)]),
            4 => poly(&[(1, 1), (9, 2), (13, 2), (3, 1)]),
            5 => poly(&[(1, 1), (41, 6), (35, 2), (115, 6), (15, 2)]),
            6 => poly(&[(1, 1), (113, 12), (289, 8), (835, 12), (515, 8), (45, 2)]),
            _ => unreachable!(),
        }
    }

    #[test]
    fn newton_recovers_known_polynomial() {
        let p = poly(&[(3, 1), (-1, 2), (0, 1), (2, 3)]);
        let ys: Vec<BigInt> = (0..4)
            .map(|x| p.eval(&BigInt::from(x * 6)).to_integer())
            .collect();
        // nodes are 0,1,2,3 so rescale: fit q(x) = p(6x)
        let fitted = newton_interpolate(&ys);
        for x in 0..10 {
            assert_eq!(fitted.eval(&BigInt::from(x)), p.eval(&BigInt::from(6 * x)));
        }
    }

    #[test]
    fn interpolation_examples() {
        for n in 1..=6 {
            assert_eq!(
                interpolate_bell_polynomial(n).unwrap().poly,
                frozen(n),
                "n = {n}"
            );
        }
        assert_eq!(
            interpolate_bell_polynomial(0).unwrap().poly,
            poly(&[(1, 1)])
        );
    }

    #[test]
    fn held_out_point_catches_bad_values() {
        // S(4,4) = 2 doubles B_4^(m-1) at every step, so B_4^(m) is no
        // longer a cubic in m. Off-diagonal faults keep it polynomial.
        let mut table = BellTable::with_stirling(StirlingTable::with_fault(4, 4));
        let err = interpolate_bell_polynomial_with(&mut table, 4).unwrap_err();
        assert!(matches!(err, Error::HeldOutMismatch { n: 4, .. }), "{err}");
    }

    #[test]
    fn difference_examples() {
        let lower: Vec<BellPolynomial> = (1..=2)
            .map(|n| interpolate_bell_polynomial(n).unwrap())
            .collect();
        let d2 = difference_polynomial(2, &lower[..1]).unwrap();
        assert_eq!(d2.poly, poly(&[(1, 1)]));
        let d3 = difference_polynomial(3, &lower).unwrap();
        assert_eq!(d3.poly, poly(&[(1, 1), (3, 1)]));
        assert_eq!(d3.poly.eval(&BigInt::from(2)), q(7, 1));
        assert_eq!(d3.poly.eval(&BigInt::from(1)), q(4, 1));
    }

    #[test]
    fn difference_rejects_bad_input() {
        let lower: Vec<BellPolynomial> = (1..=2)
            .map(|n| interpolate_bell_polynomial(n).unwrap())
            .collect();
        assert!(matches!(
            difference_polynomial(4, &lower),
            Err(Error::IncompleteLower {
                expected: 3,
                got: 2
            })
        ));
        assert!(matches!(
            difference_polynomial(3, &lower[1..]),
            Err(Error::IncompleteLower { .. })
        ));
        assert!(matches!(
            difference_polynomial(1, &lower),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn construction_examples() {
        assert_eq!(construct_bell_polynomial(1).unwrap().poly, poly(&[(1, 1)]));
        assert_eq!(construct_bell_polynomial(3).unwrap().poly, frozen(3));
        let b4 = construct_bell_polynomial(4).unwrap();
        assert_eq!(b4.value(&BigInt::from(5)).unwrap(), 561.into());
        let mut table = BellTable::new();
        let telescoped = telescoped_bell_polynomials(&mut table, 6).unwrap();
        for (i, b) in telescoped.iter().enumerate() {
            assert_eq!(b.poly, frozen(i + 1));
        }
    }

    #[test]
    fn leading_coefficient_examples() {
        assert_eq!(leading_coefficient(1), q(1, 1));
        assert_eq!(leading_coefficient(3), q(3, 2));
        assert_eq!(leading_coefficient(8), q(315, 1));
        for n in 1..=25 {
            assert_eq!(leading_coefficient(n), leading_coefficient_closed_form(n));
        }
    }

    #[test]
    fn asymptotic_examples() {
        let r = asymptotic_report(3, &BigInt::from(100_000)).unwrap();
        assert_eq!(r.exact, 15000250001u64.into());
        assert_eq!(r.leading, BigRational::from_integer(15000000000u64.into()));
        let r = asymptotic_report(3, &BigInt::from(100_000_000)).unwrap();
        assert_eq!(r.exact, 15000000250000001u64.into());
        assert_eq!(
            r.leading,
            BigRational::from_integer(15000000000000000u64.into())
        );
        let r = asymptotic_report(1, &BigInt::from(7)).unwrap();
        assert_eq!((r.exact, r.ratio), (BigInt::one(), BigRational::one()));
        assert!(asymptotic_report(0, &BigInt::from(7)).is_err());
        assert!(asymptotic_report(3, &BigInt::zero()).is_err());
    }

    #[test]
    fn n3_ratio_closed_form() {
        // ratio - 1 = 5/(3m) + 2/(3m^2)
        for m in [1i64, 7, 10, 100, 1000, 10_000] {
            let r = asymptotic_report(3, &BigInt::from(m)).unwrap();
            let expected = q(5, 3 * m) + q(2, 3 * m * m);
            assert_eq!(r.ratio - BigRational::one(), expected, "m = {m}");
        }
    }
}
