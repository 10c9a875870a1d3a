use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::combinatorics::binomial;

/// Dense univariate polynomial in `m` with rational coefficients.
///
/// `coeffs[j]` multiplies `m^j`. Trailing zeros are never stored, so the zero
/// polynomial has no coefficients and equality is structural.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct RationalPolynomial {
    coeffs: Vec<BigRational>,
}

impl RationalPolynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RationalPolynomial { coeffs }
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        RationalPolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// `c * m^degree`
    pub fn monomial(c: BigRational, degree: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `m^j`, zero past the degree.
    pub fn coeff(&self, j: usize) -> BigRational {
        self.coeffs
            .get(j)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Horner evaluation at an integer point.
    pub fn eval(&self, m: &BigInt) -> BigRational {
        self.eval_rational(&BigRational::from_integer(m.clone()))
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// The polynomial `q` with `q(m) = self(m + delta)`.
    pub fn shift(&self, delta: &BigInt) -> Self {
        let mut out = vec![BigRational::zero(); self.coeffs.len()];
        for (j, c) in self.coeffs.iter().enumerate() {
            // (m + delta)^j = sum_i C(j, i) delta^(j-i) m^i
            let mut delta_pow = BigInt::one();
            for i in (0..=j).rev() {
                out[i] += c * BigRational::from_integer(binomial(j, i) * &delta_pow);
                delta_pow *= delta;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * factor).collect())
    }

    /// Coefficients as reduced fraction strings, lowest degree first.
    pub fn coefficient_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(fraction_string).collect()
    }
}

/// `"p/q"`, or `"p"` when the denominator is one.
pub fn fraction_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl Add for &RationalPolynomial {
    type Output = RationalPolynomial;

    fn add(self, rhs: &RationalPolynomial) -> RationalPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        RationalPolynomial::new((0..len).map(|j| self.coeff(j) + rhs.coeff(j)).collect())
    }
}

impl Sub for &RationalPolynomial {
    type Output = RationalPolynomial;

    fn sub(self, rhs: &RationalPolynomial) -> RationalPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &RationalPolynomial {
    type Output = RationalPolynomial;

    fn neg(self) -> RationalPolynomial {
        RationalPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &RationalPolynomial {
    type Output = RationalPolynomial;

    fn mul(self, rhs: &RationalPolynomial) -> RationalPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return RationalPolynomial::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RationalPolynomial::new(out)
    }
}

impl fmt::Display for RationalPolynomial {
    /// Highest degree first, e.g. `3/2 m^2 + 5/2 m + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let body = fraction_string(&magnitude);
            match j {
                0 => f.write_str(&body)?,
                _ if magnitude.is_one() => {}
                _ => write!(f, "{body} ")?,
            }
            match j {
                0 => {}
                1 => f.write_str("m")?,
                _ => write!(f, "m^{j}")?,
            }
        }
        Ok(())
    }
}
