//! Factorials, binomials, Stirling numbers of the second kind, Bernoulli
//! numbers and Faulhaber power-sum polynomials, all exact.
//!
//! The two memoized sequences ([`StirlingTable`], [`BernoulliSequence`]) are
//! plain values behind `&mut self`; the free functions [`stirling2`] and
//! [`bernoulli`] use a thread-local instance each, so no table is ever shared
//! between threads.

use std::cell::RefCell;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::polynomial::RationalPolynomial;

/// `n!`
pub fn factorial(n: usize) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `n` choose `k`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    // Each partial product is itself a binomial coefficient, so the division is exact.
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Memoized triangle of `S(n, k)`, grown row by row on demand.
#[derive(Debug, Clone)]
pub struct StirlingTable {
    rows: Vec<Vec<BigInt>>,
    fault: Option<(usize, usize)>,
}

impl Default for StirlingTable {
    fn default() -> Self {
        Self::new()
    }
}

impl StirlingTable {
    pub fn new() -> Self {
        StirlingTable {
            rows: vec![vec![BigInt::one()]],
            fault: None,
        }
    }

    /// A table whose recurrence adds one to the entry at `(n, k)`, so every
    /// value derived from it afterwards is wrong. Only useful for proving that
    /// the verification suite notices a broken triangle.
    pub fn with_fault(n: usize, k: usize) -> Self {
        StirlingTable {
            fault: Some((n, k)),
            ..Self::new()
        }
    }

    pub fn is_faulty(&self) -> bool {
        self.fault.is_some()
    }

    /// Largest `n` currently held.
    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    fn ensure(&mut self, n: usize) {
        while self.rows.len() <= n {
            let row_n = self.rows.len();
            let prev = &self.rows[row_n - 1];
            let mut row = Vec::with_capacity(row_n + 1);
            row.push(BigInt::zero());
            for k in 1..=row_n {
                let stay = prev.get(k).map(|s| s * k).unwrap_or_default();
                let mut value = stay + &prev[k - 1];
                if self.fault == Some((row_n, k)) {
                    value += 1;
                }
                row.push(value);
            }
            self.rows.push(row);
        }
    }

    /// Row `n` of the triangle: `S(n, 0), ..., S(n, n)`.
    pub fn row(&mut self, n: usize) -> &[BigInt] {
        self.ensure(n);
        &self.rows[n]
    }

    pub fn get(&mut self, n: usize, k: usize) -> BigInt {
        if k > n {
            return BigInt::zero();
        }
        self.row(n)[k].clone()
    }
}

thread_local! {
    static STIRLING: RefCell<StirlingTable> = RefCell::new(StirlingTable::new());
    static BERNOULLI: RefCell<BernoulliSequence> = RefCell::new(BernoulliSequence::new());
}

/// Number of partitions of an `n`-set into exactly `k` nonempty blocks.
pub fn stirling2(n: usize, k: usize) -> BigInt {
    STIRLING.with(|t| t.borrow_mut().get(n, k))
}

/// Bernoulli numbers with `b_1 = -1/2`, from
/// `sum_{j=0}^{k} binomial(k+1, j) b_j = 0`.
#[derive(Debug, Clone)]
pub struct BernoulliSequence {
    values: Vec<BigRational>,
}

impl Default for BernoulliSequence {
    fn default() -> Self {
        Self::new()
    }
}

impl BernoulliSequence {
    pub fn new() -> Self {
        BernoulliSequence {
            values: vec![BigRational::one()],
        }
    }

    pub fn get(&mut self, k: usize) -> BigRational {
        while self.values.len() <= k {
            let next = self.values.len();
            let sum = self
                .values
                .iter()
                .enumerate()
                .fold(BigRational::zero(), |acc, (j, b)| {
                    acc + BigRational::from_integer(binomial(next + 1, j)) * b
                });
            self.values
                .push(-sum / BigRational::from_integer(BigInt::from(next + 1)));
        }
        self.values[k].clone()
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }
}

pub fn bernoulli(k: usize) -> BigRational {
    BERNOULLI.with(|b| b.borrow_mut().get(k))
}

/// The polynomial `P_r` with `P_r(m) = sum_{k=1}^{m} k^r` for every natural `m`.
///
/// `P_r(m) = m^{r+1}/(r+1) + m^r/2 + sum_{k=2}^{r} (b_k/k) binomial(r, k-1) m^{r-k+1}`,
/// where the `m^r/2` term is present only for `r >= 1`.
pub fn faulhaber_polynomial(r: usize) -> RationalPolynomial {
    let mut coeffs = vec![BigRational::zero(); r + 2];
    coeffs[r + 1] = BigRational::new(BigInt::one(), BigInt::from(r + 1));
    if r >= 1 {
        coeffs[r] += BigRational::new(BigInt::one(), BigInt::from(2));
    }
    BERNOULLI.with(|b| {
        let mut b = b.borrow_mut();
        for k in 2..=r {
            let bk = b.get(k);
            if bk.is_zero() {
                continue;
            }
            coeffs[r - k + 1] += bk * BigRational::new(binomial(r, k - 1), BigInt::from(k));
        }
    });
    RationalPolynomial::new(coeffs)
}

/// `sum_{k=1}^{m} k^r` by direct summation.
pub fn power_sum_oracle(r: u32, m: u64) -> BigInt {
    (1..=m)
        .map(|k| num_traits::pow(BigInt::from(k), r as usize))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::block_count_histogram;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn pascal(max: usize) -> Vec<Vec<BigInt>> {
        let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
        for n in 1..=max {
            let prev = &rows[n - 1];
            let row = (0..=n)
                .map(|k| {
                    let left = if k > 0 {
                        prev[k - 1].clone()
                    } else {
                        BigInt::zero()
                    };
                    left + prev.get(k).cloned().unwrap_or_default()
                })
                .collect();
            rows.push(row);
        }
        rows
    }

    #[test]
    fn factorial_examples() {
        assert_eq!(factorial(0), 1.into());
        assert_eq!(factorial(5), 120.into());
        assert_eq!(factorial(8), 40320.into());
    }

    #[test]
    fn binomial_matches_pascal() {
        assert_eq!(binomial(4, 2), 6.into());
        assert_eq!(binomial(10, 3), 120.into());
        assert_eq!(binomial(7, 0), 1.into());
        assert_eq!(binomial(3, 5), 0.into());
        let rows = pascal(30);
        for (n, row) in rows.iter().enumerate() {
            for (k, v) in row.iter().enumerate() {
                assert_eq!(&binomial(n, k), v, "C({n},{k})");
            }
        }
    }

    #[test]
    fn stirling_examples() {
        assert_eq!(stirling2(3, 3), 1.into());
        assert_eq!(stirling2(4, 2), 7.into());
        assert_eq!(stirling2(5, 4), 10.into());
        assert_eq!(stirling2(0, 0), 1.into());
        assert_eq!(stirling2(4, 0), 0.into());
        assert_eq!(stirling2(2, 9), 0.into());
    }

    #[test]
    fn stirling_matches_enumeration() {
        let mut table = StirlingTable::new();
        for n in 0..=10 {
            let counts = block_count_histogram(n);
            for (k, &count) in counts.iter().enumerate() {
                assert_eq!(table.get(n, k), BigInt::from(count), "S({n},{k})");
            }
        }
    }

    #[test]
    fn stirling_edges() {
        let mut table = StirlingTable::new();
        for n in 1..=40 {
            assert_eq!(table.get(n, n), BigInt::one());
            assert_eq!(table.get(n, 1), BigInt::one());
            assert!(table.get(n, 0).is_zero());
            if n >= 2 {
                assert_eq!(table.get(n, n - 1), binomial(n, 2));
            }
        }
    }

    #[test]
    fn faulty_table_diverges() {
        let mut good = StirlingTable::new();
        let mut bad = StirlingTable::with_fault(4, 2);
        assert_eq!(bad.get(3, 2), good.get(3, 2));
        assert_eq!(bad.get(4, 2), good.get(4, 2) + 1);
        assert_ne!(bad.get(6, 3), good.get(6, 3));
    }

    #[test]
    fn bernoulli_examples() {
        assert_eq!(bernoulli(0), q(1, 1));
        assert_eq!(bernoulli(1), q(-1, 2));
        assert_eq!(bernoulli(2), q(1, 6));
        assert_eq!(bernoulli(3), q(0, 1));
        assert_eq!(bernoulli(4), q(-1, 30));
        assert_eq!(bernoulli(6), q(1, 42));
        assert_eq!(bernoulli(10), q(5, 66));
    }

    #[test]
    fn bernoulli_recurrence_and_odd_vanishing() {
        let mut seq = BernoulliSequence::new();
        for k in 1..=20 {
            let sum = (0..=k).fold(BigRational::zero(), |acc, j| {
                acc + BigRational::from_integer(binomial(k + 1, j)) * seq.get(j)
            });
            assert!(sum.is_zero(), "k = {k}");
            if k >= 3 && k % 2 == 1 {
                assert!(seq.get(k).is_zero());
            }
        }
    }

    #[test]
    fn faulhaber_examples() {
        assert_eq!(
            faulhaber_polynomial(0),
            RationalPolynomial::new(vec![q(0, 1), q(1, 1)])
        );
        assert_eq!(
            faulhaber_polynomial(1),
            RationalPolynomial::new(vec![q(0, 1), q(1, 2), q(1, 2)])
        );
        assert_eq!(
            faulhaber_polynomial(3),
            RationalPolynomial::new(vec![q(0, 1), q(0, 1), q(1, 4), q(1, 2), q(1, 4)])
        );
    }

    #[test]
    fn faulhaber_matches_power_sums() {
        for r in 0..=12usize {
            let p = faulhaber_polynomial(r);
            assert_eq!(p.degree(), Some(r + 1));
            assert!(p.coeff(0).is_zero());
            assert_eq!(p.coeff(r + 1), q(1, r as i64 + 1));
            for m in 0..=200u64 {
                let expected = BigRational::from_integer(power_sum_oracle(r as u32, m));
                assert_eq!(p.eval(&BigInt::from(m)), expected, "r = {r}, m = {m}");
            }
        }
    }

    #[test]
    fn power_sum_examples() {
        assert_eq!(power_sum_oracle(1, 4), 10.into());
        assert_eq!(power_sum_oracle(2, 3), 14.into());
        assert_eq!(power_sum_oracle(4, 10), 25333.into());
        assert_eq!(power_sum_oracle(3, 0), 0.into());
    }
}
