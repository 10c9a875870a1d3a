//! `B_n^(m)` by two independent routes: iterating the truncated exponential
//! generating function, and the recursion
//! `B_n^(m) = sum_{k=1}^{n} B_k^(m-1) S(n, k)` over a memoized table.

use std::cell::RefCell;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::combinatorics::{factorial, stirling2, StirlingTable};
use crate::{Error, Result};

/// Degree-`N` truncation `a_0 + a_1 x + ... + a_N x^N` of an iterate `E_m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedEgf {
    coeffs: Vec<BigRational>,
}

impl TruncatedEgf {
    /// Wraps `a_0..=a_N`. At least one coefficient is required.
    pub fn new(coeffs: Vec<BigRational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Domain("a truncated series needs a_0".into()));
        }
        Ok(TruncatedEgf { coeffs })
    }

    /// `exp(x)` truncated at `order`, i.e. `E_0`.
    pub fn exp(order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut fact = BigInt::one();
        for j in 0..=order {
            if j > 0 {
                fact *= j;
            }
            coeffs.push(BigRational::new(BigInt::one(), fact.clone()));
        }
        TruncatedEgf { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Truncation of `exp(self - 1)` at the same order.
    ///
    /// With `f = self - 1` and `g = exp(f)`, `g' = f' g` gives
    /// `g_0 = 1`, `g_j = (1/j) sum_{i=1}^{j} i f_i g_{j-i}`.
    pub fn iterate(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::NotAnIterate(self.coeffs[0].to_string()));
        }
        let f = &self.coeffs;
        let mut g: Vec<BigRational> = Vec::with_capacity(f.len());
        g.push(BigRational::one());
        for j in 1..f.len() {
            let mut acc = BigRational::zero();
            for i in 1..=j {
                if f[i].is_zero() {
                    continue;
                }
                acc += &f[i] * &g[j - i] * BigInt::from(i);
            }
            g.push(acc / BigInt::from(j));
        }
        Ok(TruncatedEgf { coeffs: g })
    }

    /// `n! a_n`, which for an iterate is `B_n^(m)`.
    pub fn scaled_coefficient(&self, n: usize) -> Result<BigInt> {
        let a = self.coeffs.get(n).ok_or_else(|| {
            Error::Domain(format!(
                "coefficient {n} is past the truncation order {}",
                self.order()
            ))
        })?;
        let scaled = a * BigRational::from_integer(factorial(n));
        if !scaled.is_integer() {
            return Err(Error::NotInteger(scaled.to_string()));
        }
        Ok(scaled.to_integer())
    }
}

/// One application of `E -> exp(E - 1)`.
pub fn egf_iterate(series: &TruncatedEgf) -> Result<TruncatedEgf> {
    series.iterate()
}

/// `B_n^(m)` from `E_0` truncated at order `n` and iterated `m` times.
pub fn bell_via_egf(n: usize, m: u64) -> BigInt {
    let mut series = TruncatedEgf::exp(n);
    for _ in 0..m {
        series = series
            .iterate()
            .expect("iterates of exp keep constant term 1");
    }
    series
        .scaled_coefficient(n)
        .expect("iterates of exp have integral scaled coefficients")
}

/// Rows past this index are streamed rather than stored.
const MEMO_ROWS: usize = 4096;

/// Memoized `B_n^(m)` grid filled by the Stirling recursion from the base row
/// `B_n^(0) = 1`.
#[derive(Debug, Clone)]
pub struct BellTable {
    stirling: StirlingTable,
    width: usize,
    // rows[m][n] for n in 0..=width
    rows: Vec<Vec<BigInt>>,
}

impl Default for BellTable {
    fn default() -> Self {
        Self::new()
    }
}

impl BellTable {
    pub fn new() -> Self {
        Self::with_stirling(StirlingTable::new())
    }

    /// A table driven by the given Stirling triangle (possibly a faulty one).
    pub fn with_stirling(stirling: StirlingTable) -> Self {
        BellTable {
            stirling,
            width: 0,
            rows: vec![vec![BigInt::one()]],
        }
    }

    pub fn stirling_mut(&mut self) -> &mut StirlingTable {
        &mut self.stirling
    }

    /// `B_n^(m)`. Values with `m` below an internal bound are memoized; larger
    /// `m` walks forward from the last stored row keeping only `n + 1` entries.
    pub fn get(&mut self, n: usize, m: u64) -> BigInt {
        self.widen(n);
        if let Some(row) = usize::try_from(m).ok().and_then(|m| self.rows.get(m)) {
            return row[n].clone();
        }
        let target = usize::try_from(m).ok().filter(|&m| m < MEMO_ROWS);
        let last_stored = target.unwrap_or(MEMO_ROWS - 1);
        while self.rows.len() <= last_stored {
            let next = next_row(&mut self.stirling, self.rows.last().unwrap(), self.width);
            self.rows.push(next);
        }
        if target.is_some() {
            return self.rows[last_stored][n].clone();
        }

        let mut row: Vec<BigInt> = self.rows[last_stored][..=n].to_vec();
        let weights: Vec<Vec<BigInt>> = (0..=n).map(|j| self.stirling.row(j).to_vec()).collect();
        for _ in (last_stored as u64)..m {
            row = (0..=n)
                .map(|j| {
                    if j == 0 {
                        return BigInt::one();
                    }
                    (1..=j).map(|k| &row[k] * &weights[j][k]).sum()
                })
                .collect();
        }
        row[n].clone()
    }

    fn widen(&mut self, n: usize) {
        if n <= self.width {
            return;
        }
        self.width = n.max(2 * self.width);
        let depth = self.rows.len();
        self.rows.truncate(1);
        self.rows[0] = vec![BigInt::one(); self.width + 1];
        while self.rows.len() < depth {
            let next = next_row(&mut self.stirling, self.rows.last().unwrap(), self.width);
            self.rows.push(next);
        }
    }
}

fn next_row(stirling: &mut StirlingTable, prev: &[BigInt], width: usize) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(width + 1);
    row.push(BigInt::one());
    for j in 1..=width {
        let s = stirling.row(j);
        row.push((1..=j).map(|k| &prev[k] * &s[k]).sum());
    }
    row
}

thread_local! {
    static BELL: RefCell<BellTable> = RefCell::new(BellTable::new());
}

/// `B_n^(m)` via the Stirling recursion, memoized per thread.
pub fn bell_via_recursion(n: usize, m: u64) -> BigInt {
    BELL.with(|t| t.borrow_mut().get(n, m))
}

/// Ordinary Bell number `B_n = sum_{k=1}^{n} S(n, k)`, for `n >= 1`.
pub fn bell_first_order(n: usize) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::Domain("bell_first_order needs n >= 1".into()));
    }
    Ok((1..=n).map(|k| stirling2(n, k)).sum())
}

/// Whether every `j! a_j` of `series` is an integer.
pub fn has_integral_scaled_coefficients(series: &TruncatedEgf) -> bool {
    series.coeffs().iter().enumerate().all(|(j, a)| {
        // n! a_n is integral iff the reduced denominator divides n!
        factorial(j).is_multiple_of(a.denom())
    })
}
