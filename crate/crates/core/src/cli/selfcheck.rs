//! The invariant suite behind `bell selfcheck`.
//!
//! Every check draws Bell values and Stirling numbers from one shared
//! [`BellTable`], so a corrupted triangle shows up in the checks that depend
//! on it. Checks run in a fixed order; the report names the first failure.

use std::fmt::Write;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::bell_numbers::{
    bell_first_order, has_integral_scaled_coefficients, BellTable, TruncatedEgf,
};
use crate::combinatorics::{
    binomial, faulhaber_polynomial, power_sum_oracle, BernoulliSequence, StirlingTable,
};
use crate::partitions::block_count_histogram;
use crate::polynomial::{
    asymptotic_report, interpolate_bell_polynomial_with, leading_coefficient,
    leading_coefficient_closed_form, telescoped_bell_polynomials, BellPolynomial,
    RationalPolynomial,
};

use super::{cmd_asympt, cmd_poly, cmd_table, cmd_value, Format, Method, PolyDocument};

type Check = Result<(), String>;

fn ensure(cond: bool, detail: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(detail())
    }
}

#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub result: Check,
}

#[derive(Debug, Clone, Default)]
pub struct SelfCheckReport {
    pub outcomes: Vec<CheckOutcome>,
}

impl SelfCheckReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.result.is_ok())
    }

    pub fn first_failure(&self) -> Option<&CheckOutcome> {
        self.outcomes.iter().find(|o| o.result.is_err())
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for o in &self.outcomes {
            match &o.result {
                Ok(()) => writeln!(out, "ok\t{}", o.name).unwrap(),
                Err(detail) => writeln!(out, "FAIL\t{}\t{}", o.name, detail).unwrap(),
            }
        }
        match self.first_failure() {
            None => writeln!(out, "all {} checks passed", self.outcomes.len()).unwrap(),
            Some(o) => writeln!(out, "first failure: {}", o.name).unwrap(),
        }
        out
    }
}

pub const CROSS_METHOD: &str = "cross-method equivalence (series iteration = Stirling recursion)";

pub const TABLE_1: [[u64; 8]; 5] = [
    [1, 2, 5, 15, 52, 203, 877, 4140],
    [1, 3, 12, 60, 358, 2471, 19302, 167894],
    [1, 4, 22, 154, 1304, 12915, 146115, 1855570],
    [1, 5, 35, 315, 3455, 44590, 660665, 11035095],
    [1, 6, 51, 561, 7556, 120196, 2201856, 45592666],
];

/// `(m, B_3^(m), 3/2 m^2)`
pub const TABLE_2: [(u64, u64, u64); 3] = [
    (100, 15251, 15000),
    (100_000, 15000250001, 15000000000),
    (100_000_000, 15000000250000001, 15000000000000000),
];

pub fn run_selfcheck() -> SelfCheckReport {
    run_selfcheck_with(StirlingTable::new())
}

pub fn run_selfcheck_with(stirling: StirlingTable) -> SelfCheckReport {
    let mut table = BellTable::with_stirling(stirling);
    let mut report = SelfCheckReport::default();
    let mut record = |name, result| report.outcomes.push(CheckOutcome { name, result });

    record(CROSS_METHOD, cross_method(&mut table));
    record("row and column bases", bases(&mut table));
    record("integrality of series iterates", series_integrality());
    record("strict growth in m", monotonicity(&mut table));
    record("first-difference identity", first_difference(&mut table));
    record("first-order Bell numbers", first_order(&mut table));
    record("Table 1 values", table_one(&mut table));
    record(
        "Stirling numbers = set-partition enumeration",
        stirling_enumeration(table.stirling_mut()),
    );
    record(
        "S(n, n-1) = binomial(n, 2)",
        stirling_subdiagonal(table.stirling_mut()),
    );
    record("Bernoulli recurrence", bernoulli_recurrence());
    record("Faulhaber polynomials = power sums", faulhaber());

    let interpolated: Result<Vec<BellPolynomial>, String> = (1..=10)
        .map(|n| interpolate_bell_polynomial_with(&mut table, n).map_err(|e| e.to_string()))
        .collect();
    let telescoped = telescoped_bell_polynomials(&mut table, 10).map_err(|e| e.to_string());

    record(
        "polynomial form: degree, c_0 = 1, held-out point",
        lemma(&interpolated),
    );
    record(
        "dual construction (telescoped = interpolated)",
        dual_construction(&interpolated, &telescoped),
    );
    record(
        "leading coefficient n!/2^(n-1)",
        theorem(&interpolated, &telescoped),
    );
    record(
        "polynomial values = recursion",
        poly_values(&mut table, &interpolated),
    );
    record(
        "telescoping identity",
        telescoping(&mut table, &interpolated),
    );
    record("ratio convergence for n = 3", ratio_convergence());
    record("Table 2 values", table_two());
    record("byte-stable output", byte_stable());
    record("poly JSON round-trip", poly_round_trip());
    report
}

fn cross_method(table: &mut BellTable) -> Check {
    for n in 1..=12 {
        let mut series = TruncatedEgf::exp(n);
        for m in 0..=6u64 {
            if m > 0 {
                series = series.iterate().map_err(|e| e.to_string())?;
            }
            let via_egf = series.scaled_coefficient(n).map_err(|e| e.to_string())?;
            let via_rec = table.get(n, m);
            ensure(via_egf == via_rec, || {
                format!("n={n} m={m}: series {via_egf}, recursion {via_rec}")
            })?;
        }
    }
    Ok(())
}

fn bases(table: &mut BellTable) -> Check {
    for n in 0..=12 {
        ensure(table.get(n, 0).is_one(), || format!("B_{n}^(0) != 1"))?;
    }
    for m in 0..=6 {
        ensure(table.get(0, m).is_one(), || format!("B_0^({m}) != 1"))?;
        ensure(table.get(1, m).is_one(), || format!("B_1^({m}) != 1"))?;
    }
    Ok(())
}

fn series_integrality() -> Check {
    let mut series = TruncatedEgf::exp(12);
    for m in 1..=6 {
        series = series.iterate().map_err(|e| e.to_string())?;
        ensure(series.coeffs()[0].is_one(), || format!("E_{m}(0) != 1"))?;
        ensure(has_integral_scaled_coefficients(&series), || {
            format!("E_{m} has a non-integral n! a_n")
        })?;
    }
    Ok(())
}

fn monotonicity(table: &mut BellTable) -> Check {
    for n in 2..=12 {
        for m in 1..=6 {
            ensure(table.get(n, m) > table.get(n, m - 1), || {
                format!("B_{n}^({m}) <= B_{n}^({})", m - 1)
            })?;
        }
    }
    Ok(())
}

fn first_difference(table: &mut BellTable) -> Check {
    for n in 2..=12 {
        for m in 1..=6 {
            let diff = table.get(n, m) - table.get(n, m - 1);
            let sum: BigInt = (1..n)
                .map(|k| table.get(k, m - 1) * table.stirling_mut().get(n, k))
                .sum();
            ensure(diff == sum, || format!("n={n} m={m}: {diff} vs {sum}"))?;
        }
    }
    Ok(())
}

fn first_order(table: &mut BellTable) -> Check {
    for n in 1..=12 {
        let direct = bell_first_order(n).map_err(|e| e.to_string())?;
        let rec = table.get(n, 1);
        ensure(direct == rec, || {
            format!("n={n}: sum of S(n,k) = {direct}, B_n^(1) = {rec}")
        })?;
    }
    Ok(())
}

fn table_one(table: &mut BellTable) -> Check {
    for (i, row) in TABLE_1.iter().enumerate() {
        for (j, &expected) in row.iter().enumerate() {
            let (n, m) = (j + 1, i as u64 + 1);
            let got = table.get(n, m);
            ensure(got == BigInt::from(expected), || {
                format!("B_{n}^({m}) = {got}, expected {expected}")
            })?;
        }
    }
    Ok(())
}

fn stirling_enumeration(stirling: &mut StirlingTable) -> Check {
    for n in 0..=12 {
        let counts = block_count_histogram(n);
        for (k, &count) in counts.iter().enumerate() {
            let s = stirling.get(n, k);
            ensure(s == BigInt::from(count), || {
                format!("S({n},{k}) = {s}, enumeration gives {count}")
            })?;
        }
    }
    Ok(())
}

fn stirling_subdiagonal(stirling: &mut StirlingTable) -> Check {
    for n in 2..=12 {
        ensure(stirling.get(n, n - 1) == binomial(n, 2), || {
            format!("n={n}")
        })?;
    }
    Ok(())
}

fn bernoulli_recurrence() -> Check {
    let mut seq = BernoulliSequence::new();
    for k in 1..=20 {
        let sum = (0..=k).fold(BigRational::zero(), |acc, j| {
            acc + BigRational::from_integer(binomial(k + 1, j)) * seq.get(j)
        });
        ensure(sum.is_zero(), || format!("k={k}: sum is {sum}"))?;
        ensure(k < 3 || k % 2 == 0 || seq.get(k).is_zero(), || {
            format!("b_{k} != 0")
        })?;
    }
    Ok(())
}

fn faulhaber() -> Check {
    for r in 0..=12usize {
        let p = faulhaber_polynomial(r);
        ensure(p.degree() == Some(r + 1), || {
            format!("r={r}: degree {:?}", p.degree())
        })?;
        ensure(p.coeff(0).is_zero(), || {
            format!("r={r}: nonzero constant term")
        })?;
        let expected_top = BigRational::new(BigInt::one(), BigInt::from(r + 1));
        ensure(p.coeff(r + 1) == expected_top, || {
            format!("r={r}: leading {}", p.coeff(r + 1))
        })?;
        for m in 0..=200u64 {
            let oracle = BigRational::from_integer(power_sum_oracle(r as u32, m));
            ensure(p.eval(&BigInt::from(m)) == oracle, || {
                format!("r={r} m={m}")
            })?;
        }
    }
    Ok(())
}

fn lemma(interpolated: &Result<Vec<BellPolynomial>, String>) -> Check {
    for b in interpolated.as_ref().map_err(Clone::clone)? {
        let n = b.n();
        ensure(b.poly().degree() == Some(n - 1), || {
            format!("n={n}: degree {:?}", b.poly().degree())
        })?;
        ensure(b.poly().coeff(0).is_one(), || {
            format!("n={n}: c_0 = {}", b.poly().coeff(0))
        })?;
    }
    Ok(())
}

fn dual_construction(
    interpolated: &Result<Vec<BellPolynomial>, String>,
    telescoped: &Result<Vec<BellPolynomial>, String>,
) -> Check {
    let interpolated = interpolated.as_ref().map_err(Clone::clone)?;
    let telescoped = telescoped.as_ref().map_err(Clone::clone)?;
    for (a, b) in interpolated.iter().zip(telescoped) {
        ensure(a.poly() == b.poly(), || {
            format!("n={}: {} vs {}", a.n(), a.poly(), b.poly())
        })?;
    }
    Ok(())
}

fn theorem(
    interpolated: &Result<Vec<BellPolynomial>, String>,
    telescoped: &Result<Vec<BellPolynomial>, String>,
) -> Check {
    let interpolated = interpolated.as_ref().map_err(Clone::clone)?;
    let telescoped = telescoped.as_ref().map_err(Clone::clone)?;
    for (a, b) in interpolated.iter().zip(telescoped) {
        let n = a.n();
        let closed = leading_coefficient_closed_form(n);
        ensure(a.leading_coefficient() == closed, || {
            format!("n={n}: interpolated top {}", a.leading_coefficient())
        })?;
        ensure(b.leading_coefficient() == closed, || {
            format!("n={n}: telescoped top {}", b.leading_coefficient())
        })?;
        ensure(leading_coefficient(n) == closed, || {
            format!("n={n}: recurrence {}", leading_coefficient(n))
        })?;
    }
    Ok(())
}

fn poly_values(table: &mut BellTable, interpolated: &Result<Vec<BellPolynomial>, String>) -> Check {
    for b in interpolated.as_ref().map_err(Clone::clone)?.iter().take(8) {
        for m in 0..=10u64 {
            let v = b.poly().eval(&BigInt::from(m));
            let rec = table.get(b.n(), m);
            ensure(v == BigRational::from_integer(rec.clone()), || {
                format!("n={} m={m}: {v} vs {rec}", b.n())
            })?;
        }
    }
    Ok(())
}

fn telescoping(table: &mut BellTable, interpolated: &Result<Vec<BellPolynomial>, String>) -> Check {
    let lower = interpolated.as_ref().map_err(Clone::clone)?;
    for n in 2..=10 {
        let diff = crate::polynomial::difference_polynomial_with(table, n, &lower[..n - 1])
            .map_err(|e| e.to_string())?;
        let b = lower[n - 1].poly();
        let lhs: RationalPolynomial = b - &b.shift(&BigInt::from(-1));
        ensure(&lhs == diff.poly(), || {
            format!("n={n}: {lhs} vs {}", diff.poly())
        })?;
        ensure(
            diff.poly().degree() == Some(n - 2)
                && diff.poly().leading().is_some_and(|c| c.is_positive()),
            || format!("n={n}: difference polynomial {}", diff.poly()),
        )?;
    }
    Ok(())
}

fn ratio_convergence() -> Check {
    let mut previous: Option<BigRational> = None;
    for m in [10u64, 100, 1000, 10_000] {
        let report = asymptotic_report(3, &BigInt::from(m)).map_err(|e| e.to_string())?;
        let excess = &report.ratio - BigRational::one();
        ensure(excess.is_positive(), || {
            format!("m={m}: ratio {} <= 1", report.ratio)
        })?;
        if let Some(prev) = &previous {
            ensure(&excess < prev, || format!("m={m}: ratio did not decrease"))?;
        }
        previous = Some(excess);
    }
    Ok(())
}

fn table_two() -> Check {
    for (m, exact, leading) in TABLE_2 {
        let report = asymptotic_report(3, &BigInt::from(m)).map_err(|e| e.to_string())?;
        ensure(report.exact == BigInt::from(exact), || {
            format!("m={m}: exact {}", report.exact)
        })?;
        ensure(
            report.leading == BigRational::from_integer(leading.into()),
            || format!("m={m}: leading {}", report.leading),
        )?;
    }
    Ok(())
}

fn byte_stable() -> Check {
    let render = || -> Result<Vec<String>, String> {
        let e = |e: super::CliError| e.to_string();
        Ok(vec![
            cmd_table(8, 5, Format::Tsv).map_err(e)?,
            cmd_table(8, 5, Format::Json).map_err(e)?,
            cmd_poly(6, Format::Json, false).map_err(e)?,
            cmd_asympt(3, 100, 12, Format::Markdown).map_err(e)?,
        ])
    };
    let first = render()?;
    let second = render()?;
    ensure(first == second, || "repeated runs differ".into())?;
    ensure(
        first.iter().all(|s| s.ends_with('\n') && !s.contains('\r')),
        || "output is not newline-terminated LF text".into(),
    )
}

fn poly_round_trip() -> Check {
    for n in 1..=8 {
        let json = cmd_poly(n, Format::Json, false).map_err(|e| e.to_string())?;
        let doc: PolyDocument = serde_json::from_str(&json).map_err(|e| e.to_string())?;
        let coeffs: Vec<BigRational> = doc
            .coefficients
            .iter()
            .map(|c| c.parse::<BigRational>().map_err(|e| format!("{c}: {e}")))
            .collect::<Result<_, _>>()?;
        let poly = RationalPolynomial::new(coeffs);
        for m in 0..=n as u64 {
            let printed =
                cmd_value(n, m, Method::Recursion, Format::Tsv).map_err(|e| e.to_string())?;
            let value = poly.eval(&BigInt::from(m));
            ensure(format!("{value}\n") == printed, || {
                format!("n={n} m={m}: {value} vs {}", printed.trim())
            })?;
        }
    }
    Ok(())
}
