//! Command-line front end: tables, single values, polynomials, asymptotic
//! reports and the self-check suite.
//!
//! Every command renders to a `String` so output is byte-stable and testable
//! without spawning a process. Integers and rationals are always printed
//! exactly; JSON carries them as strings.

mod decimal;
pub mod selfcheck;

use std::fmt::Write;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::json;
use thiserror::Error;

use crate::bell_numbers::{bell_via_egf, bell_via_recursion};
use crate::combinatorics::StirlingTable;
use crate::polynomial::{
    asymptotic_report, construct_bell_polynomial, fraction_string, interpolate_bell_polynomial,
    leading_coefficient, leading_coefficient_closed_form,
};

pub use decimal::decimal_expansion;

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFICATION: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

/// `auto` switches from the recursion to the polynomial above this `m`.
pub const AUTO_POLY_THRESHOLD: u64 = 1000;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error(transparent)]
    Compute(#[from] crate::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Verification(_) | CliError::Compute(_) => EXIT_VERIFICATION,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Tsv,
    Json,
    Markdown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Method {
    Egf,
    Recursion,
    Poly,
    #[default]
    Auto,
}

impl Method {
    fn resolve(self, m: u64) -> Method {
        match self {
            Method::Auto if m > AUTO_POLY_THRESHOLD => Method::Poly,
            Method::Auto => Method::Recursion,
            other => other,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Method::Egf => "egf",
            Method::Recursion => "recursion",
            Method::Poly => "poly",
            Method::Auto => "auto",
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "bell",
    version,
    about = "Exact higher-order Bell numbers B_n^(m)"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Grid of B_n^(m) for 1 <= n <= n_max, 1 <= m <= m_max
    Table {
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        #[arg(long, default_value_t = 5)]
        m_max: u64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// A single B_n^(m)
    Value {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: u64,
        #[arg(long, value_enum, default_value_t)]
        method: Method,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Coefficients c_0..c_{n-1} of B_n^(m) as a polynomial in m
    Poly {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// Accept n = 0 (the constant polynomial 1)
        #[arg(long)]
        allow_zero: bool,
    },
    /// B_n^(m) against its leading term (n!/2^(n-1)) m^(n-1)
    Asympt {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: u64,
        #[arg(long, default_value_t = 10)]
        digits: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Run every invariant check; exit 1 naming the first failure
    Selfcheck {
        /// Corrupt S(N, K) in the Stirling recurrence, as "N,K"
        #[arg(long, hide = true, value_parser = parse_pair)]
        perturb_stirling: Option<(usize, usize)>,
    },
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or("expected N,K")?;
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| e.to_string());
    Ok((parse(a)?, parse(b)?))
}

/// Runs one command and returns what it prints on stdout.
pub fn run(command: &Command) -> Result<String, CliError> {
    match *command {
        Command::Table {
            n_max,
            m_max,
            format,
        } => cmd_table(n_max, m_max, format),
        Command::Value {
            n,
            m,
            method,
            format,
        } => cmd_value(n, m, method, format),
        Command::Poly {
            n,
            format,
            allow_zero,
        } => cmd_poly(n, format, allow_zero),
        Command::Asympt {
            n,
            m,
            digits,
            format,
        } => cmd_asympt(n, m, digits, format),
        Command::Selfcheck { perturb_stirling } => {
            let stirling = match perturb_stirling {
                Some((n, k)) => StirlingTable::with_fault(n, k),
                None => StirlingTable::new(),
            };
            let report = selfcheck::run_selfcheck_with(stirling);
            if report.passed() {
                Ok(report.render())
            } else {
                Err(CliError::Verification(report.render()))
            }
        }
    }
}

fn to_json_line(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string(value).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn cmd_table(n_max: usize, m_max: u64, format: Format) -> Result<String, CliError> {
    if n_max == 0 || m_max == 0 {
        return Err(CliError::Usage("table bounds must be at least 1".into()));
    }
    let rows: Vec<Vec<String>> = (1..=m_max)
        .map(|m| {
            (1..=n_max)
                .map(|n| bell_via_recursion(n, m).to_string())
                .collect()
        })
        .collect();
    let mut out = String::new();
    match format {
        Format::Tsv => {
            out.push('m');
            for n in 1..=n_max {
                write!(out, "\tn={n}").unwrap();
            }
            out.push('\n');
            for (m, row) in (1..).zip(&rows) {
                writeln!(out, "{m}\t{}", row.join("\t")).unwrap();
            }
        }
        Format::Markdown => {
            out.push_str("| m \\ n |");
            for n in 1..=n_max {
                write!(out, " {n} |").unwrap();
            }
            out.push_str("\n|---|");
            out.push_str(&"---|".repeat(n_max));
            out.push('\n');
            for (m, row) in (1..).zip(&rows) {
                writeln!(out, "| {m} | {} |", row.join(" | ")).unwrap();
            }
        }
        Format::Json => {
            let rows: Vec<_> = (1u64..)
                .zip(&rows)
                .map(|(m, values)| json!({ "m": m, "values": values }))
                .collect();
            out = to_json_line(&json!({ "n_max": n_max, "m_max": m_max, "rows": rows }));
        }
    }
    Ok(out)
}

/// `B_n^(m)` by the chosen route.
pub fn bell_value(n: usize, m: u64, method: Method) -> Result<BigInt, CliError> {
    Ok(match method.resolve(m) {
        Method::Egf => bell_via_egf(n, m),
        Method::Recursion => bell_via_recursion(n, m),
        Method::Poly | Method::Auto => interpolate_bell_polynomial(n)?.value(&BigInt::from(m))?,
    })
}

pub fn cmd_value(n: usize, m: u64, method: Method, format: Format) -> Result<String, CliError> {
    let value = bell_value(n, m, method)?;
    let used = method.resolve(m).name();
    Ok(match format {
        Format::Tsv => format!("{value}\n"),
        Format::Markdown => {
            format!(
                "| n | m | method | value |\n|---|---|---|---|\n| {n} | {m} | {used} | {value} |\n"
            )
        }
        Format::Json => to_json_line(&json!({
            "n": n,
            "m": m.to_string(),
            "method": used,
            "value": value.to_string(),
        })),
    })
}

/// JSON document emitted by `bell poly --format json`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyDocument {
    pub n: usize,
    pub coefficients: Vec<String>,
    pub leading_theorem: String,
    #[serde(rename = "match")]
    pub matches: bool,
}

pub fn poly_document(n: usize) -> Result<PolyDocument, CliError> {
    let bell = construct_bell_polynomial(n)?;
    let top = bell.leading_coefficient();
    // n = 0 is outside the closed form; the recurrence's empty product is 1.
    let theorem = if n == 0 {
        leading_coefficient(0)
    } else {
        leading_coefficient_closed_form(n)
    };
    Ok(PolyDocument {
        n,
        coefficients: bell.poly().coefficient_strings(),
        leading_theorem: fraction_string(&theorem),
        matches: top == theorem && leading_coefficient(n) == theorem,
    })
}

pub fn cmd_poly(n: usize, format: Format, allow_zero: bool) -> Result<String, CliError> {
    if n == 0 && !allow_zero {
        return Err(CliError::Usage(
            "poly needs n >= 1 (pass --allow-zero for the constant extension)".into(),
        ));
    }
    let doc = poly_document(n)?;
    let mut out = String::new();
    match format {
        Format::Json => out = to_json_line(&doc),
        Format::Tsv => {
            writeln!(out, "n\t{n}").unwrap();
            for (j, c) in doc.coefficients.iter().enumerate() {
                writeln!(out, "c_{j}\t{c}").unwrap();
            }
            writeln!(out, "leading_theorem\t{}", doc.leading_theorem).unwrap();
            writeln!(out, "match\t{}", doc.matches).unwrap();
        }
        Format::Markdown => {
            out.push_str("| coefficient | value |\n|---|---|\n");
            for (j, c) in doc.coefficients.iter().enumerate() {
                writeln!(out, "| c_{j} | {c} |").unwrap();
            }
            writeln!(
                out,
                "\nleading_theorem: {}, match: {}",
                doc.leading_theorem, doc.matches
            )
            .unwrap();
        }
    }
    Ok(out)
}

pub fn cmd_asympt(n: usize, m: u64, digits: usize, format: Format) -> Result<String, CliError> {
    if n == 0 || m == 0 {
        return Err(CliError::Usage("asympt needs n >= 1 and m >= 1".into()));
    }
    let report = asymptotic_report(n, &BigInt::from(m))?;
    let fields = [
        ("n", n.to_string()),
        ("m", m.to_string()),
        ("exact", report.exact.to_string()),
        ("leading", fraction_string(&report.leading)),
        ("ratio", fraction_string(&report.ratio)),
        ("ratio_decimal", decimal_expansion(&report.ratio, digits)),
    ];
    let mut out = String::new();
    match format {
        Format::Tsv => {
            for (k, v) in &fields {
                writeln!(out, "{k}\t{v}").unwrap();
            }
        }
        Format::Markdown => {
            out.push_str("| field | value |\n|---|---|\n");
            for (k, v) in &fields {
                writeln!(out, "| {k} | {v} |").unwrap();
            }
        }
        Format::Json => {
            let mut obj = serde_json::Map::new();
            for (k, v) in fields {
                let v = if k == "n" { json!(n) } else { json!(v) };
                obj.insert(k.to_string(), v);
            }
            out = to_json_line(&obj);
        }
    }
    Ok(out)
}
