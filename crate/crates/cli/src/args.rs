//! Command-line grammar. Every spec string is parsed here, so malformed
//! input is a usage error before any engine runs.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use probbern_core::exactnum::{Rational, RingValue};
use probbern_core::randvar::RandomVariable;

#[derive(Parser, Debug)]
#[command(
    name = "probbern",
    version,
    about = "Exact probabilistic Stirling numbers, Bernoulli polynomials and basis expansions"
)]
pub struct Cli {
    /// Output format; CSV is available for tables only.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write output to PATH (atomically) instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Treat failed diagnostic cases as failures.
    #[arg(long, global = true)]
    pub strict: bool,
    /// Seed for the random inputs of verification suites.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Triangular table of Stirling numbers.
    Stirling(StirlingArgs),
    /// Bernoulli-type polynomials or numbers.
    Bernoulli(BernoulliArgs),
    /// Coefficients of a polynomial in a Bernoulli-type basis.
    Expand(ExpandArgs),
    /// Run a named identity suite, or all of them.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Variant {
    Classical,
    Degenerate,
    Prob,
    ProbDegenerate,
}

#[derive(Args, Debug)]
pub struct StirlingArgs {
    /// 1 for the first kind, 2 for the second.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
    pub kind: u8,
    #[arg(long, value_enum)]
    pub variant: Variant,
    /// Random variable, e.g. `binomial:m=4,p=2/5`.
    #[arg(long, value_parser = parse_rv)]
    pub rv: Option<RandomVariable>,
    /// `symbolic` or a rational.
    #[arg(long, value_parser = parse_lambda, allow_hyphen_values = true)]
    pub lambda: Option<RingValue>,
    #[arg(long)]
    pub nmax: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Bern,
    DegBern,
    ProbBern,
    ProbDegBern,
    BernNum,
    DegBernNum,
    BernSecondKind,
    DegBernSecondKind,
    FrobeniusEuler,
    DegFrobeniusEuler,
}

#[derive(Args, Debug)]
pub struct BernoulliArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    /// Order r of the family.
    #[arg(long, default_value_t = 1)]
    pub order: usize,
    #[arg(long, value_parser = parse_rv)]
    pub rv: Option<RandomVariable>,
    #[arg(long, value_parser = parse_lambda, allow_hyphen_values = true)]
    pub lambda: Option<RingValue>,
    /// Parameter u ≠ 1 of the Frobenius–Euler families.
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    pub u: Option<Rational>,
    #[arg(long)]
    pub nmax: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BasisArg {
    /// Probabilistic Bernoulli polynomials.
    #[value(name = "B")]
    B,
    /// Probabilistic degenerate Bernoulli polynomials.
    #[value(name = "beta")]
    Beta,
}

#[derive(Args, Debug)]
pub struct ExpandArgs {
    /// Coefficients c_0,c_1,... of p(x) = Σ c_j x^j.
    #[arg(long, value_parser = parse_poly, allow_hyphen_values = true)]
    pub poly: Coefficients,
    #[arg(long, value_enum)]
    pub basis: BasisArg,
    /// Defaults to `constant1`, the classical families.
    #[arg(long, value_parser = parse_rv)]
    pub rv: Option<RandomVariable>,
    /// For the `beta` basis; defaults to `symbolic`.
    #[arg(long, value_parser = parse_lambda, allow_hyphen_values = true)]
    pub lambda: Option<RingValue>,
    /// Order r of the basis.
    #[arg(long, default_value_t = 1)]
    pub order: usize,
    /// Coefficient form 1, 2 or 3 of the first-order engines.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
    pub form: Option<u8>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Suite name, or `all`.
    #[arg(long)]
    pub suite: String,
    #[arg(long, default_value_t = 8)]
    pub nmax: usize,
}

pub fn parse_rv(s: &str) -> Result<RandomVariable, String> {
    s.parse().map_err(|e| format!("{e}"))
}

pub fn parse_rational(s: &str) -> Result<Rational, String> {
    s.trim().parse().map_err(|e| format!("{e}"))
}

pub fn parse_lambda(s: &str) -> Result<RingValue, String> {
    match s.trim() {
        "symbolic" => Ok(RingValue::lambda()),
        t => parse_rational(t).map(RingValue::Rational),
    }
}

/// A nonempty coefficient list, lowest degree first.
#[derive(Clone, Debug, PartialEq)]
pub struct Coefficients(pub Vec<Rational>);

fn parse_poly(s: &str) -> Result<Coefficients, String> {
    if s.trim().is_empty() {
        return Err("the coefficient list is empty".into());
    }
    s.split(',')
        .map(parse_rational)
        .collect::<Result<_, _>>()
        .map(Coefficients)
}
