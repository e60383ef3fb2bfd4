//! Validation of parameter combinations and execution of each subcommand.

use probbern_core::bernoulli::{poly_sequence, special_sequence, BasisSpec, PolyFamily, SpecialFamily};
use probbern_core::exactnum::{Mode, Rational, RingValue};
use probbern_core::randvar::RandomVariable;
use probbern_core::represent::{expand_higher, expand_thm31, expand_thm33, BasisExpansion, Form};
use probbern_core::series::Poly;
use probbern_core::stirling::{build_table, StirlingFamily};
use probbern_core::verify::{run_suite, IdentityReport, SUITES};
use serde::Serialize;

use crate::args::{
    BasisArg, BernoulliArgs, Cli, Command, ExpandArgs, FamilyArg, Format, StirlingArgs, Variant, VerifyArgs,
};
use crate::output::{csv_cell, to_csv, to_json};
use crate::{CliError, Outcome};

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Stirling(a) => stirling(a, cli.format),
        Command::Bernoulli(a) => bernoulli(a, cli.format),
        Command::Expand(a) => expand(a, cli.format),
        Command::Verify(a) => verify(a, cli),
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn lambda_text(l: &RingValue) -> String {
    if *l == RingValue::lambda() {
        "symbolic".into()
    } else {
        l.to_string()
    }
}

/// Requires the option exactly when `needed`.
fn exactly_when<'a, T>(value: Option<&'a T>, needed: bool, flag: &str, what: &str) -> Result<Option<&'a T>, CliError> {
    match (value, needed) {
        (None, true) => Err(usage(format!("{what} requires --{flag}"))),
        (Some(_), false) => Err(usage(format!("{what} does not take --{flag}"))),
        (v, _) => Ok(v),
    }
}

fn done(text: String) -> Result<Outcome, CliError> {
    Ok(Outcome { text, ok: true })
}

#[derive(Serialize)]
struct TableEntry<'a> {
    n: usize,
    k: usize,
    value: &'a RingValue,
}

#[derive(Serialize)]
struct StirlingOutput<'a> {
    family: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    rv: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lambda: Option<String>,
    nmax: usize,
    rows: Vec<TableEntry<'a>>,
}

fn stirling(a: &StirlingArgs, format: Format) -> Result<Outcome, CliError> {
    use StirlingFamily::*;
    let family = match (a.variant, a.kind) {
        (Variant::Classical, 1) => S1,
        (Variant::Classical, _) => S2,
        (Variant::Degenerate, 1) => S1Deg,
        (Variant::Degenerate, _) => S2Deg,
        (Variant::Prob, 1) => S1Prob,
        (Variant::Prob, _) => S2Prob,
        (Variant::ProbDegenerate, 1) => S1ProbDeg,
        (Variant::ProbDegenerate, _) => S2ProbDeg,
    };
    let what = format!("the {family} table");
    let rv = exactly_when(a.rv.as_ref(), family.needs_rv(), "rv", &what)?;
    let lambda = exactly_when(a.lambda.as_ref(), family.needs_lambda(), "lambda", &what)?;
    let table = build_table(family, rv, lambda, a.nmax)?;
    let entries: Vec<TableEntry> = table
        .rows()
        .iter()
        .enumerate()
        .flat_map(|(n, row)| row.iter().enumerate().map(move |(k, value)| TableEntry { n, k, value }))
        .collect();
    match format {
        Format::Json => done(to_json(&StirlingOutput {
            family: family.to_string(),
            rv: rv.map(ToString::to_string),
            lambda: lambda.map(lambda_text),
            nmax: a.nmax,
            rows: entries,
        })?),
        Format::Csv => {
            let rows: Vec<Vec<String>> = entries
                .iter()
                .map(|e| vec![e.n.to_string(), e.k.to_string(), csv_cell(e.value)])
                .collect();
            done(to_csv(&["n", "k", "value"], &rows)?)
        }
    }
}

enum Family {
    Poly(PolyFamily),
    Numbers(SpecialFamily),
}

fn family_of(f: FamilyArg) -> Family {
    match f {
        FamilyArg::Bern => Family::Poly(PolyFamily::Bern),
        FamilyArg::DegBern => Family::Poly(PolyFamily::DegBern),
        FamilyArg::ProbBern => Family::Poly(PolyFamily::ProbBern),
        FamilyArg::ProbDegBern => Family::Poly(PolyFamily::ProbDegBern),
        FamilyArg::BernNum => Family::Numbers(SpecialFamily::BernNum),
        FamilyArg::DegBernNum => Family::Numbers(SpecialFamily::DegBernNum),
        FamilyArg::BernSecondKind => Family::Numbers(SpecialFamily::BernSecondKind),
        FamilyArg::DegBernSecondKind => Family::Numbers(SpecialFamily::DegBernSecondKind),
        FamilyArg::FrobeniusEuler => Family::Numbers(SpecialFamily::FrobeniusEuler),
        FamilyArg::DegFrobeniusEuler => Family::Numbers(SpecialFamily::DegFrobeniusEuler),
    }
}

#[derive(Serialize)]
struct PolyRow<'a> {
    n: usize,
    coeffs: &'a [RingValue],
}

#[derive(Serialize)]
struct NumberRow<'a> {
    n: usize,
    value: &'a RingValue,
}

#[derive(Serialize)]
struct BernoulliOutput<R: Serialize> {
    family: String,
    order: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    rv: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lambda: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    u: Option<String>,
    nmax: usize,
    rows: Vec<R>,
}

fn bernoulli(a: &BernoulliArgs, format: Format) -> Result<Outcome, CliError> {
    let name = clap::ValueEnum::to_possible_value(&a.family).map_or_else(String::new, |v| v.get_name().to_string());
    let what = format!("family {name}");
    let lambda_text = a.lambda.as_ref().map(lambda_text);
    match family_of(a.family) {
        Family::Poly(fam) => {
            let rv = exactly_when(a.rv.as_ref(), fam.is_probabilistic(), "rv", &what)?;
            let lambda = exactly_when(a.lambda.as_ref(), fam.is_degenerate(), "lambda", &what)?;
            exactly_when(a.u.as_ref(), false, "u", &what)?;
            let seq = poly_sequence(fam, rv, lambda, a.order, a.nmax)?;
            let seq = &seq.entries[..=a.nmax];
            match format {
                Format::Json => done(to_json(&BernoulliOutput {
                    family: name,
                    order: a.order,
                    rv: rv.map(ToString::to_string),
                    lambda: lambda_text,
                    u: None,
                    nmax: a.nmax,
                    rows: seq
                        .iter()
                        .enumerate()
                        .map(|(n, p)| PolyRow { n, coeffs: p.coeffs() })
                        .collect(),
                })?),
                Format::Csv => {
                    let rows: Vec<Vec<String>> = seq
                        .iter()
                        .enumerate()
                        .flat_map(|(n, p)| {
                            p.coeffs()
                                .iter()
                                .enumerate()
                                .map(move |(j, c)| vec![n.to_string(), j.to_string(), csv_cell(c)])
                        })
                        .collect();
                    done(to_csv(&["n", "j", "value"], &rows)?)
                }
            }
        }
        Family::Numbers(fam) => {
            let fe = matches!(fam, SpecialFamily::FrobeniusEuler | SpecialFamily::DegFrobeniusEuler);
            exactly_when(a.rv.as_ref(), false, "rv", &what)?;
            let lambda = exactly_when(a.lambda.as_ref(), fam.is_degenerate(), "lambda", &what)?;
            let u = exactly_when(a.u.as_ref(), fe, "u", &what)?;
            if u.is_some_and(Rational::is_one) {
                return Err(usage("--u must differ from 1"));
            }
            if !fe && a.order != 1 {
                return Err(usage(format!("{what} does not take --order")));
            }
            let one = Rational::one();
            let seq = special_sequence(fam, lambda, a.order, u.unwrap_or(&one), a.nmax)?;
            let entries = &seq.entries[..=a.nmax];
            match format {
                Format::Json => done(to_json(&BernoulliOutput {
                    family: name,
                    order: a.order,
                    rv: None,
                    lambda: lambda_text,
                    u: u.map(ToString::to_string),
                    nmax: a.nmax,
                    rows: entries
                        .iter()
                        .enumerate()
                        .map(|(n, value)| NumberRow { n, value })
                        .collect(),
                })?),
                Format::Csv => {
                    let rows: Vec<Vec<String>> = entries
                        .iter()
                        .enumerate()
                        .map(|(n, v)| vec![n.to_string(), csv_cell(v)])
                        .collect();
                    done(to_csv(&["n", "value"], &rows)?)
                }
            }
        }
    }
}

#[derive(Serialize)]
struct BasisOutput {
    family: String,
    rv: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    lambda: Option<String>,
    order: usize,
}

#[derive(Serialize)]
struct ExpandOutput<'a> {
    poly: Vec<String>,
    basis: BasisOutput,
    method: String,
    coeffs: &'a [RingValue],
}

fn expand(a: &ExpandArgs, format: Format) -> Result<Outcome, CliError> {
    let rv = a.rv.clone().unwrap_or_else(RandomVariable::constant_one);
    let lambda = match a.basis {
        BasisArg::B => exactly_when(a.lambda.as_ref(), false, "lambda", "basis B")?.cloned(),
        BasisArg::Beta => Some(a.lambda.clone().unwrap_or_else(RingValue::lambda)),
    };
    if a.order == 0 {
        return Err(usage("--order must be at least 1"));
    }
    if a.order > 1 && a.form.is_some() {
        return Err(usage("--form applies to order 1 only"));
    }
    let form = Form::try_from(a.form.unwrap_or(1)).map_err(|e| usage(e.to_string()))?;
    let p = Poly::from_rationals(Mode::Rational, &a.poly.0);
    let e: BasisExpansion = match (&lambda, a.order) {
        (None, 1) => expand_thm31(&p, &rv, form)?,
        (Some(l), 1) => expand_thm33(&p, &rv, l, form)?,
        (l, r) => expand_higher(&p, &rv, l.as_ref(), r)?,
    };
    let basis: &BasisSpec = &e.basis;
    match format {
        Format::Json => done(to_json(&ExpandOutput {
            poly: a.poly.0.iter().map(ToString::to_string).collect(),
            basis: BasisOutput {
                family: basis.family.to_string(),
                rv: basis.rv.to_string(),
                lambda: basis.lambda.as_ref().map(lambda_text),
                order: basis.r,
            },
            method: e.method.to_string(),
            coeffs: &e.coeffs,
        })?),
        Format::Csv => {
            let rows: Vec<Vec<String>> = e
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| vec![k.to_string(), csv_cell(c)])
                .collect();
            done(to_csv(&["k", "coefficient"], &rows)?)
        }
    }
}

#[derive(Serialize)]
struct VerifyOutput<'a> {
    suite: &'a str,
    nmax: usize,
    seed: u64,
    strict: bool,
    passed: bool,
    reports: &'a [IdentityReport],
}

fn verify(a: &VerifyArgs, cli: &Cli) -> Result<Outcome, CliError> {
    if cli.format == Format::Csv {
        return Err(usage("verify reports are JSON only; CSV is for tables"));
    }
    let names: Vec<&str> = match a.suite.as_str() {
        "all" => SUITES.to_vec(),
        s if SUITES.contains(&s) => vec![s],
        s => {
            return Err(usage(format!(
                "unknown suite {s:?}; expected one of: all, {}",
                SUITES.join(", ")
            )))
        }
    };
    let reports = names
        .iter()
        .map(|s| run_suite(s, a.nmax, cli.seed))
        .collect::<Result<Vec<_>, _>>()?;
    let passed = reports
        .iter()
        .all(|r| if cli.strict { r.passed_strict() } else { r.passed() });
    let text = to_json(&VerifyOutput {
        suite: &a.suite,
        nmax: a.nmax,
        seed: cli.seed,
        strict: cli.strict,
        passed,
        reports: &reports,
    })?;
    Ok(Outcome { text, ok: passed })
}
