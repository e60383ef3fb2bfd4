//! The registered identity suites.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bernoulli::{poly_sequence, poly_sequence_for, special_sequence, BasisSpec, PolyFamily, SpecialFamily};
use crate::error::{Error, Result};
use crate::exactnum::{binomial, factorial, falling_factorial, harmonic, q, Mode, Rational, Ring, RingValue};
use crate::randvar::RandomVariable;
use crate::represent::{
    expand_classical, expand_higher, expand_thm31, expand_thm33, oracle_for, ClassicalVariant, DeltaOperators, Form,
};
use crate::series::{apply_operator, forward_diff, integrate_unit, Poly, Series};
use crate::stirling::{build_table, check_orthogonality, StirlingFamily};

use super::section5::{degenerate_miki_coefficients, section5_crosscheck, Example};
use super::{CaseDescriptor, CaseStatus, IdentityReport};

/// Names accepted by [`run_suite`].
pub const SUITES: [&str; 14] = [
    "orthogonality",
    "inverse-relations",
    "difference-identities",
    "lowering",
    "inverse-pairs",
    "reflection",
    "lemma51",
    "miki-fpz",
    "degenerate-miki",
    "section5-crosschecks",
    "limits",
    "barf-expansion",
    "s2-from-differences",
    "engines-vs-oracle",
];

/// Runs one named suite over n ≤ `nmax`. Random inputs are drawn from a
/// ChaCha8 stream seeded with `seed`.
pub fn run_suite(name: &str, nmax: usize, seed: u64) -> Result<IdentityReport> {
    let mut report = IdentityReport::new(name, nmax, seed);
    match name {
        "orthogonality" => orthogonality(&mut report, nmax, seed, true),
        "inverse-relations" => orthogonality(&mut report, nmax, seed, false),
        "difference-identities" => difference_identities(&mut report, nmax),
        "lowering" => lowering(&mut report, nmax),
        "inverse-pairs" => inverse_pairs(&mut report),
        "reflection" => reflection(&mut report, nmax),
        "lemma51" => lemma51(&mut report, nmax),
        "miki-fpz" => miki_fpz(&mut report, nmax),
        "degenerate-miki" => degenerate_miki(&mut report, nmax),
        "section5-crosschecks" => {
            for example in Example::ALL {
                for n in 1..=nmax {
                    report.absorb(section5_crosscheck(example, n));
                }
            }
        }
        "limits" => limits(&mut report, nmax, seed),
        "barf-expansion" => barf_expansion(&mut report, nmax),
        "s2-from-differences" => s2_from_differences(&mut report, nmax),
        "engines-vs-oracle" => engines_vs_oracle(&mut report, nmax, seed),
        _ => return Err(Error::UnknownSuite(name.into())),
    }
    Ok(report)
}

/// Runs every registered suite in order.
pub fn run_all(nmax: usize, seed: u64) -> Vec<IdentityReport> {
    SUITES
        .iter()
        .map(|s| run_suite(s, nmax, seed).expect("registered suite"))
        .collect()
}

/// Displays a slice as `[a, b, ...]` so whole vectors can be checked as one case.
#[derive(PartialEq)]
struct Listed<T>(Vec<T>);

impl<T: fmt::Display> fmt::Display for Listed<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("]")
    }
}

fn series_pair(a: Series, b: Series) -> (Listed<RingValue>, Listed<RingValue>) {
    (Listed(a.coeffs().to_vec()), Listed(b.coeffs().to_vec()))
}

fn lambdas() -> [RingValue; 2] {
    [RingValue::lambda(), RingValue::Rational(q(1, 3))]
}

/// λ absent, symbolic, and 1/3.
fn lambda_options() -> Vec<Option<RingValue>> {
    let mut out = vec![None];
    out.extend(lambdas().into_iter().map(Some));
    out
}

fn mode_of(lambda: Option<&RingValue>) -> Mode {
    lambda.map_or(Mode::Rational, RingValue::mode)
}

fn desc(id: &str, rv: Option<&RandomVariable>, lambda: Option<&RingValue>) -> CaseDescriptor {
    let d = CaseDescriptor::new(id).lambda(lambda);
    match rv {
        Some(rv) => d.rv(rv),
        None => d,
    }
}

fn error_case(report: &mut IdentityReport, d: CaseDescriptor, e: Error) {
    report.push(
        d,
        CaseStatus::Fail {
            lhs: format!("error: {e}"),
            rhs: "a value".into(),
        },
        false,
    );
}

fn orthogonality(report: &mut IdentityReport, nmax: usize, seed: u64, orth: bool) {
    let mut pairs: Vec<(StirlingFamily, Option<RandomVariable>, Option<RingValue>)> =
        vec![(StirlingFamily::S2, None, None)];
    for l in lambdas() {
        pairs.push((StirlingFamily::S2Deg, None, Some(l)));
    }
    for rv in RandomVariable::fixtures() {
        pairs.push((StirlingFamily::S2Prob, Some(rv.clone()), None));
        for l in lambdas() {
            pairs.push((StirlingFamily::S2ProbDeg, Some(rv.clone()), Some(l)));
        }
    }
    for (fam2, rv, lambda) in pairs {
        let tables = build_table(fam2, rv.as_ref(), lambda.as_ref(), nmax)
            .and_then(|t2| Ok((t2, build_table(fam2.partner(), rv.as_ref(), lambda.as_ref(), nmax)?)));
        let (t2, t1) = match tables {
            Ok(t) => t,
            Err(e) => {
                error_case(
                    report,
                    desc("stirling-table", rv.as_ref(), lambda.as_ref()).detail(fam2.to_string()),
                    e,
                );
                continue;
            }
        };
        for c in check_orthogonality(&t2, &t1, seed).cases {
            let is_orth = c.descriptor.identity.starts_with("orthogonality");
            if is_orth == orth || c.descriptor.identity == "pairing" {
                report.push(c.descriptor, c.status, c.diagnostic);
            }
        }
    }
}

/// n Σ_k S(n-1, k) (x)_k.
fn falling_sum(table: &crate::stirling::StirlingTable, n: usize, mode: Mode) -> Poly {
    let x = Poly::monomial(mode, 1);
    let step = Poly::constant(RingValue::one(mode));
    (0..n)
        .fold(Poly::zero_poly(mode), |acc, k| {
            let ff = falling_factorial(&x, k, &step);
            acc.plus(&ff.times_scalar(&table.get(n - 1, k)))
        })
        .times_scalar(&RingValue::int(n as i64, mode))
}

fn difference_identities(report: &mut IdentityReport, nmax: usize) {
    for rv in RandomVariable::fixtures() {
        for lambda in lambda_options() {
            let lambda = lambda.as_ref();
            let mode = mode_of(lambda);
            let one = RingValue::one(mode);
            let zero = RingValue::zero(mode);
            let d = |id: &str| desc(id, Some(&rv), lambda);
            let family = if lambda.is_some() {
                StirlingFamily::S2ProbDeg
            } else {
                StirlingFamily::S2Prob
            };
            let seqs: Result<Vec<_>> = (0..=3)
                .map(|r| poly_sequence_for(&BasisSpec::probabilistic(&rv, lambda, r), nmax))
                .collect();
            let (seqs, s2) = match seqs.and_then(|s| Ok((s, build_table(family, Some(&rv), lambda, nmax)?))) {
                Ok(v) => v,
                Err(e) => {
                    error_case(report, d("difference-identities"), e);
                    continue;
                }
            };
            let first = &seqs[1].entries;
            for n in 0..=nmax {
                let shifted = first[n].shift(&one).minus(&first[n]);
                report.check(d("difference-stirling").n(n), &shifted, &falling_sum(&s2, n, mode));
                let jump = first[n].eval(&one).minus(&first[n].eval(&zero));
                let delta = if n == 1 { one.clone() } else { zero.clone() };
                report.check(d("difference-at-zero").n(n), &jump, &delta);
            }
            for r in 1..=3 {
                for n in 0..=nmax {
                    let lhs = seqs[r].entries[n].shift(&one).minus(&seqs[r].entries[n]);
                    let rhs = match n {
                        0 => Poly::zero_poly(mode),
                        _ => seqs[r - 1].entries[n - 1].times_scalar(&RingValue::int(n as i64, mode)),
                    };
                    report.check(d("difference-higher-order").n(n).r(r), &lhs, &rhs);
                }
            }
        }
    }
}

fn lowering(report: &mut IdentityReport, nmax: usize) {
    for rv in RandomVariable::fixtures() {
        for lambda in lambda_options() {
            let lambda = lambda.as_ref();
            let mode = mode_of(lambda);
            let d = |id: &str| desc(id, Some(&rv), lambda);
            let setup = DeltaOperators::cached(&rv, lambda, nmax).and_then(|ops| {
                let g = ops.g()?;
                let seqs = (0..=3)
                    .map(|r| poly_sequence_for(&BasisSpec::probabilistic(&rv, lambda, r), nmax))
                    .collect::<Result<Vec<_>>>()?;
                Ok((ops, g, seqs))
            });
            let (ops, g, seqs) = match setup {
                Ok(v) => v,
                Err(e) => {
                    error_case(report, d("lowering"), e);
                    continue;
                }
            };
            for r in 1..=3 {
                for n in 0..=nmax {
                    let rhs = match n {
                        0 => Poly::zero_poly(mode),
                        _ => seqs[r].entries[n - 1].times_scalar(&RingValue::int(n as i64, mode)),
                    };
                    let lhs = apply_operator(&ops.f, &seqs[r].entries[n]);
                    report.check_result(d("lowering-f").n(n).r(r), lhs.map(|l| (l, rhs)));
                    let lhs = apply_operator(&g, &seqs[r].entries[n]);
                    let rhs = seqs[r - 1].entries[n].clone();
                    report.check_result(d("lowering-g").n(n).r(r), lhs.map(|l| (l, rhs)));
                }
            }
        }
    }
}

const INVERSE_PAIR_ORDER: usize = 12;

fn inverse_pairs(report: &mut IdentityReport) {
    let order = INVERSE_PAIR_ORDER;
    let mut cases: Vec<(Option<RingValue>, Series, Series)> = Vec::new();
    let m = Mode::Rational;
    cases.push((
        None,
        Series::exp_t(m, order)
            .add_constant(&RingValue::int(-1, m))
            .expect("same mode"),
        Series::log1p_t(m, order),
    ));
    for l in lambdas() {
        let mode = l.mode();
        let e = Series::degenerate_exp(&l, order)
            .add_constant(&RingValue::int(-1, mode))
            .expect("same mode");
        cases.push((Some(l.clone()), e, Series::degenerate_log1p(&l, order)));
    }
    for (lambda, e, log) in cases {
        let id = Series::identity(e.ctx(), order);
        let d = |name: &str| desc(name, None, lambda.as_ref()).n(order);
        report.check_result(
            d("inverse-pair-exp-log"),
            e.compose(&log).map(|c| series_pair(c, id.clone())),
        );
        report.check_result(
            d("inverse-pair-log-exp"),
            log.compose(&e).map(|c| series_pair(c, id.clone())),
        );
        report.check_result(
            d("inverse-pair-comp-inverse"),
            e.comp_inverse().map(|c| series_pair(c, log.clone())),
        );
    }
}

fn reflection(report: &mut IdentityReport, nmax: usize) {
    let m = Mode::Rational;
    let b = match poly_sequence(PolyFamily::Bern, None, None, 1, nmax + 1) {
        Ok(b) => b,
        Err(e) => return error_case(report, desc("reflection", None, None), e),
    };
    let minus_one = RingValue::int(-1, m);
    for n in 0..=nmax {
        let lhs = b.entries[n + 1].scale_arg(&minus_one);
        let x_n = Poly::monomial(m, n).times_scalar(&RingValue::int(n as i64 + 1, m));
        let rhs = b.entries[n + 1]
            .plus(&x_n)
            .times_scalar(&RingValue::Rational(Rational::sign_power(n + 1)));
        report.check(desc("reflection", None, None).n(n + 1), &lhs, &rhs);
    }
}

fn lemma51(report: &mut IdentityReport, nmax: usize) {
    let m = Mode::Rational;
    let b = match poly_sequence(PolyFamily::Bern, None, None, 1, nmax) {
        Ok(b) => b,
        Err(e) => return error_case(report, desc("lemma51", None, None), e),
    };
    let minus_one = RingValue::int(-1, m);
    for n in 0..=nmax {
        let delta = RingValue::int(i64::from(n == 0), m);
        report.check(
            desc("integral-bernoulli", None, None).n(n),
            &integrate_unit(&b.entries[n]),
            &delta,
        );
        let reflected = integrate_unit(&b.entries[n].scale_arg(&minus_one));
        report.check(
            desc("integral-reflected-bernoulli", None, None).n(n),
            &reflected,
            &RingValue::Rational(Rational::sign_power(n)),
        );
    }
    // t/(e^t - 1) times the generating functions of ∫_0^1 x^n and ∫_0^1 (-x)^n
    let bern = special_sequence(SpecialFamily::BernNum, None, 0, &Rational::one(), nmax);
    let result = bern.and_then(|bern| {
        let gf = Series::new(m, bern.entries)?;
        let ones = Series::from_fn(m, nmax, |n| {
            RingValue::Rational(Rational::from(n + 1).recip().expect("positive"))
        });
        let alt = Series::from_fn(m, nmax, |n| {
            RingValue::Rational(Rational::sign_power(n) * Rational::from(n + 1).recip().expect("positive"))
        });
        let exp_neg = Series::from_fn(m, nmax, |n| RingValue::Rational(Rational::sign_power(n)));
        Ok((
            series_pair(gf.egf_mul(&ones)?, Series::one(m, nmax)),
            series_pair(gf.egf_mul(&alt)?, exp_neg),
        ))
    });
    match result {
        Ok((a, b)) => {
            report.check(desc("integral-gf-product", None, None).n(nmax), &a.0, &a.1);
            report.check(desc("integral-gf-reflected-product", None, None).n(nmax), &b.0, &b.1);
        }
        Err(e) => error_case(report, desc("integral-gf-product", None, None), e),
    }
}

/// Σ_{k=1}^{n-1} B_k(x) B_{n-k}(x) / (k(n-k)).
fn miki_product(b: &[Poly], n: usize) -> Poly {
    (1..n).fold(Poly::zero_poly(b[0].ctx()), |acc, k| {
        let w = RingValue::Rational(Rational::from(k * (n - k)).recip().expect("positive"));
        acc.plus(&b[k].times(&b[n - k]).times_scalar(&w))
    })
}

/// (2/n) C(n,k) B_{n-k}/(n-k) for k ≤ n-2, 0 at n-1, (2/n) H_{n-1} at n.
fn miki_coefficients(bern: &[Rational], n: usize) -> Vec<Rational> {
    let two_over_n = q(2, n as i64);
    (0..=n)
        .map(|k| match k {
            k if k + 2 <= n => {
                &two_over_n * &binomial(n, k) * &bern[n - k] * Rational::from(n - k).recip().expect("positive")
            }
            k if k + 1 == n => Rational::zero(),
            _ => &two_over_n * &harmonic(n - 1),
        })
        .collect()
}

fn miki_fpz(report: &mut IdentityReport, nmax: usize) {
    let m = Mode::Rational;
    let b = match poly_sequence(PolyFamily::Bern, None, None, 1, nmax) {
        Ok(b) => b,
        Err(e) => return error_case(report, desc("miki-fpz", None, None), e),
    };
    let bern: Vec<Rational> = b
        .entries
        .iter()
        .map(|p| p.coeff(0).rational_value().expect("rational"))
        .collect();
    let half = q(1, 2);
    for k in 0..=nmax {
        let at_half = b.entries[k].eval_rational(&half).rational_value().expect("rational");
        let want = (Rational::from_int(2).pow(1 - k as i32).expect("nonzero") - Rational::one()) * &bern[k];
        report.check(desc("bernoulli-at-half", None, None).n(k), &at_half, &want);
    }
    for n in 2..=nmax {
        let p = miki_product(&b.entries, n);
        let want = miki_coefficients(&bern, n);
        let want_rv: Vec<RingValue> = want.iter().cloned().map(RingValue::Rational).collect();
        let got = expand_classical(&p, ClassicalVariant::Bernoulli21_1c, None, None).map(|e| Listed(e.coeffs));
        report.check_result(
            desc("miki-fpz-coefficients", None, None).n(n),
            got.map(|g| (g, Listed(want_rv.clone()))),
        );
        let rhs = want_rv
            .iter()
            .zip(&b.entries)
            .fold(Poly::zero_poly(m), |acc, (a, bk)| acc.plus(&bk.times_scalar(a)));
        report.check(desc("miki-fpz-polynomial", None, None).n(n), &p, &rhs);
        // x = 0: both sides in Bernoulli numbers
        let lhs0: Rational = (1..n)
            .map(|k| &bern[k] * &bern[n - k] * Rational::from(k * (n - k)).recip().expect("positive"))
            .sum();
        let rhs0: Rational = (0..=n).map(|k| &want[k] * &bern[k]).sum();
        report.check(desc("miki-fpz-at-zero", None, None).n(n), &lhs0, &rhs0);
        // x = 1/2 via B_k(1/2) = (2^(1-k) - 1) B_k
        let bh = |k: usize| (Rational::from_int(2).pow(1 - k as i32).expect("nonzero") - Rational::one()) * &bern[k];
        let lhs_half: Rational = (1..n)
            .map(|k| bh(k) * bh(n - k) * Rational::from(k * (n - k)).recip().expect("positive"))
            .sum();
        let rhs_half: Rational = (0..=n).map(|k| &want[k] * &bh(k)).sum();
        report.check(desc("miki-fpz-at-half", None, None).n(n), &lhs_half, &rhs_half);
    }
}

/// Largest n in the degenerate Miki-type suite.
const DEGENERATE_MIKI_NMAX: usize = 6;

fn degenerate_miki(report: &mut IdentityReport, nmax: usize) {
    let lambda = RingValue::lambda();
    let mode = lambda.mode();
    let b = match poly_sequence(PolyFamily::Bern, None, None, 1, nmax) {
        Ok(b) => b,
        Err(e) => return error_case(report, desc("degenerate-miki", None, Some(&lambda)), e),
    };
    for n in 2..=nmax.min(DEGENERATE_MIKI_NMAX) {
        let d = |id: &str| desc(id, None, Some(&lambda)).n(n);
        let p = miki_product(&b.entries, n);
        let want = match degenerate_miki_coefficients(n, &lambda) {
            Ok(w) => w,
            Err(e) => {
                error_case(report, d("degenerate-miki-closed-form"), e);
                continue;
            }
        };
        for variant in [ClassicalVariant::Degenerate34c, ClassicalVariant::Degenerate35c] {
            let got = expand_classical(&p, variant, Some(&lambda), None).map(|e| Listed(e.coeffs));
            let detail = crate::represent::Method::Classical(variant).to_string();
            report.check_result(
                d("degenerate-miki-coefficients").detail(detail),
                got.map(|g| (g, Listed(want.clone()))),
            );
        }
        let basis = poly_sequence(PolyFamily::DegBern, None, Some(&lambda), 1, n).and_then(|s| {
            let sum = want
                .iter()
                .zip(&s.entries)
                .fold(Poly::zero_poly(mode), |acc, (a, bk)| acc.plus(&bk.times_scalar(a)));
            Ok((sum, p.lift(mode)?))
        });
        report.check_result(d("degenerate-miki-polynomial"), basis);
    }
}

fn limits(report: &mut IdentityReport, nmax: usize, seed: u64) {
    let lam = RingValue::lambda();
    let zero = Rational::zero();
    let d = |id: &str, rv: Option<&RandomVariable>| desc(id, rv, Some(&lam));
    let mut rvs: Vec<Option<RandomVariable>> = vec![None];
    rvs.extend(RandomVariable::fixtures().into_iter().map(Some));
    for rv in &rvs {
        let rv = rv.as_ref();
        let families = match rv {
            None => [StirlingFamily::S1Deg, StirlingFamily::S2Deg],
            Some(_) => [StirlingFamily::S1ProbDeg, StirlingFamily::S2ProbDeg],
        };
        for fam in families {
            let pair = build_table(fam, rv, Some(&lam), nmax).and_then(|t| {
                let plain = build_table(fam.plain(), rv, None, nmax)?;
                let plain_rows: Vec<Vec<Rational>> = plain
                    .rows()
                    .iter()
                    .map(|r| r.iter().map(|v| v.rational_value().expect("rational")).collect())
                    .collect();
                Ok((t.eval_lambda(&zero)?, plain_rows))
            });
            match pair {
                Ok((deg, plain)) => {
                    for n in 0..=nmax {
                        report.check(
                            d("limit-stirling", rv).n(n).detail(fam.to_string()),
                            &Listed(deg[n].clone()),
                            &Listed(plain[n].clone()),
                        );
                    }
                }
                Err(e) => error_case(report, d("limit-stirling", rv).detail(fam.to_string()), e),
            }
        }
        let family = if rv.is_some() {
            PolyFamily::ProbDegBern
        } else {
            PolyFamily::DegBern
        };
        for r in 1..=3 {
            let pair = poly_sequence(family, rv, Some(&lam), r, nmax)
                .and_then(|s| Ok((s, poly_sequence(family.plain(), rv, None, r, nmax)?)));
            match pair {
                Ok((deg, plain)) => {
                    for n in 0..=nmax {
                        let at0 = deg.entries[n].eval_lambda(&zero);
                        report.check_result(
                            d("limit-bernoulli", rv).n(n).r(r),
                            at0.map(|a| (a, plain.entries[n].clone())),
                        );
                    }
                }
                Err(e) => error_case(report, d("limit-bernoulli", rv).r(r), e),
            }
        }
    }
    let one = Rational::one();
    let specials = [
        (SpecialFamily::DegBernSecondKind, 0, one.clone()),
        (SpecialFamily::DegBernNum, 0, one.clone()),
        (SpecialFamily::DegFrobeniusEuler, 1, q(-1, 2)),
        (SpecialFamily::DegFrobeniusEuler, 2, q(-1, 2)),
        (SpecialFamily::DegFrobeniusEuler, 3, q(3, 1)),
    ];
    for (fam, r, u) in specials {
        let pair = special_sequence(fam, Some(&lam), r, &u, nmax).and_then(|s| {
            let plain = special_sequence(fam.plain(), None, r, &u, nmax)?;
            let at0 = s
                .entries
                .iter()
                .map(|v| v.eval_lambda(&zero))
                .collect::<Result<Vec<_>>>()?;
            let plain = plain
                .entries
                .iter()
                .map(|v| v.rational_value().expect("rational"))
                .collect();
            Ok((Listed(at0), Listed(plain)))
        });
        report.check_result(d("limit-numbers", None).r(r).detail(format!("{fam:?} u={u}")), pair);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for rv in RandomVariable::fixtures() {
        let p = random_poly(&mut rng, nmax.min(6));
        for form in Form::ALL {
            let pair = expand_thm33(&p, &rv, &lam, form).and_then(|e| {
                let at0 = e.eval_lambda(&zero)?;
                let plain = expand_thm31(&p, &rv, form)?;
                let plain = plain
                    .coeffs
                    .iter()
                    .map(|v| v.rational_value().expect("rational"))
                    .collect();
                Ok((Listed(at0), Listed(plain)))
            });
            report.check_result(
                d("limit-expansion", Some(&rv))
                    .n(p.degree_or_zero())
                    .detail(format!("form {}", form.number())),
                pair,
            );
        }
    }
}

fn barf_expansion(report: &mut IdentityReport, nmax: usize) {
    for rv in RandomVariable::fixtures() {
        for lambda in lambda_options() {
            let lambda = lambda.as_ref();
            let mode = mode_of(lambda);
            let family = if lambda.is_some() {
                StirlingFamily::S2ProbDeg
            } else {
                StirlingFamily::S2Prob
            };
            let pair = rv.mgf_series(lambda, nmax).and_then(|m| {
                let log_m = m.log()?;
                let s2 = build_table(family, Some(&rv), lambda, nmax)?;
                let want = Series::from_fn(mode, nmax, |n| {
                    (1..=n).fold(RingValue::zero(mode), |acc, j| {
                        let w = Rational::sign_power(j - 1) * factorial(j - 1);
                        acc.plus(&s2.get(n, j).scaled(&w))
                    })
                });
                Ok(series_pair(log_m, want))
            });
            report.check_result(desc("log-mgf-expansion", Some(&rv), lambda).n(nmax), pair);
            let mean = rv.mgf_series(lambda, 1).and_then(|m| {
                let log_m = m.log()?;
                Ok((log_m.coeff(1)?.clone(), RingValue::Rational(rv.mean()).to_mode(mode)?))
            });
            report.check_result(desc("log-mgf-linear-term", Some(&rv), lambda), mean);
        }
    }
}

fn s2_from_differences(report: &mut IdentityReport, nmax: usize) {
    let m = Mode::Rational;
    let step = RingValue::one(m);
    let s2 = crate::exactnum::stirling2_table(nmax);
    for n in 0..=nmax {
        let x_n = Poly::monomial(m, n);
        for j in 0..=n {
            let got = forward_diff(&x_n, &step, j).map(|p| {
                let v = p.coeff(0).rational_value().expect("rational");
                (v * factorial(j).recip().expect("nonzero"), s2[n][j].clone())
            });
            report.check_result(
                desc("s2-from-differences", None, None).n(n).detail(format!("j={j}")),
                got,
            );
        }
    }
}

/// Integer coefficients in [-9, 9], degree uniform in 0..=dmax.
fn random_poly(rng: &mut ChaCha8Rng, dmax: usize) -> Poly {
    let deg = rng.gen_range(0..=dmax);
    let coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-9..=9)).collect();
    Poly::from_ints(Mode::Rational, &coeffs)
}

/// Number of random polynomials per fixture in `engines-vs-oracle`.
pub const ORACLE_POLYS: usize = 25;

fn engines_vs_oracle(report: &mut IdentityReport, nmax: usize, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dmax = nmax.min(8);
    let sym = RingValue::lambda();
    let lambdas = [None, Some(sym.clone())];
    let mut polys: Vec<Poly> = (0..ORACLE_POLYS).map(|_| random_poly(&mut rng, dmax)).collect();
    // degree 1 keeps both higher-order branches (k < r and k ≥ r) in play
    polys.push(Poly::from_ints(
        Mode::Rational,
        &[rng.gen_range(-9..=9), rng.gen_range(1..=9)],
    ));
    for rv in RandomVariable::fixtures() {
        for p in &polys {
            let n = p.degree_or_zero();
            for lambda in &lambdas {
                let lambda = lambda.as_ref();
                let d = |id: &str| desc(id, Some(&rv), lambda).n(n);
                let oracle = match oracle_for(p, &BasisSpec::probabilistic(&rv, lambda, 1)) {
                    Ok(o) => o,
                    Err(e) => {
                        error_case(report, d("oracle"), e);
                        continue;
                    }
                };
                let want = Listed(oracle.coeffs.clone());
                report.check_result(
                    d("oracle-reconstructs"),
                    oracle.reconstruct().and_then(|r| Ok((r, p.lift(mode_of(lambda))?))),
                );
                for form in Form::ALL {
                    let got = match lambda {
                        None => expand_thm31(p, &rv, form),
                        Some(l) => expand_thm33(p, &rv, l, form),
                    };
                    let detail = format!("form {}", form.number());
                    report.check_result(
                        d("first-order-vs-oracle").detail(detail),
                        got.map(|e| (Listed(e.coeffs), Listed(want.0.clone()))),
                    );
                }
                let r1 = expand_higher(p, &rv, lambda, 1).map(|e| (Listed(e.coeffs), Listed(want.0.clone())));
                report.check_result(d("higher-order-r1-vs-first-order").r(1), r1);
                for r in [2, 3] {
                    let pair = expand_higher(p, &rv, lambda, r).and_then(|e| {
                        let o = oracle_for(p, &e.basis)?;
                        Ok((Listed(e.coeffs), Listed(o.coeffs)))
                    });
                    report.check_result(d("higher-order-vs-oracle").r(r), pair);
                }
            }
            if n <= 6 {
                for lambda in &lambdas {
                    let lambda = lambda.as_ref();
                    let pair = DeltaOperators::cached(&rv, lambda, n + 3).and_then(|ops| {
                        let p = p.lift(mode_of(lambda))?;
                        (1..=3)
                            .map(|a| Ok((ops.g_power_integral(a, &p)?, ops.g_power_stirling(a, &p)?)))
                            .collect::<Result<Vec<_>>>()
                    });
                    match pair {
                        Ok(v) => {
                            for (a, (l, r)) in v.into_iter().enumerate() {
                                report.check(
                                    desc("g-power-integral-vs-stirling", Some(&rv), lambda).n(n).r(a + 1),
                                    &l,
                                    &r,
                                );
                            }
                        }
                        Err(e) => error_case(report, desc("g-power-integral-vs-stirling", Some(&rv), lambda).n(n), e),
                    }
                }
            }
        }
    }
    for p in &polys {
        let n = p.degree_or_zero();
        let d = |id: &str, lambda: Option<&RingValue>| desc(id, None, lambda).n(n);
        let against = |e: Result<crate::represent::BasisExpansion>| {
            e.and_then(|e| {
                let o = oracle_for(p, &e.basis)?;
                Ok((Listed(e.coeffs), Listed(o.coeffs)))
            })
        };
        report.check_result(
            d("classical-vs-oracle", None).detail("classical_21_1c"),
            against(expand_classical(p, ClassicalVariant::Bernoulli21_1c, None, None)),
        );
        for variant in [ClassicalVariant::Degenerate34c, ClassicalVariant::Degenerate35c] {
            let tag = crate::represent::Method::Classical(variant).to_string();
            report.check_result(
                d("classical-vs-oracle", Some(&sym)).detail(tag),
                against(expand_classical(p, variant, Some(&sym), None)),
            );
        }
        for r in [2, 3] {
            report.check_result(
                d("classical-vs-oracle", None).r(r).detail("remark43"),
                against(expand_classical(p, ClassicalVariant::Remark43, None, Some(r))),
            );
            report.check_result(
                d("classical-vs-oracle", Some(&sym)).r(r).detail("classical_17d_24d"),
                against(expand_classical(p, ClassicalVariant::Higher17d24d, Some(&sym), Some(r))),
            );
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_is_an_error() {
        assert_eq!(run_suite("nope", 3, 0), Err(Error::UnknownSuite("nope".into())));
    }

    #[test]
    fn small_suites_pass() {
        for name in SUITES {
            if name == "engines-vs-oracle" || name == "section5-crosschecks" {
                continue;
            }
            let r = run_suite(name, 4, 7).unwrap();
            assert!(
                r.passed_strict(),
                "{name}: {:?}",
                r.failures().take(3).collect::<Vec<_>>()
            );
            assert!(!r.cases.is_empty(), "{name} has no cases");
        }
    }
}
