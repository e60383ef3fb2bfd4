use probbern_core::bernoulli::{poly_sequence, special_sequence, PolyFamily, SpecialFamily};
use probbern_core::exactnum::{binomial, q, Mode, Rational, Ring, RingValue};
use probbern_core::randvar::RandomVariable;
use probbern_core::series::Poly;

/// Bernoulli numbers from Σ_{k≤n} C(n+1,k) B_k = 0.
fn bernoulli_numbers(n: usize) -> Vec<Rational> {
    let mut b = vec![Rational::one()];
    for m in 1..=n {
        let s: Rational = (0..m).map(|k| binomial(m + 1, k) * &b[k]).sum();
        b.push(-s * Rational::from(m + 1).recip().unwrap());
    }
    b
}

fn lambda_options() -> [Option<RingValue>; 3] {
    [None, Some(RingValue::lambda()), Some(RingValue::Rational(q(1, 3)))]
}

fn family(lambda: &Option<RingValue>) -> PolyFamily {
    if lambda.is_some() {
        PolyFamily::ProbDegBern
    } else {
        PolyFamily::ProbBern
    }
}

#[test]
fn classical_polynomials_match_the_recurrence() {
    let b = bernoulli_numbers(12);
    let seq = poly_sequence(PolyFamily::Bern, None, None, 1, 12).unwrap();
    for n in 0..=12 {
        let coeffs: Vec<Rational> = (0..=n).map(|k| binomial(n, k) * &b[n - k]).collect();
        assert_eq!(seq.entries[n], Poly::from_rationals(Mode::Rational, &coeffs), "n={n}");
    }
}

#[test]
fn constant_one_reduces_to_the_plain_families() {
    let one = RandomVariable::constant_one();
    let lam = RingValue::lambda();
    for r in 1..=3 {
        let a = poly_sequence(PolyFamily::ProbBern, Some(&one), None, r, 10).unwrap();
        let b = poly_sequence(PolyFamily::Bern, None, None, r, 10).unwrap();
        assert_eq!(a.entries, b.entries, "r={r}");
        let a = poly_sequence(PolyFamily::ProbDegBern, Some(&one), Some(&lam), r, 10).unwrap();
        let b = poly_sequence(PolyFamily::DegBern, None, Some(&lam), r, 10).unwrap();
        assert_eq!(a.entries, b.entries, "r={r}");
    }
}

#[test]
fn derivative_is_the_log_mgf_convolution() {
    // the generating function is (t/(M-1)) e^{x log M}, so d/dx multiplies it by log M
    for rv in RandomVariable::fixtures() {
        for lambda in lambda_options() {
            let seq = poly_sequence(family(&lambda), Some(&rv), lambda.as_ref(), 1, 8).unwrap();
            let log_m = rv.mgf_series(lambda.as_ref(), 8).unwrap().log().unwrap();
            let mode = seq.entries[0].ctx();
            for n in 0..=8 {
                let want = (1..=n).fold(Poly::zero_poly(mode), |acc, k| {
                    let w = log_m.coeffs()[k].scaled(&binomial(n, k));
                    acc.plus(&seq.entries[n - k].times_scalar(&w))
                });
                assert_eq!(seq.entries[n].derivative(), want, "{rv} n={n}");
            }
        }
    }
}

#[test]
fn second_order_is_a_binomial_convolution() {
    for rv in RandomVariable::fixtures() {
        for lambda in lambda_options() {
            let fam = family(&lambda);
            let first = poly_sequence(fam, Some(&rv), lambda.as_ref(), 1, 7).unwrap();
            let second = poly_sequence(fam, Some(&rv), lambda.as_ref(), 2, 7).unwrap();
            let mode = first.entries[0].ctx();
            for n in 0..=7 {
                let conv = (0..=n).fold(Poly::zero_poly(mode), |acc, k| {
                    let w = first.entries[n - k].coeff(0).scaled(&binomial(n, k));
                    acc.plus(&first.entries[k].times_scalar(&w))
                });
                assert_eq!(second.entries[n], conv, "{rv} n={n}");
            }
        }
    }
}

#[test]
fn sequences_start_at_the_expected_constant() {
    let lam = RingValue::lambda();
    let one = Rational::one();
    let cases = [
        (SpecialFamily::BernNum, 1, one.clone()),
        (SpecialFamily::DegBernNum, 1, one.clone()),
        (SpecialFamily::BernSecondKind, 1, one.clone()),
        (SpecialFamily::DegBernSecondKind, 1, one.clone()),
        (SpecialFamily::FrobeniusEuler, 2, q(-1, 2)),
        (SpecialFamily::DegFrobeniusEuler, 3, q(3, 1)),
    ];
    for (fam, r, u) in cases {
        let s = special_sequence(fam, Some(&lam), r, &u, 6).unwrap();
        assert!(s.entries[0].rational_value().is_some_and(|v| v.is_one()), "{fam:?}");
    }
    for rv in RandomVariable::fixtures() {
        for lambda in lambda_options() {
            // t/(M - 1) starts at 1/E[Y]
            let seq = poly_sequence(family(&lambda), Some(&rv), lambda.as_ref(), 2, 3).unwrap();
            let want = rv.mean().pow(-2).unwrap();
            assert_eq!(seq.entries[0].coeff(0).rational_value(), Some(want), "{rv}");
        }
    }
}

#[test]
fn bernoulli_numbers_of_the_second_kind() {
    // b_0..b_4 of t/log(1+t)
    let s = special_sequence(SpecialFamily::BernSecondKind, None, 0, &Rational::one(), 4).unwrap();
    let want = [q(1, 1), q(1, 2), q(-1, 6), q(1, 4), q(-19, 30)];
    let got: Vec<Rational> = s.entries.iter().map(|v| v.rational_value().unwrap()).collect();
    assert_eq!(got, want);
}

#[test]
fn frobenius_euler_at_u_minus_one_gives_euler_polynomial_values() {
    // (1 - u)/(e^t - u) at u = -1 is 2/(e^t + 1): 1, -1/2, 0, 1/4, 0
    let s = special_sequence(SpecialFamily::FrobeniusEuler, None, 1, &q(-1, 1), 4).unwrap();
    let got: Vec<Rational> = s.entries.iter().map(|v| v.rational_value().unwrap()).collect();
    assert_eq!(got, [q(1, 1), q(-1, 2), q(0, 1), q(1, 4), q(0, 1)]);
    assert!(special_sequence(SpecialFamily::FrobeniusEuler, None, 1, &Rational::one(), 4).is_err());
}
