use probbern_core::bernoulli::{BasisSpec, PolyFamily};
use probbern_core::exactnum::{q, Mode, Rational, RingValue};
use probbern_core::randvar::RandomVariable;
use probbern_core::represent::{expand_higher, expand_thm31, expand_thm33, oracle_for, Form};
use probbern_core::series::Poly;
use proptest::prelude::*;

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(-9i64..=9, 1..=9).prop_map(|c| Poly::from_ints(Mode::Rational, &c))
}

fn fixture() -> impl Strategy<Value = RandomVariable> {
    (0usize..6).prop_map(|i| RandomVariable::fixtures()[i].clone())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn expansions_reconstruct_the_polynomial(p in poly(), rv in fixture(), form in 1u8..=3) {
        let form = Form::try_from(form).unwrap();
        let plain = expand_thm31(&p, &rv, form).unwrap();
        prop_assert_eq!(plain.reconstruct().unwrap(), p.clone());
        let deg = expand_thm33(&p, &rv, &RingValue::lambda(), form).unwrap();
        prop_assert_eq!(deg.reconstruct().unwrap(), p.lift(Mode::Lambda).unwrap());
    }

    #[test]
    fn forms_agree(p in poly(), rv in fixture()) {
        let one = expand_thm31(&p, &rv, Form::One).unwrap().coeffs;
        prop_assert_eq!(&expand_thm31(&p, &rv, Form::Two).unwrap().coeffs, &one);
        prop_assert_eq!(&expand_thm31(&p, &rv, Form::Three).unwrap().coeffs, &one);
    }

    #[test]
    fn higher_order_matches_the_oracle(p in poly(), rv in fixture(), r in 2usize..=3) {
        let e = expand_higher(&p, &rv, None, r).unwrap();
        prop_assert_eq!(e.coeffs, oracle_for(&p, &e.basis).unwrap().coeffs);
    }
}

#[test]
fn spec_example_expansions() {
    // x^2 in the classical Bernoulli basis: 1/3, 1, 1
    let x2 = Poly::from_ints(Mode::Rational, &[0, 0, 1]);
    let e = expand_thm31(&x2, &RandomVariable::constant_one(), Form::One).unwrap();
    let want: Vec<RingValue> = [q(1, 3), q(1, 1), q(1, 1)]
        .into_iter()
        .map(RingValue::Rational)
        .collect();
    assert_eq!(e.coeffs, want);
    // x in the Exponential(3/2) basis
    let exp = RandomVariable::exponential(q(3, 2)).unwrap();
    let x = Poly::from_ints(Mode::Rational, &[0, 1]);
    let e = expand_thm31(&x, &exp, Form::One).unwrap();
    let o = oracle_for(&x, &BasisSpec::new(PolyFamily::ProbBern, Some(&exp), None, 1).unwrap()).unwrap();
    assert_eq!(e.coeffs, o.coeffs);
    assert_eq!(e.coeffs[0], RingValue::Rational(q(2, 3)));
    assert_eq!(e.coeffs[1], RingValue::Rational(Rational::from_int(1)));
}
