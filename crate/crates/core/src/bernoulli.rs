//! Bernoulli-type polynomial sequences and number sequences.
//!
//! Every polynomial family here is the coefficient sequence of
//! (t / (M(t) - 1))^r · M(t)^x, where M is E[e^{Yt}] or E[e_λ^Y(t)]. The
//! plain (non-probabilistic) families are the case Y = 1. The bivariate
//! series is carried as a series in t whose coefficients are polynomials
//! in x, and M^x is expanded as Σ_j x^j (log M)^j / j!, which is exact
//! because the x-degree never exceeds the t-order.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{binomial, Mode, Rational, Ring, RingValue};
use crate::randvar::RandomVariable;
use crate::series::{Poly, Series, TruncatedSeries, XPolynomial};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub enum PolyFamily {
    /// B_n^{(r)}(x).
    Bern,
    /// β_{n,λ}^{(r)}(x).
    DegBern,
    /// B_n^{Y,(r)}(x).
    ProbBern,
    /// β_{n,λ}^{Y,(r)}(x).
    ProbDegBern,
}

impl PolyFamily {
    pub fn is_degenerate(self) -> bool {
        matches!(self, PolyFamily::DegBern | PolyFamily::ProbDegBern)
    }

    pub fn is_probabilistic(self) -> bool {
        matches!(self, PolyFamily::ProbBern | PolyFamily::ProbDegBern)
    }

    pub fn plain(self) -> PolyFamily {
        match self {
            PolyFamily::DegBern => PolyFamily::Bern,
            PolyFamily::ProbDegBern => PolyFamily::ProbBern,
            f => f,
        }
    }
}

impl fmt::Display for PolyFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PolyFamily::Bern => "bern",
            PolyFamily::DegBern => "degbern",
            PolyFamily::ProbBern => "probbern",
            PolyFamily::ProbDegBern => "probdegbern",
        })
    }
}

/// A fully parameterized polynomial basis: family, Y, λ and order r.
///
/// Plain families always carry Y = 1; degenerate families always carry λ.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BasisSpec {
    pub family: PolyFamily,
    pub rv: RandomVariable,
    pub lambda: Option<RingValue>,
    pub r: usize,
}

impl BasisSpec {
    /// Validates and normalizes the parameters for `family`.
    pub fn new(family: PolyFamily, rv: Option<&RandomVariable>, lambda: Option<&RingValue>, r: usize) -> Result<Self> {
        let rv = if family.is_probabilistic() {
            rv.ok_or_else(|| Error::MissingParameter("random variable".into()))?
                .clone()
        } else {
            RandomVariable::constant_one()
        };
        let lambda = if family.is_degenerate() {
            Some(lambda.ok_or_else(|| Error::MissingParameter("lambda".into()))?.clone())
        } else {
            None
        };
        Ok(BasisSpec { family, rv, lambda, r })
    }

    /// Probabilistic basis of order r, degenerate when λ is given.
    pub fn probabilistic(rv: &RandomVariable, lambda: Option<&RingValue>, r: usize) -> Self {
        let family = if lambda.is_some() {
            PolyFamily::ProbDegBern
        } else {
            PolyFamily::ProbBern
        };
        BasisSpec::new(family, Some(rv), lambda, r).expect("parameters supplied")
    }

    pub fn mode(&self) -> Mode {
        self.lambda.as_ref().map_or(Mode::Rational, RingValue::mode)
    }

    /// M(t): E[e^{Yt}] or E[e_λ^Y(t)].
    pub fn mgf(&self, order: usize) -> Result<Series> {
        self.rv.mgf_series(self.lambda.as_ref(), order)
    }

    /// The same basis with a different order r.
    pub fn with_order(&self, r: usize) -> Self {
        BasisSpec { r, ..self.clone() }
    }

    /// The same basis at λ = 0, without λ.
    pub fn without_lambda(&self) -> Self {
        BasisSpec {
            family: self.family.plain(),
            lambda: None,
            ..self.clone()
        }
    }
}

impl fmt::Display for BasisSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} r={}", self.family, self.r)?;
        if self.family.is_probabilistic() {
            write!(f, " Y={}", self.rv)?;
        }
        if let Some(l) = &self.lambda {
            write!(f, " λ={l}")?;
        }
        Ok(())
    }
}

/// entries[n] is the degree-n member of the basis.
#[derive(Clone, Debug, PartialEq)]
pub struct PolySequence {
    pub spec: BasisSpec,
    pub entries: Vec<Poly>,
}

impl PolySequence {
    pub fn get(&self, n: usize) -> Result<&Poly> {
        self.entries.get(n).ok_or(Error::InsufficientOrder {
            needed: n,
            available: self.entries.len().saturating_sub(1),
        })
    }
}

type SeqKey = (BasisSpec, usize);

fn seq_cache() -> &'static Mutex<HashMap<SeqKey, Arc<PolySequence>>> {
    static CACHE: OnceLock<Mutex<HashMap<SeqKey, Arc<PolySequence>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// (t / (M(t) - 1))^r to order N.
pub fn basis_prefactor(spec: &BasisSpec, order: usize) -> Result<Series> {
    let m = spec.mgf(order + 1)?;
    let mode = m.ctx();
    let reduced = m.add_constant(&RingValue::int(-1, mode))?.div_t()?;
    reduced.reciprocal()?.pow(spec.r)
}

/// Entries 0..=N of the basis described by `spec`.
pub fn poly_sequence_for(spec: &BasisSpec, order: usize) -> Result<Arc<PolySequence>> {
    let key = (spec.clone(), order);
    if let Some(s) = seq_cache().lock().expect("cache lock").get(&key) {
        return Ok(Arc::clone(s));
    }
    let mode = spec.mode();
    let prefactor = basis_prefactor(spec, order)?;
    let log_m = spec.mgf(order)?.log()?;
    let powers = log_m.power_table(order)?;
    // E_n(x) = Σ_j [L^j/j!]_n x^j
    let exp_x = TruncatedSeries::<Poly>::from_fn(mode, order, |n| {
        let coeffs = (0..=n).map(|j| powers[j].coeffs()[n].clone()).collect();
        Poly::new(mode, coeffs).expect("one mode")
    });
    let pre = prefactor.map(mode, |c| Poly::constant(c.clone()));
    let product = pre.egf_mul(&exp_x)?;
    let seq = Arc::new(PolySequence {
        spec: spec.clone(),
        entries: product.coeffs().to_vec(),
    });
    seq_cache()
        .lock()
        .expect("cache lock")
        .entry(key)
        .or_insert_with(|| Arc::clone(&seq));
    Ok(seq)
}

/// Entries 0..=N of a polynomial family.
pub fn poly_sequence(
    family: PolyFamily,
    rv: Option<&RandomVariable>,
    lambda: Option<&RingValue>,
    r: usize,
    order: usize,
) -> Result<Arc<PolySequence>> {
    poly_sequence_for(&BasisSpec::new(family, rv, lambda, r)?, order)
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub enum SpecialFamily {
    /// B_n.
    BernNum,
    /// β_{n,λ}.
    DegBernNum,
    /// b_n, from t / log(1 + t).
    BernSecondKind,
    /// b_{n,λ}, from t / log_λ(1 + t).
    DegBernSecondKind,
    /// H_n^{(r)}(u).
    FrobeniusEuler,
    /// h_{n,λ}^{(r)}(u).
    DegFrobeniusEuler,
}

impl SpecialFamily {
    pub fn is_degenerate(self) -> bool {
        matches!(
            self,
            SpecialFamily::DegBernNum | SpecialFamily::DegBernSecondKind | SpecialFamily::DegFrobeniusEuler
        )
    }

    pub fn plain(self) -> SpecialFamily {
        match self {
            SpecialFamily::DegBernNum => SpecialFamily::BernNum,
            SpecialFamily::DegBernSecondKind => SpecialFamily::BernSecondKind,
            SpecialFamily::DegFrobeniusEuler => SpecialFamily::FrobeniusEuler,
            f => f,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpecialSequence {
    pub family: SpecialFamily,
    pub lambda: Option<RingValue>,
    pub r: usize,
    pub u: Option<Rational>,
    pub entries: Vec<RingValue>,
}

/// Entries 0..=N of a number sequence. `r` and `u` are used only by the
/// Frobenius–Euler families, which require u ≠ 1.
pub fn special_sequence(
    family: SpecialFamily,
    lambda: Option<&RingValue>,
    r: usize,
    u: &Rational,
    order: usize,
) -> Result<SpecialSequence> {
    let lambda = if family.is_degenerate() {
        Some(lambda.ok_or_else(|| Error::MissingParameter("lambda".into()))?.clone())
    } else {
        None
    };
    let mode = lambda.as_ref().map_or(Mode::Rational, RingValue::mode);
    let exp_like = |o: usize| match &lambda {
        Some(l) => Series::degenerate_exp(l, o),
        None => Series::exp_t(mode, o),
    };
    let log_like = |o: usize| match &lambda {
        Some(l) => Series::degenerate_log1p(l, o),
        None => Series::log1p_t(mode, o),
    };
    let minus = |q: &Rational| RingValue::Rational(-q).to_mode(mode).expect("rational lifts");
    let is_fe = matches!(family, SpecialFamily::FrobeniusEuler | SpecialFamily::DegFrobeniusEuler);
    let s = match family {
        SpecialFamily::BernNum | SpecialFamily::DegBernNum => exp_like(order + 1)
            .add_constant(&minus(&Rational::one()))?
            .div_t()?
            .reciprocal()?,
        SpecialFamily::BernSecondKind | SpecialFamily::DegBernSecondKind => {
            log_like(order + 1).div_t()?.reciprocal()?
        }
        SpecialFamily::FrobeniusEuler | SpecialFamily::DegFrobeniusEuler => {
            if u.is_one() {
                return Err(Error::InvalidParameter("u must differ from 1".into()));
            }
            let one_minus_u = Rational::one() - u;
            exp_like(order)
                .add_constant(&minus(u))?
                .scale(&one_minus_u.recip()?)
                .reciprocal()?
                .pow(r)?
        }
    };
    Ok(SpecialSequence {
        family,
        lambda,
        r: if is_fe { r } else { 0 },
        u: if is_fe { Some(u.clone()) } else { None },
        entries: s.coeffs().to_vec(),
    })
}

/// λ^n B_n^{(a)}(x/λ) = Σ_k C(n,k) B^{(a)}_{n-k} λ^(n-k) x^k, in the mode of λ.
pub fn scaled_bernoulli(n: usize, a: usize, lambda: &RingValue) -> Result<Poly> {
    let mode = lambda.mode();
    let bern = poly_sequence(PolyFamily::Bern, None, None, a, n)?;
    let numbers: Vec<RingValue> = (0..=n)
        .map(|j| bern.entries[j].coeff(0).to_mode(mode))
        .collect::<Result<_>>()?;
    let coeffs = (0..=n)
        .map(|k| numbers[n - k].times(&lambda.pow(n - k)).scaled(&binomial(n, k)))
        .collect();
    XPolynomial::new(mode, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::q;

    fn rpoly(c: &[Rational]) -> Poly {
        Poly::from_rationals(Mode::Rational, c)
    }

    #[test]
    fn classical_bernoulli_polynomials() {
        let s = poly_sequence(PolyFamily::Bern, None, None, 1, 3).unwrap();
        assert_eq!(s.entries[0], rpoly(&[q(1, 1)]));
        assert_eq!(s.entries[1], rpoly(&[q(-1, 2), q(1, 1)]));
        assert_eq!(s.entries[2], rpoly(&[q(1, 6), q(-1, 1), q(1, 1)]));
        assert_eq!(s.entries[3], rpoly(&[q(0, 1), q(1, 2), q(-3, 2), q(1, 1)]));
    }

    #[test]
    fn degenerate_bernoulli_degree_one() {
        let lam = RingValue::lambda();
        let s = poly_sequence(PolyFamily::DegBern, None, Some(&lam), 1, 1).unwrap();
        let expect = Poly::new(
            Mode::Lambda,
            vec![
                RingValue::lambda_poly(vec![q(-1, 2), q(1, 2)]),
                RingValue::int(1, Mode::Lambda),
            ],
        )
        .unwrap();
        assert_eq!(s.entries[1], expect);
    }

    #[test]
    fn probabilistic_constant_term() {
        for rv in RandomVariable::fixtures() {
            let s = poly_sequence(PolyFamily::ProbBern, Some(&rv), None, 1, 4).unwrap();
            assert_eq!(s.entries[0], rpoly(&[rv.mean().recip().unwrap()]));
            for (n, e) in s.entries.iter().enumerate() {
                assert_eq!(e.degree(), Some(n));
            }
        }
    }

    #[test]
    fn unit_difference_at_zero() {
        for rv in RandomVariable::fixtures() {
            let s = poly_sequence(PolyFamily::ProbBern, Some(&rv), None, 1, 6).unwrap();
            for (n, e) in s.entries.iter().enumerate() {
                let d = e
                    .eval_rational(&Rational::one())
                    .minus(&e.eval_rational(&Rational::zero()));
                let expect = if n == 1 { 1 } else { 0 };
                assert_eq!(d, RingValue::int(expect, Mode::Rational), "{rv} n={n}");
            }
        }
    }

    #[test]
    fn special_numbers() {
        let one = Rational::one();
        let b = special_sequence(SpecialFamily::BernNum, None, 0, &one, 4).unwrap();
        assert_eq!(b.entries[2], RingValue::Rational(q(1, 6)));
        let b2 = special_sequence(SpecialFamily::BernSecondKind, None, 0, &one, 3).unwrap();
        assert_eq!(b2.entries[0], RingValue::Rational(one.clone()));
        assert_eq!(b2.entries[1], RingValue::Rational(q(1, 2)));
        assert_eq!(b2.entries[2], RingValue::Rational(q(-1, 6)));
        let h = special_sequence(SpecialFamily::FrobeniusEuler, None, 3, &q(-2, 1), 5).unwrap();
        assert_eq!(h.entries[0], RingValue::Rational(one.clone()));
        assert!(special_sequence(SpecialFamily::FrobeniusEuler, None, 1, &one, 3).is_err());
    }

    #[test]
    fn degenerate_frobenius_euler_at_zero() {
        let lam = RingValue::lambda();
        let u = q(-1, 2);
        let h = special_sequence(SpecialFamily::DegFrobeniusEuler, Some(&lam), 2, &u, 8).unwrap();
        let plain = special_sequence(SpecialFamily::FrobeniusEuler, None, 2, &u, 8).unwrap();
        for n in 0..=8 {
            assert_eq!(
                RingValue::Rational(h.entries[n].eval_lambda(&Rational::zero()).unwrap()),
                plain.entries[n]
            );
        }
    }

    #[test]
    fn scaled_bernoulli_examples() {
        let lam = RingValue::lambda();
        let l = |c: &[Rational]| RingValue::lambda_poly(c.to_vec());
        assert_eq!(
            scaled_bernoulli(0, 1, &lam).unwrap(),
            Poly::from_ints(Mode::Lambda, &[1])
        );
        assert_eq!(
            scaled_bernoulli(1, 1, &lam).unwrap(),
            Poly::new(Mode::Lambda, vec![l(&[q(0, 1), q(-1, 2)]), l(&[q(1, 1)])]).unwrap()
        );
        assert_eq!(
            scaled_bernoulli(2, 1, &lam).unwrap(),
            Poly::new(
                Mode::Lambda,
                vec![l(&[q(0, 1), q(0, 1), q(1, 6)]), l(&[q(0, 1), q(-1, 1)]), l(&[q(1, 1)])]
            )
            .unwrap()
        );
    }

    #[test]
    fn missing_parameters() {
        assert!(poly_sequence(PolyFamily::ProbBern, None, None, 1, 3).is_err());
        assert!(poly_sequence(PolyFamily::DegBern, None, None, 1, 3).is_err());
        assert!(special_sequence(SpecialFamily::DegBernNum, None, 0, &Rational::zero(), 3).is_err());
    }
}
