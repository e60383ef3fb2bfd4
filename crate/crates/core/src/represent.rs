//! Expansion of arbitrary polynomials in Bernoulli-type bases.
//!
//! Each engine computes a_0..a_n with p(x) = Σ a_k basis_k(x) directly from
//! the closed formulas (umbral functionals, finite differences, Stirling
//! sums). [`oracle_expand`] solves the same problem by back-substitution
//! against the explicit basis, independently of all of them.
//!
//! Throughout, f(t) is the compositional inverse of log M(t), where M is the
//! (degenerate) moment generating function of Y, and g(t) = (e^t - 1)/f(t).

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Serialize, Serializer};

use crate::bernoulli::{poly_sequence_for, scaled_bernoulli, BasisSpec, PolyFamily, PolySequence};
use crate::error::{Error, Result};
use crate::exactnum::{binomial, factorial, stirling2_table, Mode, Rational, Ring, RingValue};
use crate::randvar::RandomVariable;
use crate::series::{apply_operator, forward_diff, integrate_unit, operator_i, umbral_compose, Poly, Series};
use crate::stirling::{build_table, StirlingFamily, StirlingTable};

/// Which of the equivalent coefficient formulas of the first-order theorems.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Form {
    /// Stirling sum over Δ^(j+1) p(0).
    One,
    /// Double Stirling sum over Δ p^(k)(0).
    Two,
    /// Point evaluations p(0), ..., p(n).
    Three,
}

impl Form {
    pub const ALL: [Form; 3] = [Form::One, Form::Two, Form::Three];

    pub fn number(self) -> u8 {
        match self {
            Form::One => 1,
            Form::Two => 2,
            Form::Three => 3,
        }
    }
}

impl TryFrom<u8> for Form {
    type Error = Error;

    fn try_from(n: u8) -> Result<Self> {
        match n {
            1 => Ok(Form::One),
            2 => Ok(Form::Two),
            3 => Ok(Form::Three),
            _ => Err(Error::InvalidParameter(format!("form must be 1, 2 or 3, got {n}"))),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum ClassicalVariant {
    /// a_k = (1/k!) ∫_0^1 p^(k), ordinary Bernoulli basis.
    Bernoulli21_1c,
    /// Degenerate Bernoulli basis, a_0 by umbral composition.
    Degenerate34c,
    /// Degenerate Bernoulli basis, a_(r+1) by λ-differences.
    Degenerate35c,
    /// Higher-order degenerate Bernoulli basis with Y = 1.
    Higher17d24d,
    /// Higher-order ordinary Bernoulli basis.
    Remark43,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Method {
    Thm31(Form),
    Thm33(Form),
    Thm41,
    Thm42,
    Classical(ClassicalVariant),
    Oracle,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::Thm31(form) => write!(f, "thm31_form{}", form.number()),
            Method::Thm33(form) => write!(f, "thm33_form{}", form.number()),
            Method::Thm41 => f.write_str("thm41"),
            Method::Thm42 => f.write_str("thm42"),
            Method::Classical(ClassicalVariant::Bernoulli21_1c) => f.write_str("classical_21_1c"),
            Method::Classical(ClassicalVariant::Degenerate34c) => f.write_str("classical_34c"),
            Method::Classical(ClassicalVariant::Degenerate35c) => f.write_str("classical_35c"),
            Method::Classical(ClassicalVariant::Higher17d24d) => f.write_str("classical_17d_24d"),
            Method::Classical(ClassicalVariant::Remark43) => f.write_str("remark43"),
            Method::Oracle => f.write_str("oracle"),
        }
    }
}

impl Serialize for Method {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Coefficients a_0..a_n of p in the basis `basis`, dense.
#[derive(Clone, Debug, PartialEq)]
pub struct BasisExpansion {
    pub basis: BasisSpec,
    pub coeffs: Vec<RingValue>,
    pub method: Method,
}

impl BasisExpansion {
    /// Σ a_k basis_k(x).
    pub fn reconstruct(&self) -> Result<Poly> {
        let n = self.coeffs.len().saturating_sub(1);
        let seq = poly_sequence_for(&self.basis, n)?;
        let mode = self.basis.mode();
        let mut out = Poly::zero_poly(mode);
        for (a, b) in self.coeffs.iter().zip(&seq.entries) {
            out = out.plus(&b.times_scalar(a));
        }
        Ok(out)
    }

    pub fn eval_lambda(&self, at: &Rational) -> Result<Vec<Rational>> {
        self.coeffs.iter().map(|c| c.eval_lambda(at)).collect()
    }
}

/// The operators f(t), t/f(t) and f(t)/t for one (Y, λ), to a fixed order.
#[derive(Clone, Debug)]
pub struct DeltaOperators {
    pub rv: RandomVariable,
    pub lambda: Option<RingValue>,
    /// Compositional inverse of log M(t).
    pub f: Series,
    pub t_over_f: Series,
    pub f_over_t: Series,
}

impl DeltaOperators {
    /// Operators valid on polynomials of degree at most `order`.
    pub fn new(rv: &RandomVariable, lambda: Option<&RingValue>, order: usize) -> Result<Self> {
        let log_m = rv.mgf_series(lambda, order + 1)?.log()?;
        let f = log_m.comp_inverse()?;
        let f_over_t = f.div_t()?;
        let t_over_f = f_over_t.reciprocal()?;
        Ok(DeltaOperators {
            rv: rv.clone(),
            lambda: lambda.cloned(),
            f,
            t_over_f,
            f_over_t,
        })
    }

    /// Shared instance for (Y, λ, order), built on first use.
    pub fn cached(rv: &RandomVariable, lambda: Option<&RingValue>, order: usize) -> Result<Arc<Self>> {
        type Key = (RandomVariable, Option<RingValue>, usize);
        static CACHE: OnceLock<Mutex<HashMap<Key, Arc<DeltaOperators>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let key = (rv.clone(), lambda.cloned(), order);
        if let Some(ops) = cache.lock().expect("cache lock").get(&key) {
            return Ok(Arc::clone(ops));
        }
        let ops = Arc::new(DeltaOperators::new(rv, lambda, order)?);
        cache
            .lock()
            .expect("cache lock")
            .entry(key)
            .or_insert_with(|| Arc::clone(&ops));
        Ok(ops)
    }

    pub fn mode(&self) -> Mode {
        self.f.ctx()
    }

    pub fn order(&self) -> usize {
        self.t_over_f.order()
    }

    /// g(t) = ((e^t - 1)/t) · (t/f(t)).
    pub fn g(&self) -> Result<Series> {
        let mode = self.mode();
        let order = self.order();
        let e = Series::exp_t(mode, order + 1)
            .add_constant(&RingValue::int(-1, mode))?
            .div_t()?;
        e.egf_mul(&self.t_over_f)
    }

    /// g(t)^a p as I^a (t/f(t))^a p.
    pub fn g_power_integral(&self, a: usize, p: &Poly) -> Result<Poly> {
        let q = apply_operator(&self.t_over_f.pow(a)?, p)?;
        operator_i(&q, &RingValue::int(1, self.mode()), a)
    }

    /// g(t)^a p as Σ_l S_2(l+a, a) a!/(l+a)! (t/f(t))^a p^(l).
    pub fn g_power_stirling(&self, a: usize, p: &Poly) -> Result<Poly> {
        let n = p.degree_or_zero();
        let s2 = stirling2_table(n + a);
        let tf = self.t_over_f.pow(a)?;
        let mut out = Poly::zero_poly(self.mode());
        for l in 0..=n {
            let w = &s2[l + a][a] * &factorial(a) * factorial(l + a).recip()?;
            if w.is_zero() {
                continue;
            }
            out = out.plus(&apply_operator(&tf, &p.nth_derivative(l))?.scaled(&w));
        }
        Ok(out)
    }

    /// g(t)^a p, computed both ways; a mismatch is an error.
    pub fn g_power(&self, a: usize, p: &Poly) -> Result<Poly> {
        let x = self.g_power_integral(a, p)?;
        let y = self.g_power_stirling(a, p)?;
        if x != y {
            return Err(Error::Disagreement(format!("g(t)^{a} p: {x} vs {y}")));
        }
        Ok(x)
    }

    /// f(t)^a p as (f(t)/t)^a p^(a).
    pub fn f_power(&self, a: usize, p: &Poly) -> Result<Poly> {
        apply_operator(&self.f_over_t.pow(a)?, &p.nth_derivative(a))
    }
}

/// Default truncation order for an expansion of degree `n` at basis order `r`.
fn default_order(n: usize, r: usize) -> usize {
    n + r + 2
}

/// Runs `run` at `order`, doubling the order while it reports insufficiency.
fn with_order_retry<T>(order: usize, mut run: impl FnMut(usize) -> Result<T>) -> Result<T> {
    let mut order = order.max(1);
    for _ in 0..4 {
        match run(order) {
            Err(Error::InsufficientOrder { .. }) => order *= 2,
            other => return other,
        }
    }
    run(order)
}

fn at_int(p: &Poly, j: usize) -> RingValue {
    p.eval_rational(&Rational::from(j))
}

fn inv_factorial(k: usize) -> Rational {
    factorial(k).recip().expect("k! > 0")
}

fn poly_div_step_power(p: &Poly, step: &RingValue, k: usize) -> Result<Poly> {
    let coeffs = p
        .coeffs()
        .iter()
        .map(|c| c.div_step_power(step, k))
        .collect::<Result<Vec<_>>>()?;
    Poly::new(p.ctx(), coeffs)
}

fn need<'a, T>(v: Option<&'a T>, what: &str) -> Result<&'a T> {
    v.ok_or_else(|| Error::MissingParameter(what.into()))
}

/// a_1..a_n of a first-order expansion from the first-kind table `s1`.
fn first_order_tail(p: &Poly, s1: &StirlingTable, form: Form) -> Result<Vec<RingValue>> {
    let mode = p.ctx();
    let n = p.degree_or_zero();
    let one = RingValue::int(1, mode);
    let zero = || RingValue::zero(mode);
    let mut out = Vec::with_capacity(n);
    match form {
        Form::One => {
            let diffs = (0..n)
                .map(|j| Ok(forward_diff(p, &one, j + 1)?.coeff(0).scaled(&inv_factorial(j))))
                .collect::<Result<Vec<_>>>()?;
            for r in 0..n {
                let s = (r..n).fold(zero(), |acc, j| acc.plus(&s1.get(j, r).times(&diffs[j])));
                out.push(s.scaled(&Rational::from(r + 1).recip()?));
            }
        }
        Form::Two => {
            let s2 = stirling2_table(n);
            let dk = (0..n)
                .map(|k| {
                    let d = p.nth_derivative(k);
                    d.eval(&one).minus(&d.coeff(0)).scaled(&inv_factorial(k))
                })
                .collect::<Vec<_>>();
            for r in 0..n {
                let mut s = zero();
                for (k, dk) in dk.iter().enumerate().skip(r) {
                    let inner = (r..=k).fold(zero(), |acc, j| acc.plus(&s1.get(j, r).scaled(&s2[k][j])));
                    s = s.plus(&inner.times(dk));
                }
                out.push(s.scaled(&Rational::from(r + 1).recip()?));
            }
        }
        Form::Three => {
            let vals: Vec<RingValue> = (0..=n).map(|k| at_int(p, k)).collect();
            for r in 0..n {
                let mut s = zero();
                for j in r..n {
                    let inner = (0..=j + 1).fold(zero(), |acc, k| {
                        let w = Rational::sign_power(j + 1 - k) * binomial(j + 1, k);
                        acc.plus(&vals[k].scaled(&w))
                    });
                    s = s.plus(&s1.get(j, r).times(&inner).scaled(&inv_factorial(j)));
                }
                out.push(s.scaled(&Rational::from(r + 1).recip()?));
            }
        }
    }
    Ok(out)
}

fn expand_first_order(p: &Poly, rv: &RandomVariable, lambda: Option<&RingValue>, form: Form) -> Result<BasisExpansion> {
    let spec = BasisSpec::probabilistic(rv, lambda, 1);
    let p = p.lift(spec.mode())?;
    let n = p.degree_or_zero();
    let a0 = with_order_retry(default_order(n, 1), |order| {
        let ops = DeltaOperators::cached(rv, lambda, order)?;
        Ok(integrate_unit(&apply_operator(&ops.t_over_f, &p)?))
    })?;
    let family = if lambda.is_some() {
        StirlingFamily::S1ProbDeg
    } else {
        StirlingFamily::S1Prob
    };
    let s1 = build_table(family, Some(rv), lambda, n.max(1))?;
    let mut coeffs = vec![a0];
    coeffs.extend(first_order_tail(&p, &s1, form)?);
    let method = if lambda.is_some() {
        Method::Thm33(form)
    } else {
        Method::Thm31(form)
    };
    Ok(BasisExpansion {
        basis: spec,
        coeffs,
        method,
    })
}

/// Expansion in the probabilistic Bernoulli basis B_k^Y.
pub fn expand_thm31(p: &Poly, rv: &RandomVariable, form: Form) -> Result<BasisExpansion> {
    expand_first_order(p, rv, None, form)
}

/// Expansion in the probabilistic degenerate Bernoulli basis β_{k,λ}^Y.
pub fn expand_thm33(p: &Poly, rv: &RandomVariable, lambda: &RingValue, form: Form) -> Result<BasisExpansion> {
    expand_first_order(p, rv, Some(lambda), form)
}

/// (1/k!) Σ_{j≤m} (-1)^(m-j) C(m,j) q(j), i.e. (1/k!) Δ^m q(0).
fn diff_at_zero(q: &Poly, m: usize, k: usize) -> RingValue {
    let s = (0..=m).fold(RingValue::zero(q.ctx()), |acc, j| {
        let w = Rational::sign_power(m - j) * binomial(m, j);
        acc.plus(&at_int(q, j).scaled(&w))
    });
    s.scaled(&inv_factorial(k))
}

/// Assembles a higher-order expansion from the g- and f-power operators.
/// Below k = r the g-branch is used, from k = r on the f-branch; at k = r
/// both apply and must agree.
fn higher_order_coeffs(
    p: &Poly,
    r: usize,
    g_power: impl Fn(usize, &Poly) -> Result<Poly>,
    f_power: impl Fn(usize, &Poly) -> Result<Poly>,
) -> Result<Vec<RingValue>> {
    let n = p.degree_or_zero();
    let mut out = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let a = if k < r {
            diff_at_zero(&g_power(r - k, p)?, k, k)
        } else {
            let viaf = diff_at_zero(&f_power(k - r, p)?, r, k);
            if k == r {
                let viag = diff_at_zero(p, k, k);
                if viag != viaf {
                    return Err(Error::Disagreement(format!("boundary k = r = {r}: {viag} vs {viaf}")));
                }
            }
            viaf
        };
        out.push(a);
    }
    Ok(out)
}

/// Expansion in the order-r probabilistic Bernoulli basis, degenerate when
/// λ is given.
pub fn expand_higher(p: &Poly, rv: &RandomVariable, lambda: Option<&RingValue>, r: usize) -> Result<BasisExpansion> {
    let spec = BasisSpec::probabilistic(rv, lambda, r);
    let p = p.lift(spec.mode())?;
    let n = p.degree_or_zero();
    let coeffs = with_order_retry(default_order(n, r), |order| {
        let ops = DeltaOperators::cached(rv, lambda, order)?;
        higher_order_coeffs(&p, r, |a, q| ops.g_power(a, q), |a, q| ops.f_power(a, q))
    })?;
    let method = if lambda.is_some() { Method::Thm42 } else { Method::Thm41 };
    Ok(BasisExpansion {
        basis: spec,
        coeffs,
        method,
    })
}

/// ∫_0^1 p(λB(x/λ)) dx.
fn a0_umbral(p: &Poly, lambda: &RingValue) -> Result<RingValue> {
    let n = p.degree_or_zero();
    let seq = (0..=n)
        .map(|i| scaled_bernoulli(i, 1, lambda))
        .collect::<Result<Vec<_>>>()?;
    Ok(integrate_unit(&umbral_compose(p, &seq)?))
}

/// a_(r+1) = Δ_λ^r Δp(0) / ((r+1)! λ^r) and its two rewritings.
fn degenerate_35c_tail(p: &Poly, lambda: &RingValue) -> Result<Vec<RingValue>> {
    let mode = p.ctx();
    let n = p.degree_or_zero();
    let one = RingValue::int(1, mode);
    let dp = forward_diff(p, &one, 1)?;
    let s2 = stirling2_table(n);
    let mut out = Vec::with_capacity(n);
    for r in 0..n {
        let norm = inv_factorial(r + 1);
        let v1 = forward_diff(&dp, lambda, r)?
            .coeff(0)
            .div_step_power(lambda, r)?
            .scaled(&norm);
        let v2 = (0..=r)
            .fold(RingValue::zero(mode), |acc, j| {
                let at = lambda.scaled(&Rational::from(j));
                let w = Rational::sign_power(r - j) * binomial(r, j);
                acc.plus(&dp.eval(&at).scaled(&w))
            })
            .div_step_power(lambda, r)?
            .scaled(&norm);
        let v3 = (r..=n)
            .fold(RingValue::zero(mode), |acc, l| {
                let w = &s2[l][r] * &inv_factorial(l);
                acc.plus(&lambda.pow(l - r).times(&dp.nth_derivative(l).coeff(0)).scaled(&w))
            })
            .scaled(&Rational::from(r + 1).recip()?);
        if v1 != v2 || v1 != v3 {
            return Err(Error::Disagreement(format!("a_{}: {v1} / {v2} / {v3}", r + 1)));
        }
        out.push(v1);
    }
    Ok(out)
}

/// Y = 1 degenerate operators: g^a p through p(λB^(a)(x/λ)) and f^a p
/// through I_λ, Δ_λ and Stirling sums, each pair required to agree.
fn higher_17d_24d(p: &Poly, lambda: &RingValue, r: usize) -> Result<Vec<RingValue>> {
    let mode = p.ctx();
    let n = p.degree_or_zero();
    let one = RingValue::int(1, mode);
    let s2 = stirling2_table(n + r);
    let compose = |q: &Poly, a: usize| -> Result<Poly> {
        let seq = (0..=n)
            .map(|i| scaled_bernoulli(i, a, lambda))
            .collect::<Result<Vec<_>>>()?;
        umbral_compose(q, &seq)
    };
    let g_power = |a: usize, q: &Poly| -> Result<Poly> {
        let x = operator_i(&compose(q, a)?, &one, a)?;
        let mut y = Poly::zero_poly(mode);
        for l in 0..=n {
            let w = &s2[l + a][a] * &factorial(a) * inv_factorial(l + a);
            if !w.is_zero() {
                y = y.plus(&compose(&q.nth_derivative(l), a)?.scaled(&w));
            }
        }
        if x != y {
            return Err(Error::Disagreement(format!("g(t)^{a} p: {x} vs {y}")));
        }
        Ok(x)
    };
    let f_power = |a: usize, q: &Poly| -> Result<Poly> {
        let x = poly_div_step_power(&operator_i(&q.nth_derivative(a), lambda, a)?, lambda, a)?;
        let y = poly_div_step_power(&forward_diff(q, lambda, a)?, lambda, a)?;
        let mut z = Poly::zero_poly(mode);
        for l in a..=n {
            let w = &s2[l][a] * &inv_factorial(l);
            z = z.plus(&q.nth_derivative(l).times_scalar(&lambda.pow(l)).scaled(&w));
        }
        let z = poly_div_step_power(&z, lambda, a)?.scaled(&factorial(a));
        if x != y || x != z {
            return Err(Error::Disagreement(format!("f(t)^{a} p: {x} / {y} / {z}")));
        }
        Ok(x)
    };
    higher_order_coeffs(p, r, g_power, f_power)
}

/// Ordinary Bernoulli basis of order r: g^a = I^a and f^a = d^a/dx^a.
fn remark43(p: &Poly, r: usize) -> Result<Vec<RingValue>> {
    let one = RingValue::int(1, p.ctx());
    higher_order_coeffs(p, r, |a, q| operator_i(q, &one, a), |a, q| Ok(q.nth_derivative(a)))
}

/// The specializations to Y = 1.
pub fn expand_classical(
    p: &Poly,
    variant: ClassicalVariant,
    lambda: Option<&RingValue>,
    r: Option<usize>,
) -> Result<BasisExpansion> {
    let method = Method::Classical(variant);
    let (spec, coeffs) = match variant {
        ClassicalVariant::Bernoulli21_1c => {
            let spec = BasisSpec::new(PolyFamily::Bern, None, None, 1)?;
            let p = p.lift(spec.mode())?;
            let coeffs = (0..=p.degree_or_zero())
                .map(|k| integrate_unit(&p.nth_derivative(k)).scaled(&inv_factorial(k)))
                .collect();
            (spec, coeffs)
        }
        ClassicalVariant::Degenerate34c | ClassicalVariant::Degenerate35c => {
            let lambda = need(lambda, "lambda")?;
            let spec = BasisSpec::new(PolyFamily::DegBern, None, Some(lambda), 1)?;
            let p = p.lift(spec.mode())?;
            let mut coeffs = vec![a0_umbral(&p, lambda)?];
            if variant == ClassicalVariant::Degenerate34c {
                let s1 = build_table(StirlingFamily::S1Deg, None, Some(lambda), p.degree_or_zero().max(1))?;
                let tails = Form::ALL
                    .iter()
                    .map(|&f| first_order_tail(&p, &s1, f))
                    .collect::<Result<Vec<_>>>()?;
                if tails.iter().any(|t| *t != tails[0]) {
                    return Err(Error::Disagreement("degenerate first-order forms".into()));
                }
                coeffs.extend(tails.into_iter().next().expect("three forms"));
            } else {
                coeffs.extend(degenerate_35c_tail(&p, lambda)?);
            }
            (spec, coeffs)
        }
        ClassicalVariant::Higher17d24d => {
            let lambda = need(lambda, "lambda")?;
            let r = *need(r.as_ref(), "order r")?;
            let spec = BasisSpec::new(PolyFamily::DegBern, None, Some(lambda), r)?;
            let p = p.lift(spec.mode())?;
            let coeffs = higher_17d_24d(&p, lambda, r)?;
            (spec, coeffs)
        }
        ClassicalVariant::Remark43 => {
            let r = *need(r.as_ref(), "order r")?;
            let spec = BasisSpec::new(PolyFamily::Bern, None, None, r)?;
            let p = p.lift(spec.mode())?;
            let coeffs = remark43(&p, r)?;
            (spec, coeffs)
        }
    };
    Ok(BasisExpansion {
        basis: spec,
        coeffs,
        method,
    })
}

/// Back-substitution against the explicit basis polynomials.
pub fn oracle_expand(p: &Poly, basis: &PolySequence) -> Result<BasisExpansion> {
    let mode = basis.spec.mode();
    let mut residual = p.lift(mode)?;
    let n = residual.degree_or_zero();
    let mut coeffs = vec![RingValue::zero(mode); n + 1];
    for k in (0..=n).rev() {
        let b = basis.get(k)?;
        if b.degree() != Some(k) {
            return Err(Error::NonTriangularBasis(k));
        }
        let inv = b
            .leading()
            .and_then(Ring::unit_inverse)
            .ok_or(Error::NonTriangularBasis(k))?;
        let a = residual.coeff(k).times(&inv);
        residual = residual.minus(&b.times_scalar(&a));
        coeffs[k] = a;
    }
    debug_assert!(residual.is_zero());
    Ok(BasisExpansion {
        basis: basis.spec.clone(),
        coeffs,
        method: Method::Oracle,
    })
}

/// [`oracle_expand`] against the basis described by `spec`.
pub fn oracle_for(p: &Poly, spec: &BasisSpec) -> Result<BasisExpansion> {
    let seq = poly_sequence_for(spec, p.degree_or_zero())?;
    oracle_expand(p, &seq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::q;

    fn rat(c: &[i64]) -> Poly {
        Poly::from_ints(Mode::Rational, c)
    }

    fn rv(v: &[Rational]) -> Vec<RingValue> {
        v.iter().cloned().map(RingValue::Rational).collect()
    }

    #[test]
    fn constant_one_x_squared() {
        let p = rat(&[0, 0, 1]);
        let want = rv(&[q(1, 3), q(1, 1), q(1, 1)]);
        for form in Form::ALL {
            assert_eq!(
                expand_thm31(&p, &RandomVariable::constant_one(), form).unwrap().coeffs,
                want
            );
        }
        let c = expand_classical(&p, ClassicalVariant::Bernoulli21_1c, None, None).unwrap();
        assert_eq!(c.coeffs, want);
        let seq = poly_sequence_for(&c.basis, 2).unwrap();
        assert_eq!(oracle_expand(&p, &seq).unwrap().coeffs, want);
    }

    #[test]
    fn exponential_a0_is_reciprocal_rate() {
        let y = RandomVariable::exponential(q(3, 2)).unwrap();
        for n in 1..=5 {
            let mut c = vec![0; n + 1];
            c[n] = 1;
            let e = expand_thm31(&rat(&c), &y, Form::One).unwrap();
            assert_eq!(e.coeffs[0], RingValue::Rational(q(2, 3)));
        }
    }

    #[test]
    fn constant_polynomial() {
        for y in RandomVariable::fixtures() {
            let e = expand_thm31(&rat(&[5]), &y, Form::Two).unwrap();
            assert_eq!(e.coeffs, vec![RingValue::Rational(&y.mean() * &q(5, 1))]);
            for r in 1..=3 {
                let h = expand_higher(&rat(&[1]), &y, None, r).unwrap();
                assert_eq!(h.coeffs, vec![RingValue::Rational(y.mean().pow(r as i32).unwrap())]);
            }
        }
    }

    #[test]
    fn forms_agree_with_oracle_and_reconstruct() {
        let p = rat(&[3, -1, 4, 1, -5, 9]);
        let lam = RingValue::lambda();
        for y in RandomVariable::fixtures() {
            let oracle = oracle_for(&p, &BasisSpec::probabilistic(&y, None, 1)).unwrap();
            let oracle_deg = oracle_for(&p, &BasisSpec::probabilistic(&y, Some(&lam), 1)).unwrap();
            for form in Form::ALL {
                assert_eq!(
                    expand_thm31(&p, &y, form).unwrap().coeffs,
                    oracle.coeffs,
                    "{y} {form:?}"
                );
                assert_eq!(
                    expand_thm33(&p, &y, &lam, form).unwrap().coeffs,
                    oracle_deg.coeffs,
                    "{y} {form:?}"
                );
            }
            assert_eq!(oracle.reconstruct().unwrap(), p);
            assert_eq!(oracle_deg.reconstruct().unwrap(), p.lift(Mode::Lambda).unwrap());
        }
    }

    #[test]
    fn higher_order_matches_oracle_both_branches() {
        let p = rat(&[1, 2, 0, -3]);
        let lam = RingValue::lambda();
        for y in RandomVariable::fixtures() {
            for r in [1, 2, 3, 5] {
                for l in [None, Some(&lam)] {
                    let e = expand_higher(&p, &y, l, r).unwrap();
                    let o = oracle_for(&p, &e.basis).unwrap();
                    assert_eq!(e.coeffs, o.coeffs, "{y} r={r}");
                }
            }
        }
    }

    #[test]
    fn higher_order_one_is_first_order() {
        let y = RandomVariable::exponential(q(3, 2)).unwrap();
        let p = rat(&[0, 0, 0, 1]);
        assert_eq!(
            expand_higher(&p, &y, None, 1).unwrap().coeffs,
            expand_thm31(&p, &y, Form::One).unwrap().coeffs
        );
    }

    #[test]
    fn classical_degenerate_variants() {
        let lam = RingValue::lambda();
        let p = rat(&[0, 0, 1]);
        let e = expand_classical(&p, ClassicalVariant::Degenerate34c, Some(&lam), None).unwrap();
        assert_eq!(e.coeffs[0], RingValue::lambda_poly(vec![q(1, 3), q(-1, 2), q(1, 6)]));
        let p = rat(&[2, -1, 0, 3, 1]);
        let e34 = expand_classical(&p, ClassicalVariant::Degenerate34c, Some(&lam), None).unwrap();
        let e35 = expand_classical(&p, ClassicalVariant::Degenerate35c, Some(&lam), None).unwrap();
        let t33 = expand_thm33(&p, &RandomVariable::constant_one(), &lam, Form::Three).unwrap();
        assert_eq!(e34.coeffs, e35.coeffs);
        assert_eq!(e34.coeffs, t33.coeffs);
        let lin = expand_classical(&rat(&[0, 1]), ClassicalVariant::Degenerate35c, Some(&lam), None).unwrap();
        assert_eq!(lin.coeffs[1], RingValue::int(1, Mode::Lambda));
    }

    #[test]
    fn classical_higher_order_variants() {
        let lam = RingValue::lambda();
        let p = rat(&[0, 0, 0, 0, 1]);
        for r in [2, 6] {
            let e = expand_classical(&p, ClassicalVariant::Remark43, None, Some(r)).unwrap();
            let h = expand_higher(&p, &RandomVariable::constant_one(), None, r).unwrap();
            assert_eq!(e.coeffs, h.coeffs);
            let d = expand_classical(&p, ClassicalVariant::Higher17d24d, Some(&lam), Some(r)).unwrap();
            let dh = expand_higher(&p, &RandomVariable::constant_one(), Some(&lam), r).unwrap();
            assert_eq!(d.coeffs, dh.coeffs);
        }
    }

    #[test]
    fn oracle_unit_vectors() {
        let spec = BasisSpec::probabilistic(&RandomVariable::poisson(q(3, 2)).unwrap(), None, 2);
        let seq = poly_sequence_for(&spec, 4).unwrap();
        for k in 0..=4 {
            let e = oracle_expand(&seq.entries[k], &seq).unwrap();
            for (i, c) in e.coeffs.iter().enumerate() {
                assert_eq!(*c, RingValue::int(i64::from(i == k), Mode::Rational));
            }
        }
    }

    #[test]
    fn method_tags() {
        assert_eq!(Method::Thm31(Form::Two).to_string(), "thm31_form2");
        assert_eq!(
            Method::Classical(ClassicalVariant::Bernoulli21_1c).to_string(),
            "classical_21_1c"
        );
        assert!(Form::try_from(4).is_err());
    }

    #[test]
    fn missing_classical_parameters() {
        let p = rat(&[0, 1]);
        assert!(expand_classical(&p, ClassicalVariant::Degenerate35c, None, None).is_err());
        assert!(expand_classical(&p, ClassicalVariant::Remark43, None, None).is_err());
    }
}
