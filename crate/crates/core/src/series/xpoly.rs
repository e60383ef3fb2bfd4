use std::fmt;

use crate::error::{Error, Result};
use crate::exactnum::{Mode, Rational, Ring, RingValue};

/// Polynomial in x, ascending powers, no trailing zeros.
#[derive(Clone, PartialEq)]
pub struct XPolynomial<R: Ring> {
    ctx: R::Ctx,
    coeffs: Vec<R>,
}

impl<R: Ring> XPolynomial<R> {
    pub fn new(ctx: R::Ctx, coeffs: Vec<R>) -> Result<Self> {
        if coeffs.iter().any(|c| c.ctx() != ctx) {
            return Err(Error::ModeMismatch);
        }
        Ok(Self::trimmed(ctx, coeffs))
    }

    fn trimmed(ctx: R::Ctx, mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(Ring::is_zero) {
            coeffs.pop();
        }
        XPolynomial { ctx, coeffs }
    }

    pub fn from_rationals(ctx: R::Ctx, coeffs: &[Rational]) -> Self {
        Self::trimmed(ctx, coeffs.iter().map(|c| R::from_rational(c, ctx)).collect())
    }

    pub fn zero_poly(ctx: R::Ctx) -> Self {
        XPolynomial {
            ctx,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(c: R) -> Self {
        Self::trimmed(c.ctx(), vec![c])
    }

    /// x^n.
    pub fn monomial(ctx: R::Ctx, n: usize) -> Self {
        let mut coeffs = vec![R::zero(ctx); n + 1];
        coeffs[n] = R::one(ctx);
        XPolynomial { ctx, coeffs }
    }

    pub fn ctx(&self) -> R::Ctx {
        self.ctx
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> R {
        self.coeffs.get(i).cloned().unwrap_or_else(|| R::zero(self.ctx))
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial counted as degree 0.
    pub fn degree_or_zero(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> Option<&R> {
        self.coeffs.last()
    }

    pub fn eval(&self, at: &R) -> R {
        self.coeffs
            .iter()
            .rev()
            .fold(R::zero(self.ctx), |acc, c| acc.times(at).plus(c))
    }

    pub fn eval_rational(&self, at: &Rational) -> R {
        self.eval(&R::from_rational(at, self.ctx))
    }

    pub fn derivative(&self) -> Self {
        Self::trimmed(
            self.ctx,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.scaled(&Rational::from(i)))
                .collect(),
        )
    }

    pub fn nth_derivative(&self, k: usize) -> Self {
        (0..k).fold(self.clone(), |p, _| p.derivative())
    }

    /// Antiderivative with zero constant term.
    pub fn antiderivative(&self) -> Self {
        let mut coeffs = vec![R::zero(self.ctx)];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c.scaled(&Rational::from(i + 1).recip().expect("i + 1 > 0")));
        }
        Self::trimmed(self.ctx, coeffs)
    }

    /// p(x + a).
    pub fn shift(&self, a: &R) -> Self {
        let x_plus_a = Self::trimmed(self.ctx, vec![a.clone(), R::one(self.ctx)]);
        self.coeffs.iter().rev().fold(Self::zero_poly(self.ctx), |acc, c| {
            acc.times(&x_plus_a).plus(&Self::constant(c.clone()))
        })
    }

    /// p(c x).
    pub fn scale_arg(&self, c: &R) -> Self {
        let mut pw = R::one(self.ctx);
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a.times(&pw));
            pw = pw.times(c);
        }
        Self::trimmed(self.ctx, out)
    }

    pub fn times_scalar(&self, c: &R) -> Self {
        Self::trimmed(self.ctx, self.coeffs.iter().map(|a| a.times(c)).collect())
    }

    pub fn map<S: Ring>(&self, ctx: S::Ctx, f: impl Fn(&R) -> S) -> XPolynomial<S> {
        XPolynomial::trimmed(ctx, self.coeffs.iter().map(f).collect())
    }

    fn assert_ctx(&self, rhs: &Self) {
        assert!(
            self.ctx == rhs.ctx,
            "ring mode mismatch: values from different arithmetic modes were combined"
        );
    }
}

impl XPolynomial<RingValue> {
    /// Evaluates every coefficient at λ = `at`.
    pub fn eval_lambda(&self, at: &Rational) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.eval_lambda(at).map(RingValue::Rational))
            .collect::<Result<Vec<_>>>()?;
        Self::new(Mode::Rational, coeffs)
    }

    pub fn lift(&self, mode: Mode) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.to_mode(mode))
            .collect::<Result<Vec<_>>>()?;
        Self::new(mode, coeffs)
    }

    /// Integer-coefficient constructor, mostly for fixtures.
    pub fn from_ints(mode: Mode, coeffs: &[i64]) -> Self {
        let qs: Vec<Rational> = coeffs.iter().map(|&c| Rational::from_int(c)).collect();
        Self::from_rationals(mode, &qs)
    }
}

impl<R: Ring> Ring for XPolynomial<R> {
    type Ctx = R::Ctx;

    fn ctx(&self) -> R::Ctx {
        self.ctx
    }

    fn zero(ctx: R::Ctx) -> Self {
        Self::zero_poly(ctx)
    }

    fn from_rational(q: &Rational, ctx: R::Ctx) -> Self {
        Self::trimmed(ctx, vec![R::from_rational(q, ctx)])
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn plus(&self, rhs: &Self) -> Self {
        self.assert_ctx(rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::trimmed(self.ctx, (0..n).map(|i| self.coeff(i).plus(&rhs.coeff(i))).collect())
    }

    fn minus(&self, rhs: &Self) -> Self {
        self.assert_ctx(rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::trimmed(self.ctx, (0..n).map(|i| self.coeff(i).minus(&rhs.coeff(i))).collect())
    }

    fn times(&self, rhs: &Self) -> Self {
        self.assert_ctx(rhs);
        if self.is_zero() || rhs.is_zero() {
            return Self::zero_poly(self.ctx);
        }
        let mut out = vec![R::zero(self.ctx); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].plus(&a.times(b));
            }
        }
        Self::trimmed(self.ctx, out)
    }

    fn negated(&self) -> Self {
        XPolynomial {
            ctx: self.ctx,
            coeffs: self.coeffs.iter().map(Ring::negated).collect(),
        }
    }

    fn scaled(&self, q: &Rational) -> Self {
        Self::trimmed(self.ctx, self.coeffs.iter().map(|c| c.scaled(q)).collect())
    }

    fn rational_value(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(Rational::zero()),
            1 => self.coeffs[0].rational_value(),
            _ => None,
        }
    }
}

impl<R: Ring> fmt::Display for XPolynomial<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{i}")?,
            }
        }
        Ok(())
    }
}

impl<R: Ring> fmt::Debug for XPolynomial<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "XPoly{:?}", self.coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::q;
    use crate::series::Poly;

    type P = XPolynomial<Rational>;

    fn p(c: &[i64]) -> P {
        P::from_rationals((), &c.iter().map(|&x| Rational::from_int(x)).collect::<Vec<_>>())
    }

    #[test]
    fn calculus() {
        let f = p(&[1, 2, 3]);
        assert_eq!(f.derivative(), p(&[2, 6]));
        assert_eq!(f.antiderivative().derivative(), f);
        assert_eq!(f.eval(&Rational::from_int(2)), Rational::from_int(17));
    }

    #[test]
    fn shift_and_scale() {
        let sq = p(&[0, 0, 1]);
        assert_eq!(sq.shift(&Rational::from_int(1)), p(&[1, 2, 1]));
        assert_eq!(
            sq.scale_arg(&q(1, 2)),
            P::from_rationals((), &[q(0, 1), q(0, 1), q(1, 4)])
        );
    }

    #[test]
    fn ring_structure() {
        let a = p(&[1, 1]);
        let b = p(&[-1, 1]);
        assert_eq!(a.times(&b), p(&[-1, 0, 1]));
        assert_eq!(a.minus(&a), P::zero_poly(()));
        assert_eq!(p(&[3]).rational_value(), Some(Rational::from_int(3)));
        assert_eq!(a.rational_value(), None);
    }

    #[test]
    fn lambda_evaluation_of_coefficients() {
        let lam = RingValue::lambda();
        let v = Poly::new(Mode::Lambda, vec![lam.clone(), RingValue::int(1, Mode::Lambda)]).unwrap();
        let at = v.eval_lambda(&q(1, 2)).unwrap();
        assert_eq!(at, Poly::from_rationals(Mode::Rational, &[q(1, 2), q(1, 1)]));
        assert!(Poly::from_ints(Mode::Rational, &[1]).eval_lambda(&q(0, 1)).is_err());
    }
}
