//! Truncated exponential generating functions and the umbral calculus on
//! polynomials in x.
//!
//! A [`TruncatedSeries`] of order N stores c_0..c_N of Σ c_n t^n/n!. Every
//! binary operation yields the minimum of its input orders, and consumers
//! that need more than is available get [`Error::InsufficientOrder`] rather
//! than silent zero padding.

mod umbral;
mod xpoly;

use std::fmt;

pub use umbral::{apply_operator, forward_diff, functional, integrate_unit, operator_i, umbral_compose};
pub use xpoly::XPolynomial;

use crate::error::{Error, Result};
use crate::exactnum::{binomial, factorial, falling_factorial, Mode, Rational, Ring, RingValue};

/// Series over the scalar coefficient ring.
pub type Series = TruncatedSeries<RingValue>;
/// Polynomial in x over the scalar coefficient ring.
pub type Poly = XPolynomial<RingValue>;

#[derive(Clone, PartialEq)]
pub struct TruncatedSeries<R: Ring> {
    ctx: R::Ctx,
    coeffs: Vec<R>,
}

impl<R: Ring> TruncatedSeries<R> {
    /// Builds c_0..c_N; fails if the list is empty or a coefficient lives in
    /// a different mode than `ctx`.
    pub fn new(ctx: R::Ctx, coeffs: Vec<R>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Precondition("a series needs at least c_0".into()));
        }
        if coeffs.iter().any(|c| c.ctx() != ctx) {
            return Err(Error::ModeMismatch);
        }
        Ok(TruncatedSeries { ctx, coeffs })
    }

    pub fn from_fn(ctx: R::Ctx, order: usize, mut f: impl FnMut(usize) -> R) -> Self {
        let coeffs: Vec<R> = (0..=order).map(&mut f).collect();
        debug_assert!(coeffs.iter().all(|c| c.ctx() == ctx));
        TruncatedSeries { ctx, coeffs }
    }

    pub fn from_rationals(ctx: R::Ctx, coeffs: &[Rational]) -> Result<Self> {
        Self::new(ctx, coeffs.iter().map(|c| R::from_rational(c, ctx)).collect())
    }

    pub fn constant(c: R, order: usize) -> Self {
        let ctx = c.ctx();
        Self::from_fn(ctx, order, |n| if n == 0 { c.clone() } else { R::zero(ctx) })
    }

    pub fn one(ctx: R::Ctx, order: usize) -> Self {
        Self::constant(R::one(ctx), order)
    }

    /// The series t.
    pub fn identity(ctx: R::Ctx, order: usize) -> Self {
        Self::from_fn(ctx, order, |n| if n == 1 { R::one(ctx) } else { R::zero(ctx) })
    }

    /// e^t.
    pub fn exp_t(ctx: R::Ctx, order: usize) -> Self {
        Self::from_fn(ctx, order, |_| R::one(ctx))
    }

    /// log(1 + t): c_n = (-1)^(n-1) (n-1)!.
    pub fn log1p_t(ctx: R::Ctx, order: usize) -> Self {
        Self::from_fn(ctx, order, |n| {
            if n == 0 {
                R::zero(ctx)
            } else {
                R::from_rational(&(Rational::sign_power(n - 1) * factorial(n - 1)), ctx)
            }
        })
    }

    /// Degenerate exponential e_λ(t) = (1 + λt)^(1/λ): c_n = (1)_{n,λ}.
    pub fn degenerate_exp(lambda: &R, order: usize) -> Self {
        let ctx = lambda.ctx();
        let one = R::one(ctx);
        Self::from_fn(ctx, order, |n| falling_factorial(&one, n, lambda))
    }

    /// Degenerate logarithm log_λ(1 + t) = ((1 + t)^λ - 1)/λ:
    /// c_n = (λ - 1)(λ - 2)...(λ - n + 1) for n ≥ 1.
    pub fn degenerate_log1p(lambda: &R, order: usize) -> Self {
        let ctx = lambda.ctx();
        let one = R::one(ctx);
        Self::from_fn(ctx, order, |n| {
            if n == 0 {
                R::zero(ctx)
            } else {
                falling_factorial(&lambda.minus(&one), n - 1, &one)
            }
        })
    }

    pub fn ctx(&self) -> R::Ctx {
        self.ctx
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    /// c_n; errors when n exceeds the truncation order.
    pub fn coeff(&self, n: usize) -> Result<&R> {
        self.coeffs.get(n).ok_or(Error::InsufficientOrder {
            needed: n,
            available: self.order(),
        })
    }

    pub fn truncate(&self, order: usize) -> Result<Self> {
        self.require_order(order)?;
        Ok(TruncatedSeries {
            ctx: self.ctx,
            coeffs: self.coeffs[..=order].to_vec(),
        })
    }

    pub fn require_order(&self, needed: usize) -> Result<()> {
        if needed > self.order() {
            return Err(Error::InsufficientOrder {
                needed,
                available: self.order(),
            });
        }
        Ok(())
    }

    /// c_0 = 0 and c_1 a nonzero rational.
    pub fn is_delta(&self) -> bool {
        self.coeffs[0].is_zero()
            && self
                .coeffs
                .get(1)
                .and_then(Ring::rational_value)
                .is_some_and(|c| !c.is_zero())
    }

    /// c_0 is a nonzero rational.
    pub fn is_invertible(&self) -> bool {
        self.coeffs[0].rational_value().is_some_and(|c| !c.is_zero())
    }

    pub fn map<S: Ring>(&self, ctx: S::Ctx, f: impl Fn(&R) -> S) -> TruncatedSeries<S> {
        TruncatedSeries {
            ctx,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    fn check_ctx(&self, other: &Self) -> Result<usize> {
        if self.ctx != other.ctx {
            return Err(Error::ModeMismatch);
        }
        Ok(self.order().min(other.order()))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let n = self.check_ctx(other)?;
        Ok(Self::from_fn(self.ctx, n, |i| self.coeffs[i].plus(&other.coeffs[i])))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        let n = self.check_ctx(other)?;
        Ok(Self::from_fn(self.ctx, n, |i| self.coeffs[i].minus(&other.coeffs[i])))
    }

    pub fn neg(&self) -> Self {
        self.map(self.ctx, Ring::negated)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        self.map(self.ctx, |c| c.scaled(q))
    }

    /// Multiplies every coefficient by a ring element.
    pub fn times_scalar(&self, c: &R) -> Result<Self> {
        if c.ctx() != self.ctx {
            return Err(Error::ModeMismatch);
        }
        Ok(self.map(self.ctx, |x| x.times(c)))
    }

    /// Adds a constant to c_0.
    pub fn add_constant(&self, c: &R) -> Result<Self> {
        if c.ctx() != self.ctx {
            return Err(Error::ModeMismatch);
        }
        let mut out = self.clone();
        out.coeffs[0] = out.coeffs[0].plus(c);
        Ok(out)
    }

    /// EGF product: c_n = Σ_k C(n,k) a_k b_{n-k}.
    pub fn egf_mul(&self, other: &Self) -> Result<Self> {
        let order = self.check_ctx(other)?;
        let mut out = vec![R::zero(self.ctx); order + 1];
        for (k, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (n, slot) in out.iter_mut().enumerate().skip(k) {
                let b = &other.coeffs[n - k];
                if b.is_zero() {
                    continue;
                }
                *slot = slot.plus(&a.times(b).scaled(&binomial(n, k)));
            }
        }
        Ok(TruncatedSeries {
            ctx: self.ctx,
            coeffs: out,
        })
    }

    pub fn pow(&self, k: usize) -> Result<Self> {
        let mut acc = Self::one(self.ctx, self.order());
        for _ in 0..k {
            acc = acc.egf_mul(self)?;
        }
        Ok(acc)
    }

    /// Multiplicative inverse; c_0 must be a rational unit.
    pub fn reciprocal(&self) -> Result<Self> {
        let inv0 = self.coeffs[0].unit_inverse().ok_or(Error::NotUnit)?;
        let mut out: Vec<R> = vec![inv0.clone()];
        for n in 1..=self.order() {
            let mut acc = R::zero(self.ctx);
            for k in 1..=n {
                let a = &self.coeffs[k];
                if a.is_zero() {
                    continue;
                }
                acc = acc.plus(&a.times(&out[n - k]).scaled(&binomial(n, k)));
            }
            out.push(acc.times(&inv0).negated());
        }
        Ok(TruncatedSeries {
            ctx: self.ctx,
            coeffs: out,
        })
    }

    /// exp(a) for c_0 = 0, from b' = a' b.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Precondition("exp needs a zero constant term".into()));
        }
        let mut out: Vec<R> = vec![R::one(self.ctx)];
        for n in 0..self.order() {
            let mut acc = R::zero(self.ctx);
            for k in 0..=n {
                let a = &self.coeffs[k + 1];
                if a.is_zero() {
                    continue;
                }
                acc = acc.plus(&a.times(&out[n - k]).scaled(&binomial(n, k)));
            }
            out.push(acc);
        }
        Ok(TruncatedSeries {
            ctx: self.ctx,
            coeffs: out,
        })
    }

    /// log(a) for c_0 = 1, from a b' = a'.
    pub fn log(&self) -> Result<Self> {
        if self.coeffs[0] != R::one(self.ctx) {
            return Err(Error::Precondition("log needs constant term 1".into()));
        }
        let mut out: Vec<R> = vec![R::zero(self.ctx)];
        for n in 0..self.order() {
            let mut acc = self.coeffs[n + 1].clone();
            for k in 1..=n {
                let a = &self.coeffs[k];
                if a.is_zero() {
                    continue;
                }
                acc = acc.minus(&a.times(&out[n + 1 - k]).scaled(&binomial(n, k)));
            }
            out.push(acc);
        }
        Ok(TruncatedSeries {
            ctx: self.ctx,
            coeffs: out,
        })
    }

    /// a^e = exp(e log a) for a rational exponent; c_0 must be 1.
    pub fn pow_rational(&self, e: &Rational) -> Result<Self> {
        self.log()?.scale(e).exp()
    }

    /// P_0..P_kmax with P_k = f^k / k!, each at the order of f.
    pub fn power_table(&self, kmax: usize) -> Result<Vec<Self>> {
        let mut table = vec![Self::one(self.ctx, self.order())];
        for k in 1..=kmax {
            let next = table[k - 1].egf_mul(self)?.scale(&Rational::from(k).recip()?);
            table.push(next);
        }
        Ok(table)
    }

    /// outer(inner(t)); `inner` must be a delta series.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        let order = self.check_ctx(inner)?;
        if !inner.is_delta() {
            return Err(Error::NotDelta);
        }
        let inner = inner.truncate(order)?;
        let powers = inner.power_table(order)?;
        let mut out = Self::from_fn(self.ctx, order, |_| R::zero(self.ctx));
        for (k, pk) in powers.iter().enumerate() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            out = out.add(&pk.times_scalar(c)?)?;
        }
        Ok(out)
    }

    /// Compositional inverse g of a delta series f, solved term by term from
    /// Σ_k g_k [f^k/k!]_n = δ_{n,1}.
    pub fn comp_inverse(&self) -> Result<Self> {
        if !self.is_delta() {
            return Err(Error::NotDelta);
        }
        let order = self.order();
        let f1 = self.coeffs[1].rational_value().ok_or(Error::NotDelta)?;
        let powers = self.power_table(order)?;
        let mut g: Vec<R> = vec![R::zero(self.ctx)];
        for n in 1..=order {
            let mut acc = if n == 1 { R::one(self.ctx) } else { R::zero(self.ctx) };
            for (k, gk) in g.iter().enumerate().skip(1) {
                if gk.is_zero() {
                    continue;
                }
                acc = acc.minus(&gk.times(&powers[k].coeffs[n]));
            }
            g.push(acc.scaled(&f1.pow(n as i32)?.recip()?));
        }
        Ok(TruncatedSeries {
            ctx: self.ctx,
            coeffs: g,
        })
    }

    /// f(t)/t for c_0 = 0; the order drops by one.
    pub fn div_t(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Precondition("division by t needs a zero constant term".into()));
        }
        if self.order() == 0 {
            return Err(Error::InsufficientOrder {
                needed: 1,
                available: 0,
            });
        }
        Ok(Self::from_fn(self.ctx, self.order() - 1, |n| {
            self.coeffs[n + 1].scaled(&Rational::from(n + 1).recip().expect("n + 1 > 0"))
        }))
    }

    /// t f(t); the order rises by one.
    pub fn mul_t(&self) -> Self {
        Self::from_fn(self.ctx, self.order() + 1, |n| {
            if n == 0 {
                R::zero(self.ctx)
            } else {
                self.coeffs[n - 1].scaled(&Rational::from(n))
            }
        })
    }
}

impl TruncatedSeries<RingValue> {
    /// Maps every coefficient at λ = `at`, yielding a rational-mode series.
    pub fn eval_lambda(&self, at: &Rational) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.eval_lambda(at).map(RingValue::Rational))
            .collect::<Result<Vec<_>>>()?;
        Self::new(Mode::Rational, coeffs)
    }

    /// Embeds a rational-mode series into λ mode (or passes it through).
    pub fn lift(&self, mode: Mode) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.to_mode(mode))
            .collect::<Result<Vec<_>>>()?;
        Self::new(mode, coeffs)
    }
}

impl<R: Ring> fmt::Debug for TruncatedSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series{:?}", self.coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{q, stirling2_table};

    type S = TruncatedSeries<Rational>;

    fn ints(v: &[i64]) -> S {
        S::from_rationals((), &v.iter().map(|&x| Rational::from_int(x)).collect::<Vec<_>>()).unwrap()
    }

    fn et_minus_one(order: usize) -> S {
        S::exp_t((), order).add_constant(&Rational::from_int(-1)).unwrap()
    }

    #[test]
    fn egf_products() {
        let e = S::exp_t((), 6);
        let e2 = e.egf_mul(&e).unwrap();
        for (n, c) in e2.coeffs().iter().enumerate() {
            assert_eq!(*c, Rational::from_int(1 << n));
        }
        let one = S::one((), 6);
        assert_eq!(one.egf_mul(&e).unwrap(), e);
        let b = et_minus_one(6);
        let sq = b.egf_mul(&b).unwrap().scale(&q(1, 2));
        assert_eq!(sq.coeffs()[3], Rational::from_int(3));
    }

    #[test]
    fn mixed_order_takes_minimum() {
        let a = S::exp_t((), 3);
        let b = S::exp_t((), 7);
        assert_eq!(a.egf_mul(&b).unwrap().order(), 3);
        let err = a.egf_mul(&b).unwrap().coeff(5).unwrap_err();
        assert_eq!(
            err,
            Error::InsufficientOrder {
                needed: 5,
                available: 3
            }
        );
    }

    #[test]
    fn reciprocals() {
        let r = S::exp_t((), 6).reciprocal().unwrap();
        for (n, c) in r.coeffs().iter().enumerate() {
            assert_eq!(*c, Rational::sign_power(n));
        }
        assert_eq!(S::one((), 4).reciprocal().unwrap(), S::one((), 4));
        let bern = et_minus_one(4).div_t().unwrap().reciprocal().unwrap();
        assert_eq!(bern.coeffs()[..3], [Rational::one(), q(-1, 2), q(1, 6)]);
        assert_eq!(et_minus_one(3).reciprocal(), Err(Error::NotUnit));
    }

    #[test]
    fn exp_and_log() {
        let e = S::exp_t((), 8);
        assert_eq!(e.log().unwrap(), S::identity((), 8));
        assert_eq!(S::constant(Rational::zero(), 5).exp().unwrap(), S::one((), 5));
        assert!(e.exp().is_err());
        assert!(et_minus_one(3).log().is_err());
    }

    #[test]
    fn compositions() {
        let f = et_minus_one(8);
        let t = S::identity((), 8);
        assert_eq!(t.compose(&f).unwrap(), f);
        let lg = S::log1p_t((), 8);
        assert_eq!(f.compose(&lg).unwrap(), t);
        assert_eq!(lg.compose(&f).unwrap(), t);
        assert_eq!(f.compose(&S::exp_t((), 8)), Err(Error::NotDelta));
    }

    #[test]
    fn degenerate_inverse_pair() {
        let lam = RingValue::lambda();
        let e = Series::degenerate_exp(&lam, 7)
            .add_constant(&RingValue::int(-1, Mode::Lambda))
            .unwrap();
        let l = Series::degenerate_log1p(&lam, 7);
        let t = Series::identity(Mode::Lambda, 7);
        assert_eq!(e.compose(&l).unwrap(), t);
        assert_eq!(l.compose(&e).unwrap(), t);
    }

    #[test]
    fn compositional_inverses() {
        let t = S::identity((), 6);
        assert_eq!(t.comp_inverse().unwrap(), t);
        let inv = et_minus_one(8).comp_inverse().unwrap();
        assert_eq!(inv, S::log1p_t((), 8));
        // exponential fixture: log M = -log(1 - t/α), inverse α(1 - e^{-t})
        let alpha = q(3, 2);
        let m = S::identity((), 8)
            .scale(&-alpha.recip().unwrap())
            .add_constant(&Rational::one())
            .unwrap()
            .reciprocal()
            .unwrap();
        let fy = m.log().unwrap().comp_inverse().unwrap();
        for n in 1..=8 {
            assert_eq!(fy.coeffs()[n], -(&alpha * &Rational::sign_power(n)));
        }
        assert_eq!(S::exp_t((), 4).comp_inverse(), Err(Error::NotDelta));
    }

    #[test]
    fn poisson_log_mgf() {
        let alpha = q(3, 2);
        let m = et_minus_one(10).scale(&alpha).exp().unwrap();
        let l = m.log().unwrap();
        assert_eq!(l.coeffs()[0], Rational::zero());
        for n in 1..=10 {
            assert_eq!(l.coeffs()[n], alpha);
        }
    }

    #[test]
    fn powers_of_delta_series_give_stirling_rows() {
        let s2 = stirling2_table(8);
        let p = et_minus_one(8).power_table(8).unwrap();
        for n in 0..=8 {
            for k in 0..=n {
                assert_eq!(p[k].coeffs()[n], s2[n][k]);
            }
        }
    }

    #[test]
    fn shifting_by_t() {
        let f = ints(&[0, 2, 6, 12]);
        assert_eq!(f.div_t().unwrap(), ints(&[2, 3, 4]));
        assert_eq!(f.div_t().unwrap().mul_t(), f);
    }

    #[test]
    fn fractional_power() {
        let f = ints(&[1, 1, 0, 0, 0, 0]);
        let h = f.pow_rational(&q(1, 2)).unwrap();
        assert_eq!(h.egf_mul(&h).unwrap(), f);
    }

    #[test]
    fn mode_mismatch_is_an_error() {
        let a = Series::one(Mode::Rational, 3);
        let b = Series::one(Mode::Lambda, 3);
        assert_eq!(a.egf_mul(&b), Err(Error::ModeMismatch));
        assert!(Series::new(Mode::Rational, vec![RingValue::lambda()]).is_err());
    }
}
