use std::fmt;

use serde::{Serialize, Serializer};

use super::{LambdaPoly, Rational};
use crate::error::{Error, Result};

/// Exact commutative coefficient ring with division by nonzero rationals.
///
/// Every value carries a context (its arithmetic mode). Combining values with
/// different contexts through these methods is a contract violation and
/// panics; checked entry points that return [`Error::ModeMismatch`] exist on
/// the concrete types and on every container that accepts foreign input.
pub trait Ring: Clone + PartialEq + fmt::Debug + fmt::Display {
    type Ctx: Copy + Eq + fmt::Debug;

    fn ctx(&self) -> Self::Ctx;
    fn zero(ctx: Self::Ctx) -> Self;
    fn from_rational(q: &Rational, ctx: Self::Ctx) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;
    fn scaled(&self, q: &Rational) -> Self;
    /// The value as a rational constant, if it is one.
    fn rational_value(&self) -> Option<Rational>;

    fn one(ctx: Self::Ctx) -> Self {
        Self::from_rational(&Rational::one(), ctx)
    }

    fn from_int(n: i64, ctx: Self::Ctx) -> Self {
        Self::from_rational(&Rational::from_int(n), ctx)
    }

    fn pow(&self, n: usize) -> Self {
        let mut acc = Self::one(self.ctx());
        for _ in 0..n {
            acc = acc.times(self);
        }
        acc
    }

    /// Inverse of a unit; only nonzero rational constants qualify.
    fn unit_inverse(&self) -> Option<Self> {
        let q = self.rational_value()?;
        let inv = q.recip().ok()?;
        Some(Self::from_rational(&inv, self.ctx()))
    }
}

impl Ring for Rational {
    type Ctx = ();

    fn ctx(&self) {}
    fn zero(_: ()) -> Self {
        Rational::zero()
    }
    fn from_rational(q: &Rational, _: ()) -> Self {
        q.clone()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn scaled(&self, q: &Rational) -> Self {
        self * q
    }
    fn rational_value(&self) -> Option<Rational> {
        Some(self.clone())
    }
}

/// Arithmetic mode shared by every value in one computation.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Plain rationals (λ absent, or fixed to a rational).
    Rational,
    /// Polynomials in a symbolic λ.
    Lambda,
}

/// An exact coefficient: a rational, or a polynomial in symbolic λ.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum RingValue {
    Rational(Rational),
    Lambda(LambdaPoly),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    DivByRational,
}

impl RingValue {
    pub fn mode(&self) -> Mode {
        match self {
            RingValue::Rational(_) => Mode::Rational,
            RingValue::Lambda(_) => Mode::Lambda,
        }
    }

    pub fn rational(q: Rational) -> Self {
        RingValue::Rational(q)
    }

    pub fn int(n: i64, mode: Mode) -> Self {
        <RingValue as Ring>::from_int(n, mode)
    }

    /// The symbolic indeterminate λ.
    pub fn lambda() -> Self {
        RingValue::Lambda(LambdaPoly::lambda())
    }

    pub fn lambda_poly(coeffs: Vec<Rational>) -> Self {
        RingValue::Lambda(LambdaPoly::new(coeffs))
    }

    fn check_mode(&self, rhs: &RingValue) -> Result<()> {
        if self.mode() != rhs.mode() {
            return Err(Error::ModeMismatch);
        }
        Ok(())
    }

    pub fn checked_add(&self, rhs: &RingValue) -> Result<RingValue> {
        self.check_mode(rhs)?;
        Ok(self.plus(rhs))
    }

    pub fn checked_sub(&self, rhs: &RingValue) -> Result<RingValue> {
        self.check_mode(rhs)?;
        Ok(self.minus(rhs))
    }

    pub fn checked_mul(&self, rhs: &RingValue) -> Result<RingValue> {
        self.check_mode(rhs)?;
        Ok(self.times(rhs))
    }

    pub fn div_by_rational(&self, d: &Rational) -> Result<RingValue> {
        Ok(self.scaled(&d.recip()?))
    }

    /// Evaluates a symbolic-λ value at a rational λ.
    pub fn eval_lambda(&self, at: &Rational) -> Result<Rational> {
        match self {
            RingValue::Lambda(p) => Ok(p.eval(at)),
            RingValue::Rational(_) => Err(Error::NotLambdaMode),
        }
    }

    /// Lifts a rational-mode value into `mode`; the reverse direction is
    /// only possible for constants.
    pub fn to_mode(&self, mode: Mode) -> Result<RingValue> {
        match (self, mode) {
            (RingValue::Rational(q), Mode::Lambda) => Ok(RingValue::Lambda(LambdaPoly::constant(q.clone()))),
            (RingValue::Lambda(p), Mode::Rational) => {
                p.as_constant().map(RingValue::Rational).ok_or(Error::ModeMismatch)
            }
            _ => Ok(self.clone()),
        }
    }

    /// Exact division by `step^k`, where `step` is either a nonzero
    /// rational or the bare symbol λ.
    pub fn div_step_power(&self, step: &RingValue, k: usize) -> Result<RingValue> {
        self.check_mode(step)?;
        if let Some(s) = step.rational_value() {
            return self.div_by_rational(&s.pow(k as i32)?);
        }
        match (self, step) {
            (RingValue::Lambda(p), RingValue::Lambda(s)) if *s == LambdaPoly::lambda() => {
                p.div_lambda_pow(k).map(RingValue::Lambda).ok_or(Error::NotDivisible)
            }
            _ => Err(Error::NotDivisible),
        }
    }

    /// Canonical text: a rational string, or the ascending λ-coefficient list.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    /// Coefficient strings: one entry in rational mode, the λ-coefficients
    /// in λ mode.
    pub fn coefficient_strings(&self) -> Vec<String> {
        match self {
            RingValue::Rational(q) => vec![q.to_string()],
            RingValue::Lambda(p) => p.coeffs().iter().map(|c| c.to_string()).collect(),
        }
    }
}

/// Exact binary operation on two same-mode values.
pub fn ring_arith(a: &RingValue, b: &RingValue, op: ArithOp) -> Result<RingValue> {
    match op {
        ArithOp::Add => a.checked_add(b),
        ArithOp::Sub => a.checked_sub(b),
        ArithOp::Mul => a.checked_mul(b),
        ArithOp::DivByRational => {
            a.check_mode(b)?;
            let d = b.rational_value().ok_or(Error::NotDivisible)?;
            a.div_by_rational(&d)
        }
    }
}

/// Evaluates a symbolic-λ value at a rational λ.
pub fn eval_lambda(v: &RingValue, at: &Rational) -> Result<Rational> {
    v.eval_lambda(at)
}

fn mismatch() -> ! {
    panic!("ring mode mismatch: values from different arithmetic modes were combined")
}

impl Ring for RingValue {
    type Ctx = Mode;

    fn ctx(&self) -> Mode {
        self.mode()
    }

    fn zero(mode: Mode) -> Self {
        match mode {
            Mode::Rational => RingValue::Rational(Rational::zero()),
            Mode::Lambda => RingValue::Lambda(LambdaPoly::zero()),
        }
    }

    fn from_rational(q: &Rational, mode: Mode) -> Self {
        match mode {
            Mode::Rational => RingValue::Rational(q.clone()),
            Mode::Lambda => RingValue::Lambda(LambdaPoly::constant(q.clone())),
        }
    }

    fn is_zero(&self) -> bool {
        match self {
            RingValue::Rational(q) => q.is_zero(),
            RingValue::Lambda(p) => p.is_zero(),
        }
    }

    fn plus(&self, rhs: &Self) -> Self {
        match (self, rhs) {
            (RingValue::Rational(a), RingValue::Rational(b)) => RingValue::Rational(a + b),
            (RingValue::Lambda(a), RingValue::Lambda(b)) => RingValue::Lambda(a.add(b)),
            _ => mismatch(),
        }
    }

    fn minus(&self, rhs: &Self) -> Self {
        match (self, rhs) {
            (RingValue::Rational(a), RingValue::Rational(b)) => RingValue::Rational(a - b),
            (RingValue::Lambda(a), RingValue::Lambda(b)) => RingValue::Lambda(a.sub(b)),
            _ => mismatch(),
        }
    }

    fn times(&self, rhs: &Self) -> Self {
        match (self, rhs) {
            (RingValue::Rational(a), RingValue::Rational(b)) => RingValue::Rational(a * b),
            (RingValue::Lambda(a), RingValue::Lambda(b)) => RingValue::Lambda(a.mul(b)),
            _ => mismatch(),
        }
    }

    fn negated(&self) -> Self {
        match self {
            RingValue::Rational(a) => RingValue::Rational(-a),
            RingValue::Lambda(a) => RingValue::Lambda(a.neg()),
        }
    }

    fn scaled(&self, q: &Rational) -> Self {
        match self {
            RingValue::Rational(a) => RingValue::Rational(a * q),
            RingValue::Lambda(a) => RingValue::Lambda(a.scale(q)),
        }
    }

    fn rational_value(&self) -> Option<Rational> {
        match self {
            RingValue::Rational(q) => Some(q.clone()),
            RingValue::Lambda(p) => p.as_constant(),
        }
    }
}

impl fmt::Display for RingValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingValue::Rational(q) => write!(f, "{q}"),
            RingValue::Lambda(p) => write!(f, "{p}"),
        }
    }
}

impl fmt::Debug for RingValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingValue::Rational(q) => write!(f, "{q}"),
            RingValue::Lambda(p) => write!(f, "{p:?}"),
        }
    }
}

/// Rational mode serializes as `"num/den"`, λ mode as a list of such strings.
impl Serialize for RingValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            RingValue::Rational(q) => s.serialize_str(&q.to_string()),
            RingValue::Lambda(_) => self.coefficient_strings().serialize(s),
        }
    }
}

impl From<Rational> for RingValue {
    fn from(q: Rational) -> Self {
        RingValue::Rational(q)
    }
}
