//! Exact moment providers for the random variable Y.
//!
//! Moment generating functions are treated as formal power series; whether
//! E[e^{Yt}] converges near 0 is never examined.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exactnum::{
    factorial, falling_factorial, rising_factorial, stirling1_table, stirling2_table, Mode, Rational, Ring, RingValue,
};
use crate::series::Series;

/// Order used for the construction-time cross-check between closed-form
/// moments and an independent generating-function construction.
const CROSS_CHECK_ORDER: usize = 8;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum RvKind {
    ConstantOne,
    Bernoulli {
        p: Rational,
    },
    Binomial {
        m: u32,
        p: Rational,
    },
    Poisson {
        alpha: Rational,
    },
    /// Number of trials up to and including the first success.
    Geometric {
        p: Rational,
    },
    /// Rate parameterization: E[Y] = 1/α.
    Exponential {
        alpha: Rational,
    },
    /// Shape α, rate β: E[Y] = α/β.
    Gamma {
        alpha: Rational,
        beta: Rational,
    },
    CustomMoments(Vec<Rational>),
}

/// A random variable known through its exact raw moments.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RandomVariable {
    kind: RvKind,
}

fn positive(name: &str, v: &Rational) -> Result<()> {
    if *v <= 0 {
        return Err(Error::InvalidParameter(format!("{name} must be positive, got {v}")));
    }
    Ok(())
}

impl RandomVariable {
    /// Validates parameter domains and cross-checks the closed-form moments
    /// against a generating-function construction.
    pub fn new(kind: RvKind) -> Result<Self> {
        match &kind {
            RvKind::ConstantOne => {}
            RvKind::Bernoulli { p } | RvKind::Binomial { p, .. } => {
                if *p <= 0 || *p > 1 {
                    return Err(Error::InvalidParameter(format!("p must satisfy 0 < p <= 1, got {p}")));
                }
            }
            RvKind::Geometric { p } => {
                if *p <= 0 || *p >= 1 {
                    return Err(Error::InvalidParameter(format!("p must satisfy 0 < p < 1, got {p}")));
                }
            }
            RvKind::Poisson { alpha } | RvKind::Exponential { alpha } => positive("alpha", alpha)?,
            RvKind::Gamma { alpha, beta } => {
                positive("alpha", alpha)?;
                positive("beta", beta)?;
            }
            RvKind::CustomMoments(m) => {
                if m.len() < 2 {
                    return Err(Error::InvalidParameter(
                        "custom moments need at least E[Y^0] and E[Y]".into(),
                    ));
                }
                if !m[0].is_one() {
                    return Err(Error::InvalidParameter("E[Y^0] must be 1".into()));
                }
                if m[1].is_zero() {
                    return Err(Error::ZeroMean);
                }
            }
        }
        if let RvKind::Binomial { m: 0, .. } = kind {
            return Err(Error::InvalidParameter("m must be at least 1".into()));
        }
        let rv = RandomVariable { kind };
        rv.cross_check()?;
        Ok(rv)
    }

    pub fn constant_one() -> Self {
        RandomVariable {
            kind: RvKind::ConstantOne,
        }
    }

    pub fn bernoulli(p: Rational) -> Result<Self> {
        Self::new(RvKind::Bernoulli { p })
    }

    pub fn binomial(m: u32, p: Rational) -> Result<Self> {
        Self::new(RvKind::Binomial { m, p })
    }

    pub fn poisson(alpha: Rational) -> Result<Self> {
        Self::new(RvKind::Poisson { alpha })
    }

    pub fn geometric(p: Rational) -> Result<Self> {
        Self::new(RvKind::Geometric { p })
    }

    pub fn exponential(alpha: Rational) -> Result<Self> {
        Self::new(RvKind::Exponential { alpha })
    }

    pub fn gamma(alpha: Rational, beta: Rational) -> Result<Self> {
        Self::new(RvKind::Gamma { alpha, beta })
    }

    pub fn custom(moments: Vec<Rational>) -> Result<Self> {
        Self::new(RvKind::CustomMoments(moments))
    }

    /// The six parameterized kinds at their fixture values: Bernoulli 2/3,
    /// Binomial (4, 2/5), Poisson 3/2, Geometric 1/3, Exponential 3/2,
    /// Gamma (5/2, 3).
    pub fn fixtures() -> Vec<RandomVariable> {
        use crate::exactnum::q;
        vec![
            Self::bernoulli(q(2, 3)),
            Self::binomial(4, q(2, 5)),
            Self::poisson(q(3, 2)),
            Self::geometric(q(1, 3)),
            Self::exponential(q(3, 2)),
            Self::gamma(q(5, 2), Rational::from_int(3)),
        ]
        .into_iter()
        .map(|r| r.expect("fixture parameters are valid"))
        .collect()
    }

    pub fn kind(&self) -> &RvKind {
        &self.kind
    }

    pub fn is_constant_one(&self) -> bool {
        self.kind == RvKind::ConstantOne
    }

    /// Short kind name as used in the text spec.
    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            RvKind::ConstantOne => "constant1",
            RvKind::Bernoulli { .. } => "bernoulli",
            RvKind::Binomial { .. } => "binomial",
            RvKind::Poisson { .. } => "poisson",
            RvKind::Geometric { .. } => "geometric",
            RvKind::Exponential { .. } => "exponential",
            RvKind::Gamma { .. } => "gamma",
            RvKind::CustomMoments(_) => "custom",
        }
    }

    pub fn mean(&self) -> Rational {
        self.raw_moments(1).expect("E[Y] is always available")[1].clone()
    }

    /// E[Y^0], ..., E[Y^N] from closed forms.
    pub fn raw_moments(&self, n_max: usize) -> Result<Vec<Rational>> {
        let s2 = || stirling2_table(n_max);
        let out = match &self.kind {
            RvKind::ConstantOne => vec![Rational::one(); n_max + 1],
            RvKind::Bernoulli { p } => (0..=n_max)
                .map(|n| if n == 0 { Rational::one() } else { p.clone() })
                .collect(),
            RvKind::Binomial { m, p } => {
                let m = Rational::from_int(i64::from(*m));
                let fact: Vec<Rational> = (0..=n_max)
                    .map(|k| falling_factorial(&m, k, &Rational::one()) * p.pow(k as i32).expect("k >= 0"))
                    .collect();
                from_factorial_moments(&s2(), &fact)
            }
            RvKind::Poisson { alpha } => {
                let fact: Vec<Rational> = (0..=n_max).map(|k| alpha.pow(k as i32).expect("k >= 0")).collect();
                from_factorial_moments(&s2(), &fact)
            }
            RvKind::Geometric { p } => {
                let q = Rational::one() - p;
                let fact: Vec<Rational> = (0..=n_max)
                    .map(|k| {
                        if k == 0 {
                            Rational::one()
                        } else {
                            factorial(k) * q.pow(k as i32 - 1).expect("k >= 1") * p.pow(-(k as i32)).expect("p > 0")
                        }
                    })
                    .collect();
                from_factorial_moments(&s2(), &fact)
            }
            RvKind::Exponential { alpha } => (0..=n_max)
                .map(|n| factorial(n) * alpha.pow(-(n as i32)).expect("alpha > 0"))
                .collect(),
            RvKind::Gamma { alpha, beta } => (0..=n_max)
                .map(|n| rising_factorial(alpha, n) * beta.pow(-(n as i32)).expect("beta > 0"))
                .collect(),
            RvKind::CustomMoments(m) => {
                if n_max >= m.len() {
                    return Err(Error::InsufficientOrder {
                        needed: n_max,
                        available: m.len() - 1,
                    });
                }
                m[..=n_max].to_vec()
            }
        };
        Ok(out)
    }

    /// E[(Y)_{n,λ}] = Σ_k S_1(n,k) λ^(n-k) E[Y^k], in the mode of λ.
    pub fn degenerate_moments(&self, lambda: &RingValue, n_max: usize) -> Result<Vec<RingValue>> {
        let raw = self.raw_moments(n_max)?;
        let s1 = stirling1_table(n_max);
        let mode = lambda.mode();
        let powers: Vec<RingValue> = (0..=n_max).map(|i| lambda.pow(i)).collect();
        Ok((0..=n_max)
            .map(|n| {
                (0..=n).fold(RingValue::zero(mode), |acc, k| {
                    acc.plus(&powers[n - k].scaled(&(&s1[n][k] * &raw[k])))
                })
            })
            .collect())
    }

    /// E[e^{Yt}] (λ absent) or E[e_λ^Y(t)] (λ present) as an EGF of order N.
    pub fn mgf_series(&self, lambda: Option<&RingValue>, order: usize) -> Result<Series> {
        match lambda {
            None => {
                let raw = self.raw_moments(order)?;
                Series::from_rationals(Mode::Rational, &raw)
            }
            Some(l) => Series::new(l.mode(), self.degenerate_moments(l, order)?),
        }
    }

    /// e_Y(t) = E[e^{Yt}] - 1, or e_{Y,λ}(t) = E[e_λ^Y(t)] - 1.
    pub fn e_series(&self, lambda: Option<&RingValue>, order: usize) -> Result<Series> {
        let m = self.mgf_series(lambda, order)?;
        let mode = m.ctx();
        m.add_constant(&RingValue::int(-1, mode))
    }

    /// E[S_j^n] for the partial sum S_j of j independent copies of Y.
    pub fn sum_power_moments(&self, j: usize, n: usize) -> Result<Rational> {
        let m = self.mgf_series(None, n)?;
        let s = m.pow(j)?;
        Ok(s.coeff(n)?.rational_value().expect("rational mode"))
    }

    /// Independent generating-function construction of the MGF, where one
    /// exists.
    fn mgf_by_generating_function(&self, order: usize) -> Result<Option<Series>> {
        let ctx = Mode::Rational;
        let one = RingValue::int(1, ctx);
        let et = Series::exp_t(ctx, order);
        let et_minus_one = et.add_constant(&RingValue::int(-1, ctx))?;
        let t = Series::identity(ctx, order);
        let bern = |p: &Rational| et_minus_one.scale(p).add_constant(&one);
        let s = match &self.kind {
            RvKind::ConstantOne => et,
            RvKind::Bernoulli { p } => bern(p)?,
            RvKind::Binomial { m, p } => bern(p)?.pow(*m as usize)?,
            RvKind::Poisson { alpha } => et_minus_one.scale(alpha).exp()?,
            RvKind::Geometric { p } => {
                let q = Rational::one() - p;
                let denom = et.scale(&-q).add_constant(&one)?;
                et.scale(p).egf_mul(&denom.reciprocal()?)?
            }
            RvKind::Exponential { alpha } => t.scale(&-alpha.recip()?).add_constant(&one)?.reciprocal()?,
            RvKind::Gamma { alpha, beta } => t
                .scale(&-beta.recip()?)
                .add_constant(&one)?
                .pow_rational(&-alpha.clone())?,
            RvKind::CustomMoments(_) => return Ok(None),
        };
        Ok(Some(s))
    }

    fn cross_check(&self) -> Result<()> {
        if let Some(gf) = self.mgf_by_generating_function(CROSS_CHECK_ORDER)? {
            let closed = self.mgf_series(None, CROSS_CHECK_ORDER)?;
            if gf != closed {
                return Err(Error::Disagreement(format!(
                    "closed-form moments of {self} disagree with its generating function"
                )));
            }
        }
        Ok(())
    }

    /// The generating-function MGF of order N, for kinds that have one.
    pub fn mgf_generating_function(&self, order: usize) -> Result<Option<Series>> {
        self.mgf_by_generating_function(order)
    }
}

/// E[Y^n] = Σ_k S_2(n,k) E[(Y)_k].
fn from_factorial_moments(s2: &[Vec<Rational>], fact: &[Rational]) -> Vec<Rational> {
    s2.iter()
        .map(|row| row.iter().zip(fact).map(|(s, f)| s * f).sum())
        .collect()
}

impl fmt::Display for RandomVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            RvKind::ConstantOne => write!(f, "constant1"),
            RvKind::Bernoulli { p } => write!(f, "bernoulli:p={p}"),
            RvKind::Binomial { m, p } => write!(f, "binomial:m={m},p={p}"),
            RvKind::Poisson { alpha } => write!(f, "poisson:alpha={alpha}"),
            RvKind::Geometric { p } => write!(f, "geometric:p={p}"),
            RvKind::Exponential { alpha } => write!(f, "exponential:alpha={alpha}"),
            RvKind::Gamma { alpha, beta } => write!(f, "gamma:alpha={alpha},beta={beta}"),
            RvKind::CustomMoments(m) => {
                write!(f, "custom:")?;
                for (i, v) in m.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{v}")?;
                }
                Ok(())
            }
        }
    }
}

fn parse_params(body: &str, allowed: &[&str]) -> Result<BTreeMap<String, Rational>> {
    let mut out = BTreeMap::new();
    for item in body.split(',') {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected key=value, got {item:?}")))?;
        let k = k.trim();
        if !allowed.contains(&k) {
            return Err(Error::Parse(format!("unknown parameter {k:?}")));
        }
        if out.insert(k.to_string(), v.parse::<Rational>()?).is_some() {
            return Err(Error::Parse(format!("duplicate parameter {k:?}")));
        }
    }
    for k in allowed {
        if !out.contains_key(*k) {
            return Err(Error::MissingParameter((*k).to_string()));
        }
    }
    Ok(out)
}

impl FromStr for RandomVariable {
    type Err = Error;

    /// `kind[:key=value,...]`, e.g. `binomial:m=4,p=2/5` or `custom:1,1/2,1/3`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (kind, body) = match s.split_once(':') {
            Some((k, b)) => (k.trim(), Some(b)),
            None => (s, None),
        };
        let params = |allowed: &[&str]| -> Result<BTreeMap<String, Rational>> {
            match body {
                Some(b) => parse_params(b, allowed),
                None => Err(Error::MissingParameter(allowed.join(","))),
            }
        };
        match kind {
            "constant1" => {
                if body.is_some() {
                    return Err(Error::Parse("constant1 takes no parameters".into()));
                }
                Ok(Self::constant_one())
            }
            "bernoulli" => Self::bernoulli(params(&["p"])?["p"].clone()),
            "binomial" => {
                let mut ps = params(&["m", "p"])?;
                let m = ps.remove("m").expect("checked");
                let m_int = if m.is_integer() {
                    u32::try_from(m.numer()).ok()
                } else {
                    None
                };
                let m_int =
                    m_int.ok_or_else(|| Error::InvalidParameter(format!("m must be a positive integer, got {m}")))?;
                Self::binomial(m_int, ps.remove("p").expect("checked"))
            }
            "poisson" => Self::poisson(params(&["alpha"])?["alpha"].clone()),
            "geometric" => Self::geometric(params(&["p"])?["p"].clone()),
            "exponential" => Self::exponential(params(&["alpha"])?["alpha"].clone()),
            "gamma" => {
                let ps = params(&["alpha", "beta"])?;
                Self::gamma(ps["alpha"].clone(), ps["beta"].clone())
            }
            "custom" => {
                let b = body.ok_or_else(|| Error::MissingParameter("moment list".into()))?;
                let m = b.split(',').map(str::parse).collect::<Result<Vec<Rational>>>()?;
                Self::custom(m)
            }
            other => Err(Error::Parse(format!("unknown random variable kind {other:?}"))),
        }
    }
}
