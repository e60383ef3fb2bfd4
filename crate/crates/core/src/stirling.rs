//! Classical, degenerate, probabilistic and probabilistic-degenerate
//! Stirling numbers of both kinds.
//!
//! Every family is read off a generating function: column k of the table is
//! the EGF of base(t)^k / k!. The first-kind probabilistic bases are
//! compositional inverses of the second-kind ones. The per-distribution
//! closed forms in [`prob_s1_closed_form`] exist only as cross-checks.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{
    binomial, degenerate_stirling1_table, factorial, falling_factorial, stirling1_table, stirling2_table, Mode,
    Rational, Ring, RingValue,
};
use crate::randvar::{RandomVariable, RvKind};
use crate::series::Series;
use crate::verify::{CaseDescriptor, CaseStatus, IdentityReport};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub enum StirlingFamily {
    S1,
    S2,
    S1Deg,
    S2Deg,
    S1Prob,
    S2Prob,
    S1ProbDeg,
    S2ProbDeg,
}

impl StirlingFamily {
    pub const ALL: [StirlingFamily; 8] = [
        StirlingFamily::S1,
        StirlingFamily::S2,
        StirlingFamily::S1Deg,
        StirlingFamily::S2Deg,
        StirlingFamily::S1Prob,
        StirlingFamily::S2Prob,
        StirlingFamily::S1ProbDeg,
        StirlingFamily::S2ProbDeg,
    ];

    pub fn needs_rv(self) -> bool {
        matches!(
            self,
            StirlingFamily::S1Prob | StirlingFamily::S2Prob | StirlingFamily::S1ProbDeg | StirlingFamily::S2ProbDeg
        )
    }

    pub fn needs_lambda(self) -> bool {
        matches!(
            self,
            StirlingFamily::S1Deg | StirlingFamily::S2Deg | StirlingFamily::S1ProbDeg | StirlingFamily::S2ProbDeg
        )
    }

    pub fn is_first_kind(self) -> bool {
        matches!(
            self,
            StirlingFamily::S1 | StirlingFamily::S1Deg | StirlingFamily::S1Prob | StirlingFamily::S1ProbDeg
        )
    }

    /// The other kind with the same decorations.
    pub fn partner(self) -> StirlingFamily {
        match self {
            StirlingFamily::S1 => StirlingFamily::S2,
            StirlingFamily::S2 => StirlingFamily::S1,
            StirlingFamily::S1Deg => StirlingFamily::S2Deg,
            StirlingFamily::S2Deg => StirlingFamily::S1Deg,
            StirlingFamily::S1Prob => StirlingFamily::S2Prob,
            StirlingFamily::S2Prob => StirlingFamily::S1Prob,
            StirlingFamily::S1ProbDeg => StirlingFamily::S2ProbDeg,
            StirlingFamily::S2ProbDeg => StirlingFamily::S1ProbDeg,
        }
    }

    /// The family with λ removed.
    pub fn plain(self) -> StirlingFamily {
        match self {
            StirlingFamily::S1Deg => StirlingFamily::S1,
            StirlingFamily::S2Deg => StirlingFamily::S2,
            StirlingFamily::S1ProbDeg => StirlingFamily::S1Prob,
            StirlingFamily::S2ProbDeg => StirlingFamily::S2Prob,
            f => f,
        }
    }
}

impl fmt::Display for StirlingFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            StirlingFamily::S1 => "S1",
            StirlingFamily::S2 => "S2",
            StirlingFamily::S1Deg => "S1deg",
            StirlingFamily::S2Deg => "S2deg",
            StirlingFamily::S1Prob => "S1prob",
            StirlingFamily::S2Prob => "S2prob",
            StirlingFamily::S1ProbDeg => "S1probdeg",
            StirlingFamily::S2ProbDeg => "S2probdeg",
        };
        f.write_str(s)
    }
}

/// Triangular table of entries (n, k), 0 ≤ k ≤ n ≤ nmax.
#[derive(Clone, Debug, PartialEq)]
pub struct StirlingTable {
    pub family: StirlingFamily,
    pub rv: Option<RandomVariable>,
    pub lambda: Option<RingValue>,
    pub nmax: usize,
    rows: Vec<Vec<RingValue>>,
    mode: Mode,
}

impl StirlingTable {
    /// Entry (n, k); zero outside 0 ≤ k ≤ n.
    pub fn get(&self, n: usize, k: usize) -> RingValue {
        self.rows
            .get(n)
            .and_then(|r| r.get(k))
            .cloned()
            .unwrap_or_else(|| RingValue::zero(self.mode))
    }

    pub fn rows(&self) -> &[Vec<RingValue>] {
        &self.rows
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Evaluates every entry at λ = `at`.
    pub fn eval_lambda(&self, at: &Rational) -> Result<Vec<Vec<Rational>>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|v| v.eval_lambda(at)).collect())
            .collect()
    }
}

type CacheKey = (StirlingFamily, Option<RandomVariable>, Option<RingValue>, usize);

fn cache() -> &'static Mutex<HashMap<CacheKey, Arc<StirlingTable>>> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, Arc<StirlingTable>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The base series whose powers define the family, at order `order`.
pub fn base_series(
    family: StirlingFamily,
    rv: Option<&RandomVariable>,
    lambda: Option<&RingValue>,
    order: usize,
) -> Result<Series> {
    let need_rv = || rv.ok_or_else(|| Error::MissingParameter("random variable".into()));
    let need_lambda = || lambda.ok_or_else(|| Error::MissingParameter("lambda".into()));
    let minus_one = |s: Series| {
        let mode = s.ctx();
        s.add_constant(&RingValue::int(-1, mode))
    };
    match family {
        StirlingFamily::S2 => minus_one(Series::exp_t(Mode::Rational, order)),
        StirlingFamily::S1 => Ok(Series::log1p_t(Mode::Rational, order)),
        StirlingFamily::S2Deg => minus_one(Series::degenerate_exp(need_lambda()?, order)),
        StirlingFamily::S1Deg => Ok(Series::degenerate_log1p(need_lambda()?, order)),
        StirlingFamily::S2Prob => need_rv()?.e_series(None, order),
        StirlingFamily::S1Prob => need_rv()?.e_series(None, order)?.comp_inverse(),
        StirlingFamily::S2ProbDeg => need_rv()?.e_series(Some(need_lambda()?), order),
        StirlingFamily::S1ProbDeg => need_rv()?.e_series(Some(need_lambda()?), order)?.comp_inverse(),
    }
}

/// Builds (or fetches from the cache) the table of `family` up to `nmax`.
/// Parameters the family does not use are ignored.
pub fn build_table(
    family: StirlingFamily,
    rv: Option<&RandomVariable>,
    lambda: Option<&RingValue>,
    nmax: usize,
) -> Result<Arc<StirlingTable>> {
    let rv = if family.needs_rv() {
        Some(
            rv.ok_or_else(|| Error::MissingParameter("random variable".into()))?
                .clone(),
        )
    } else {
        None
    };
    let lambda = if family.needs_lambda() {
        Some(lambda.ok_or_else(|| Error::MissingParameter("lambda".into()))?.clone())
    } else {
        None
    };
    let key = (family, rv.clone(), lambda.clone(), nmax);
    if let Some(t) = cache().lock().expect("cache lock").get(&key) {
        return Ok(Arc::clone(t));
    }
    let base = base_series(family, rv.as_ref(), lambda.as_ref(), nmax)?;
    let powers = base.power_table(nmax)?;
    let rows = (0..=nmax)
        .map(|n| (0..=n).map(|k| powers[k].coeffs()[n].clone()).collect())
        .collect();
    let table = Arc::new(StirlingTable {
        family,
        rv,
        lambda,
        nmax,
        rows,
        mode: base.ctx(),
    });
    cache()
        .lock()
        .expect("cache lock")
        .entry(key)
        .or_insert_with(|| Arc::clone(&table));
    Ok(table)
}

/// S_2^Y(n,k) = (1/k!) Σ_j C(k,j) (-1)^(k-j) E[S_j^n].
pub fn prob_s2_direct(rv: &RandomVariable, n: usize, k: usize) -> Result<Rational> {
    if k > n {
        return Ok(Rational::zero());
    }
    let mgf = rv.mgf_series(None, n)?;
    let mut power = Series::one(Mode::Rational, n);
    let mut acc = Rational::zero();
    for j in 0..=k {
        let e_sj = power.coeff(n)?.rational_value().expect("rational mode");
        acc = acc + Rational::sign_power(k - j) * binomial(k, j) * e_sj;
        power = power.egf_mul(&mgf)?;
    }
    Ok(acc * factorial(k).recip()?)
}

/// Per-distribution closed forms for S_1^Y(n,k) (λ absent) and
/// S_{1,λ}^Y(n,k) (λ present).
pub fn prob_s1_closed_form(rv: &RandomVariable, lambda: Option<&RingValue>, n: usize, k: usize) -> Result<RingValue> {
    let mode = lambda.map_or(Mode::Rational, RingValue::mode);
    let zero = RingValue::zero(mode);
    if k > n {
        return Ok(zero);
    }
    let s1 = stirling1_table(n);
    let s2 = stirling2_table(n);
    // S_1(l, k) or S_{1,λ}(l, k), as ring values
    let a: Vec<Vec<RingValue>> = match lambda {
        None => s1
            .iter()
            .map(|r| r.iter().map(|c| RingValue::Rational(c.clone())).collect())
            .collect(),
        Some(l) => degenerate_stirling1_table(l, n),
    };
    let a_at = |l: usize, k: usize| a[l].get(k).cloned().unwrap_or_else(|| zero.clone());
    let int = |i: usize| Rational::from(i);
    let one = Rational::one();
    let pw = |x: &Rational, e: i64| x.pow(e as i32).expect("nonzero base");
    let lam_pow = |e: usize| match lambda {
        Some(l) => l.pow(e),
        None => RingValue::one(mode),
    };
    let out = match rv.kind() {
        RvKind::Bernoulli { p } => a_at(n, k).scaled(&pw(p, -(n as i64))),
        RvKind::Binomial { m, p } => {
            let m = Rational::from_int(i64::from(*m));
            let mut acc = zero.clone();
            for l in k..=n {
                for i in l..=n {
                    let c = pw(p, -(l as i64)) * pw(&m, -(i as i64)) * &s2[i][l] * &s1[n][i];
                    acc = acc.plus(&a_at(l, k).scaled(&c));
                }
            }
            acc
        }
        RvKind::Poisson { alpha } => (k..=n).fold(zero.clone(), |acc, l| {
            acc.plus(&a_at(l, k).scaled(&(pw(alpha, -(l as i64)) * &s1[n][l])))
        }),
        RvKind::Geometric { p } => {
            let pm1 = p - &one;
            let nm1 = Rational::from_int(n as i64 - 1);
            (k..=n).fold(zero.clone(), |acc, j| {
                let c =
                    binomial(n, j) * falling_factorial(&nm1, n - j, &one) * pw(p, j as i64) * pw(&pm1, (n - j) as i64);
                acc.plus(&a_at(j, k).scaled(&c))
            })
        }
        RvKind::Exponential { alpha } => {
            let nm1 = Rational::from_int(n as i64 - 1);
            match lambda {
                None => RingValue::Rational(
                    Rational::sign_power(n - k)
                        * binomial(n, k)
                        * falling_factorial(&nm1, n - k, &one)
                        * pw(alpha, k as i64),
                ),
                Some(_) => (k..=n).fold(zero.clone(), |acc, j| {
                    let c = binomial(n, j)
                        * Rational::sign_power(n - j)
                        * falling_factorial(&nm1, n - j, &one)
                        * pw(alpha, j as i64)
                        * &s2[j][k];
                    acc.plus(&lam_pow(j - k).scaled(&c))
                }),
            }
        }
        RvKind::Gamma { alpha, beta } => {
            let nm1_alpha = Rational::from_int(n as i64 - 1) * alpha;
            let gff = |x: usize| falling_factorial(&(int(x) + &nm1_alpha), n, alpha);
            let inv_alpha_n = pw(alpha, -(n as i64));
            match lambda {
                None => {
                    let sum: Rational = (0..=k).map(|l| binomial(k, l) * Rational::sign_power(l) * gff(l)).sum();
                    RingValue::Rational(
                        factorial(k).recip()? * pw(beta, k as i64) * Rational::sign_power(n) * &inv_alpha_n * sum,
                    )
                }
                Some(_) => {
                    let mut acc = zero.clone();
                    for l in k..=n {
                        for r in 0..=l {
                            let c = &s2[l][k]
                                * &binomial(l, r)
                                * factorial(l).recip()?
                                * Rational::sign_power(n - r)
                                * pw(beta, l as i64)
                                * &inv_alpha_n
                                * gff(r);
                            acc = acc.plus(&lam_pow(l - k).scaled(&c));
                        }
                    }
                    acc
                }
            }
        }
        RvKind::ConstantOne | RvKind::CustomMoments(_) => return Err(Error::UnsupportedKind(rv.kind_name().into())),
    };
    Ok(out)
}

/// Checks Σ_k S2(n,k) S1(k,l) = δ_{n,l}, its transpose, and the two
/// inverse relations on seeded random integer sequences.
pub fn check_orthogonality(table2: &StirlingTable, table1: &StirlingTable, seed: u64) -> IdentityReport {
    let nmax = table2.nmax.min(table1.nmax);
    let mut report = IdentityReport::new("orthogonality", nmax, seed);
    let base = || {
        let mut d = CaseDescriptor::new("").lambda(table2.lambda.as_ref());
        if let Some(rv) = &table2.rv {
            d = d.rv(rv);
        }
        d.detail(format!("{}/{}", table2.family, table1.family))
    };
    let paired = !table2.family.is_first_kind()
        && table2.family.partner() == table1.family
        && table2.rv == table1.rv
        && table2.lambda == table1.lambda;
    if !paired {
        report.push(
            CaseDescriptor {
                identity: "pairing".into(),
                ..base()
            },
            CaseStatus::Fail {
                lhs: format!("{} {:?} {:?}", table2.family, table2.rv, table2.lambda),
                rhs: format!("{} {:?} {:?}", table1.family, table1.rv, table1.lambda),
            },
            false,
        );
        return report;
    }
    let mode = table2.mode();
    let one = RingValue::one(mode);
    let zero = RingValue::zero(mode);
    for n in 0..=nmax {
        for l in 0..=n {
            let delta = if n == l { one.clone() } else { zero.clone() };
            let a = (l..=n).fold(zero.clone(), |acc, k| {
                acc.plus(&table2.get(n, k).times(&table1.get(k, l)))
            });
            let b = (l..=n).fold(zero.clone(), |acc, k| {
                acc.plus(&table1.get(n, k).times(&table2.get(k, l)))
            });
            let d = CaseDescriptor {
                identity: "orthogonality-s2s1".into(),
                ..base()
            }
            .n(n)
            .detail(format!("{}/{} l={l}", table2.family, table1.family));
            report.check(d, &a, &delta);
            let d = CaseDescriptor {
                identity: "orthogonality-s1s2".into(),
                ..base()
            }
            .n(n)
            .detail(format!("{}/{} l={l}", table2.family, table1.family));
            report.check(d, &b, &delta);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let seq: Vec<RingValue> = (0..=nmax)
        .map(|_| RingValue::int(rng.gen_range(-9..=9), mode))
        .collect();
    // (b): a_n = Σ_k S2(n,k) b_k recovers b_n = Σ_k S1(n,k) a_k
    let a: Vec<RingValue> = (0..=nmax)
        .map(|n| (0..=n).fold(zero.clone(), |acc, k| acc.plus(&table2.get(n, k).times(&seq[k]))))
        .collect();
    let back: Vec<RingValue> = (0..=nmax)
        .map(|n| (0..=n).fold(zero.clone(), |acc, k| acc.plus(&table1.get(n, k).times(&a[k]))))
        .collect();
    for n in 0..=nmax {
        report.check(
            CaseDescriptor {
                identity: "inverse-relation-b".into(),
                ..base()
            }
            .n(n),
            &back[n],
            &seq[n],
        );
    }
    // (c): a_n = Σ_{k=n}^m S2(k,n) b_k recovers b_n = Σ_{k=n}^m S1(k,n) a_k
    let a: Vec<RingValue> = (0..=nmax)
        .map(|n| (n..=nmax).fold(zero.clone(), |acc, k| acc.plus(&table2.get(k, n).times(&seq[k]))))
        .collect();
    let back: Vec<RingValue> = (0..=nmax)
        .map(|n| (n..=nmax).fold(zero.clone(), |acc, k| acc.plus(&table1.get(k, n).times(&a[k]))))
        .collect();
    for n in 0..=nmax {
        report.check(
            CaseDescriptor {
                identity: "inverse-relation-c".into(),
                ..base()
            }
            .n(n),
            &back[n],
            &seq[n],
        );
    }
    report
}
