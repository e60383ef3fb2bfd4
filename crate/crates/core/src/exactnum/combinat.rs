use num_bigint::BigInt;

use super::{Rational, Ring};

pub fn factorial(n: usize) -> Rational {
    Rational::from_bigint((1..=n).map(BigInt::from).product())
}

/// C(n, k), zero for k > n.
pub fn binomial(n: usize, k: usize) -> Rational {
    if k > n {
        return Rational::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    Rational::from_bigint(acc)
}

/// H_n = 1 + 1/2 + ... + 1/n, with H_0 = 0.
pub fn harmonic(n: usize) -> Rational {
    (1..=n).map(|i| Rational::from(i).recip().expect("i >= 1")).sum()
}

/// (x)_{n,step} = x (x - step) ... (x - (n-1) step).
pub fn falling_factorial<R: Ring>(x: &R, n: usize, step: &R) -> R {
    let mut acc = R::one(x.ctx());
    for i in 0..n {
        let shift = step.scaled(&Rational::from(i));
        acc = acc.times(&x.minus(&shift));
    }
    acc
}

/// a (a + 1) ... (a + n - 1).
pub fn rising_factorial(a: &Rational, n: usize) -> Rational {
    (0..n).fold(Rational::one(), |acc, i| acc * (a + &Rational::from(i)))
}

/// Signed Stirling numbers of the first kind, rows 0..=nmax, by
/// s(n+1, k) = s(n, k-1) - n s(n, k).
pub fn stirling1_table(nmax: usize) -> Vec<Vec<Rational>> {
    let mut rows = vec![vec![Rational::one()]];
    for n in 0..nmax {
        let prev = &rows[n];
        let row = (0..=n + 1)
            .map(|k| {
                let left = if k >= 1 { prev[k - 1].clone() } else { Rational::zero() };
                let here = prev.get(k).cloned().unwrap_or_else(Rational::zero);
                left - here * Rational::from(n)
            })
            .collect();
        rows.push(row);
    }
    rows
}

/// Stirling numbers of the second kind, rows 0..=nmax, by
/// S(n+1, k) = S(n, k-1) + k S(n, k).
pub fn stirling2_table(nmax: usize) -> Vec<Vec<Rational>> {
    let mut rows = vec![vec![Rational::one()]];
    for n in 0..nmax {
        let prev = &rows[n];
        let row = (0..=n + 1)
            .map(|k| {
                let left = if k >= 1 { prev[k - 1].clone() } else { Rational::zero() };
                let here = prev.get(k).cloned().unwrap_or_else(Rational::zero);
                left + here * Rational::from(k)
            })
            .collect();
        rows.push(row);
    }
    rows
}

/// Degenerate Stirling numbers of the first kind S_{1,λ}(n,k), rows 0..=nmax,
/// by S_{1,λ}(n+1,k) = S_{1,λ}(n,k-1) + (kλ - n) S_{1,λ}(n,k).
pub fn degenerate_stirling1_table<R: Ring>(lambda: &R, nmax: usize) -> Vec<Vec<R>> {
    degenerate_table(lambda, nmax, |lam, n, k| {
        lam.scaled(&Rational::from(k))
            .minus(&R::from_rational(&Rational::from(n), lam.ctx()))
    })
}

/// Degenerate Stirling numbers of the second kind S_{2,λ}(n,k), rows
/// 0..=nmax, by S_{2,λ}(n+1,k) = S_{2,λ}(n,k-1) + (k - nλ) S_{2,λ}(n,k).
pub fn degenerate_stirling2_table<R: Ring>(lambda: &R, nmax: usize) -> Vec<Vec<R>> {
    degenerate_table(lambda, nmax, |lam, n, k| {
        R::from_rational(&Rational::from(k), lam.ctx()).minus(&lam.scaled(&Rational::from(n)))
    })
}

fn degenerate_table<R: Ring>(lambda: &R, nmax: usize, weight: impl Fn(&R, usize, usize) -> R) -> Vec<Vec<R>> {
    let ctx = lambda.ctx();
    let mut rows = vec![vec![R::one(ctx)]];
    for n in 0..nmax {
        let prev = &rows[n];
        let row = (0..=n + 1)
            .map(|k| {
                let left = if k >= 1 { prev[k - 1].clone() } else { R::zero(ctx) };
                let here = prev.get(k).cloned().unwrap_or_else(|| R::zero(ctx));
                left.plus(&here.times(&weight(lambda, n, k)))
            })
            .collect();
        rows.push(row);
    }
    rows
}
