//! Series acting on polynomials: t^k x^n = (n)_k x^(n-k).

use super::{TruncatedSeries, XPolynomial};
use crate::error::{Error, Result};
use crate::exactnum::{binomial, Rational, Ring};

/// f(t) p(x) = Σ_n p_n Σ_k C(n,k) f_k x^(n-k).
pub fn apply_operator<R: Ring>(f: &TruncatedSeries<R>, p: &XPolynomial<R>) -> Result<XPolynomial<R>> {
    if f.ctx() != p.ctx() {
        return Err(Error::ModeMismatch);
    }
    let deg = p.degree_or_zero();
    f.require_order(deg)?;
    let ctx = p.ctx();
    let mut out = vec![R::zero(ctx); deg + 1];
    for (n, pn) in p.coeffs().iter().enumerate() {
        if pn.is_zero() {
            continue;
        }
        for k in 0..=n {
            let fk = &f.coeffs()[k];
            if fk.is_zero() {
                continue;
            }
            out[n - k] = out[n - k].plus(&pn.times(fk).scaled(&binomial(n, k)));
        }
    }
    XPolynomial::new(ctx, out)
}

/// ⟨f(t) | p(x)⟩ = Σ_n p_n f_n.
pub fn functional<R: Ring>(f: &TruncatedSeries<R>, p: &XPolynomial<R>) -> Result<R> {
    Ok(apply_operator(f, p)?.coeff(0))
}

/// Δ_step^order p(x), by iterating p(x + step) - p(x).
pub fn forward_diff<R: Ring>(p: &XPolynomial<R>, step: &R, order: usize) -> Result<XPolynomial<R>> {
    if step.ctx() != p.ctx() {
        return Err(Error::ModeMismatch);
    }
    let mut q = p.clone();
    for _ in 0..order {
        q = q.shift(step).minus(&q);
    }
    Ok(q)
}

/// ∫_0^1 p(x) dx.
pub fn integrate_unit<R: Ring>(p: &XPolynomial<R>) -> R {
    p.coeffs().iter().enumerate().fold(R::zero(p.ctx()), |acc, (n, c)| {
        acc.plus(&c.scaled(&Rational::from(n + 1).recip().expect("n + 1 > 0")))
    })
}

/// (I_step)^power p, where (I_step q)(x) = ∫_x^(x+step) q(u) du.
pub fn operator_i<R: Ring>(p: &XPolynomial<R>, step: &R, power: usize) -> Result<XPolynomial<R>> {
    if step.ctx() != p.ctx() {
        return Err(Error::ModeMismatch);
    }
    let mut q = p.clone();
    for _ in 0..power {
        let a = q.antiderivative();
        q = a.shift(step).minus(&a);
    }
    Ok(q)
}

/// Σ_k q_k sequence[k].
pub fn umbral_compose<R: Ring>(q: &XPolynomial<R>, sequence: &[XPolynomial<R>]) -> Result<XPolynomial<R>> {
    let mut out = XPolynomial::zero_poly(q.ctx());
    for (k, qk) in q.coeffs().iter().enumerate() {
        if qk.is_zero() {
            continue;
        }
        let s = sequence.get(k).ok_or(Error::MissingSequenceEntry(k))?;
        if s.ctx() != q.ctx() {
            return Err(Error::ModeMismatch);
        }
        out = out.plus(&s.times_scalar(qk));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{q, Mode, RingValue};
    use crate::series::Poly;

    type S = TruncatedSeries<Rational>;
    type P = XPolynomial<Rational>;

    fn p(c: &[i64]) -> P {
        P::from_rationals((), &c.iter().map(|&x| Rational::from_int(x)).collect::<Vec<_>>())
    }

    fn lam_poly(c: &[&[i64]]) -> Poly {
        let coeffs = c
            .iter()
            .map(|l| RingValue::lambda_poly(l.iter().map(|&x| Rational::from_int(x)).collect()))
            .collect();
        Poly::new(Mode::Lambda, coeffs).unwrap()
    }

    #[test]
    fn shift_operator() {
        let y = Rational::from_int(3);
        let eyt = S::from_fn((), 4, |n| y.pow(n as i32).unwrap());
        assert_eq!(apply_operator(&eyt, &p(&[0, 0, 1])).unwrap(), p(&[9, 6, 1]));
    }

    #[test]
    fn t_squared_on_cube() {
        let t2 = S::from_fn((), 3, |n| {
            if n == 2 {
                Rational::from_int(2)
            } else {
                Rational::zero()
            }
        });
        assert_eq!(apply_operator(&t2, &p(&[0, 0, 0, 1])).unwrap(), p(&[0, 6]));
    }

    #[test]
    fn averaging_operator() {
        let f = S::exp_t((), 3)
            .add_constant(&Rational::from_int(-1))
            .unwrap()
            .div_t()
            .unwrap();
        let r = apply_operator(&f, &p(&[0, 1])).unwrap();
        assert_eq!(r, P::from_rationals((), &[q(1, 2), q(1, 1)]));
    }

    #[test]
    fn insufficient_order_is_reported() {
        let f = S::exp_t((), 1);
        assert_eq!(
            apply_operator(&f, &p(&[0, 0, 1])),
            Err(Error::InsufficientOrder {
                needed: 2,
                available: 1
            })
        );
    }

    #[test]
    fn functionals() {
        for n in 0..5 {
            for k in 0..5 {
                let tk = S::from_fn((), 5, |i| {
                    if i == k {
                        crate::exactnum::factorial(k)
                    } else {
                        Rational::zero()
                    }
                });
                let expect = if n == k {
                    crate::exactnum::factorial(n)
                } else {
                    Rational::zero()
                };
                assert_eq!(functional(&tk, &P::monomial((), n)).unwrap(), expect);
            }
        }
        let y = q(2, 5);
        let eyt = S::from_fn((), 4, |n| y.pow(n as i32).unwrap());
        let poly = p(&[1, -3, 0, 2]);
        assert_eq!(functional(&eyt, &poly).unwrap(), poly.eval(&y));
        let integral = S::from_fn((), 4, |n| y.pow(n as i32).unwrap())
            .add_constant(&Rational::from_int(-1))
            .unwrap()
            .div_t()
            .unwrap();
        assert_eq!(functional(&integral, &p(&[0, 1])).unwrap(), &y * &y * q(1, 2));
    }

    #[test]
    fn differences() {
        let d = forward_diff(&p(&[0, 0, 0, 1]), &Rational::one(), 2).unwrap();
        assert_eq!(d.eval(&Rational::zero()), Rational::from_int(6));
        assert!(forward_diff(&p(&[7]), &q(2, 3), 1).unwrap().coeffs().is_empty());
        let lam = RingValue::lambda();
        let sq = Poly::from_ints(Mode::Lambda, &[0, 0, 1]);
        assert_eq!(forward_diff(&sq, &lam, 1).unwrap(), lam_poly(&[&[0, 0, 1], &[0, 2]]));
    }

    #[test]
    fn unit_integrals() {
        assert_eq!(integrate_unit(&p(&[1])), Rational::one());
        assert_eq!(integrate_unit(&p(&[0, 0, 1])), q(1, 3));
        let b3 = P::from_rationals((), &[q(0, 1), q(1, 2), q(-3, 2), q(1, 1)]);
        assert_eq!(integrate_unit(&b3), Rational::zero());
    }

    #[test]
    fn integral_operator() {
        let one = Rational::one();
        assert_eq!(operator_i(&p(&[1]), &one, 1).unwrap(), p(&[1]));
        assert_eq!(
            operator_i(&p(&[0, 1]), &one, 1).unwrap(),
            P::from_rationals((), &[q(1, 2), q(1, 1)])
        );
        let lam = RingValue::lambda();
        let x = Poly::from_ints(Mode::Lambda, &[0, 1]);
        let expect = Poly::new(
            Mode::Lambda,
            vec![RingValue::lambda_poly(vec![q(0, 1), q(0, 1), q(1, 2)]), lam.clone()],
        )
        .unwrap();
        assert_eq!(operator_i(&x, &lam, 1).unwrap(), expect);
    }

    #[test]
    fn umbral_composition() {
        let mono: Vec<P> = (0..4).map(|n| P::monomial((), n)).collect();
        assert_eq!(umbral_compose(&p(&[0, 0, 0, 1]), &mono).unwrap(), p(&[0, 0, 0, 1]));
        let bern = vec![
            p(&[1]),
            P::from_rationals((), &[q(-1, 2), q(1, 1)]),
            P::from_rationals((), &[q(1, 6), q(-1, 1), q(1, 1)]),
        ];
        assert_eq!(umbral_compose(&p(&[0, 0, 1]), &bern).unwrap(), bern[2]);
        assert_eq!(
            umbral_compose(&p(&[0, 0, 1]), &bern[..2]),
            Err(Error::MissingSequenceEntry(2))
        );
    }
}
