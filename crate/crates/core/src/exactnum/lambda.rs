use std::fmt;

use super::Rational;

/// Dense polynomial in the indeterminate λ with rational coefficients,
/// ascending order. The zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LambdaPoly {
    coeffs: Vec<Rational>,
}

impl LambdaPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        LambdaPoly { coeffs }
    }

    pub fn zero() -> Self {
        LambdaPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        LambdaPoly::new(vec![c])
    }

    /// The indeterminate λ itself.
    pub fn lambda() -> Self {
        LambdaPoly::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Value as a rational constant when the degree is at most zero.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(Rational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn eval(&self, at: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * at + c)
    }

    pub fn add(&self, rhs: &LambdaPoly) -> LambdaPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        LambdaPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }

    pub fn sub(&self, rhs: &LambdaPoly) -> LambdaPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        LambdaPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }

    pub fn neg(&self) -> LambdaPoly {
        LambdaPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, rhs: &LambdaPoly) -> LambdaPoly {
        if self.is_zero() || rhs.is_zero() {
            return LambdaPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        LambdaPoly::new(out)
    }

    pub fn scale(&self, c: &Rational) -> LambdaPoly {
        if c.is_zero() {
            return LambdaPoly::zero();
        }
        LambdaPoly {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Exact division by λ^k; `None` when some coefficient below degree k
    /// is nonzero.
    pub fn div_lambda_pow(&self, k: usize) -> Option<LambdaPoly> {
        if self.coeffs.iter().take(k).any(|c| !c.is_zero()) {
            return None;
        }
        Some(LambdaPoly::new(self.coeffs.iter().skip(k).cloned().collect()))
    }
}

impl fmt::Display for LambdaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for LambdaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "λ{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::q;

    fn lp(c: &[i64]) -> LambdaPoly {
        LambdaPoly::new(c.iter().map(|&x| Rational::from_int(x)).collect())
    }

    #[test]
    fn canonical_form_drops_trailing_zeros() {
        assert_eq!(lp(&[1, 0, 0]).coeffs().len(), 1);
        assert!(lp(&[0, 0]).is_zero());
        assert_eq!(lp(&[]).degree(), None);
    }

    #[test]
    fn difference_of_squares() {
        let a = lp(&[1, -1]);
        let b = lp(&[1, 1]);
        assert_eq!(a.mul(&b), lp(&[1, 0, -1]));
    }

    #[test]
    fn exact_lambda_power_division() {
        let p = lp(&[0, 0, 3, 1]);
        assert_eq!(p.div_lambda_pow(2), Some(lp(&[3, 1])));
        assert_eq!(p.div_lambda_pow(3), None);
        assert_eq!(LambdaPoly::zero().div_lambda_pow(4), Some(LambdaPoly::zero()));
    }

    #[test]
    fn evaluation() {
        assert_eq!(lp(&[1, -1]).eval(&q(1, 2)), q(1, 2));
        assert_eq!(lp(&[1, -1]).eval(&Rational::zero()), Rational::one());
    }
}
