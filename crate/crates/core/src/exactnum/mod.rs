//! Exact scalars: big rationals, polynomials in λ, and the coefficient ring
//! that unifies them.

mod combinat;
mod lambda;
mod rational;
mod ring;

pub use combinat::{
    binomial, degenerate_stirling1_table, degenerate_stirling2_table, factorial, falling_factorial, harmonic,
    rising_factorial, stirling1_table, stirling2_table,
};
pub use lambda::LambdaPoly;
pub use rational::{q, Rational};
pub use ring::{eval_lambda, ring_arith, ArithOp, Mode, Ring, RingValue};
