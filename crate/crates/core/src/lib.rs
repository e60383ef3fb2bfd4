//! Exact probabilistic Stirling numbers, probabilistic (degenerate,
//! higher-order) Bernoulli polynomials, and polynomial expansions in those
//! bases.
//!
//! Everything is computed over exact rationals or over polynomials in a
//! symbolic parameter λ; no floating point is used anywhere in this crate.
//! Generating functions are formal power series: convergence is never
//! assumed or checked.

// Triangular tables read most clearly with index loops.
#![allow(clippy::needless_range_loop)]

pub mod bernoulli;
pub mod error;
pub mod exactnum;
pub mod randvar;
pub mod represent;
pub mod series;
pub mod stirling;
pub mod verify;

pub use error::{Error, Result};
