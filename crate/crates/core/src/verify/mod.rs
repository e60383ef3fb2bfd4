//! Named, reproducible identity suites.

mod report;
mod section5;
mod suites;

pub use report::{CaseDescriptor, CaseResult, CaseStatus, IdentityReport, Totals};
pub use section5::{
    degenerate_miki_coefficients, geometric_a0_partial_sums, section5_crosscheck, Example, GEOMETRIC_TERMS,
};
pub use suites::{run_all, run_suite, ORACLE_POLYS, SUITES};
