use std::fmt::Display;

use serde::Serialize;

use crate::exactnum::{Mode, RingValue};
use crate::randvar::RandomVariable;

/// What a single case checked, and at which parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseDescriptor {
    pub identity: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rv: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CaseDescriptor {
    pub fn new(identity: impl Into<String>) -> Self {
        CaseDescriptor {
            identity: identity.into(),
            rv: None,
            lambda: None,
            n: None,
            r: None,
            detail: None,
        }
    }

    pub fn rv(mut self, rv: &RandomVariable) -> Self {
        self.rv = Some(rv.to_string());
        self
    }

    /// Records λ as "symbolic" or its rational value.
    pub fn lambda(mut self, lambda: Option<&RingValue>) -> Self {
        self.lambda = lambda.map(|l| match l.mode() {
            Mode::Lambda if *l == RingValue::lambda() => "symbolic".to_string(),
            _ => l.to_string(),
        });
        self
    }

    pub fn n(mut self, n: usize) -> Self {
        self.n = Some(n);
        self
    }

    pub fn r(mut self, r: usize) -> Self {
        self.r = Some(r);
        self
    }

    pub fn detail(mut self, d: impl Into<String>) -> Self {
        self.detail = Some(d.into());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum CaseStatus {
    Pass,
    Fail { lhs: String, rhs: String },
    Skipped { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseResult {
    #[serde(flatten)]
    pub descriptor: CaseDescriptor,
    #[serde(flatten)]
    pub status: CaseStatus,
    /// Diagnostic cases are reported but do not decide the exit status.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub diagnostic: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Totals {
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub diagnostic_failed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub suite: String,
    pub nmax: usize,
    pub seed: u64,
    pub cases: Vec<CaseResult>,
    pub totals: Totals,
}

impl IdentityReport {
    pub fn new(suite: impl Into<String>, nmax: usize, seed: u64) -> Self {
        IdentityReport {
            suite: suite.into(),
            nmax,
            seed,
            cases: Vec::new(),
            totals: Totals::default(),
        }
    }

    pub fn push(&mut self, descriptor: CaseDescriptor, status: CaseStatus, diagnostic: bool) {
        match (&status, diagnostic) {
            (CaseStatus::Pass, _) => self.totals.passed += 1,
            (CaseStatus::Fail { .. }, false) => self.totals.failed += 1,
            (CaseStatus::Fail { .. }, true) => self.totals.diagnostic_failed += 1,
            (CaseStatus::Skipped { .. }, _) => self.totals.skipped += 1,
        }
        self.cases.push(CaseResult {
            descriptor,
            status,
            diagnostic,
        });
    }

    /// Records an exact comparison.
    pub fn check<T: PartialEq + Display>(&mut self, descriptor: CaseDescriptor, lhs: &T, rhs: &T) -> bool {
        let ok = lhs == rhs;
        let status = if ok {
            CaseStatus::Pass
        } else {
            CaseStatus::Fail {
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            }
        };
        self.push(descriptor, status, false);
        ok
    }

    /// Records the outcome of a computation that may itself fail.
    pub fn check_result<T: PartialEq + Display>(
        &mut self,
        descriptor: CaseDescriptor,
        result: crate::Result<(T, T)>,
    ) -> bool {
        match result {
            Ok((l, r)) => self.check(descriptor, &l, &r),
            Err(e) => {
                self.push(
                    descriptor,
                    CaseStatus::Fail {
                        lhs: format!("error: {e}"),
                        rhs: "a value".into(),
                    },
                    false,
                );
                false
            }
        }
    }

    pub fn skip(&mut self, descriptor: CaseDescriptor, reason: impl Into<String>) {
        self.push(descriptor, CaseStatus::Skipped { reason: reason.into() }, false);
    }

    /// Appends every case of `other`, keeping its order.
    pub fn absorb(&mut self, other: IdentityReport) {
        for c in other.cases {
            self.push(c.descriptor, c.status, c.diagnostic);
        }
    }

    /// True when no non-diagnostic case failed.
    pub fn passed(&self) -> bool {
        self.totals.failed == 0
    }

    /// True when no case failed at all, diagnostics included.
    pub fn passed_strict(&self) -> bool {
        self.totals.failed == 0 && self.totals.diagnostic_failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseResult> {
        self.cases
            .iter()
            .filter(|c| matches!(c.status, CaseStatus::Fail { .. }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn totals_track_statuses() {
        let mut r = IdentityReport::new("demo", 3, 7);
        assert!(r.check(CaseDescriptor::new("eq").n(1), &1, &1));
        assert!(!r.check(CaseDescriptor::new("eq").n(2), &1, &2));
        r.push(
            CaseDescriptor::new("diag"),
            CaseStatus::Fail {
                lhs: "a".into(),
                rhs: "b".into(),
            },
            true,
        );
        r.skip(CaseDescriptor::new("skip"), "not applicable");
        assert_eq!(
            r.totals,
            Totals {
                passed: 1,
                failed: 1,
                skipped: 1,
                diagnostic_failed: 1
            }
        );
        assert!(!r.passed());
        assert_eq!(r.failures().count(), 2);
    }

    #[test]
    fn failed_case_serializes_both_sides() {
        let mut r = IdentityReport::new("demo", 3, 7);
        r.check(CaseDescriptor::new("eq"), &"1/2", &"1/3");
        let json = serde_json::to_string(&r.cases[0]).unwrap();
        assert_eq!(json, r#"{"identity":"eq","status":"fail","lhs":"1/2","rhs":"1/3"}"#);
    }
}
