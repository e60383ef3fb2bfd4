use probbern_core::verify::{run_suite, CaseStatus, SUITES};

#[test]
fn every_suite_passes_at_nmax_8() {
    for name in SUITES {
        let report = run_suite(name, 8, 2024).unwrap();
        let failures: Vec<_> = report.failures().take(5).collect();
        assert!(report.passed(), "{name}: {failures:#?}");
        assert!(!report.cases.is_empty());
    }
}

#[test]
fn only_the_geometric_monotone_gap_diagnostic_fails() {
    let report = run_suite("section5-crosschecks", 8, 0).unwrap();
    for c in report.failures() {
        assert!(c.diagnostic);
        assert_eq!(c.descriptor.identity, "section5-d-a0-monotone-gap");
        assert!(c.descriptor.n.unwrap() >= 4, "{c:?}");
    }
    let final_gaps = report
        .cases
        .iter()
        .filter(|c| c.descriptor.identity == "section5-d-a0-final-gap")
        .count();
    assert_eq!(final_gaps, 16);
    assert!(report
        .cases
        .iter()
        .filter(|c| c.descriptor.identity == "section5-d-a0-final-gap")
        .all(|c| c.status == CaseStatus::Pass));
}

#[test]
fn reports_are_deterministic() {
    let a = run_suite("engines-vs-oracle", 4, 99).unwrap();
    let b = run_suite("engines-vs-oracle", 4, 99).unwrap();
    assert_eq!(a, b);
    let c = run_suite("engines-vs-oracle", 4, 100).unwrap();
    assert_ne!(a.cases, c.cases);
}
