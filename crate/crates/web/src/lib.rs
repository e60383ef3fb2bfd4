//! WebAssembly bindings for the static demo page in `www/`. Each export
//! takes the same text specs as the command line and returns JSON.

use probbern_core::exactnum::{Mode, Rational, RingValue};
use probbern_core::randvar::RandomVariable;
use probbern_core::represent::{expand_thm31, expand_thm33, Form};
use probbern_core::series::Poly;
use probbern_core::stirling::{build_table, StirlingFamily};
use probbern_core::verify::{run_suite, SUITES};
use serde::Serialize;
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Largest table or suite size the page accepts, to keep the tab responsive.
pub const MAX_N: usize = 12;

fn parse_rv(s: &str) -> Result<Option<RandomVariable>, String> {
    match s.trim() {
        "" => Ok(None),
        t => t.parse().map(Some).map_err(|e| format!("random variable: {e}")),
    }
}

fn parse_lambda(s: &str) -> Result<Option<RingValue>, String> {
    match s.trim() {
        "" => Ok(None),
        "symbolic" => Ok(Some(RingValue::lambda())),
        t => t
            .parse::<Rational>()
            .map(|q| Some(RingValue::Rational(q)))
            .map_err(|e| format!("lambda: {e}")),
    }
}

fn check_n(n: usize) -> Result<(), String> {
    if n > MAX_N {
        return Err(format!("n must be at most {MAX_N} in the browser"));
    }
    Ok(())
}

fn to_json<T: Serialize>(v: &T) -> Result<String, String> {
    serde_json::to_string(v).map_err(|e| e.to_string())
}

/// Stirling table of `kind` 1 or 2. The family is probabilistic when `rv`
/// is nonempty and degenerate when `lambda` is nonempty.
pub fn stirling_json(kind: u8, rv: &str, lambda: &str, nmax: usize) -> Result<String, String> {
    check_n(nmax)?;
    let rv = parse_rv(rv)?;
    let lambda = parse_lambda(lambda)?;
    let family = match (kind, rv.is_some(), lambda.is_some()) {
        (1, false, false) => StirlingFamily::S1,
        (2, false, false) => StirlingFamily::S2,
        (1, false, true) => StirlingFamily::S1Deg,
        (2, false, true) => StirlingFamily::S2Deg,
        (1, true, false) => StirlingFamily::S1Prob,
        (2, true, false) => StirlingFamily::S2Prob,
        (1, true, true) => StirlingFamily::S1ProbDeg,
        (2, true, true) => StirlingFamily::S2ProbDeg,
        _ => return Err("kind must be 1 or 2".into()),
    };
    let table = build_table(family, rv.as_ref(), lambda.as_ref(), nmax).map_err(|e| e.to_string())?;
    to_json(&json!({ "family": family.to_string(), "rows": table.rows() }))
}

/// Coefficients of the polynomial with comma-separated coefficients `poly`
/// in the probabilistic Bernoulli basis, or the degenerate one when
/// `lambda` is nonempty.
pub fn expand_json(poly: &str, rv: &str, lambda: &str) -> Result<String, String> {
    let coeffs = poly
        .split(',')
        .map(|c| {
            c.trim()
                .parse::<Rational>()
                .map_err(|e| format!("coefficient {c:?}: {e}"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let p = Poly::from_rationals(Mode::Rational, &coeffs);
    check_n(p.degree_or_zero())?;
    let rv = parse_rv(rv)?.unwrap_or_else(RandomVariable::constant_one);
    let e = match parse_lambda(lambda)? {
        None => expand_thm31(&p, &rv, Form::One),
        Some(l) => expand_thm33(&p, &rv, &l, Form::One),
    }
    .map_err(|e| e.to_string())?;
    to_json(&json!({ "basis": e.basis.to_string(), "method": e.method, "coeffs": e.coeffs }))
}

/// Runs one identity suite and returns its totals and failing cases.
pub fn verify_json(suite: &str, nmax: usize, seed: u64) -> Result<String, String> {
    check_n(nmax)?;
    if !SUITES.contains(&suite) {
        return Err(format!("unknown suite {suite:?}"));
    }
    let r = run_suite(suite, nmax, seed).map_err(|e| e.to_string())?;
    let failures: Vec<_> = r.failures().collect();
    to_json(&json!({ "suite": r.suite, "passed": r.passed(), "totals": r.totals, "failures": failures }))
}

#[wasm_bindgen]
pub fn stirling(kind: u8, rv: &str, lambda: &str, nmax: usize) -> Result<String, JsError> {
    stirling_json(kind, rv, lambda, nmax).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn expand(poly: &str, rv: &str, lambda: &str) -> Result<String, JsError> {
    expand_json(poly, rv, lambda).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn verify(suite: &str, nmax: usize, seed: u64) -> Result<String, JsError> {
    verify_json(suite, nmax, seed).map_err(|e| JsError::new(&e))
}

/// Suite names for the page's selector, as a JSON list.
#[wasm_bindgen]
pub fn suites() -> String {
    serde_json::to_string(&SUITES).expect("static list")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_diagonal() {
        let out: serde_json::Value =
            serde_json::from_str(&stirling_json(2, "exponential:alpha=3/2", "", 4).unwrap()).unwrap();
        assert_eq!(out["rows"][4][4], "16/81");
        assert_eq!(out["family"], "S2prob");
    }

    #[test]
    fn degenerate_entry_is_a_coefficient_list() {
        let out: serde_json::Value = serde_json::from_str(&stirling_json(2, "", "symbolic", 2).unwrap()).unwrap();
        assert_eq!(out["rows"][2][1], json!(["1", "-1"]));
    }

    #[test]
    fn expansion_of_x_squared() {
        let out: serde_json::Value = serde_json::from_str(&expand_json("0,0,1", "", "").unwrap()).unwrap();
        assert_eq!(out["coeffs"], json!(["1/3", "1", "1"]));
        assert_eq!(out["method"], "thm31_form1");
    }

    #[test]
    fn suite_summary() {
        let out: serde_json::Value = serde_json::from_str(&verify_json("lemma51", 6, 0).unwrap()).unwrap();
        assert_eq!(out["passed"], true);
        assert_eq!(out["failures"], json!([]));
    }

    #[test]
    fn bad_input_is_an_error_message() {
        assert!(stirling_json(3, "", "", 4).is_err());
        assert!(stirling_json(2, "poisson:beta=1", "", 4).is_err());
        assert!(expand_json("1,x", "", "").is_err());
        assert!(verify_json("nope", 4, 0).is_err());
        assert!(verify_json("lemma51", MAX_N + 1, 0).is_err());
    }
}
