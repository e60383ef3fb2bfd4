//! Serialization of results and atomic file output.

use std::io::Write;
use std::path::Path;

use probbern_core::exactnum::{LambdaPoly, Rational, RingValue};
use serde_json::Value;
use tempfile::NamedTempFile;

use crate::CliError;

/// Renders a value for a CSV cell: the rational, or the λ-coefficient list
/// in brackets.
pub fn csv_cell(v: &RingValue) -> String {
    match v {
        RingValue::Rational(q) => q.to_string(),
        RingValue::Lambda(_) => format!("[{}]", v.coefficient_strings().join(",")),
    }
}

/// Inverse of the JSON encoding of [`RingValue`]: a string is a rational,
/// a list of strings is a polynomial in λ.
pub fn parse_json_value(v: &Value) -> Option<RingValue> {
    match v {
        Value::String(s) => s.parse::<Rational>().ok().map(RingValue::Rational),
        Value::Array(items) => {
            let coeffs = items
                .iter()
                .map(|c| c.as_str()?.parse::<Rational>().ok())
                .collect::<Option<Vec<_>>>()?;
            Some(RingValue::Lambda(LambdaPoly::new(coeffs)))
        }
        _ => None,
    }
}

/// Inverse of [`csv_cell`].
pub fn parse_csv_cell(s: &str) -> Option<RingValue> {
    match s.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
        Some(body) => {
            let coeffs = if body.is_empty() {
                Vec::new()
            } else {
                body.split(',')
                    .map(|c| c.parse::<Rational>().ok())
                    .collect::<Option<Vec<_>>>()?
            };
            Some(RingValue::Lambda(LambdaPoly::new(coeffs)))
        }
        None => s.parse::<Rational>().ok().map(RingValue::Rational),
    }
}

pub fn to_json<T: serde::Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| CliError::Output(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn to_csv(header: &[&str], rows: &[Vec<String>]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).map_err(|e| CliError::Output(e.to_string()))?;
    for r in rows {
        w.write_record(r).map_err(|e| CliError::Output(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Output(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Output(e.to_string()))
}

/// Writes `text` to `path` through a temporary file in the same directory
/// and a rename, so readers never see a partial file.
pub fn write_atomic(path: &Path, text: &str) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let io = |e: std::io::Error| CliError::Output(format!("{}: {e}", path.display()));
    let mut tmp = NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(text.as_bytes()).map_err(io)?;
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use probbern_core::exactnum::q;

    #[test]
    fn cells_round_trip() {
        let values = [
            RingValue::Rational(q(-16, 81)),
            RingValue::lambda_poly(vec![q(1, 1), q(-1, 1)]),
            RingValue::lambda_poly(vec![]),
        ];
        for v in values {
            assert_eq!(parse_csv_cell(&csv_cell(&v)), Some(v.clone()));
            let json = serde_json::to_value(&v).unwrap();
            assert_eq!(parse_json_value(&json), Some(v));
        }
    }

    #[test]
    fn atomic_write_replaces_the_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.json");
        write_atomic(&path, "first").unwrap();
        write_atomic(&path, "second").unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "second");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
