//! Matrix file format and fixed-precision float formatting.
//!
//! A matrix file is a JSON object
//!
//! ```text
//! {"rows": 2, "cols": 2, "data": [[1, 0], [1, 0], [0, 0], [0, 0]]}
//! ```
//!
//! where `data` lists `[re, im]` pairs in row-major order. Writers emit every
//! component with 17 significant digits, which round-trips `f64` exactly.

use serde_json::Value;

use crate::error::{Error, Result};
use crate::matrix::{c, CMat};

/// `x` in scientific notation with 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        format!("{x}")
    }
}

fn parse_err(field: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Parse {
        field: field.into(),
        message: message.into(),
    }
}

fn dimension(obj: &serde_json::Map<String, Value>, field: &str) -> Result<usize> {
    let v = obj.get(field).ok_or_else(|| parse_err(field, "missing"))?;
    let n = v
        .as_u64()
        .ok_or_else(|| parse_err(field, format!("expected a positive integer, got {v}")))?;
    if n == 0 {
        return Err(parse_err(field, "must be positive"));
    }
    usize::try_from(n).map_err(|_| parse_err(field, "too large"))
}

fn component(v: &Value, field: String) -> Result<f64> {
    let x = v
        .as_f64()
        .ok_or_else(|| parse_err(field.clone(), format!("expected a number, got {v}")))?;
    if !x.is_finite() {
        return Err(parse_err(field, "not finite"));
    }
    Ok(x)
}

/// Parses a matrix document. Errors name the offending field, e.g.
/// `data[3][1]`.
pub fn parse_matrix(text: &str) -> Result<CMat> {
    let doc: Value = serde_json::from_str(text).map_err(|e| parse_err("document", e.to_string()))?;
    let obj = doc
        .as_object()
        .ok_or_else(|| parse_err("document", "expected a JSON object"))?;
    let rows = dimension(obj, "rows")?;
    let cols = dimension(obj, "cols")?;
    let data = obj
        .get("data")
        .ok_or_else(|| parse_err("data", "missing"))?
        .as_array()
        .ok_or_else(|| parse_err("data", "expected an array of [re, im] pairs"))?;
    if data.len() != rows * cols {
        return Err(parse_err(
            "data",
            format!("expected {} entries for a {rows}x{cols} matrix, got {}", rows * cols, data.len()),
        ));
    }
    let mut entries = Vec::with_capacity(data.len());
    for (k, pair) in data.iter().enumerate() {
        let p = pair
            .as_array()
            .filter(|p| p.len() == 2)
            .ok_or_else(|| parse_err(format!("data[{k}]"), "expected a [re, im] pair"))?;
        let re = component(&p[0], format!("data[{k}][0]"))?;
        let im = component(&p[1], format!("data[{k}][1]"))?;
        entries.push(c(re, im));
    }
    CMat::new(rows, cols, entries)
}

/// Serializes `a` in the matrix file format.
pub fn write_matrix(a: &CMat) -> String {
    let data: Vec<String> = a
        .data()
        .iter()
        .map(|z| format!("[{}, {}]", fmt_f64(z.re), fmt_f64(z.im)))
        .collect();
    format!(
        "{{\"rows\": {}, \"cols\": {}, \"data\": [{}]}}\n",
        a.rows(),
        a.cols(),
        data.join(", ")
    )
}

pub fn read_matrix_file(path: &std::path::Path) -> Result<CMat> {
    let text = std::fs::read_to_string(path).map_err(|e| parse_err("file", format!("{}: {e}", path.display())))?;
    parse_matrix(&text)
}
