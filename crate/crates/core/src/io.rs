//! Matrix file formats.
//!
//! Two encodings are read identically:
//!
//! * CSV: one matrix row per line, comma separated decimal entries. Blank
//!   lines and lines starting with `#` are ignored.
//! * JSON object: `{"order": n, "entries": [[...], ...], "tolerance": t}` with
//!   `tolerance` optional. When present it replaces the caller's reciprocity
//!   tolerance for that file.
//!
//! Writers emit every entry with 17 significant digits so a written matrix
//! reads back bit for bit.

use serde::{Deserialize, Serializer};

use crate::error::{Error, Result};
use crate::matrix::{validate, ReciprocalMatrix, WeightVector};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixDoc {
    order: Option<usize>,
    entries: Vec<Vec<f64>>,
    tolerance: Option<f64>,
}

/// Format a float with 17 significant digits.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

fn looks_like_json(text: &str) -> bool {
    text.trim_start().starts_with('{')
}

/// Parse raw rows from either encoding without validating reciprocity.
/// Returns the rows and the tolerance carried by the file, if any.
pub fn parse_rows(text: &str) -> Result<(Vec<Vec<f64>>, Option<f64>)> {
    if looks_like_json(text) {
        let doc: MatrixDoc =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if let Some(order) = doc.order {
            if order != doc.entries.len() {
                return Err(Error::Parse(format!(
                    "\"order\" is {order} but \"entries\" has {} rows",
                    doc.entries.len()
                )));
            }
        }
        return Ok((doc.entries, doc.tolerance));
    }
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let row = line
            .split(',')
            .map(|cell| {
                let cell = cell.trim();
                cell.parse::<f64>().map_err(|_| {
                    Error::Parse(format!("line {}: cannot parse {cell:?} as a number", lineno + 1))
                })
            })
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    Ok((rows, None))
}

/// Read and validate a matrix. `tol` is the reciprocity tolerance unless the
/// file carries its own.
pub fn read_matrix(text: &str, tol: f64) -> Result<ReciprocalMatrix> {
    let (rows, file_tol) = parse_rows(text)?;
    validate(&rows, file_tol.unwrap_or(tol))
}

/// Read a weight vector: a JSON array, or decimal entries separated by commas
/// and/or newlines.
pub fn read_vector(text: &str) -> Result<WeightVector> {
    let entries: Vec<f64> = if text.trim_start().starts_with('[') {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?
    } else {
        text.lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .flat_map(|l| l.split(','))
            .map(|c| {
                c.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::Parse(format!("cannot parse {:?} as a number", c.trim())))
            })
            .collect::<Result<_>>()?
    };
    WeightVector::new(entries)
}

pub fn to_csv(a: &ReciprocalMatrix) -> String {
    let mut out = String::new();
    for i in 0..a.order() {
        let cells: Vec<String> = a.row(i).iter().map(|&v| fmt17(v)).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

pub fn to_json(a: &ReciprocalMatrix) -> String {
    let rows: Vec<String> = (0..a.order())
        .map(|i| {
            let cells: Vec<String> = a.row(i).iter().map(|&v| fmt17(v)).collect();
            format!("    [{}]", cells.join(", "))
        })
        .collect();
    format!("{{\n  \"order\": {},\n  \"entries\": [\n{}\n  ]\n}}\n", a.order(), rows.join(",\n"))
}

// Serialized reports label vertices 1..n, matching how results are discussed.

pub(crate) fn one_based<S: Serializer>(v: &[usize], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|i| i + 1))
}

pub(crate) fn one_based_groups<S: Serializer>(
    v: &[Vec<usize>],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|g| g.iter().map(|i| i + 1).collect::<Vec<_>>()))
}

pub(crate) fn one_based_opt<S: Serializer>(
    v: &Option<usize>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(i) => s.serialize_some(&(i + 1)),
        None => s.serialize_none(),
    }
}
