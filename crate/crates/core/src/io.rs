//! Matrix file formats.
//!
//! Two interchangeable encodings:
//!
//! * plain text: one row per line, whitespace-separated decimal floats,
//!   written with 17 significant digits so values round-trip bit-exactly;
//! * a JSON envelope `{"n": .., "rows": [[..]], "name"?, "beta_closed_form"?}`.
//!
//! Parsers reject ragged rows, non-square shapes and non-finite values.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::TestMatrix;

/// JSON wire format for a matrix with optional metadata.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixEnvelope {
    pub n: usize,
    pub rows: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta_closed_form: Option<String>,
}

/// A matrix parsed from a file, with any metadata the format carried.
#[derive(Debug, Clone)]
pub struct LoadedMatrix {
    pub matrix: TestMatrix,
    pub name: Option<String>,
    pub beta_closed_form: Option<String>,
}

/// Parse either format, detecting JSON by a leading `{`.
pub fn parse_matrix(text: &str) -> Result<LoadedMatrix> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_text(text)
    }
}

/// Read a matrix file in either format.
pub fn read_matrix(path: &Path) -> Result<LoadedMatrix> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_matrix(&text)
}

fn parse_json(text: &str) -> Result<LoadedMatrix> {
    let envelope: MatrixEnvelope = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        msg: e.to_string(),
    })?;
    if envelope.rows.len() != envelope.n {
        return Err(Error::Parse {
            line: 1,
            msg: format!(
                "envelope declares n = {} but has {} rows",
                envelope.n,
                envelope.rows.len()
            ),
        });
    }
    let matrix = TestMatrix::from_rows(envelope.rows)?;
    Ok(LoadedMatrix {
        matrix,
        name: envelope.name,
        beta_closed_form: envelope.beta_closed_form,
    })
}

fn parse_text(text: &str) -> Result<LoadedMatrix> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut row = Vec::new();
        for tok in line.split_whitespace() {
            let v: f64 = tok.parse().map_err(|_| Error::Parse {
                line: idx + 1,
                msg: format!("cannot parse `{tok}` as a float"),
            })?;
            if !v.is_finite() {
                return Err(Error::Parse {
                    line: idx + 1,
                    msg: format!("non-finite value `{tok}`"),
                });
            }
            row.push(v);
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::Parse {
            line: 1,
            msg: "no rows found".into(),
        });
    }
    let n = rows.len();
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(Error::RaggedRow {
                row: i,
                expected: n,
                got: row.len(),
            });
        }
    }
    Ok(LoadedMatrix {
        matrix: TestMatrix::from_rows(rows)?,
        name: None,
        beta_closed_form: None,
    })
}

/// Render as plain text with 17 significant digits per entry.
pub fn matrix_to_text(m: &TestMatrix) -> String {
    let mut out = String::new();
    for row in m.rows() {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:.16e}")).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

/// Render as a pretty-printed JSON envelope.
pub fn matrix_to_json(
    m: &TestMatrix,
    name: Option<&str>,
    beta_closed_form: Option<&str>,
) -> String {
    let envelope = MatrixEnvelope {
        n: m.n(),
        rows: m.to_rows(),
        name: name.map(str::to_owned),
        beta_closed_form: beta_closed_form.map(str::to_owned),
    };
    let mut s = serde_json::to_string_pretty(&envelope).expect("envelope serializes");
    s.push('\n');
    s
}

/// Write a matrix file; `.json` paths get the envelope, all others text.
pub fn write_matrix(
    path: &Path,
    m: &TestMatrix,
    name: Option<&str>,
    beta_closed_form: Option<&str>,
) -> Result<()> {
    let body = if path.extension().is_some_and(|e| e == "json") {
        matrix_to_json(m, name, beta_closed_form)
    } else {
        matrix_to_text(m)
    };
    fs::write(path, body).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{catalog, random_orthogonal};

    #[test]
    fn text_round_trip_is_bit_exact() {
        let m = random_orthogonal(6, 17).unwrap();
        let text = matrix_to_text(&m);
        let back = parse_matrix(&text).unwrap();
        assert_eq!(back.matrix.entries(), m.entries());
    }

    #[test]
    fn json_round_trip_keeps_metadata() {
        let entry = catalog("n4_A").unwrap();
        let body = matrix_to_json(
            &entry.matrix,
            Some(entry.name),
            Some(entry.beta_closed_form),
        );
        let back = parse_matrix(&body).unwrap();
        assert_eq!(back.matrix.entries(), entry.matrix.entries());
        assert_eq!(back.name.as_deref(), Some("n4_A"));
        assert_eq!(back.beta_closed_form.as_deref(), Some("sqrt(3)"));
    }

    #[test]
    fn rejects_ragged_rows() {
        let err = parse_matrix("1 0\n1\n").unwrap_err();
        assert!(matches!(err, Error::RaggedRow { row: 1, .. }));
    }

    #[test]
    fn rejects_non_square() {
        let err = parse_matrix("1 0 0\n0 1 0\n").unwrap_err();
        assert!(matches!(err, Error::RaggedRow { .. }));
    }

    #[test]
    fn rejects_non_finite() {
        assert!(parse_matrix("1 inf\n0 1\n").is_err());
        assert!(parse_matrix("1 nan\n0 1\n").is_err());
        assert!(parse_matrix("{\"n\":1,\"rows\":[[1e999]]}").is_err());
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_matrix("hello world\n").is_err());
        assert!(parse_matrix("").is_err());
        assert!(parse_matrix("{\"n\":2,\"rows\":[[1,0]]}").is_err());
    }
}
