//! Matrix file ingestion.
//!
//! Two layouts are accepted:
//!
//! * plain rows: one row per line, entries separated by whitespace and/or
//!   commas; blank lines and `#` comments are ignored;
//! * a JSON document `{"rows": R, "cols": C, "entries": [...]}` with the
//!   entries in row-major order, each a string or a JSON number.
//!
//! Diagnostics carry the 1-based line and column of the offending token.

use std::fmt;

use condense_core::{Matrix, MatrixError, Scalar, ScalarError};
use serde_json::Value;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Location {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.column)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum MatrixFileError {
    #[error("{at}: {source}")]
    Scalar { at: Location, source: ScalarError },
    #[error("line {line}: row has {found} entries, expected {expected} (row length set on line {first_line})")]
    Ragged {
        line: usize,
        found: usize,
        expected: usize,
        first_line: usize,
    },
    #[error("file contains no matrix rows")]
    Empty,
    #[error("{at}: invalid JSON matrix document: {message}")]
    Json { at: Location, message: String },
    #[error("JSON entry {index}: {source}")]
    JsonEntry { index: usize, source: ScalarError },
    #[error("JSON entry {index} must be a string or number")]
    JsonEntryType { index: usize },
    #[error(transparent)]
    Shape(#[from] MatrixError),
}

#[derive(serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Value>,
}

/// Parses `text` into a matrix of scalar kind `S`.
pub fn parse_matrix<S: Scalar>(text: &str) -> Result<Matrix<S>, MatrixFileError> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_rows(text)
    }
}

fn parse_json<S: Scalar>(text: &str) -> Result<Matrix<S>, MatrixFileError> {
    let doc: JsonMatrix = serde_json::from_str(text).map_err(|e| MatrixFileError::Json {
        at: Location {
            line: e.line(),
            column: e.column(),
        },
        message: e.to_string(),
    })?;
    let entries = doc
        .entries
        .iter()
        .enumerate()
        .map(|(index, value)| {
            let text = match value {
                Value::String(s) => s.clone(),
                Value::Number(n) => n.to_string(),
                _ => return Err(MatrixFileError::JsonEntryType { index }),
            };
            S::parse(&text).map_err(|source| MatrixFileError::JsonEntry { index, source })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Matrix::from_vec(doc.rows, doc.cols, entries)?)
}

/// Splits a line into `(column, token)` pairs, ignoring a trailing comment.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let body = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (idx, ch) in body.char_indices() {
        let sep = ch.is_whitespace() || ch == ',';
        match (sep, start) {
            (true, Some(s)) => {
                out.push((s, &body[s..idx]));
                start = None;
            }
            (false, None) => start = Some(idx),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &body[s..]));
    }
    out.into_iter()
        .map(|(byte, tok)| (body[..byte].chars().count() + 1, tok))
        .collect()
}

fn parse_rows<S: Scalar>(text: &str) -> Result<Matrix<S>, MatrixFileError> {
    let mut rows: Vec<Vec<S>> = Vec::new();
    let mut first_line = 0;
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let toks = tokens(line);
        if toks.is_empty() {
            continue;
        }
        if let Some(first) = rows.first() {
            if toks.len() != first.len() {
                return Err(MatrixFileError::Ragged {
                    line: line_no,
                    found: toks.len(),
                    expected: first.len(),
                    first_line,
                });
            }
        } else {
            first_line = line_no;
        }
        let row = toks
            .into_iter()
            .map(|(column, tok)| {
                S::parse(tok).map_err(|source| MatrixFileError::Scalar {
                    at: Location {
                        line: line_no,
                        column,
                    },
                    source,
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(MatrixFileError::Empty);
    }
    Ok(Matrix::from_rows(rows)?)
}
