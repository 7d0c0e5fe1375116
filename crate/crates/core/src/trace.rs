//! JSON serialization of condensation traces.
//!
//! Layout is pinned by `schemas/trace.schema.json`. Scalars are written in
//! their canonical text form, so rational and integer traces round-trip
//! losslessly.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::condense::{CondensationStep, DetResult, PivotStrategy, TraceEntry};
use crate::matrix::{Matrix, MatrixError, PivotSpec};
use crate::scalar::{Scalar, ScalarError};

pub const TRACE_FORMAT: &str = "condensation-trace/1";

#[derive(Debug, Error)]
pub enum TraceError {
    #[error("invalid trace JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported trace format `{0}`")]
    Format(String),
    #[error("trace holds {found} scalars, expected {expected}")]
    ScalarKind { expected: String, found: String },
    #[error("bad scalar in trace: {0}")]
    Scalar(#[from] ScalarError),
    #[error("bad matrix in trace: {0}")]
    Matrix(#[from] MatrixError),
    #[error("sign must be 1 or -1, got {0}")]
    Sign(i8),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TraceDocument {
    pub format: String,
    pub scalar: String,
    pub strategy: String,
    /// Order of the input matrix.
    pub order: usize,
    pub value: String,
    pub steps: Vec<TraceRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum TraceRecord {
    Condense {
        level: usize,
        order: usize,
        pivot: PivotRecord,
        pivot_value: String,
        sign: i8,
        condensed: MatrixRecord,
    },
    ZeroFirstRow {
        level: usize,
        order: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PivotRecord {
    pub k: usize,
    pub l: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixRecord {
    pub rows: usize,
    pub cols: usize,
    /// Row-major scalar texts.
    pub entries: Vec<String>,
}

impl MatrixRecord {
    pub fn from_matrix<S: Scalar>(m: &Matrix<S>) -> Self {
        MatrixRecord {
            rows: m.rows(),
            cols: m.cols(),
            entries: m.entries().iter().map(Scalar::to_text).collect(),
        }
    }

    pub fn to_matrix<S: Scalar>(&self) -> Result<Matrix<S>, TraceError> {
        let entries = self
            .entries
            .iter()
            .map(|t| S::parse(t))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Matrix::from_vec(self.rows, self.cols, entries)?)
    }
}

impl TraceDocument {
    pub fn from_result<S: Scalar>(
        result: &DetResult<S>,
        order: usize,
        strategy: PivotStrategy,
    ) -> Self {
        let steps = result
            .trace
            .iter()
            .enumerate()
            .map(|(idx, entry)| match entry {
                TraceEntry::Step(step) => TraceRecord::Condense {
                    level: idx + 1,
                    order: step.condensed.rows() + 1,
                    pivot: PivotRecord {
                        k: step.pivot.k,
                        l: step.pivot.l,
                    },
                    pivot_value: step.pivot_value.to_text(),
                    sign: step.sign,
                    condensed: MatrixRecord::from_matrix(&step.condensed),
                },
                TraceEntry::ZeroFirstRow { order } => TraceRecord::ZeroFirstRow {
                    level: idx + 1,
                    order: *order,
                },
            })
            .collect();
        TraceDocument {
            format: TRACE_FORMAT.to_string(),
            scalar: S::KIND.name().to_string(),
            strategy: strategy.name().to_string(),
            order,
            value: result.value.to_text(),
            steps,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("trace document always serializes")
    }

    pub fn parse(text: &str) -> Result<Self, TraceError> {
        let doc: TraceDocument = serde_json::from_str(text)?;
        if doc.format != TRACE_FORMAT {
            return Err(TraceError::Format(doc.format));
        }
        Ok(doc)
    }

    /// Rebuilds the trace entries under scalar kind `S`.
    pub fn entries<S: Scalar>(&self) -> Result<Vec<TraceEntry<S>>, TraceError> {
        if self.scalar != S::KIND.name() {
            return Err(TraceError::ScalarKind {
                expected: S::KIND.name().to_string(),
                found: self.scalar.clone(),
            });
        }
        self.steps
            .iter()
            .map(|record| match record {
                TraceRecord::Condense {
                    pivot,
                    pivot_value,
                    sign,
                    condensed,
                    ..
                } => {
                    if !matches!(sign, 1 | -1) {
                        return Err(TraceError::Sign(*sign));
                    }
                    Ok(TraceEntry::Step(CondensationStep {
                        pivot: PivotSpec {
                            k: pivot.k,
                            l: pivot.l,
                        },
                        pivot_value: S::parse(pivot_value)?,
                        sign: *sign,
                        condensed: condensed.to_matrix()?,
                    }))
                }
                TraceRecord::ZeroFirstRow { order, .. } => {
                    Ok(TraceEntry::ZeroFirstRow { order: *order })
                }
            })
            .collect()
    }

    pub fn value<S: Scalar>(&self) -> Result<S, TraceError> {
        Ok(S::parse(&self.value)?)
    }
}
