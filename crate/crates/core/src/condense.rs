//! Condensation of an order-`n` determinant into an order-`n-1` determinant
//! of pivot-anchored 2x2 minors, and the recursive determinant algorithm
//! built on it.
//!
//! With pivot `a[k][l]`, the condensed entry `(i, j)` is the determinant of
//! a 2x2 block holding the pivot, one entry from row `k`, one from column
//! `l`, and `a` at the crossing position. Rows below `k` and columns right of
//! `l` are shifted by one so the pivot row and column drop out. For any
//! pivot:
//!
//! ```text
//! pivot^(n-2) * det(A) = det(condensed)
//! ```
//!
//! The block orientation absorbs the sign of moving the pivot to the
//! front, so no extra sign appears in the identity.
//!
//! [`det_condensation`] always pivots in row 1. It recurses on the condensed
//! matrix and divides by `pivot^(m-2)` once per level on the way back up.
//! Intermediate entries are never divided, so their size grows
//! exponentially with depth.

use std::str::FromStr;

use thiserror::Error;

use crate::matrix::{Matrix, MatrixError, PivotSpec};
use crate::oracle::{det_bareiss, OracleError};
use crate::scalar::{Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CondenseError {
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("condensation needs order >= 2, got {0}")]
    TooSmall(usize),
    #[error("row pair must satisfy 1 <= k < l <= {n}, got k={k}, l={l}")]
    InvalidPair { k: usize, l: usize, n: usize },
    #[error("division by the order-{order} pivot power failed: {source}")]
    Divisibility { order: usize, source: ScalarError },
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// The four entries of one 2x2 minor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoByTwoBlock<'a, S> {
    pub top_left: &'a S,
    pub top_right: &'a S,
    pub bottom_left: &'a S,
    pub bottom_right: &'a S,
}

impl<S: Scalar> TwoByTwoBlock<'_, S> {
    pub fn det(&self) -> S {
        self.top_left
            .mul(self.bottom_right)
            .sub(&self.top_right.mul(self.bottom_left))
    }
}

/// Block whose determinant is condensed entry `(i, j)` for pivot `p`.
///
/// `i, j` range over `1..n`; `m` must be square of order `n` with `p` in
/// range. The four cases:
///
/// | case           | block                                         |
/// |----------------|-----------------------------------------------|
/// | `j<l`, `i<k`   | `[a(i,j)   a(i,l)  ; a(k,j)     a(k,l)    ]`  |
/// | `j>=l`, `i<k`  | `[a(i,l)   a(i,j+1); a(k,l)     a(k,j+1)  ]`  |
/// | `j<l`, `i>=k`  | `[a(k,j)   a(k,l)  ; a(i+1,j)   a(i+1,l)  ]`  |
/// | `j>=l`, `i>=k` | `[a(k,l)   a(k,j+1); a(i+1,l)   a(i+1,j+1)]`  |
pub fn block_at<S: Scalar>(
    m: &Matrix<S>,
    p: PivotSpec,
    i: usize,
    j: usize,
) -> TwoByTwoBlock<'_, S> {
    let PivotSpec { k, l } = p;
    let a = |r, c| m.at(r, c);
    match (i < k, j < l) {
        (true, true) => TwoByTwoBlock {
            top_left: a(i, j),
            top_right: a(i, l),
            bottom_left: a(k, j),
            bottom_right: a(k, l),
        },
        (true, false) => TwoByTwoBlock {
            top_left: a(i, l),
            top_right: a(i, j + 1),
            bottom_left: a(k, l),
            bottom_right: a(k, j + 1),
        },
        (false, true) => TwoByTwoBlock {
            top_left: a(k, j),
            top_right: a(k, l),
            bottom_left: a(i + 1, j),
            bottom_right: a(i + 1, l),
        },
        (false, false) => TwoByTwoBlock {
            top_left: a(k, l),
            top_right: a(k, j + 1),
            bottom_left: a(i + 1, l),
            bottom_right: a(i + 1, j + 1),
        },
    }
}

/// Output of one condensation level.
#[derive(Debug, Clone, PartialEq)]
pub struct CondensationStep<S> {
    pub pivot: PivotSpec,
    pub pivot_value: S,
    /// `(-1)^((k-1)+(l-1))`: the sign of rotating the pivot to the front.
    /// Informational only, the identity itself carries no sign.
    pub sign: i8,
    pub condensed: Matrix<S>,
}

fn check_condensable<S: Scalar>(m: &Matrix<S>) -> Result<usize, CondenseError> {
    let n = m.order()?;
    if n < 2 {
        return Err(CondenseError::TooSmall(n));
    }
    Ok(n)
}

/// Condensation anchored at `a(1,1)`:
/// `d(i,j) = a(1,1)*a(i+1,j+1) - a(1,j+1)*a(i+1,1)`.
pub fn condense_at_11<S: Scalar>(m: &Matrix<S>) -> Result<CondensationStep<S>, CondenseError> {
    let n = check_condensable(m)?;
    let pivot = m.at(1, 1);
    let condensed = Matrix::from_fn(n - 1, n - 1, |i, j| {
        pivot
            .mul(m.at(i + 1, j + 1))
            .sub(&m.at(1, j + 1).mul(m.at(i + 1, 1)))
    });
    Ok(CondensationStep {
        pivot: PivotSpec { k: 1, l: 1 },
        pivot_value: pivot.clone(),
        sign: 1,
        condensed,
    })
}

/// Condensation anchored at an arbitrary pivot, using [`block_at`].
pub fn condense_at<S: Scalar>(
    m: &Matrix<S>,
    p: PivotSpec,
) -> Result<CondensationStep<S>, CondenseError> {
    let n = check_condensable(m)?;
    let p = PivotSpec::new(p.k, p.l, n)?;
    let condensed = Matrix::from_fn(n - 1, n - 1, |i, j| block_at(m, p, i, j).det());
    Ok(CondensationStep {
        pivot: p,
        pivot_value: m.at(p.k, p.l).clone(),
        sign: p.rotation_sign(),
        condensed,
    })
}

/// Both sides of the Desnanot-Jacobi identity for rows/columns `k < l`:
/// `det(A) * det(A without k,l)` and
/// `det(A without l,l) * det(A without k,k) - det(A without l,k) * det(A without k,l)`,
/// where "without r,c" drops row `r` and column `c`. Every determinant comes
/// from the Bareiss oracle.
pub fn dodgson_identity_terms<S: Scalar>(
    m: &Matrix<S>,
    k: usize,
    l: usize,
) -> Result<(S, S), CondenseError> {
    let n = check_condensable(m)?;
    if k == 0 || k >= l || l > n {
        return Err(CondenseError::InvalidPair { k, l, n });
    }
    let minor = |rows: &[usize], cols: &[usize]| -> Result<S, CondenseError> {
        Ok(det_bareiss(&m.remove_rows_cols(rows, cols)?)?)
    };
    let lhs = det_bareiss(m)?.mul(&minor(&[k, l], &[k, l])?);
    let rhs = minor(&[l], &[l])?
        .mul(&minor(&[k], &[k])?)
        .sub(&minor(&[l], &[k])?.mul(&minor(&[k], &[l])?));
    Ok((lhs, rhs))
}

/// Left side minus right side of the Desnanot-Jacobi identity; exactly zero
/// on exact scalar kinds.
pub fn dodgson_identity_residual<S: Scalar>(
    m: &Matrix<S>,
    k: usize,
    l: usize,
) -> Result<S, CondenseError> {
    let (lhs, rhs) = dodgson_identity_terms(m, k, l)?;
    Ok(lhs.sub(&rhs))
}

/// How the recursive algorithm picks its pivot column in row 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PivotStrategy {
    /// Leftmost nonzero entry.
    #[default]
    FirstNonzero,
    /// Largest magnitude, leftmost on ties.
    MaxMagnitude,
}

impl PivotStrategy {
    pub fn name(self) -> &'static str {
        match self {
            PivotStrategy::FirstNonzero => "first-nonzero",
            PivotStrategy::MaxMagnitude => "max-magnitude",
        }
    }
}

impl FromStr for PivotStrategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "first-nonzero" => Ok(PivotStrategy::FirstNonzero),
            "max-magnitude" => Ok(PivotStrategy::MaxMagnitude),
            other => Err(format!("unknown pivot strategy `{other}`")),
        }
    }
}

/// 1-based column of the chosen pivot, or `None` when the row is all zero.
pub fn select_pivot<S: Scalar>(row1: &[S], strategy: PivotStrategy) -> Option<usize> {
    let mut nonzero = row1.iter().enumerate().filter(|(_, x)| !x.is_zero());
    let (idx, _) = match strategy {
        PivotStrategy::FirstNonzero => nonzero.next()?,
        PivotStrategy::MaxMagnitude => nonzero.reduce(|best, cand| {
            if cand.1.magnitude_cmp(best.1).is_gt() {
                cand
            } else {
                best
            }
        })?,
    };
    Some(idx + 1)
}

/// Arithmetic tally of one determinant evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct OpCounts {
    /// All multiplications, including `pivot_power_multiplications`.
    pub multiplications: u64,
    pub subtractions: u64,
    pub divisions: u64,
    /// Multiplications spent raising pivots to their powers.
    pub pivot_power_multiplications: u64,
}

impl std::ops::AddAssign for OpCounts {
    fn add_assign(&mut self, rhs: Self) {
        self.multiplications += rhs.multiplications;
        self.subtractions += rhs.subtractions;
        self.divisions += rhs.divisions;
        self.pivot_power_multiplications += rhs.pivot_power_multiplications;
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum TraceEntry<S> {
    Step(CondensationStep<S>),
    /// Row 1 of the order-`order` matrix was all zero; the determinant is 0.
    ZeroFirstRow {
        order: usize,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct DetResult<S> {
    pub value: S,
    pub trace: Vec<TraceEntry<S>>,
    pub op_counts: OpCounts,
}

impl<S> DetResult<S> {
    pub fn steps(&self) -> impl Iterator<Item = &CondensationStep<S>> {
        self.trace.iter().filter_map(|e| match e {
            TraceEntry::Step(s) => Some(s),
            TraceEntry::ZeroFirstRow { .. } => None,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CondenseOptions {
    pub strategy: PivotStrategy,
    /// Keep every condensed matrix in [`DetResult::trace`]. Turning this off
    /// avoids the copies when timing.
    pub record_trace: bool,
}

impl Default for CondenseOptions {
    fn default() -> Self {
        CondenseOptions {
            strategy: PivotStrategy::FirstNonzero,
            record_trace: true,
        }
    }
}

/// Determinant by repeated row-1 condensation, with trace.
pub fn det_condensation<S: Scalar>(
    m: &Matrix<S>,
    strategy: PivotStrategy,
) -> Result<DetResult<S>, CondenseError> {
    det_condensation_with(
        m,
        CondenseOptions {
            strategy,
            record_trace: true,
        },
    )
}

pub fn det_condensation_with<S: Scalar>(
    m: &Matrix<S>,
    opts: CondenseOptions,
) -> Result<DetResult<S>, CondenseError> {
    det_condensation_observed(m, opts, |_| {})
}

/// Like [`det_condensation_with`], calling `observer` on every level's step
/// as it is produced (whether or not the trace is kept).
pub fn det_condensation_observed<S: Scalar>(
    m: &Matrix<S>,
    opts: CondenseOptions,
    mut observer: impl FnMut(&CondensationStep<S>),
) -> Result<DetResult<S>, CondenseError> {
    m.order()?;
    let mut counts = OpCounts::default();
    let mut trace = Vec::new();
    let mut levels: Vec<(S, usize)> = Vec::new();
    let mut current = m.clone();

    let base = loop {
        let order = current.rows();
        if order <= 2 {
            if order == 2 {
                counts.multiplications += 2;
                counts.subtractions += 1;
            }
            break current.det_trivial()?;
        }
        let Some(l) = select_pivot(current.row(1)?, opts.strategy) else {
            trace.push(TraceEntry::ZeroFirstRow { order });
            return Ok(DetResult {
                value: S::zero(),
                trace,
                op_counts: counts,
            });
        };
        let step = condense_at(&current, PivotSpec { k: 1, l })?;
        let entries = ((order - 1) * (order - 1)) as u64;
        counts.multiplications += 2 * entries;
        counts.subtractions += entries;
        observer(&step);
        levels.push((step.pivot_value.clone(), order));
        current = if opts.record_trace {
            let next = step.condensed.clone();
            trace.push(TraceEntry::Step(step));
            next
        } else {
            step.condensed
        };
    };

    let mut value = base;
    for (pivot, order) in levels.iter().rev() {
        let exponent = order - 2;
        let fail = |source| CondenseError::Divisibility {
            order: *order,
            source,
        };
        if S::EXACT {
            let mut power = pivot.clone();
            for _ in 1..exponent {
                power = power.mul(pivot);
                counts.multiplications += 1;
                counts.pivot_power_multiplications += 1;
            }
            value = value.exact_div(&power).map_err(fail)?;
            counts.divisions += 1;
        } else {
            // Dividing one factor at a time keeps intermediate magnitudes in
            // range for large orders.
            for _ in 0..exponent {
                value = value.exact_div(pivot).map_err(fail)?;
                counts.divisions += 1;
            }
        }
    }

    Ok(DetResult {
        value,
        trace,
        op_counts: counts,
    })
}

/// Closed-form counts for a dense order-`n` input that never hits the
/// zero-row exit, under an exact scalar kind.
pub fn expected_exact_op_counts(n: usize) -> OpCounts {
    let n = n as u64;
    let mut counts = OpCounts::default();
    if n == 2 {
        counts.multiplications = 2;
        counts.subtractions = 1;
    }
    if n < 3 {
        return counts;
    }
    for m in 3..=n {
        let entries = (m - 1) * (m - 1);
        counts.multiplications += 2 * entries + (m - 3);
        counts.pivot_power_multiplications += m - 3;
        counts.subtractions += entries;
        counts.divisions += 1;
    }
    counts.multiplications += 2;
    counts.subtractions += 1;
    counts
}
