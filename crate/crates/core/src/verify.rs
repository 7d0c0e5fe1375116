//! Checks the condensation identities on a concrete matrix.
//!
//! Exact kinds must show zero residuals. Float kinds pass when
//! `|lhs - rhs| / max(1, |lhs|, |rhs|) < 1e-9`.

use crate::condense::{condense_at, condense_at_11, dodgson_identity_terms, CondenseError};
use crate::matrix::{Matrix, PivotSpec};
use crate::oracle::det_bareiss;
use crate::scalar::Scalar;

pub const FLOAT_RELATIVE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub checked: usize,
    pub failed: usize,
    /// Largest residual seen: absolute for exact kinds, relative for floats.
    pub worst_residual: f64,
}

impl IdentityCheck {
    fn new(name: &'static str) -> Self {
        IdentityCheck {
            name,
            checked: 0,
            failed: 0,
            worst_residual: 0.0,
        }
    }

    fn record(&mut self, outcome: (bool, f64)) {
        self.checked += 1;
        if !outcome.0 {
            self.failed += 1;
        }
        if outcome.1 > self.worst_residual || outcome.1.is_nan() {
            self.worst_residual = outcome.1;
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub checks: Vec<IdentityCheck>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(IdentityCheck::passed)
    }
}

/// Compares two sides of an identity; returns (pass, residual).
pub fn compare_sides<S: Scalar>(lhs: &S, rhs: &S) -> (bool, f64) {
    compare_with_scale(lhs, rhs, 1.0)
}

fn compare_with_scale<S: Scalar>(lhs: &S, rhs: &S, extra_scale: f64) -> (bool, f64) {
    let diff = lhs.sub(rhs);
    if S::EXACT {
        (diff.is_zero(), diff.to_f64().abs())
    } else {
        let scale = 1f64
            .max(lhs.to_f64().abs())
            .max(rhs.to_f64().abs())
            .max(extra_scale);
        let rel = diff.to_f64().abs() / scale;
        (rel < FLOAT_RELATIVE_TOLERANCE, rel)
    }
}

fn pivot_power<S: Scalar>(pivot: &S, exponent: usize) -> S {
    (0..exponent).fold(S::one(), |acc, _| acc.mul(pivot))
}

/// Product of row norms; bounds every minor of `m` in magnitude.
fn hadamard_scale<S: Scalar>(m: &Matrix<S>) -> f64 {
    m.row_iter()
        .map(|row| {
            row.iter()
                .map(|x| x.to_f64().powi(2))
                .sum::<f64>()
                .sqrt()
                .max(1.0)
        })
        .product()
}

/// Evaluates the single-pivot identity at `(1,1)` (or its zero-pivot
/// vanishing form), the general-pivot identity at every nonzero pivot, and
/// the Desnanot-Jacobi identity for every row pair. Needs order >= 3.
pub fn verify_identities<S: Scalar>(m: &Matrix<S>) -> Result<VerifyReport, CondenseError> {
    let n = m.order()?;
    if n < 3 {
        return Err(CondenseError::TooSmall(n));
    }
    let det = det_bareiss(m)?;
    let mut checks = Vec::new();

    let step = condense_at_11(m)?;
    let condensed_det = det_bareiss(&step.condensed)?;
    if step.pivot_value.is_zero() {
        let mut check = IdentityCheck::new("zero-pivot-vanishing");
        let scale = hadamard_scale(&step.condensed);
        check.record(compare_with_scale(&condensed_det, &S::zero(), scale));
        checks.push(check);
    } else {
        let mut check = IdentityCheck::new("pivot-11-condensation");
        let lhs = pivot_power(&step.pivot_value, n - 2).mul(&det);
        check.record(compare_sides(&lhs, &condensed_det));
        checks.push(check);
    }

    let mut general = IdentityCheck::new("general-pivot-condensation");
    for k in 1..=n {
        for l in 1..=n {
            let pivot = m.at(k, l);
            if pivot.is_zero() {
                continue;
            }
            let step = condense_at(m, PivotSpec { k, l })?;
            let lhs = pivot_power(pivot, n - 2).mul(&det);
            general.record(compare_sides(&lhs, &det_bareiss(&step.condensed)?));
        }
    }
    checks.push(general);

    let mut dodgson = IdentityCheck::new("desnanot-jacobi");
    for k in 1..=n {
        for l in k + 1..=n {
            let (lhs, rhs) = dodgson_identity_terms(m, k, l)?;
            dodgson.record(compare_sides(&lhs, &rhs));
        }
    }
    checks.push(dodgson);

    Ok(VerifyReport { checks })
}
