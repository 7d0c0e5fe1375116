//! Independent determinant routines used as ground truth: Laplace expansion,
//! fraction-free Bareiss elimination and Gaussian elimination over exact
//! rationals. None of them share code with the condensation path.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::condense::OpCounts;
use crate::matrix::{Matrix, MatrixError};
use crate::scalar::{Rational, Scalar, ScalarError};

/// Largest order accepted by [`det_cofactor`].
pub const COFACTOR_MAX_ORDER: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("cofactor expansion is limited to order {COFACTOR_MAX_ORDER}, got {0}")]
    TooLargeForCofactor(usize),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("bareiss division failed: {0}")]
    Division(#[from] ScalarError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OracleKind {
    Cofactor,
    Bareiss,
    GaussRational,
}

impl OracleKind {
    pub fn name(self) -> &'static str {
        match self {
            OracleKind::Cofactor => "cofactor",
            OracleKind::Bareiss => "bareiss",
            OracleKind::GaussRational => "gauss-rational",
        }
    }
}

impl fmt::Display for OracleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OracleKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "cofactor" => Ok(OracleKind::Cofactor),
            "bareiss" => Ok(OracleKind::Bareiss),
            "gauss-rational" | "gauss" => Ok(OracleKind::GaussRational),
            other => Err(format!("unknown oracle `{other}`")),
        }
    }
}

/// Laplace expansion along the first row, recursively.
pub fn det_cofactor<S: Scalar>(m: &Matrix<S>) -> Result<S, OracleError> {
    det_cofactor_counted(m).map(|(v, _)| v)
}

/// Laplace expansion with operation counts. Sub-determinants over the same
/// set of surviving columns are computed once, which keeps order 10 cheap
/// without changing the expansion.
pub fn det_cofactor_counted<S: Scalar>(m: &Matrix<S>) -> Result<(S, OpCounts), OracleError> {
    let n = m.order()?;
    if n > COFACTOR_MAX_ORDER {
        return Err(OracleError::TooLargeForCofactor(n));
    }
    let mut memo: Vec<Option<S>> = vec![None; 1 << n];
    let mut counts = OpCounts::default();
    let value = expand(m, n, 0, &mut memo, &mut counts);
    Ok((value, counts))
}

/// Determinant of the rows below the `popcount(used)` rows already expanded,
/// restricted to columns not in `used`.
fn expand<S: Scalar>(
    m: &Matrix<S>,
    n: usize,
    used: usize,
    memo: &mut [Option<S>],
    counts: &mut OpCounts,
) -> S {
    let row = used.count_ones() as usize + 1;
    if row > n {
        return S::one();
    }
    if let Some(v) = &memo[used] {
        return v.clone();
    }
    let mut total = S::zero();
    let mut position = 0;
    for col in 1..=n {
        let bit = 1 << (col - 1);
        if used & bit != 0 {
            continue;
        }
        let entry = m.at(row, col);
        if !entry.is_zero() {
            let term = entry.mul(&expand(m, n, used | bit, memo, counts));
            counts.multiplications += 1;
            counts.subtractions += 1;
            total = if position % 2 == 0 {
                total.add(&term)
            } else {
                total.sub(&term)
            };
        }
        position += 1;
    }
    memo[used] = Some(total.clone());
    total
}

/// Fraction-free elimination with row pivoting.
pub fn det_bareiss<S: Scalar>(m: &Matrix<S>) -> Result<S, OracleError> {
    det_bareiss_observed(m, |_, _| {}).map(|(v, _)| v)
}

/// Bareiss elimination that reports each stage. After stage `s` (1-based)
/// `observer(s, entries)` sees the whole row-major working matrix; entries
/// right of and below the stage pivot are then the `(s+1)`-order leading
/// minors of the row-permuted input.
pub fn det_bareiss_observed<S: Scalar>(
    m: &Matrix<S>,
    mut observer: impl FnMut(usize, &[S]),
) -> Result<(S, OpCounts), OracleError> {
    let n = m.order()?;
    let mut counts = OpCounts::default();
    if n == 0 {
        return Ok((S::one(), counts));
    }
    let mut a = m.entries().to_vec();
    let idx = |i: usize, j: usize| i * n + j;
    let mut negate = false;
    let mut previous = S::one();
    for k in 0..n - 1 {
        if a[idx(k, k)].is_zero() {
            let Some(p) = (k + 1..n).find(|&p| !a[idx(p, k)].is_zero()) else {
                return Ok((S::zero(), counts));
            };
            for j in 0..n {
                a.swap(idx(k, j), idx(p, j));
            }
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let cross = a[idx(i, j)]
                    .mul(&a[idx(k, k)])
                    .sub(&a[idx(i, k)].mul(&a[idx(k, j)]));
                counts.multiplications += 2;
                counts.subtractions += 1;
                a[idx(i, j)] = if k == 0 {
                    cross
                } else {
                    counts.divisions += 1;
                    cross.exact_div(&previous)?
                };
            }
            a[idx(i, k)] = S::zero();
        }
        previous = a[idx(k, k)].clone();
        observer(k + 1, &a);
    }
    let det = a[idx(n - 1, n - 1)].clone();
    Ok((if negate { det.neg() } else { det }, counts))
}

/// Gaussian elimination over exact rationals, taking the first nonzero
/// entry of each column as pivot.
pub fn det_gauss_rational(m: &Matrix<Rational>) -> Result<Rational, OracleError> {
    det_gauss_rational_counted(m).map(|(v, _)| v)
}

pub fn det_gauss_rational_counted(
    m: &Matrix<Rational>,
) -> Result<(Rational, OpCounts), OracleError> {
    let n = m.order()?;
    let mut counts = OpCounts::default();
    let mut a = m.entries().to_vec();
    let idx = |i: usize, j: usize| i * n + j;
    let mut det = Rational::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&p| !a[idx(p, k)].is_zero()) else {
            return Ok((Rational::zero(), counts));
        };
        if p != k {
            for j in 0..n {
                a.swap(idx(k, j), idx(p, j));
            }
            det = det.neg();
        }
        let pivot = a[idx(k, k)].clone();
        det = det.mul(&pivot);
        counts.multiplications += 1;
        for i in k + 1..n {
            if a[idx(i, k)].is_zero() {
                continue;
            }
            let factor = a[idx(i, k)].exact_div(&pivot)?;
            counts.divisions += 1;
            for j in k + 1..n {
                let update = factor.mul(&a[idx(k, j)]);
                a[idx(i, j)] = a[idx(i, j)].sub(&update);
                counts.multiplications += 1;
                counts.subtractions += 1;
            }
            a[idx(i, k)] = Rational::zero();
        }
    }
    Ok((det, counts))
}
