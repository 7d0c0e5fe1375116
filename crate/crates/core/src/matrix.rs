//! Dense row-major matrices with 1-based `(i, j)` addressing.

use std::fmt;

use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("index ({i}, {j}) out of range for a {rows}x{cols} matrix")]
    IndexOutOfRange {
        i: usize,
        j: usize,
        rows: usize,
        cols: usize,
    },
    #[error("{axis} index {index} out of range 1..={len}")]
    RemovalOutOfRange {
        axis: &'static str,
        index: usize,
        len: usize,
    },
    #[error("{axis} index {index} listed more than once")]
    DuplicateRemoval { axis: &'static str, index: usize },
    #[error("row {row} has {found} entries, expected {expected}")]
    Ragged {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("expected {expected} entries for the given shape, found {found}")]
    ShapeMismatch { expected: usize, found: usize },
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("pivot ({k}, {l}) out of range for order {n}")]
    PivotOutOfRange { k: usize, l: usize, n: usize },
    #[error("direct determinant needs order <= 2, got {0}")]
    TooLargeForDirect(usize),
    #[error("dimension mismatch in product: {left_cols} vs {right_rows}")]
    ProductMismatch { left_cols: usize, right_rows: usize },
}

/// Position `(k, l)` of a pivot entry, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PivotSpec {
    pub k: usize,
    pub l: usize,
}

impl PivotSpec {
    /// Checked constructor for an order-`n` matrix.
    pub fn new(k: usize, l: usize, n: usize) -> Result<Self, MatrixError> {
        if k == 0 || l == 0 || k > n || l > n {
            return Err(MatrixError::PivotOutOfRange { k, l, n });
        }
        Ok(PivotSpec { k, l })
    }

    /// `(-1)^((k-1)+(l-1))`.
    pub fn rotation_sign(self) -> i8 {
        if (self.k + self.l).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

#[derive(Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    entries: Vec<S>,
}

impl<S> Matrix<S> {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[S] {
        &self.entries
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[S]> {
        let width = self.cols;
        (0..self.rows).map(move |r| &self.entries[r * width..(r + 1) * width])
    }
}

impl<S: Scalar> Matrix<S> {
    pub fn from_vec(rows: usize, cols: usize, entries: Vec<S>) -> Result<Self, MatrixError> {
        if entries.len() != rows * cols {
            return Err(MatrixError::ShapeMismatch {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        Ok(Matrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self, MatrixError> {
        let cols = rows.first().map_or(0, Vec::len);
        let n_rows = rows.len();
        let mut entries = Vec::with_capacity(n_rows * cols);
        for (idx, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(MatrixError::Ragged {
                    row: idx + 1,
                    expected: cols,
                    found: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(Matrix {
            rows: n_rows,
            cols,
            entries,
        })
    }

    /// Builds a matrix from small integers; handy for fixtures.
    pub fn from_i64_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self, MatrixError> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&v| S::from_i64(v)).collect())
                .collect(),
        )
    }

    /// `f(i, j)` with 1-based indices.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 1..=rows {
            for j in 1..=cols {
                entries.push(f(i, j));
            }
        }
        Matrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { S::one() } else { S::zero() })
    }

    /// Order of a square matrix.
    pub fn order(&self) -> Result<usize, MatrixError> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(MatrixError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn into_entries(self) -> Vec<S> {
        self.entries
    }

    /// `a_{i,j}`, 1-based.
    pub fn get(&self, i: usize, j: usize) -> Result<&S, MatrixError> {
        if i == 0 || j == 0 || i > self.rows || j > self.cols {
            return Err(MatrixError::IndexOutOfRange {
                i,
                j,
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(self.at(i, j))
    }

    /// Unchecked 1-based access for callers that already validated shape.
    #[inline]
    pub(crate) fn at(&self, i: usize, j: usize) -> &S {
        &self.entries[(i - 1) * self.cols + (j - 1)]
    }

    /// Row `i` (1-based) as a slice.
    pub fn row(&self, i: usize) -> Result<&[S], MatrixError> {
        if i == 0 || i > self.rows {
            return Err(MatrixError::IndexOutOfRange {
                i,
                j: 1,
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(&self.entries[(i - 1) * self.cols..i * self.cols])
    }

    pub fn map<T: Scalar>(&self, f: impl FnMut(&S) -> T) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn scale(&self, c: &S) -> Self {
        self.map(|x| x.mul(c))
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self, MatrixError> {
        if self.cols != rhs.rows {
            return Err(MatrixError::ProductMismatch {
                left_cols: self.cols,
                right_rows: rhs.rows,
            });
        }
        Ok(Self::from_fn(self.rows, rhs.cols, |i, j| {
            (1..=self.cols).fold(S::zero(), |acc, t| {
                acc.add(&self.at(i, t).mul(rhs.at(t, j)))
            })
        }))
    }

    /// The minor matrix left after deleting the listed rows and columns
    /// (1-based); surviving rows and columns keep their original order.
    pub fn remove_rows_cols(
        &self,
        removed_rows: &[usize],
        removed_cols: &[usize],
    ) -> Result<Self, MatrixError> {
        let keep_rows = kept_indices("row", self.rows, removed_rows)?;
        let keep_cols = kept_indices("column", self.cols, removed_cols)?;
        let mut entries = Vec::with_capacity(keep_rows.len() * keep_cols.len());
        for &i in &keep_rows {
            for &j in &keep_cols {
                entries.push(self.at(i, j).clone());
            }
        }
        Ok(Matrix {
            rows: keep_rows.len(),
            cols: keep_cols.len(),
            entries,
        })
    }

    /// Moves row `k` to the top and column `l` to the left by cascades of
    /// adjacent swaps. Rows `1..k` shift down by one and columns `1..l` shift
    /// right by one; everything else stays put. Returns the rotated matrix
    /// `B` and the sign with `det(A) = sign * det(B)`.
    pub fn rotate_pivot_to_front(&self, p: PivotSpec) -> Result<(Self, i8), MatrixError> {
        let n = self.order()?;
        let p = PivotSpec::new(p.k, p.l, n)?;
        let source = |idx: usize, pivot: usize| -> usize {
            match idx {
                1 => pivot,
                i if i <= pivot => i - 1,
                i => i,
            }
        };
        let rotated = Self::from_fn(n, n, |i, j| self.at(source(i, p.k), source(j, p.l)).clone());
        Ok((rotated, p.rotation_sign()))
    }

    /// Determinant by direct formula for order 0, 1 or 2. The empty matrix
    /// has determinant one.
    pub fn det_trivial(&self) -> Result<S, MatrixError> {
        match self.order()? {
            0 => Ok(S::one()),
            1 => Ok(self.at(1, 1).clone()),
            2 => Ok(self
                .at(1, 1)
                .mul(self.at(2, 2))
                .sub(&self.at(1, 2).mul(self.at(2, 1)))),
            n => Err(MatrixError::TooLargeForDirect(n)),
        }
    }
}

fn kept_indices(
    axis: &'static str,
    len: usize,
    removed: &[usize],
) -> Result<Vec<usize>, MatrixError> {
    let mut drop = vec![false; len + 1];
    for &index in removed {
        if index == 0 || index > len {
            return Err(MatrixError::RemovalOutOfRange { axis, index, len });
        }
        if drop[index] {
            return Err(MatrixError::DuplicateRemoval { axis, index });
        }
        drop[index] = true;
    }
    Ok((1..=len).filter(|&i| !drop[i]).collect())
}

impl<S: fmt::Debug> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for row in self.row_iter() {
            let texts: Vec<String> = row.iter().map(|x| format!("{x:?}")).collect();
            writeln!(f, "  [{}]", texts.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<S: fmt::Display> fmt::Display for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, row) in self.row_iter().enumerate() {
            if idx > 0 {
                writeln!(f)?;
            }
            let texts: Vec<String> = row.iter().map(ToString::to_string).collect();
            write!(f, "{}", texts.join(" "))?;
        }
        Ok(())
    }
}
