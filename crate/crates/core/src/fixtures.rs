//! A worked 7x7 example and its first condensation at entry (1,1).

use crate::matrix::Matrix;
use crate::scalar::Float;

/// The 7x7 example matrix. Entry (4,4) is the square root of 3 and entry
/// (5,6) is one half, so only the float kind can hold it.
pub fn worked_7x7() -> Matrix<Float> {
    let s3 = 3f64.sqrt();
    let rows: [[f64; 7]; 7] = [
        [2.0, 5.0, 4.0, 7.0, 6.0, 1.0, 2.0],
        [0.0, 1.0, 3.0, 8.0, 8.0, 1.0, 5.0],
        [9.0, 4.0, 7.0, 8.0, 9.0, 8.0, 6.0],
        [7.0, 8.0, 4.0, s3, 2.0, 0.0, 8.0],
        [11.0, 2.0, 5.0, 4.0, 5.0, 0.5, 5.0],
        [5.0, 7.0, 8.0, 6.0, 1.0, 0.0, 5.0],
        [9.0, 2.0, 3.0, 5.0, 8.0, 5.0, 3.0],
    ];
    Matrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&v| Float(v)).collect())
            .collect(),
    )
    .expect("fixture is square")
}

/// The expected 6x6 matrix of 2x2 minors anchored at entry (1,1).
pub fn worked_7x7_condensed() -> Matrix<Float> {
    let s3 = 3f64.sqrt();
    let rows: [[f64; 6]; 6] = [
        [2.0, 6.0, 16.0, 16.0, 2.0, 10.0],
        [-37.0, -22.0, -47.0, -36.0, 7.0, -6.0],
        [-19.0, -20.0, 2.0 * s3 - 49.0, -38.0, -7.0, 2.0],
        [-51.0, -34.0, -69.0, -56.0, -10.0, -12.0],
        [-11.0, -4.0, -23.0, -28.0, -5.0, 0.0],
        [-41.0, -30.0, -53.0, -38.0, 1.0, -12.0],
    ];
    Matrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&v| Float(v)).collect())
            .collect(),
    )
    .expect("fixture is square")
}

/// Scalar factor a11^(n-2) multiplying the 7x7 determinant.
pub const WORKED_PIVOT_POWER: f64 = 32.0;
