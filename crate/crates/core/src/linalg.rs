//! Small dense linear-algebra helpers on `f64`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Smallest eigenvalue of a Hermitian matrix given row-major.
///
/// The input is symmetrized as `(A + A*)/2` before the eigen-solve.
pub fn hermitian_min_eigenvalue(rows: &[Vec<Complex64>]) -> Result<f64> {
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err(Error::Shape(format!("expected a non-empty square matrix, got {n} rows")));
    }
    let a = DMatrix::from_fn(n, n, |i, j| (rows[i][j] + rows[j][i].conj()) * 0.5);
    let eig = a.symmetric_eigenvalues();
    Ok(eig.iter().cloned().fold(f64::INFINITY, f64::min))
}
