use nalgebra::DMatrix;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Triangle {
    Lower,
    Upper,
}

/// Lower Cholesky factor `L` with `A = L Lᵀ`.
///
/// Only the lower triangle of `a` is read; a clearly nonsymmetric input is
/// rejected as not positive definite.
pub fn cholesky(a: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!("{}x{} matrix is not square", a.nrows(), a.ncols())));
    }
    let scale = a.amax();
    if (a - a.transpose()).amax() > 1e-10 * scale {
        return Err(Error::NotPositiveDefinite);
    }
    nalgebra::Cholesky::new(a.clone())
        .map(|c| c.unpack())
        .ok_or(Error::NotPositiveDefinite)
}

/// Solves `op(T) X = B` for a triangular `T`, where `op` is the identity or
/// the transpose.
pub fn tri_solve(t: &DMatrix<f64>, b: &DMatrix<f64>, triangle: Triangle, transpose: bool) -> Result<DMatrix<f64>> {
    if t.nrows() != b.nrows() || !t.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "triangular {}x{} against right-hand side with {} rows",
            t.nrows(),
            t.ncols(),
            b.nrows()
        )));
    }
    let x = match (triangle, transpose) {
        (Triangle::Lower, false) => t.solve_lower_triangular(b),
        (Triangle::Upper, false) => t.solve_upper_triangular(b),
        (Triangle::Lower, true) => t.tr_solve_lower_triangular(b),
        (Triangle::Upper, true) => t.tr_solve_upper_triangular(b),
    };
    x.ok_or(Error::SingularMatrix { column: 0, pivot: 0.0, threshold: 0.0 })
}

/// `A^{-1} B` from the Cholesky factor of `A`.
pub fn chol_solve(l: &DMatrix<f64>, b: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let y = tri_solve(l, b, Triangle::Lower, false)?;
    tri_solve(l, &y, Triangle::Lower, true)
}
