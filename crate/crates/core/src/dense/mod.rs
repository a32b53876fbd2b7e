//! Dense kernels for the temporal pencil: Cholesky and triangular solves,
//! real and complex Schur forms, eigenvectors with an SVD of the eigenvector
//! matrix, and matrix-free Kronecker products.
//!
//! Storage and the underlying QR iterations come from `nalgebra`; this module
//! adds the normalizations the solvers rely on (standardized 2x2 blocks,
//! eigenvector scaling, sorted singular values) and checks the residual
//! contracts.

mod chol;
mod eig;
mod kron;
mod schur;

use std::io::Write;
use std::path::Path;

pub use chol::{chol_solve, cholesky, tri_solve, Triangle};
pub use eig::{eig_nonsymmetric, eig_pencil, svd, EigenSvdForm};
pub use kron::{kron, kron_apply_right};
pub use schur::{complex_schur, complex_schur_from_real, real_schur, ComplexSchurForm, RealSchurForm, SchurBlock};

use nalgebra::DMatrix;
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;

/// Relative residual tolerance of every decomposition.
pub const DECOMPOSITION_RTOL: f64 = 1e-12;

pub fn complexify(m: &DMatrix<f64>) -> CMatrix {
    m.map(|x| Complex64::new(x, 0.0))
}

/// Writes `m` row by row as comma separated values with 17 significant digits.
pub fn write_csv(m: &DMatrix<f64>, path: &Path) -> std::io::Result<()> {
    let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
    for r in 0..m.nrows() {
        let row: Vec<String> = (0..m.ncols()).map(|c| format!("{:.16e}", m[(r, c)])).collect();
        writeln!(out, "{}", row.join(","))?;
    }
    out.flush()
}
