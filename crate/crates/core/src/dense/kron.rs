use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Explicit Kronecker product `a ⊗ b`.
pub fn kron(a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
    a.kronecker(b)
}

/// `(Bᵀ ⊗ A) v = vec(A V B)` without forming the Kronecker product.
///
/// `V` is the column-major `n_a x n_b` reshaping of `v`; `apply_a(x, y)` must
/// overwrite `y` with `A x` for vectors of length `n_a`.
pub fn kron_apply_right<F>(b: &DMatrix<f64>, n_a: usize, apply_a: F, v: &[f64]) -> Result<Vec<f64>>
where
    F: Fn(&[f64], &mut [f64]),
{
    let n_b = b.nrows();
    if v.len() != n_a * n_b || !b.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} against {n_a} x {}x{}",
            v.len(),
            b.nrows(),
            b.ncols()
        )));
    }
    let mut av = vec![0.0; v.len()];
    for (col, out) in v.chunks_exact(n_a.max(1)).zip(av.chunks_exact_mut(n_a.max(1))) {
        apply_a(col, out);
    }
    // (A V) B, column j of the result is Σ_i B[i, j] (A V)[:, i]
    let mut out = vec![0.0; v.len()];
    for j in 0..n_b {
        let dst = &mut out[j * n_a..(j + 1) * n_a];
        for i in 0..n_b {
            let w = b[(i, j)];
            if w != 0.0 {
                let src = &av[i * n_a..(i + 1) * n_a];
                for (d, s) in dst.iter_mut().zip(src) {
                    *d += w * s;
                }
            }
        }
    }
    Ok(out)
}
