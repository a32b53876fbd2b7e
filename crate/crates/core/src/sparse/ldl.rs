use std::sync::Arc;

use super::csr::CsrMatrix;
use super::scalar::FactorScalar;
use super::symbolic::SymbolicFactorization;
use crate::error::{Error, Result};

/// Pivots smaller than this fraction of the largest matrix entry are
/// treated as zero.
pub const PIVOT_RTOL: f64 = 1e-13;

/// `P A Pᵀ = L D Lᵀ` for a symmetric matrix with entries in `S`.
#[derive(Debug, Clone)]
pub struct NumericFactorization<S: FactorScalar> {
    symbolic: Arc<SymbolicFactorization>,
    l_rows: Vec<usize>,
    l_values: Vec<S>,
    d_inv: Vec<S>,
}

/// Up-looking `L D Lᵀ` without pivoting. Only the entries mapped to the upper
/// triangle of `P A Pᵀ` are read, so `a` must be symmetric.
pub fn factorize<S: FactorScalar>(symbolic: &Arc<SymbolicFactorization>, a: &CsrMatrix<S>) -> Result<NumericFactorization<S>> {
    let sym = symbolic.as_ref();
    let n = sym.n;
    if a.n_rows() != n || a.row_offsets() != sym.row_offsets.as_slice() || a.col_indices() != sym.col_indices.as_slice() {
        return Err(Error::DimensionMismatch("matrix pattern differs from the analyzed pattern".into()));
    }
    let values = a.values();
    let threshold = PIVOT_RTOL * values.iter().fold(0.0, |m: f64, v| m.max(v.magnitude()));

    let nnz = sym.l_offsets[n];
    let mut l_rows = vec![0usize; nnz];
    let mut l_values = vec![S::zero(); nnz];
    let mut d_inv = vec![S::zero(); n];
    let mut lnz = vec![0usize; n];
    let mut y = vec![S::zero(); n];
    let mut flag = vec![usize::MAX; n];
    let mut pattern = vec![0usize; n];

    for k in 0..n {
        let mut top = n;
        flag[k] = k;
        for p in sym.up_offsets[k]..sym.up_offsets[k + 1] {
            let mut i = sym.up_rows[p];
            y[i] += values[sym.up_src[p]];
            let mut len = 0;
            while flag[i] != k {
                pattern[len] = i;
                len += 1;
                flag[i] = k;
                i = sym.parent[i];
            }
            while len > 0 {
                top -= 1;
                len -= 1;
                pattern[top] = pattern[len];
            }
        }
        let mut d = y[k];
        y[k] = S::zero();
        for &i in &pattern[top..n] {
            let w = y[i];
            y[i] = S::zero();
            let start = sym.l_offsets[i];
            let end = start + lnz[i];
            for p in start..end {
                let r = l_rows[p];
                y[r] -= l_values[p] * w;
            }
            let l_ki = (d_inv[i] * w).transpose();
            d -= l_ki * w;
            l_rows[end] = k;
            l_values[end] = l_ki;
            lnz[i] += 1;
        }
        let size = d.pivot_size();
        if !(size > threshold) {
            return Err(Error::SingularMatrix { column: sym.perm[k], pivot: size, threshold });
        }
        d_inv[k] = d.inverse();
    }

    Ok(NumericFactorization { symbolic: Arc::clone(symbolic), l_rows, l_values, d_inv })
}

impl<S: FactorScalar> NumericFactorization<S> {
    pub fn n(&self) -> usize {
        self.symbolic.n
    }

    pub fn symbolic(&self) -> &Arc<SymbolicFactorization> {
        &self.symbolic
    }

    /// Overwrites `b` with `A^{-1} b`.
    pub fn solve_in_place(&self, b: &mut [S::Vector]) {
        let sym = self.symbolic.as_ref();
        let n = sym.n;
        assert_eq!(b.len(), n, "right-hand side length");
        let mut x: Vec<S::Vector> = sym.perm.iter().map(|&i| b[i]).collect();
        for i in 0..n {
            let xi = x[i];
            for p in sym.l_offsets[i]..sym.l_offsets[i + 1] {
                let r = self.l_rows[p];
                x[r] -= self.l_values[p].apply(xi);
            }
        }
        for i in 0..n {
            x[i] = self.d_inv[i].apply(x[i]);
        }
        for i in (0..n).rev() {
            let mut xi = x[i];
            for p in sym.l_offsets[i]..sym.l_offsets[i + 1] {
                xi -= self.l_values[p].apply_transpose(x[self.l_rows[p]]);
            }
            x[i] = xi;
        }
        for (k, &i) in sym.perm.iter().enumerate() {
            b[i] = x[k];
        }
    }

    pub fn solve(&self, b: &[S::Vector]) -> Vec<S::Vector> {
        let mut x = b.to_vec();
        self.solve_in_place(&mut x);
        x
    }

    /// Solves for several right-hand sides, one per slice.
    pub fn solve_many(&self, columns: &mut [Vec<S::Vector>]) {
        for c in columns {
            self.solve_in_place(c);
        }
    }
}
