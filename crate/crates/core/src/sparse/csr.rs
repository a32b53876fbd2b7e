use std::ops::{AddAssign, Mul};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symmetry {
    /// Values satisfy `a_ij = a_ji` (transposed blocks for block scalars).
    Symmetric,
    /// Pattern equals its transpose, values are unrelated.
    StructurallySymmetric,
    General,
}

/// Compressed sparse row matrix with sorted, duplicate-free column indices.
/// Explicit zeros are kept so that matrices assembled from the same element
/// loop share one pattern.
#[derive(Debug, Clone, PartialEq)]
pub struct CsrMatrix<T> {
    n_rows: usize,
    n_cols: usize,
    row_offsets: Vec<usize>,
    col_indices: Vec<usize>,
    values: Vec<T>,
    symmetry: Symmetry,
}

impl<T: Copy + AddAssign> CsrMatrix<T> {
    /// Sums duplicate entries.
    pub fn from_triplets(n_rows: usize, n_cols: usize, triplets: &[(usize, usize, T)], symmetry: Symmetry) -> Self {
        let mut order: Vec<usize> = (0..triplets.len()).collect();
        order.sort_by_key(|&t| (triplets[t].0, triplets[t].1));
        let mut row_offsets = vec![0; n_rows + 1];
        let mut col_indices = Vec::with_capacity(triplets.len());
        let mut values: Vec<T> = Vec::with_capacity(triplets.len());
        let mut last: Option<(usize, usize)> = None;
        for &t in &order {
            let (r, c, v) = triplets[t];
            assert!(r < n_rows && c < n_cols, "triplet ({r}, {c}) out of bounds");
            if last == Some((r, c)) {
                *values.last_mut().unwrap() += v;
            } else {
                col_indices.push(c);
                values.push(v);
                row_offsets[r + 1] += 1;
                last = Some((r, c));
            }
        }
        for r in 0..n_rows {
            row_offsets[r + 1] += row_offsets[r];
        }
        Self { n_rows, n_cols, row_offsets, col_indices, values, symmetry }
    }
}

impl<T: Copy> CsrMatrix<T> {
    pub fn from_parts(
        n_rows: usize,
        n_cols: usize,
        row_offsets: Vec<usize>,
        col_indices: Vec<usize>,
        values: Vec<T>,
        symmetry: Symmetry,
    ) -> Result<Self> {
        if row_offsets.len() != n_rows + 1 || col_indices.len() != values.len() || row_offsets[n_rows] != values.len() {
            return Err(Error::DimensionMismatch("inconsistent CSR arrays".into()));
        }
        for r in 0..n_rows {
            let cols = &col_indices[row_offsets[r]..row_offsets[r + 1]];
            if row_offsets[r] > row_offsets[r + 1] || cols.windows(2).any(|w| w[0] >= w[1]) || cols.iter().any(|&c| c >= n_cols) {
                return Err(Error::DimensionMismatch(format!("row {r} is not sorted or out of range")));
            }
        }
        Ok(Self { n_rows, n_cols, row_offsets, col_indices, values, symmetry })
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn symmetry(&self) -> Symmetry {
        self.symmetry
    }

    pub fn row_offsets(&self) -> &[usize] {
        &self.row_offsets
    }

    pub fn col_indices(&self) -> &[usize] {
        &self.col_indices
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// `(column, value)` pairs of row `r`.
    pub fn row(&self, r: usize) -> impl Iterator<Item = (usize, T)> + '_ {
        let span = self.row_offsets[r]..self.row_offsets[r + 1];
        self.col_indices[span.clone()].iter().copied().zip(self.values[span].iter().copied())
    }

    pub fn get(&self, r: usize, c: usize) -> Option<T> {
        let span = self.row_offsets[r]..self.row_offsets[r + 1];
        self.col_indices[span.clone()]
            .binary_search(&c)
            .ok()
            .map(|k| self.values[span.start + k])
    }

    /// Same pattern, new values computed from the positions of the old ones.
    pub fn map_values<U: Copy>(&self, f: impl Fn(usize, T) -> U) -> CsrMatrix<U> {
        CsrMatrix {
            n_rows: self.n_rows,
            n_cols: self.n_cols,
            row_offsets: self.row_offsets.clone(),
            col_indices: self.col_indices.clone(),
            values: self.values.iter().enumerate().map(|(p, &v)| f(p, v)).collect(),
            symmetry: self.symmetry,
        }
    }

    pub fn with_symmetry(mut self, symmetry: Symmetry) -> Self {
        self.symmetry = symmetry;
        self
    }

    pub fn same_pattern<U>(&self, other: &CsrMatrix<U>) -> bool {
        self.n_rows == other.n_rows
            && self.n_cols == other.n_cols
            && self.row_offsets == other.row_offsets
            && self.col_indices == other.col_indices
    }

    /// Transposed pattern equals the pattern.
    pub fn is_structurally_symmetric(&self) -> bool {
        self.n_rows == self.n_cols
            && (0..self.n_rows).all(|r| self.row(r).all(|(c, _)| self.get(c, r).is_some()))
    }

    pub fn transpose(&self) -> Self {
        let mut counts = vec![0usize; self.n_cols + 1];
        for &c in &self.col_indices {
            counts[c + 1] += 1;
        }
        for c in 0..self.n_cols {
            counts[c + 1] += counts[c];
        }
        let mut next = counts.clone();
        let mut cols = vec![0; self.nnz()];
        let mut vals: Vec<Option<T>> = vec![None; self.nnz()];
        for r in 0..self.n_rows {
            for (c, v) in self.row(r) {
                let dst = next[c];
                cols[dst] = r;
                vals[dst] = Some(v);
                next[c] += 1;
            }
        }
        Self {
            n_rows: self.n_cols,
            n_cols: self.n_rows,
            row_offsets: counts,
            col_indices: cols,
            values: vals.into_iter().map(Option::unwrap).collect(),
            symmetry: self.symmetry,
        }
    }

    /// Rows selected by `rows`, columns by `cols` (both given as ordered
    /// lists of original indices).
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut col_map = vec![usize::MAX; self.n_cols];
        for (k, &c) in cols.iter().enumerate() {
            col_map[c] = k;
        }
        let sorted = cols.windows(2).all(|w| w[0] < w[1]);
        let mut row_offsets = Vec::with_capacity(rows.len() + 1);
        row_offsets.push(0);
        let mut col_indices = Vec::new();
        let mut values = Vec::new();
        for &r in rows {
            let mut entries: Vec<(usize, T)> = self
                .row(r)
                .filter_map(|(c, v)| (col_map[c] != usize::MAX).then(|| (col_map[c], v)))
                .collect();
            if !sorted {
                entries.sort_by_key(|e| e.0);
            }
            for (c, v) in entries {
                col_indices.push(c);
                values.push(v);
            }
            row_offsets.push(col_indices.len());
        }
        let symmetry = if rows == cols { self.symmetry } else { Symmetry::General };
        Self { n_rows: rows.len(), n_cols: cols.len(), row_offsets, col_indices, values, symmetry }
    }
}

impl CsrMatrix<f64> {
    pub fn identity(n: usize) -> Self {
        Self {
            n_rows: n,
            n_cols: n,
            row_offsets: (0..=n).collect(),
            col_indices: (0..n).collect(),
            values: vec![1.0; n],
            symmetry: Symmetry::Symmetric,
        }
    }

    pub fn to_dense(&self) -> nalgebra::DMatrix<f64> {
        let mut d = nalgebra::DMatrix::zeros(self.n_rows, self.n_cols);
        for r in 0..self.n_rows {
            for (c, v) in self.row(r) {
                d[(r, c)] += v;
            }
        }
        d
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// `y = self · x` for real or complex vectors.
    pub fn mul_vec_into<V>(&self, x: &[V], y: &mut [V])
    where
        V: Copy + Default + AddAssign + Mul<f64, Output = V>,
    {
        debug_assert_eq!(x.len(), self.n_cols);
        debug_assert_eq!(y.len(), self.n_rows);
        for (r, out) in y.iter_mut().enumerate() {
            let mut acc = V::default();
            for p in self.row_offsets[r]..self.row_offsets[r + 1] {
                acc += x[self.col_indices[p]] * self.values[p];
            }
            *out = acc;
        }
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.n_rows];
        self.mul_vec_into(x, &mut y);
        y
    }

    /// `self · X` for a dense column-major `X`.
    pub fn mul_dense(&self, x: &nalgebra::DMatrix<f64>) -> nalgebra::DMatrix<f64> {
        let mut out = nalgebra::DMatrix::zeros(self.n_rows, x.ncols());
        for j in 0..x.ncols() {
            let col = x.column(j);
            let mut dst = out.column_mut(j);
            for r in 0..self.n_rows {
                let mut acc = 0.0;
                for p in self.row_offsets[r]..self.row_offsets[r + 1] {
                    acc += self.values[p] * col[self.col_indices[p]];
                }
                dst[r] = acc;
            }
        }
        out
    }
}
