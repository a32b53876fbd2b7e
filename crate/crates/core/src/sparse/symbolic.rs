use std::cell::Cell;

use super::csr::CsrMatrix;

thread_local! {
    static ANALYZE_CALLS: Cell<usize> = const { Cell::new(0) };
}

/// Number of [`analyze`] calls made on the current thread so far.
pub fn analyze_calls() -> usize {
    ANALYZE_CALLS.with(Cell::get)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Ordering {
    /// Approximate minimum degree.
    #[default]
    Amd,
    Natural,
}

/// Fill-reducing permutation and the column structure of `L` for
/// `P A Pᵀ = L D Lᵀ`. Reusable for every matrix whose pattern is contained
/// in the analyzed one.
#[derive(Debug, Clone)]
pub struct SymbolicFactorization {
    pub(crate) n: usize,
    /// `perm[k]` is the original index eliminated at step `k`.
    pub(crate) perm: Vec<usize>,
    pub(crate) pinv: Vec<usize>,
    /// Elimination tree, `usize::MAX` at roots.
    pub(crate) parent: Vec<usize>,
    /// Start of column `k` of `L` (strictly lower part).
    pub(crate) l_offsets: Vec<usize>,
    /// Upper triangle of `P A Pᵀ` by columns: row indices and the position of
    /// the value in the analyzed CSR matrix.
    pub(crate) up_offsets: Vec<usize>,
    pub(crate) up_rows: Vec<usize>,
    pub(crate) up_src: Vec<usize>,
    /// Pattern of the analyzed matrix, to validate later inputs.
    pub(crate) row_offsets: Vec<usize>,
    pub(crate) col_indices: Vec<usize>,
}

impl SymbolicFactorization {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }

    /// `inverse_permutation()[i]` is the elimination step of original index `i`.
    pub fn inverse_permutation(&self) -> &[usize] {
        &self.pinv
    }

    /// Entries of `L` below the diagonal.
    pub fn factor_nnz(&self) -> usize {
        self.l_offsets[self.n]
    }

    /// Per-column counts of `L` below the diagonal.
    pub fn column_counts(&self) -> Vec<usize> {
        self.l_offsets.windows(2).map(|w| w[1] - w[0]).collect()
    }

    pub fn elimination_tree(&self) -> &[usize] {
        &self.parent
    }
}

/// Union of the pattern with its transpose, as sorted adjacency lists
/// without the diagonal.
fn symmetric_adjacency<T: Copy>(a: &CsrMatrix<T>) -> Vec<Vec<usize>> {
    let n = a.n_rows();
    let mut adj = vec![Vec::new(); n];
    for r in 0..n {
        for (c, _) in a.row(r) {
            if c != r {
                adj[r].push(c);
                adj[c].push(r);
            }
        }
    }
    for list in &mut adj {
        list.sort_unstable();
        list.dedup();
    }
    adj
}

fn fill_reducing(adj: &[Vec<usize>], ordering: Ordering) -> Vec<usize> {
    let n = adj.len();
    if ordering == Ordering::Natural || n <= 1 {
        return (0..n).collect();
    }
    let mut ap = Vec::with_capacity(n + 1);
    let mut ai = Vec::new();
    ap.push(0usize);
    for (r, list) in adj.iter().enumerate() {
        // AMD expects the diagonal to be present or absent consistently; keep it
        let mut inserted = false;
        for &c in list {
            if !inserted && c > r {
                ai.push(r);
                inserted = true;
            }
            ai.push(c);
        }
        if !inserted {
            ai.push(r);
        }
        ap.push(ai.len());
    }
    match amd::order(n, &ap, &ai, &amd::Control::default()) {
        Ok((p, _, _)) => p,
        Err(_) => (0..n).collect(),
    }
}

/// Ordering and symbolic factorization of a square, structurally symmetric
/// pattern (a nonsymmetric pattern is symmetrized by union).
pub fn analyze<T: Copy>(a: &CsrMatrix<T>) -> SymbolicFactorization {
    analyze_with(a, Ordering::Amd)
}

pub fn analyze_with<T: Copy>(a: &CsrMatrix<T>, ordering: Ordering) -> SymbolicFactorization {
    ANALYZE_CALLS.with(|c| c.set(c.get() + 1));
    assert_eq!(a.n_rows(), a.n_cols(), "analyze needs a square pattern");
    let n = a.n_rows();
    let adj = symmetric_adjacency(a);
    let perm = fill_reducing(&adj, ordering);
    let mut pinv = vec![0; n];
    for (k, &i) in perm.iter().enumerate() {
        pinv[i] = k;
    }

    // upper triangle of P A Pᵀ by columns, fed from the stored entries; for
    // a pattern that is not symmetric, missing mirror entries are structural zeros
    let mut counts = vec![0usize; n + 1];
    let mut entries = Vec::with_capacity(a.nnz());
    for r in 0..n {
        let start = a.row_offsets()[r];
        for (off, (c, _)) in a.row(r).enumerate() {
            let (pr, pc) = (pinv[r], pinv[c]);
            if pr <= pc {
                entries.push((pc, pr, start + off));
                counts[pc + 1] += 1;
            }
        }
    }
    for k in 0..n {
        counts[k + 1] += counts[k];
    }
    let mut next = counts.clone();
    let mut up_rows = vec![0; entries.len()];
    let mut up_src = vec![0; entries.len()];
    for &(col, row, src) in &entries {
        up_rows[next[col]] = row;
        up_src[next[col]] = src;
        next[col] += 1;
    }
    // structure from the symmetrized pattern, so that a stored lower entry
    // without its mirror still creates fill
    let mut sym_cols: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, list) in adj.iter().enumerate() {
        for &j in list {
            let (pi, pj) = (pinv[i], pinv[j]);
            if pi < pj {
                sym_cols[pj].push(pi);
            }
        }
    }

    // elimination tree and column counts
    let mut parent = vec![usize::MAX; n];
    let mut flag = vec![usize::MAX; n];
    let mut lnz = vec![0usize; n];
    for k in 0..n {
        flag[k] = k;
        for &i0 in &sym_cols[k] {
            let mut i = i0;
            while flag[i] != k {
                if parent[i] == usize::MAX {
                    parent[i] = k;
                }
                lnz[i] += 1;
                flag[i] = k;
                i = parent[i];
            }
        }
    }
    let mut l_offsets = vec![0; n + 1];
    for k in 0..n {
        l_offsets[k + 1] = l_offsets[k] + lnz[k];
    }

    SymbolicFactorization {
        n,
        perm,
        pinv,
        parent,
        l_offsets,
        up_offsets: counts,
        up_rows,
        up_src,
        row_offsets: a.row_offsets().to_vec(),
        col_indices: a.col_indices().to_vec(),
    }
}
