use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use proptest::prelude::*;
use stheat::sparse::{
    analyze, analyze_calls, analyze_with, factorize, read_matrix_market, write_matrix_market, Block2, CsrMatrix,
    Ordering, Pair, Symmetry,
};
use stheat::Error;

/// Random symmetric pattern with a dominant diagonal: `(n, off-diagonal triplets)`.
fn sparse_pattern() -> impl Strategy<Value = (usize, Vec<(usize, usize, f64)>)> {
    (2usize..40).prop_flat_map(|n| {
        let edges = prop::collection::vec((0..n, 0..n, -1.0f64..1.0), 0..3 * n);
        (Just(n), edges)
    })
}

fn spd_from((n, edges): &(usize, Vec<(usize, usize, f64)>)) -> CsrMatrix<f64> {
    let mut t = Vec::new();
    let mut diag = vec![1.0; *n];
    for &(i, j, v) in edges.iter().filter(|e| e.0 != e.1) {
        t.push((i, j, v));
        t.push((j, i, v));
        diag[i] += v.abs();
        diag[j] += v.abs();
    }
    t.extend(diag.iter().enumerate().map(|(i, &d)| (i, i, d)));
    CsrMatrix::from_triplets(*n, *n, &t, Symmetry::Symmetric)
}

fn rhs(n: usize) -> Vec<f64> {
    (0..n).map(|i| ((i * 37 % 11) as f64) - 5.0).collect()
}

fn laplacian_1d(n: usize) -> CsrMatrix<f64> {
    let mut t = Vec::new();
    for i in 0..n {
        t.push((i, i, 2.0));
        if i + 1 < n {
            t.push((i, i + 1, -1.0));
            t.push((i + 1, i, -1.0));
        }
    }
    CsrMatrix::from_triplets(n, n, &t, Symmetry::Symmetric)
}

#[test]
fn triplets_sum_duplicates_and_sort() {
    let a = CsrMatrix::from_triplets(2, 3, &[(1, 2, 1.0), (0, 1, 2.0), (1, 2, 0.5), (1, 0, 4.0)], Symmetry::General);
    assert_eq!(a.nnz(), 3);
    assert_eq!(a.row_offsets(), &[0, 1, 3]);
    assert_eq!(a.col_indices(), &[1, 0, 2]);
    assert_eq!(a.get(1, 2), Some(1.5));
    assert_eq!(a.get(0, 0), None);
    let at = a.transpose();
    assert_eq!(at.to_dense(), a.to_dense().transpose());
}

#[test]
fn from_parts_validates() {
    assert!(matches!(
        CsrMatrix::from_parts(2, 2, vec![0, 1], vec![0], vec![1.0], Symmetry::General),
        Err(Error::DimensionMismatch(_))
    ));
    assert!(CsrMatrix::from_parts(1, 2, vec![0, 2], vec![1, 0], vec![1.0, 1.0], Symmetry::General).is_err());
    assert!(CsrMatrix::from_parts(1, 2, vec![0, 2], vec![0, 1], vec![1.0, 1.0], Symmetry::General).is_ok());
}

#[test]
fn submatrix_and_products() {
    let a = laplacian_1d(6);
    let sub = a.submatrix(&[1, 2, 4], &[0, 2, 3]);
    let dense = a.to_dense();
    for (r, &i) in [1usize, 2, 4].iter().enumerate() {
        for (c, &j) in [0usize, 2, 3].iter().enumerate() {
            assert_eq!(sub.to_dense()[(r, c)], dense[(i, j)]);
        }
    }
    let x: Vec<f64> = (0..6).map(|i| i as f64).collect();
    let y = a.mul_vec(&x);
    let y_ref = &dense * DVector::from_vec(x.clone());
    assert_eq!(y, y_ref.as_slice());
    let xm = DMatrix::from_fn(6, 2, |i, j| (i * (j + 1)) as f64);
    assert_eq!(a.mul_dense(&xm), &dense * &xm);
    assert!(a.is_structurally_symmetric());
    assert_eq!(a.max_abs(), 2.0);
}

#[test]
fn matrix_market_round_trip() {
    let a = laplacian_1d(5).map_values(|k, v| v + 1e-3 * k as f64);
    let path = std::env::temp_dir().join(format!("stheat-mm-{}.mtx", std::process::id()));
    write_matrix_market(&a, &path).unwrap();
    let b = read_matrix_market(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(a.to_dense(), b.to_dense());
}

#[test]
fn matrix_market_symmetric_is_expanded() {
    let path = std::env::temp_dir().join(format!("stheat-mm-sym-{}.mtx", std::process::id()));
    std::fs::write(&path, "%%MatrixMarket matrix coordinate real symmetric\n% comment\n2 2 2\n1 1 4.0\n2 1 -1.0\n").unwrap();
    let a = read_matrix_market(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(a.to_dense(), DMatrix::from_row_slice(2, 2, &[4.0, -1.0, -1.0, 0.0]));
}

#[test]
fn factorization_rejects_other_pattern() {
    let sym = Arc::new(analyze(&laplacian_1d(4)));
    assert!(matches!(factorize(&sym, &laplacian_1d(5)), Err(Error::DimensionMismatch(_))));
    assert!(matches!(factorize(&sym, &CsrMatrix::identity(4)), Err(Error::DimensionMismatch(_))));
}

#[test]
fn singular_pivot_is_reported() {
    let a = CsrMatrix::from_triplets(2, 2, &[(0, 0, 1.0), (0, 1, 1.0), (1, 0, 1.0), (1, 1, 1.0)], Symmetry::Symmetric);
    let sym = Arc::new(analyze_with(&a, Ordering::Natural));
    assert!(matches!(factorize(&sym, &a), Err(Error::SingularMatrix { .. })));
}

#[test]
fn amd_reduces_fill_of_an_arrow() {
    // dense first row and column: natural order fills completely, AMD does not
    let n = 30;
    let mut t: Vec<(usize, usize, f64)> = (0..n).map(|i| (i, i, n as f64)).collect();
    for i in 1..n {
        t.push((0, i, 1.0));
        t.push((i, 0, 1.0));
    }
    let a = CsrMatrix::from_triplets(n, n, &t, Symmetry::Symmetric);
    let natural = analyze_with(&a, Ordering::Natural);
    let amd = analyze_with(&a, Ordering::Amd);
    assert_eq!(natural.factor_nnz(), n * (n - 1) / 2);
    assert_eq!(amd.factor_nnz(), n - 1);
    let mut perm = amd.permutation().to_vec();
    perm.sort_unstable();
    assert_eq!(perm, (0..n).collect::<Vec<_>>());
}

#[test]
fn analyze_counter_counts_this_thread() {
    std::thread::spawn(|| {
        let before = analyze_calls();
        let a = laplacian_1d(3);
        let _ = analyze(&a);
        let _ = analyze(&a);
        assert_eq!(analyze_calls(), before + 2);
    })
    .join()
    .unwrap();
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn real_solve_matches_dense(p in sparse_pattern()) {
        let a = spd_from(&p);
        let n = a.n_rows();
        let sym = Arc::new(analyze(&a));
        let f = factorize(&sym, &a).unwrap();
        let b = rhs(n);
        let x = f.solve(&b);
        let dense = a.to_dense().lu().solve(&DVector::from_vec(b.clone())).unwrap();
        let err = (DVector::from_vec(x) - &dense).norm() / dense.norm().max(1e-300);
        prop_assert!(err < 1e-12);
        // elimination tree parents come later in the elimination order
        for (k, &parent) in sym.elimination_tree().iter().enumerate() {
            prop_assert!(parent == usize::MAX || parent > k);
        }
        prop_assert_eq!(sym.column_counts().iter().sum::<usize>(), sym.factor_nnz());
    }

    #[test]
    fn complex_symmetric_shifts_share_the_analysis(p in sparse_pattern(), sigma in -2.0f64..2.0) {
        // M + σ i A for SPD M, A with the same pattern
        let m = spd_from(&p);
        let a = m.map_values(|_, v| 0.5 * v);
        let shifted = m.map_values(|k, v| Complex64::new(v, sigma * a.values()[k]));
        let before = analyze_calls();
        let sym = Arc::new(analyze(&m));
        let f = factorize(&sym, &shifted).unwrap();
        let g = factorize(&sym, &m.map_values(|_, v| Complex64::new(v, 0.0))).unwrap();
        prop_assert_eq!(analyze_calls(), before + 1);

        let n = m.n_rows();
        let b: Vec<Complex64> = rhs(n).iter().enumerate().map(|(i, &v)| Complex64::new(v, i as f64)).collect();
        let x = f.solve(&b);
        let mut mx = vec![Complex64::new(0.0, 0.0); n];
        let mut ax = mx.clone();
        m.mul_vec_into(&x, &mut mx);
        a.mul_vec_into(&x, &mut ax);
        let res: f64 = (0..n)
            .map(|i| (mx[i] + Complex64::new(0.0, sigma) * ax[i] - b[i]).norm_sqr())
            .sum::<f64>()
            .sqrt();
        let bn: f64 = b.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        prop_assert!(res < 1e-11 * bn);
        prop_assert_eq!(g.n(), n);
    }

    #[test]
    fn block_solve_matches_interleaved_real_system(p in sparse_pattern()) {
        // a 2n x 2n SPD matrix read as n x n blocks is block symmetric
        let big = spd_from(&p).to_dense();
        let n2 = big.nrows();
        let n = n2 / 2;
        prop_assume!(n >= 1);
        let big = big.view((0, 0), (2 * n, 2 * n)).into_owned();
        let mut t = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let b = Block2::new(big[(2 * i, 2 * j)], big[(2 * i, 2 * j + 1)], big[(2 * i + 1, 2 * j)], big[(2 * i + 1, 2 * j + 1)]);
                if b != Block2::default() || i == j {
                    t.push((i, j, b));
                }
            }
        }
        let blocks = CsrMatrix::from_triplets(n, n, &t, Symmetry::Symmetric);
        let sym = Arc::new(analyze(&blocks));
        let f = factorize(&sym, &blocks).unwrap();
        let b: Vec<f64> = rhs(2 * n);
        let pairs: Vec<Pair> = b.chunks(2).map(|c| Pair([c[0], c[1]])).collect();
        let x = f.solve(&pairs);
        let flat: Vec<f64> = x.iter().flat_map(|p| p.0).collect();
        let dense = big.lu().solve(&DVector::from_vec(b)).unwrap();
        let err = (DVector::from_vec(flat) - &dense).norm() / dense.norm().max(1e-300);
        prop_assert!(err < 1e-11);
    }

    #[test]
    fn solve_many_matches_single_solves(p in sparse_pattern()) {
        let a = spd_from(&p);
        let n = a.n_rows();
        let f = factorize(&Arc::new(analyze(&a)), &a).unwrap();
        let mut cols: Vec<Vec<f64>> = (0..3).map(|k| rhs(n).iter().map(|v| v * (k as f64 + 1.0)).collect()).collect();
        let singles: Vec<Vec<f64>> = cols.iter().map(|c| f.solve(c)).collect();
        f.solve_many(&mut cols);
        prop_assert_eq!(cols, singles);
    }
}
