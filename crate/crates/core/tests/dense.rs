use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;
use stheat::dense::{
    chol_solve, cholesky, complex_schur, complex_schur_from_real, complexify, eig_nonsymmetric, eig_pencil, kron,
    kron_apply_right, real_schur, svd, tri_solve, SchurBlock, Triangle,
};
use stheat::temporal::{TemporalMesh, TemporalOperators};
use stheat::Error;

fn matrix(n: usize, m: usize) -> impl Strategy<Value = DMatrix<f64>> {
    prop::collection::vec(-1.0f64..1.0, n * m).prop_map(move |v| DMatrix::from_vec(n, m, v))
}

fn square() -> impl Strategy<Value = DMatrix<f64>> {
    (1usize..9).prop_flat_map(|n| matrix(n, n))
}

fn spd() -> impl Strategy<Value = DMatrix<f64>> {
    square().prop_map(|b| {
        let n = b.nrows();
        &b * b.transpose() + DMatrix::identity(n, n) * 0.1
    })
}

fn temporal(n: usize) -> TemporalOperators {
    let mesh = TemporalMesh::new(vec![0.0, 1.0 / 32.0, 1.0 / 16.0, 1.0 / 8.0, 0.5]).unwrap().bisected(n);
    TemporalOperators::assemble(&mesh, 4000).unwrap()
}

fn upper_quasi_triangular(r: &DMatrix<f64>) -> bool {
    let n = r.nrows();
    (0..n).all(|j| (j + 2..n).all(|i| r[(i, j)] == 0.0))
        && (0..n.saturating_sub(2)).all(|k| r[(k + 1, k)] == 0.0 || r[(k + 2, k + 1)] == 0.0)
}

#[test]
fn cholesky_rejects_indefinite_and_nonsymmetric() {
    let indefinite = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 1.0]);
    assert!(matches!(cholesky(&indefinite), Err(Error::NotPositiveDefinite)));
    let nonsym = DMatrix::from_row_slice(2, 2, &[2.0, 1.0, 0.0, 2.0]);
    assert!(matches!(cholesky(&nonsym), Err(Error::NotPositiveDefinite)));
    assert!(matches!(cholesky(&DMatrix::zeros(2, 3)), Err(Error::DimensionMismatch(_))));
}

#[test]
fn kron_apply_rejects_bad_length() {
    let b = DMatrix::identity(3, 3);
    let r = kron_apply_right(&b, 2, |x, y| y.copy_from_slice(x), &[0.0; 5]);
    assert!(matches!(r, Err(Error::DimensionMismatch(_))));
}

#[test]
fn temporal_pencil_real_schur_has_pairs() {
    // the temporal pencil has complex eigenvalues from N_t = 4 on
    let op = temporal(1);
    let p = op.a.clone().lu().solve(&op.m).unwrap();
    let schur = real_schur(&p).unwrap();
    let pairs: Vec<_> = schur.blocks().into_iter().filter(|b| matches!(b, SchurBlock::Pair { .. })).collect();
    assert!(!pairs.is_empty());
    for b in pairs {
        let SchurBlock::Pair { k, alpha, b1, b2 } = b else { unreachable!() };
        assert_eq!(schur.r[(k, k)], alpha);
        assert_eq!(schur.r[(k + 1, k + 1)], alpha);
        assert!(b1 * b2 < 0.0);
    }
}

#[test]
fn pencil_phase_changes_only_column_scaling() {
    let op = temporal(2);
    let p = op.a.clone().lu().solve(&op.m).unwrap();
    let plain = eig_nonsymmetric(&p).unwrap();
    let fixed = eig_pencil(&p, &op.a).unwrap();
    assert_eq!(plain.d, fixed.d);
    for k in 0..p.nrows() {
        // columns agree up to a unit-modulus complex factor
        let xa = plain.x.column(k);
        let xb = fixed.x.column(k);
        let i = xa.icamax();
        let factor = xb[i] / xa[i];
        let diff = (xb - xa * factor).norm();
        assert!(diff < 1e-9 * xb.norm(), "column {k}");
        let big = xb.iter().map(|z| z.re.abs() + z.im.abs()).fold(0.0, f64::max);
        assert!((big - 1.0).abs() < 1e-14);
    }
}

#[test]
fn conjugate_columns_are_conjugate_after_phase_fix() {
    let op = temporal(1);
    let p = op.a.clone().lu().solve(&op.m).unwrap();
    let eig = eig_pencil(&p, &op.a).unwrap();
    for (j, &lj) in eig.d.iter().enumerate().filter(|(_, l)| l.im > 0.0) {
        let jc = eig.d.iter().position(|&l| (l - lj.conj()).norm() < 1e-12 * lj.norm()).unwrap();
        let diff = (eig.x.column(j).map(|z| z.conj()) - eig.x.column(jc)).norm();
        assert!(diff < 1e-14);
    }
}

#[test]
fn singular_values_are_sorted() {
    let x = complexify(&DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![0.5, 3.0, 1.0])));
    let (u, sigma, v) = svd(&x).unwrap();
    assert_eq!(sigma, vec![3.0, 1.0, 0.5]);
    let back = &u * complexify(&DMatrix::from_diagonal(&nalgebra::DVector::from_vec(sigma))) * v.adjoint();
    assert!((back - x).norm() < 1e-14);
}

#[test]
fn defective_matrix_is_rejected() {
    let jordan = DMatrix::from_row_slice(2, 2, &[1.0, 1.0, 0.0, 1.0]);
    assert!(matches!(eig_nonsymmetric(&jordan), Err(Error::DefectivePencil { .. })));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn kron_apply_matches_explicit_product(
        (b, a, v) in (1usize..6, 1usize..6).prop_flat_map(|(nb, na)| (matrix(nb, nb), matrix(na, na), prop::collection::vec(-1.0f64..1.0, na * nb)))
    ) {
        let na = a.nrows();
        let dense = kron(&b.transpose(), &a) * nalgebra::DVector::from_column_slice(&v);
        let fast = kron_apply_right(&b, na, |x, y| {
            let r = &a * nalgebra::DVector::from_column_slice(x);
            y.copy_from_slice(r.as_slice());
        }, &v).unwrap();
        for (d, f) in dense.iter().zip(&fast) {
            prop_assert!((d - f).abs() < 1e-13);
        }
    }

    #[test]
    fn cholesky_solves(a in spd()) {
        let n = a.nrows();
        let l = cholesky(&a).unwrap();
        prop_assert!((&l * l.transpose() - &a).norm() <= 1e-12 * a.norm());
        let b = DMatrix::from_fn(n, 2, |i, j| (i + 2 * j) as f64 - 1.5);
        let x = chol_solve(&l, &b).unwrap();
        prop_assert!((&a * x - &b).norm() <= 1e-8 * b.norm().max(1.0));
    }

    #[test]
    fn triangular_solves(t in square()) {
        let n = t.nrows();
        let lower = t.lower_triangle() + DMatrix::identity(n, n) * 3.0;
        let b = DMatrix::from_fn(n, 1, |i, _| i as f64 + 1.0);
        for transpose in [false, true] {
            let x = tri_solve(&lower, &b, Triangle::Lower, transpose).unwrap();
            let op = if transpose { lower.transpose() } else { lower.clone() };
            prop_assert!((&op * x - &b).norm() < 1e-10 * b.norm());
            let upper = lower.transpose();
            let x = tri_solve(&upper, &b, Triangle::Upper, transpose).unwrap();
            let op = if transpose { upper.transpose() } else { upper.clone() };
            prop_assert!((&op * x - &b).norm() < 1e-10 * b.norm());
        }
    }

    #[test]
    fn real_schur_contract(p in square()) {
        let schur = real_schur(&p).unwrap();
        let n = p.nrows();
        prop_assert!((&schur.q * &schur.r * schur.q.transpose() - &p).norm() <= 1e-12 * p.norm().max(1e-300));
        prop_assert!((schur.q.transpose() * &schur.q - DMatrix::identity(n, n)).norm() < 1e-12);
        prop_assert!(upper_quasi_triangular(&schur.r));
        for b in schur.blocks() {
            if let SchurBlock::Pair { k, b1, b2, .. } = b {
                prop_assert_eq!(schur.r[(k, k)], schur.r[(k + 1, k + 1)]);
                prop_assert!(b1 * b2 < 0.0);
            }
        }
    }

    #[test]
    fn schur_forms_agree_on_eigenvalues(p in square()) {
        let real: Vec<Complex64> = real_schur(&p).unwrap().eigenvalues();
        let mut complex: Vec<Complex64> = complex_schur_from_real(&p).unwrap().eigenvalues();
        let scale = p.norm().max(1.0);
        // clustered eigenvalues are only accurate to about sqrt(eps)
        for a in &real {
            let (i, d) = complex.iter().enumerate().map(|(i, b)| (i, (a - b).norm())).min_by(|x, y| x.1.total_cmp(&y.1)).unwrap();
            prop_assert!(d < 1e-6 * scale, "{a} unmatched");
            complex.swap_remove(i);
        }
        let trace: Complex64 = real.iter().sum();
        prop_assert!((trace.re - p.trace()).abs() < 1e-10 * scale);
    }

    #[test]
    fn complex_schur_contract(re in square(), seed in 0u64..1000) {
        let n = re.nrows();
        let im = DMatrix::from_fn(n, n, |i, j| (((i * 7 + j * 3) as u64 + seed) % 11) as f64 / 11.0 - 0.5);
        let p = re.zip_map(&im, Complex64::new);
        let schur = complex_schur(&p).unwrap();
        prop_assert!((&schur.w * &schur.s * schur.w.adjoint() - &p).norm() <= 1e-12 * p.norm());
        for j in 0..n {
            for i in j + 1..n {
                prop_assert_eq!(schur.s[(i, j)], Complex64::new(0.0, 0.0));
            }
        }
    }

    #[test]
    fn eigenvectors_diagonalize(a in spd(), b in spd()) {
        // pencils of two SPD matrices are diagonalizable with real spectrum
        prop_assume!(a.nrows() == b.nrows());
        let p = a.clone().lu().solve(&b).unwrap();
        let eig = eig_nonsymmetric(&p).unwrap();
        let pc = complexify(&p);
        for (k, &l) in eig.d.iter().enumerate() {
            let x = eig.x.column(k);
            prop_assert!((&pc * x - x * l).norm() <= 1e-9 * p.norm() * x.norm());
        }
        prop_assert!(eig.sigma.windows(2).all(|w| w[0] >= w[1]));
    }
}
