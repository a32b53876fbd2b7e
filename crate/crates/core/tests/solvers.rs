mod common;

use nalgebra::DMatrix;
use proptest::prelude::*;
use stheat::solvers::{
    apply_system, build_pencil, dense_system_matrix, eig_study, residual, solve, solve_bs_complex, solve_bs_real,
    solve_dense_oracle, solve_fd, with_threads, PencilVariant, SolveReport, SpaceTimeSolution, SpaceTimeSystem,
    Variant, DENSE_ORACLE_LIMIT,
};
use stheat::spatial::{
    assemble_global_rhs, assemble_p1, build_lshape_mesh, dirichlet_lift, project_rhs, ClosureSolution, ExactSolution,
};
use stheat::sparse::{CsrMatrix, Symmetry};
use stheat::temporal::{TemporalMesh, TemporalOperators};
use stheat::Error;

fn tolerance(v: Variant) -> f64 {
    match v {
        Variant::Fd => 1e-8,
        _ => 1e-10,
    }
}

#[test]
fn variant_names_round_trip() {
    for v in Variant::ALL {
        assert_eq!(v.name().parse::<Variant>().unwrap(), v);
        assert_eq!(v.to_string(), v.name());
    }
    assert_eq!(" BSR ".parse::<Variant>().unwrap(), Variant::BsReal);
    assert!(matches!("lu".parse::<Variant>(), Err(Error::Usage(_))));
}

#[test]
fn matrix_free_product_matches_kronecker_matrix() {
    let sys = common::random_system(7);
    let u: Vec<f64> = (0..sys.dof()).map(|i| (i as f64 * 0.37).sin()).collect();
    let dense = dense_system_matrix(&sys) * nalgebra::DVector::from_vec(u.clone());
    let fast = apply_system(&sys, &u);
    for (a, b) in dense.iter().zip(&fast) {
        assert!((a - b).abs() < 1e-13 * dense.amax());
    }
}

#[test]
fn solvers_reject_mismatched_pencils() {
    let sys = common::random_system(3);
    let real = build_pencil(&sys.temporal, PencilVariant::RealSchur).unwrap();
    let complex = build_pencil(&sys.temporal, PencilVariant::ComplexSchur).unwrap();
    assert!(matches!(solve_bs_complex(&sys, &real), Err(Error::Usage(_))));
    assert!(matches!(solve_bs_real(&sys, &complex), Err(Error::Usage(_))));
    assert!(matches!(solve_fd(&sys, &complex), Err(Error::Usage(_))));

    let other = TemporalOperators::assemble(&TemporalMesh::uniform(sys.n_t() + 1, 1.0).unwrap(), 500).unwrap();
    let wrong = build_pencil(&other, PencilVariant::RealSchur).unwrap();
    assert!(matches!(solve_bs_real(&sys, &wrong), Err(Error::DimensionMismatch(_))));
}

#[test]
fn system_validates_dimensions() {
    let temporal = TemporalOperators::assemble(&TemporalMesh::uniform(2, 1.0).unwrap(), 500).unwrap();
    let id = CsrMatrix::identity(3);
    assert!(matches!(SpaceTimeSystem::new(temporal.clone(), &id, &id, vec![0.0; 5]), Err(Error::DimensionMismatch(_))));
    let rect = CsrMatrix::from_triplets(3, 2, &[(0, 0, 1.0)], Symmetry::General);
    assert!(SpaceTimeSystem::new(temporal.clone(), &id, &rect, vec![0.0; 6]).is_err());

    // different patterns are merged so one analysis covers every shift
    let diag = CsrMatrix::from_triplets(3, 3, &[(0, 0, 2.0), (1, 1, 2.0), (2, 2, 2.0)], Symmetry::Symmetric);
    let tri = CsrMatrix::from_triplets(3, 3, &[(0, 0, 2.0), (0, 1, -1.0), (1, 0, -1.0), (1, 1, 2.0), (2, 2, 1.0)], Symmetry::Symmetric);
    let sys = SpaceTimeSystem::new(temporal, &diag, &tri, vec![1.0; 6]).unwrap();
    assert!(sys.mass.same_pattern(&sys.stiffness));
    assert_eq!(sys.mass.to_dense(), diag.to_dense());
}

#[test]
fn dense_oracle_has_a_size_guard() {
    let n_t = 2;
    let m_x = DENSE_ORACLE_LIMIT / n_t + 1;
    let temporal = TemporalOperators::assemble(&TemporalMesh::uniform(n_t, 1.0).unwrap(), 500).unwrap();
    let id = CsrMatrix::identity(m_x);
    let sys = SpaceTimeSystem::new(temporal, &id, &id, vec![0.0; m_x * n_t]).unwrap();
    assert!(matches!(solve_dense_oracle(&sys), Err(Error::SizeGuardExceeded { .. })));
}

#[test]
fn defective_pencil_falls_back_to_complex_schur() {
    // A⁻¹M is a Jordan block, which has no eigenvector basis
    let a = DMatrix::identity(2, 2);
    let m = DMatrix::from_row_slice(2, 2, &[1.0, 1.0, 0.0, 1.0]);
    let temporal = TemporalOperators { a, m, c: DMatrix::identity(2, 2), j_max: 0, tail_error: 0.0 };
    let lap = CsrMatrix::from_triplets(2, 2, &[(0, 0, 2.0), (0, 1, -1.0), (1, 0, -1.0), (1, 1, 2.0)], Symmetry::Symmetric);
    let sys = SpaceTimeSystem::new(temporal, &CsrMatrix::identity(2), &lap, vec![1.0, 2.0, 3.0, 4.0]).unwrap();
    assert!(matches!(
        build_pencil(&sys.temporal, PencilVariant::EigenSvd),
        Err(Error::DefectivePencil { .. })
    ));
    let (sol, report) = solve(&sys, Variant::Fd, 1).unwrap();
    assert_eq!(report.variant, Variant::Fd);
    assert_eq!(report.pencil, PencilVariant::ComplexSchur);
    assert!(report.fallback.is_some());
    assert_eq!(report.variant_label(), "fd/bs-complex");
    let oracle = solve_dense_oracle(&sys).unwrap();
    assert!(sol.relative_difference(&oracle) < 1e-12);
}

#[test]
fn reports_are_filled_in() {
    let sys = common::random_system(11);
    for v in Variant::ALL {
        let (sol, r): (SpaceTimeSolution, SolveReport) = solve(&sys, v, 2).unwrap();
        assert_eq!(r.variant, v);
        assert_eq!(r.pencil, v.pencil());
        assert_eq!((r.dof, r.n_t, r.m_x), (sys.dof(), sys.n_t(), sys.m_x()));
        assert_eq!(r.threads, 2);
        assert_eq!(r.analyze_calls, 1);
        assert!(r.residual <= 1e-10);
        assert!((r.residual - residual(&sys, &sol)).abs() < 1e-14);
        assert!(r.min_re_lambda > 0.0);
        assert_eq!(r.kappa2.is_some(), v == Variant::Fd);
        assert!(r.solve_seconds() >= 0.0);
        assert_eq!(r.csv_record().len(), SolveReport::CSV_HEADER.len());
        if v == Variant::BsReal {
            assert_eq!(r.imaginary_ratio, 0.0);
        }
    }
}

#[test]
fn thread_count_does_not_change_the_result() {
    let sys = common::random_system(5);
    let (one, _) = solve(&sys, Variant::Fd, 1).unwrap();
    let (four, _) = solve(&sys, Variant::Fd, 4).unwrap();
    assert!(one.relative_difference(&four) < 1e-14);
    assert_eq!(with_threads(3, rayon::current_num_threads).unwrap(), 3);
}

#[test]
fn spectral_row_of_the_base_mesh() {
    let mesh = common::base_mesh();
    let temp = TemporalOperators::assemble(&mesh, 4000).unwrap();
    let row = eig_study(&mesh, &temp).unwrap();
    assert_eq!(row.n_t, 4);
    assert_eq!((row.h_max, row.h_min), (0.375, 0.03125));
    assert!(row.sigma_min <= row.sigma_max);
    assert!((row.kappa2 - row.sigma_max / row.sigma_min).abs() < 1e-12 * row.kappa2);
}

#[test]
fn discrete_exact_solution_is_reproduced() {
    // u = 2t is constant in space, so the projected source 2 is exact and the
    // discrete solution equals u at every node
    let exact = ClosureSolution { u: |_: [f64; 2], t: f64| 2.0 * t, grad_x: |_: [f64; 2], _| [0.0, 0.0], u_t: |_: [f64; 2], _| 2.0 };
    let mesh_x = build_lshape_mesh(1);
    let mesh_t = TemporalMesh::new(vec![0.0, 0.05, 0.2, 0.3, 0.6]).unwrap();
    let spatial = assemble_p1(&mesh_x).unwrap();
    let temporal = TemporalOperators::assemble(&mesh_t, 4000).unwrap();
    let cells = project_rhs(&mesh_x, &mesh_t, |_, _| 2.0, 4);
    let lift = dirichlet_lift(&mesh_x, &mesh_t, |x, t| exact.u(x, t));
    let rhs = assemble_global_rhs(&cells, &spatial, &temporal, &lift).unwrap();
    let sys = SpaceTimeSystem::from_spatial(temporal, &spatial, rhs).unwrap();
    for v in Variant::ALL {
        let (sol, _) = solve(&sys, v, 0).unwrap();
        let u = sol.matrix();
        for k in 0..mesh_t.n_elements() {
            for i in 0..spatial.m_x() {
                assert!((u[(i, k)] - 2.0 * mesh_t.nodes()[k + 1]).abs() < 1e-9, "{v}");
            }
        }
        let norms = sol.with_lift(lift.clone()).error_norms(&mesh_x, &mesh_t, &spatial, &exact, 4).unwrap();
        assert!(norms.l2 < 1e-9 && norms.h1 < 1e-8, "{v}: {norms:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn every_solver_matches_the_dense_oracle(seed in 0u64..1_000_000) {
        let sys = common::random_system(seed);
        let oracle = solve_dense_oracle(&sys).unwrap();
        for v in Variant::ALL {
            let (sol, report) = solve(&sys, v, 1).unwrap();
            prop_assert!(sol.relative_difference(&oracle) <= tolerance(v), "{v}: {}", sol.relative_difference(&oracle));
            prop_assert_eq!(report.analyze_calls, 1);
        }
    }

    #[test]
    fn solution_is_linear_in_the_data(seed in 0u64..1_000_000, scale in -3.0f64..3.0) {
        prop_assume!(scale.abs() > 1e-3);
        let sys = common::random_system(seed);
        let mut scaled = sys.clone();
        scaled.rhs.iter_mut().for_each(|b| *b *= scale);
        let (u, _) = solve(&sys, Variant::BsReal, 1).unwrap();
        let (v, _) = solve(&scaled, Variant::BsReal, 1).unwrap();
        let diff: f64 = u.coefficients.iter().zip(&v.coefficients).map(|(a, b)| (a * scale - b).powi(2)).sum::<f64>().sqrt();
        prop_assert!(diff <= 1e-11 * v.norm().max(1e-300));
    }
}
