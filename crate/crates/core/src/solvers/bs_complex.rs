use std::sync::Arc;
use std::time::Instant;

use num_complex::Complex64;

use super::pencil::{PencilFactorization, PencilForm};
use super::report::{SolveReport, Variant};
use super::system::{SpaceTimeSolution, SpaceTimeSystem};
use super::{check_pencil, real_part_checked, residual, wrong_pencil};
use crate::dense::{complexify, CMatrix};
use crate::error::Result;
use crate::sparse::{analyze, analyze_calls, factorize};

/// Largest accepted `‖Im u‖ / ‖Re u‖` after the back transform.
pub const BS_COMPLEX_IMAG_TOL: f64 = 1e-9;

/// Bartels-Stewart with the complex Schur form `P = W S W*`.
///
/// With `Z = U W̄`: `(M_x + S_kk A_x) z_k = ĝ_k - Σ_{j>k} S_kj A_x z_j`,
/// solved for `k = N_t..1` in complex symmetric arithmetic.
pub fn solve_bs_complex(sys: &SpaceTimeSystem, pencil: &PencilFactorization) -> Result<(SpaceTimeSolution, SolveReport)> {
    let PencilForm::ComplexSchur { schur, y } = &pencil.form else {
        return Err(wrong_pencil("bs-complex", pencil));
    };
    check_pencil(sys, pencil)?;
    let (m_x, n_t) = (sys.m_x(), sys.n_t());
    let calls_before = analyze_calls();
    let s = &schur.s;

    let start = Instant::now();
    let mut g: CMatrix = complexify(&sys.rhs_matrix()) * y.transpose();
    let t_transform_in = start.elapsed().as_secs_f64();

    let start = Instant::now();
    let symbolic = Arc::new(analyze(&sys.mass));
    let mut z = CMatrix::zeros(m_x, n_t);
    let mut w = vec![Complex64::new(0.0, 0.0); m_x];
    for k in (0..n_t).rev() {
        let lambda = s[(k, k)];
        let f = factorize(&symbolic, &sys.shifted(|m, a| Complex64::new(m, 0.0) + lambda * a))?;
        let mut col: Vec<Complex64> = g.column(k).iter().copied().collect();
        f.solve_in_place(&mut col);
        sys.stiffness.mul_vec_into(&col, &mut w);
        for j in 0..k {
            let coeff = s[(j, k)];
            g.column_mut(j).iter_mut().zip(&w).for_each(|(gj, wi)| *gj -= coeff * wi);
        }
        z.column_mut(k).copy_from_slice(&col);
    }
    let t_spatial = start.elapsed().as_secs_f64();

    let start = Instant::now();
    let u = z * schur.w.transpose();
    let (u, imaginary_ratio) = real_part_checked(&u, BS_COMPLEX_IMAG_TOL)?;
    let t_transform_out = start.elapsed().as_secs_f64();

    let solution = SpaceTimeSolution::new(u, m_x, n_t);
    let report = SolveReport {
        variant: Variant::BsComplex,
        pencil: pencil.variant(),
        fallback: None,
        dof: sys.dof(),
        n_t,
        m_x,
        t_decomp: pencil.seconds,
        t_transform_in,
        t_spatial,
        t_transform_out,
        residual: residual(sys, &solution),
        min_re_lambda: pencil.min_re_lambda(),
        sigma_min: None,
        sigma_max: None,
        kappa2: None,
        imaginary_ratio,
        threads: rayon::current_num_threads(),
        analyze_calls: analyze_calls() - calls_before,
    };
    Ok((solution, report))
}
