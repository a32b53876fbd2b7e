use std::sync::Arc;
use std::time::Instant;

use num_complex::Complex64;
use rayon::prelude::*;

use super::pencil::{PencilFactorization, PencilForm};
use super::report::{SolveReport, Variant};
use super::system::{SpaceTimeSolution, SpaceTimeSystem};
use super::{check_pencil, real_part_checked, residual, wrong_pencil};
use crate::dense::{complexify, CMatrix};
use crate::error::Result;
use crate::sparse::{analyze, analyze_calls, factorize};

/// Largest accepted `‖Im u‖ / ‖Re u‖`; looser than for Bartels-Stewart since
/// the back transform carries `κ₂(X)`.
pub const FD_IMAG_TOL: f64 = 1e-6;

/// Fast diagonalization with `P = X D X^{-1}`, `X = U Σ V*`.
///
/// With `Z = U X^{-ᵀ}` every column decouples: `(M_x + λ_k A_x) z_k = ĝ_k`.
/// The `N_t` shifted solves run concurrently on the current rayon pool,
/// each writing its own column.
pub fn solve_fd(sys: &SpaceTimeSystem, pencil: &PencilFactorization) -> Result<(SpaceTimeSolution, SolveReport)> {
    let PencilForm::EigenSvd { eig, y } = &pencil.form else {
        return Err(wrong_pencil("fd", pencil));
    };
    check_pencil(sys, pencil)?;
    let (m_x, n_t) = (sys.m_x(), sys.n_t());
    let calls_before = analyze_calls();

    let start = Instant::now();
    let g: CMatrix = complexify(&sys.rhs_matrix()) * y.transpose();
    let t_transform_in = start.elapsed().as_secs_f64();

    let start = Instant::now();
    let symbolic = Arc::new(analyze(&sys.mass));
    let columns: Vec<Vec<Complex64>> = (0..n_t)
        .into_par_iter()
        .map(|k| {
            let lambda = eig.d[k];
            let f = factorize(&symbolic, &sys.shifted(|m, a| Complex64::new(m, 0.0) + lambda * a))?;
            let mut col: Vec<Complex64> = g.column(k).iter().copied().collect();
            f.solve_in_place(&mut col);
            Ok(col)
        })
        .collect::<Result<_>>()?;
    let t_spatial = start.elapsed().as_secs_f64();

    let start = Instant::now();
    let z = CMatrix::from_fn(m_x, n_t, |i, k| columns[k][i]);
    let sigma = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(n_t, eig.sigma.iter().map(|&s| Complex64::new(s, 0.0))));
    let back = eig.v.conjugate() * sigma * eig.u.transpose();
    let (u, imaginary_ratio) = real_part_checked(&(z * back), FD_IMAG_TOL)?;
    let t_transform_out = start.elapsed().as_secs_f64();

    let solution = SpaceTimeSolution::new(u, m_x, n_t);
    let report = SolveReport {
        variant: Variant::Fd,
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
        sigma_min: Some(eig.sigma_min()),
        sigma_max: Some(eig.sigma_max()),
        kappa2: Some(eig.kappa2()),
        imaginary_ratio,
        threads: rayon::current_num_threads(),
        analyze_calls: analyze_calls() - calls_before,
    };
    Ok((solution, report))
}
