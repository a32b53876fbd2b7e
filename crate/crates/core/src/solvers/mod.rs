//! Direct solvers for `(A_t ⊗ M_x + M_t ⊗ A_x) u = f`.
//!
//! All three reduce the temporal pencil `P = A_t^{-1} M_t` and then solve
//! one shifted spatial system per temporal degree of freedom:
//!
//! * [`solve_bs_real`]: real Schur form, back substitution, real arithmetic
//!   with symmetric indefinite `2M_x` systems for conjugate pairs;
//! * [`solve_bs_complex`]: complex Schur form, back substitution;
//! * [`solve_fd`]: eigendecomposition, `N_t` independent solves in parallel.
//!
//! Each solve performs exactly one symbolic analysis of the spatial
//! pattern. [`solve_dense_oracle`] forms the Kronecker matrix explicitly for
//! small checks.

mod bs_complex;
mod bs_real;
mod fd;
mod pencil;
mod report;
mod study;
mod system;

pub use bs_complex::{solve_bs_complex, BS_COMPLEX_IMAG_TOL};
pub use bs_real::solve_bs_real;
pub use fd::{solve_fd, FD_IMAG_TOL};
pub use pencil::{build_pencil, pencil_matrix, PencilFactorization, PencilForm, PencilVariant};
pub use report::{SolveReport, Variant};
pub use study::{eig_study, SpectralRow};
pub use system::{SpaceTimeSolution, SpaceTimeSystem};

use nalgebra::DMatrix;

use crate::dense::{kron, kron_apply_right, CMatrix};
use crate::error::{Error, Result};

/// Largest system handed to [`solve_dense_oracle`].
pub const DENSE_ORACLE_LIMIT: usize = 5000;

fn wrong_pencil(solver: &str, pencil: &PencilFactorization) -> Error {
    Error::Usage(format!("{solver} cannot use a {:?} pencil", pencil.variant()))
}

fn check_pencil(sys: &SpaceTimeSystem, pencil: &PencilFactorization) -> Result<()> {
    if pencil.n_t() != sys.n_t() {
        return Err(Error::DimensionMismatch(format!("pencil of size {} for N_t = {}", pencil.n_t(), sys.n_t())));
    }
    Ok(())
}

/// Real part of a back-transformed solution, rejected when the discarded
/// imaginary part is not negligible.
fn real_part_checked(u: &CMatrix, tol: f64) -> Result<(Vec<f64>, f64)> {
    let re: Vec<f64> = u.iter().map(|z| z.re).collect();
    let norm_re = re.iter().map(|v| v * v).sum::<f64>().sqrt();
    let norm_im = u.iter().map(|z| z.im * z.im).sum::<f64>().sqrt();
    let ratio = if norm_im == 0.0 { 0.0 } else { norm_im / norm_re };
    if !(ratio <= tol) {
        return Err(Error::ImaginaryResidueTooLarge { ratio, tol });
    }
    Ok((re, ratio))
}

/// `K u` through two matrix-free Kronecker actions,
/// `vec(M_x U A_tᵀ) + vec(A_x U M_tᵀ)`.
pub fn apply_system(sys: &SpaceTimeSystem, u: &[f64]) -> Vec<f64> {
    let m_x = sys.m_x();
    let t = &sys.temporal;
    assert_eq!(u.len(), sys.dof(), "vector length");
    let mass = kron_apply_right(&t.a.transpose(), m_x, |x, y| sys.mass.mul_vec_into(x, y), u).expect("dimensions checked");
    let stiff = kron_apply_right(&t.m.transpose(), m_x, |x, y| sys.stiffness.mul_vec_into(x, y), u).expect("dimensions checked");
    mass.iter().zip(&stiff).map(|(a, b)| a + b).collect()
}

/// `‖K u - f‖₂ / ‖f‖₂`, or the absolute residual for `f = 0`.
///
/// Panics if the solution does not fit the system.
pub fn residual(sys: &SpaceTimeSystem, sol: &SpaceTimeSolution) -> f64 {
    let ku = apply_system(sys, &sol.coefficients);
    let res = ku.iter().zip(&sys.rhs).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
    let scale = sys.rhs.iter().map(|b| b * b).sum::<f64>().sqrt();
    if scale == 0.0 {
        res
    } else {
        res / scale
    }
}

/// Explicit `K = A_t ⊗ M_x + M_t ⊗ A_x`.
pub fn dense_system_matrix(sys: &SpaceTimeSystem) -> DMatrix<f64> {
    let t = &sys.temporal;
    kron(&t.a, &sys.mass.to_dense()) + kron(&t.m, &sys.stiffness.to_dense())
}

/// Dense LU with partial pivoting on the explicit Kronecker matrix.
pub fn solve_dense_oracle(sys: &SpaceTimeSystem) -> Result<SpaceTimeSolution> {
    let n = sys.dof();
    if n > DENSE_ORACLE_LIMIT {
        return Err(Error::SizeGuardExceeded { n, limit: DENSE_ORACLE_LIMIT });
    }
    let k = dense_system_matrix(sys);
    let f = nalgebra::DVector::from_column_slice(&sys.rhs);
    let u = k.lu().solve(&f).ok_or(Error::SingularMatrix { column: 0, pivot: 0.0, threshold: 0.0 })?;
    Ok(SpaceTimeSolution::new(u.as_slice().to_vec(), sys.m_x(), sys.n_t()))
}

/// Runs `f` on a pool of `threads` workers (`0` keeps the current pool).
pub fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    if threads == 0 {
        return Ok(f());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Usage(format!("cannot start {threads} worker threads: {e}")))?;
    Ok(pool.install(f))
}

/// Builds the pencil for `variant` and solves. Fast diagonalization falls
/// back to complex Bartels-Stewart on a defective pencil or an imaginary
/// residue above tolerance; the report records the reason.
pub fn solve(sys: &SpaceTimeSystem, variant: Variant, threads: usize) -> Result<(SpaceTimeSolution, SolveReport)> {
    with_threads(threads, || match variant {
        Variant::BsReal => solve_bs_real(sys, &build_pencil(&sys.temporal, PencilVariant::RealSchur)?),
        Variant::BsComplex => solve_bs_complex(sys, &build_pencil(&sys.temporal, PencilVariant::ComplexSchur)?),
        Variant::Fd => {
            let attempt = build_pencil(&sys.temporal, PencilVariant::EigenSvd).and_then(|p| solve_fd(sys, &p));
            match attempt {
                Err(e @ (Error::DefectivePencil { .. } | Error::ImaginaryResidueTooLarge { .. })) => {
                    let pencil = build_pencil(&sys.temporal, PencilVariant::ComplexSchur)?;
                    let (sol, mut report) = solve_bs_complex(sys, &pencil)?;
                    report.variant = Variant::Fd;
                    report.fallback = Some(e.to_string());
                    Ok((sol, report))
                }
                other => other,
            }
        }
    })?
}
