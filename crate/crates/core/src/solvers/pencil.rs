use std::time::Instant;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::dense::{
    chol_solve, cholesky, complexify, eig_pencil, real_schur, CMatrix, ComplexSchurForm, EigenSvdForm, RealSchurForm,
};
use crate::error::Result;
use crate::temporal::TemporalOperators;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PencilVariant {
    RealSchur,
    ComplexSchur,
    EigenSvd,
}

/// Decomposition of `P = A_t^{-1} M_t` and the left transform `Y` with
/// `Y A_t X = I` for the right basis `X` of the variant (`Q`, `W` or the
/// eigenvectors).
#[derive(Debug, Clone)]
pub enum PencilForm {
    /// `y = Qᵀ A_t^{-1}`.
    RealSchur { schur: RealSchurForm, y: DMatrix<f64> },
    /// `y = W* A_t^{-1}`.
    ComplexSchur { schur: ComplexSchurForm, y: CMatrix },
    /// `y = V Σ^{-1} U* A_t^{-1}`.
    EigenSvd { eig: EigenSvdForm, y: CMatrix },
}

#[derive(Debug, Clone)]
pub struct PencilFactorization {
    pub form: PencilForm,
    pub eigenvalues: Vec<Complex64>,
    /// Wall time of the Cholesky factorization, the decomposition and `Y`.
    pub seconds: f64,
}

impl PencilFactorization {
    pub fn variant(&self) -> PencilVariant {
        match self.form {
            PencilForm::RealSchur { .. } => PencilVariant::RealSchur,
            PencilForm::ComplexSchur { .. } => PencilVariant::ComplexSchur,
            PencilForm::EigenSvd { .. } => PencilVariant::EigenSvd,
        }
    }

    pub fn n_t(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn min_re_lambda(&self) -> f64 {
        self.eigenvalues.iter().map(|z| z.re).fold(f64::INFINITY, f64::min)
    }
}

/// `A_t^{-1} M_t` through the Cholesky factor of `A_t`.
pub fn pencil_matrix(temp: &TemporalOperators) -> Result<DMatrix<f64>> {
    let l = cholesky(&temp.a)?;
    chol_solve(&l, &temp.m)
}

pub fn build_pencil(temp: &TemporalOperators, variant: PencilVariant) -> Result<PencilFactorization> {
    let start = Instant::now();
    let l = cholesky(&temp.a)?;
    let p = chol_solve(&l, &temp.m)?;
    let a_inv = chol_solve(&l, &DMatrix::identity(temp.n_t(), temp.n_t()))?;
    let (form, eigenvalues) = match variant {
        PencilVariant::RealSchur => {
            let schur = real_schur(&p)?;
            // A_t^{-1} is symmetric, so Qᵀ A_t^{-1} = (A_t^{-1} Q)ᵀ
            let y = chol_solve(&l, &schur.q)?.transpose();
            let eigenvalues = schur.eigenvalues();
            (PencilForm::RealSchur { schur, y }, eigenvalues)
        }
        PencilVariant::ComplexSchur => {
            let schur = crate::dense::complex_schur_from_real(&p)?;
            let y = schur.w.adjoint() * complexify(&a_inv);
            let eigenvalues = schur.eigenvalues();
            (PencilForm::ComplexSchur { schur, y }, eigenvalues)
        }
        PencilVariant::EigenSvd => {
            let eig = eig_pencil(&p, &temp.a)?;
            let sigma_inv = DVector::from_iterator(eig.sigma.len(), eig.sigma.iter().map(|s| Complex64::new(1.0 / s, 0.0)));
            let y = &eig.v * CMatrix::from_diagonal(&sigma_inv) * eig.u.adjoint() * complexify(&a_inv);
            let eigenvalues = eig.d.clone();
            (PencilForm::EigenSvd { eig, y }, eigenvalues)
        }
    };
    Ok(PencilFactorization { form, eigenvalues, seconds: start.elapsed().as_secs_f64() })
}
