use std::sync::Arc;
use std::time::Instant;

use nalgebra::DMatrix;

use super::pencil::{PencilFactorization, PencilForm};
use super::report::{SolveReport, Variant};
use super::system::{SpaceTimeSolution, SpaceTimeSystem};
use super::{check_pencil, residual, wrong_pencil};
use crate::dense::SchurBlock;
use crate::error::Result;
use crate::sparse::{analyze, analyze_calls, factorize, Block2, Pair};

/// Bartels-Stewart with the real Schur form `P = Q R Qᵀ`.
///
/// With `Z = U Q` the system becomes `M_x Z + A_x Z Rᵀ = F A_t^{-1} Q`, and
/// the columns of `Z` follow by back substitution over the diagonal blocks
/// of `R`. A 2x2 block `[[α, b₁], [b₂, α]]` couples two columns; it is solved
/// as the symmetric indefinite `2M_x` system
///
/// ```text
/// [ |b₂|(M + αA)   -b₁|b₂| A   ] [  z₁ ]   [ |b₂| r₁ ]
/// [ |b₁|b₂ A       -|b₁|(M + αA)] [ -z₂ ] = [ |b₁| r₂ ]
/// ```
///
/// with 2x2 blocks per spatial node.
pub fn solve_bs_real(sys: &SpaceTimeSystem, pencil: &PencilFactorization) -> Result<(SpaceTimeSolution, SolveReport)> {
    let PencilForm::RealSchur { schur, y } = &pencil.form else {
        return Err(wrong_pencil("bs-real", pencil));
    };
    check_pencil(sys, pencil)?;
    let (m_x, n_t) = (sys.m_x(), sys.n_t());
    let calls_before = analyze_calls();
    let r = &schur.r;

    let start = Instant::now();
    let mut g: DMatrix<f64> = sys.rhs_matrix() * y.transpose();
    let t_transform_in = start.elapsed().as_secs_f64();

    let start = Instant::now();
    let symbolic = Arc::new(analyze(&sys.mass));
    let mut z = DMatrix::<f64>::zeros(m_x, n_t);
    let mut w = vec![0.0; m_x];
    for block in schur.blocks().into_iter().rev() {
        let (k, width) = match block {
            SchurBlock::Real { k, lambda } => {
                let f = factorize(&symbolic, &sys.shifted(|m, a| m + lambda * a))?;
                let mut col: Vec<f64> = g.column(k).iter().copied().collect();
                f.solve_in_place(&mut col);
                z.column_mut(k).copy_from_slice(&col);
                (k, 1)
            }
            SchurBlock::Pair { k, alpha, b1, b2 } => {
                let (s1, s2) = (b1.abs(), b2.abs());
                let matrix = sys.shifted(|m, a| {
                    let d = m + alpha * a;
                    Block2::new(s2 * d, -b1 * s2 * a, s1 * b2 * a, -s1 * d)
                });
                let f = factorize(&symbolic, &matrix)?;
                let mut rhs: Vec<Pair> = (0..m_x).map(|i| Pair([s2 * g[(i, k)], s1 * g[(i, k + 1)]])).collect();
                f.solve_in_place(&mut rhs);
                for (i, p) in rhs.iter().enumerate() {
                    z[(i, k)] = p.0[0];
                    z[(i, k + 1)] = -p.0[1];
                }
                (k, 2)
            }
        };
        // running update of the earlier right-hand sides
        for j in k..k + width {
            sys.stiffness.mul_vec_into(z.column(j).as_slice(), &mut w);
            for i in 0..k {
                let coeff = r[(i, j)];
                if coeff != 0.0 {
                    g.column_mut(i).iter_mut().zip(&w).for_each(|(gi, wi)| *gi -= coeff * wi);
                }
            }
        }
    }
    let t_spatial = start.elapsed().as_secs_f64();

    let start = Instant::now();
    let u = z * schur.q.transpose();
    let t_transform_out = start.elapsed().as_secs_f64();

    let solution = SpaceTimeSolution::new(u.as_slice().to_vec(), m_x, n_t);
    let report = SolveReport {
        variant: Variant::BsReal,
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
        imaginary_ratio: 0.0,
        threads: rayon::current_num_threads(),
        analyze_calls: analyze_calls() - calls_before,
    };
    Ok((solution, report))
}
