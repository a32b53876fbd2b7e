use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{complexify, CMatrix, DECOMPOSITION_RTOL};
use crate::error::{Error, Result};

/// `P = Q R Qᵀ` with `R` upper quasi-triangular.
///
/// Every 2x2 diagonal block is standardized to `[[α, b₁], [b₂, α]]` with
/// `b₁ b₂ < 0`, i.e. it carries the conjugate pair `α ± i sqrt(-b₁ b₂)`.
#[derive(Debug, Clone)]
pub struct RealSchurForm {
    pub q: DMatrix<f64>,
    pub r: DMatrix<f64>,
}

/// Diagonal block of a real Schur form, by starting index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SchurBlock {
    Real { k: usize, lambda: f64 },
    Pair { k: usize, alpha: f64, b1: f64, b2: f64 },
}

impl SchurBlock {
    pub fn eigenvalues(&self) -> Vec<Complex64> {
        match *self {
            SchurBlock::Real { lambda, .. } => vec![Complex64::new(lambda, 0.0)],
            SchurBlock::Pair { alpha, b1, b2, .. } => {
                let beta = (-b1 * b2).sqrt();
                vec![Complex64::new(alpha, beta), Complex64::new(alpha, -beta)]
            }
        }
    }
}

impl RealSchurForm {
    /// Diagonal blocks in increasing order of their first index.
    pub fn blocks(&self) -> Vec<SchurBlock> {
        let n = self.r.nrows();
        let mut out = Vec::new();
        let mut k = 0;
        while k < n {
            if k + 1 < n && self.r[(k + 1, k)] != 0.0 {
                out.push(SchurBlock::Pair {
                    k,
                    alpha: self.r[(k, k)],
                    b1: self.r[(k, k + 1)],
                    b2: self.r[(k + 1, k)],
                });
                k += 2;
            } else {
                out.push(SchurBlock::Real { k, lambda: self.r[(k, k)] });
                k += 1;
            }
        }
        out
    }

    pub fn eigenvalues(&self) -> Vec<Complex64> {
        self.blocks().iter().flat_map(|b| b.eigenvalues()).collect()
    }
}

/// `P = W S W*` with `S` upper triangular.
#[derive(Debug, Clone)]
pub struct ComplexSchurForm {
    pub w: CMatrix,
    pub s: CMatrix,
}

impl ComplexSchurForm {
    pub fn eigenvalues(&self) -> Vec<Complex64> {
        self.s.diagonal().iter().copied().collect()
    }
}

fn budget(n: usize) -> usize {
    100 * n.max(1)
}

/// Applies the rotation `G = [[c, -s], [s, c]]` in the plane `(k, k+1)`:
/// `R ← Gᵀ R G`, `Q ← Q G`.
fn rotate(r: &mut DMatrix<f64>, q: &mut DMatrix<f64>, k: usize, c: f64, s: f64) {
    let n = r.nrows();
    for j in 0..n {
        let (x, y) = (r[(k, j)], r[(k + 1, j)]);
        r[(k, j)] = c * x + s * y;
        r[(k + 1, j)] = -s * x + c * y;
    }
    for i in 0..n {
        let (x, y) = (r[(i, k)], r[(i, k + 1)]);
        r[(i, k)] = c * x + s * y;
        r[(i, k + 1)] = -s * x + c * y;
        let (x, y) = (q[(i, k)], q[(i, k + 1)]);
        q[(i, k)] = c * x + s * y;
        q[(i, k + 1)] = -s * x + c * y;
    }
}

/// Brings the 2x2 block at `k` into standard form: triangular when its
/// eigenvalues are real, equal diagonal entries otherwise.
fn standardize_block(r: &mut DMatrix<f64>, q: &mut DMatrix<f64>, k: usize) {
    let (a, b, c, d) = (r[(k, k)], r[(k, k + 1)], r[(k + 1, k)], r[(k + 1, k + 1)]);
    let p = 0.5 * (a - d);
    let disc = p * p + b * c;
    if disc >= 0.0 {
        // real pair: rotate the eigenvector of λ₁ = (a+d)/2 + sign(p) sqrt(disc) onto e₁
        let z = p + if p >= 0.0 { disc.sqrt() } else { -disc.sqrt() };
        let (x, y) = if z.abs() + c.abs() >= (z - 2.0 * p).abs() + b.abs() {
            (z, c)
        } else {
            (b, z - 2.0 * p)
        };
        let h = x.hypot(y);
        if h > 0.0 {
            rotate(r, q, k, x / h, y / h);
        }
        r[(k + 1, k)] = 0.0;
    } else {
        // diagonal difference of Gᵀ B G is (a-d) cos 2φ + (b+c) sin 2φ
        let phi = 0.5 * (-(a - d)).atan2(b + c);
        rotate(r, q, k, phi.cos(), phi.sin());
        let mean = 0.5 * (r[(k, k)] + r[(k + 1, k + 1)]);
        r[(k, k)] = mean;
        r[(k + 1, k + 1)] = mean;
    }
}

fn check_residual(residual: f64, scale: f64, what: &'static str) -> Result<()> {
    if residual > DECOMPOSITION_RTOL * scale {
        return Err(Error::ConvergenceFailure(what));
    }
    Ok(())
}

/// Real Schur decomposition with standardized 2x2 blocks.
pub fn real_schur(p: &DMatrix<f64>) -> Result<RealSchurForm> {
    if !p.is_square() {
        return Err(Error::DimensionMismatch("real_schur needs a square matrix".into()));
    }
    let n = p.nrows();
    let schur = nalgebra::linalg::Schur::try_new(p.clone(), f64::EPSILON, budget(n))
        .ok_or(Error::ConvergenceFailure("real Schur iteration"))?;
    let (mut q, mut r) = schur.unpack();

    let mut k = 0;
    while k < n {
        for i in k + 2..n {
            r[(i, k)] = 0.0;
        }
        if k + 1 < n {
            let sub = r[(k + 1, k)];
            let tiny = f64::EPSILON * (r[(k, k)].abs() + r[(k + 1, k + 1)].abs());
            if sub.abs() <= tiny {
                r[(k + 1, k)] = 0.0;
                k += 1;
                continue;
            }
            standardize_block(&mut r, &mut q, k);
            if r[(k + 1, k)] == 0.0 {
                k += 1;
                continue;
            }
            for i in k + 2..n {
                r[(i, k + 1)] = 0.0;
            }
            k += 2;
        } else {
            k += 1;
        }
    }

    let residual = (&q * &r * q.transpose() - p).norm();
    check_residual(residual, p.norm(), "real Schur residual")?;
    Ok(RealSchurForm { q, r })
}

/// Complex Schur decomposition of a real or complex matrix.
pub fn complex_schur(p: &CMatrix) -> Result<ComplexSchurForm> {
    if !p.is_square() {
        return Err(Error::DimensionMismatch("complex_schur needs a square matrix".into()));
    }
    let n = p.nrows();
    let schur = nalgebra::linalg::Schur::try_new(p.clone(), f64::EPSILON, budget(n))
        .ok_or(Error::ConvergenceFailure("complex Schur iteration"))?;
    let (w, mut s) = schur.unpack();
    for j in 0..n {
        for i in j + 1..n {
            s[(i, j)] = Complex64::new(0.0, 0.0);
        }
    }
    let residual = (&w * &s * w.adjoint() - p).norm();
    check_residual(residual, p.norm(), "complex Schur residual")?;
    Ok(ComplexSchurForm { w, s })
}

/// Complex Schur form of a real matrix.
pub fn complex_schur_from_real(p: &DMatrix<f64>) -> Result<ComplexSchurForm> {
    complex_schur(&complexify(p))
}
