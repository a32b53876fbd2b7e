use nalgebra::DMatrix;
use num_complex::Complex64;

use super::schur::{complex_schur_from_real, real_schur, SchurBlock};
use super::CMatrix;
use crate::error::{Error, Result};

/// Eigendecomposition `P X = X diag(d)` together with the SVD
/// `X = U diag(sigma) V*`.
///
/// Each eigenvector is scaled so that its largest component has
/// `|re| + |im| = 1`.
#[derive(Debug, Clone)]
pub struct EigenSvdForm {
    pub x: CMatrix,
    pub d: Vec<Complex64>,
    pub u: CMatrix,
    /// Nonincreasing.
    pub sigma: Vec<f64>,
    pub v: CMatrix,
}

impl EigenSvdForm {
    pub fn sigma_max(&self) -> f64 {
        self.sigma[0]
    }

    pub fn sigma_min(&self) -> f64 {
        *self.sigma.last().unwrap()
    }

    /// Spectral condition number of `X`.
    pub fn kappa2(&self) -> f64 {
        self.sigma_max() / self.sigma_min()
    }
}

const EIGVEC_RTOL: f64 = 1e-10;

fn l1_abs(z: Complex64) -> f64 {
    z.re.abs() + z.im.abs()
}

fn schur_eigenvectors(p: &DMatrix<f64>) -> Result<(CMatrix, Vec<Complex64>)> {
    let n = p.nrows();
    let schur = complex_schur_from_real(p)?;
    let s = &schur.s;
    let small = f64::EPSILON * s.norm().max(f64::MIN_POSITIVE);

    let mut y = CMatrix::zeros(n, n);
    for k in 0..n {
        let lambda = s[(k, k)];
        y[(k, k)] = Complex64::new(1.0, 0.0);
        for j in (0..k).rev() {
            let mut acc = Complex64::new(0.0, 0.0);
            for i in j + 1..=k {
                acc += s[(j, i)] * y[(i, k)];
            }
            let mut denom = s[(j, j)] - lambda;
            if denom.norm() < small {
                denom = Complex64::new(small, 0.0);
            }
            y[(j, k)] = -acc / denom;
        }
    }
    Ok((&schur.w * y, schur.eigenvalues()))
}

fn finish(p: &DMatrix<f64>, mut x: CMatrix, d: Vec<Complex64>) -> Result<EigenSvdForm> {
    let n = p.nrows();
    for k in 0..n {
        let big = x.column(k).iter().copied().map(l1_abs).fold(0.0, f64::max);
        x.column_mut(k).scale_mut(1.0 / big);
    }

    let pc = super::complexify(p);
    let residual = (&pc * &x - &x * CMatrix::from_diagonal(&nalgebra::DVector::from_vec(d.clone()))).norm();
    let tol = EIGVEC_RTOL * p.norm() * x.norm();
    if !(residual <= tol) {
        return Err(Error::DefectivePencil { residual, tol });
    }

    let (u, sigma, v) = svd(&x)?;
    // numerically dependent eigenvectors
    let floor = n as f64 * f64::EPSILON * sigma[0];
    if !(sigma[n - 1] > floor) {
        return Err(Error::DefectivePencil { residual: sigma[n - 1], tol: floor });
    }
    Ok(EigenSvdForm { x, d, u, sigma, v })
}

/// Right eigenvectors of a real matrix, with the SVD of the eigenvector
/// matrix. Eigenvectors come from back substitution on the complex Schur form.
pub fn eig_nonsymmetric(p: &DMatrix<f64>) -> Result<EigenSvdForm> {
    let (x, d) = schur_eigenvectors(p)?;
    finish(p, x, d)
}

/// Eigenvectors of the pencil `(M, A)` through `P = A⁻¹ M`, with the
/// phase of every conjugate pair fixed the way LAPACK's generalized
/// eigensolver fixes it.
///
/// The scaling of a complex eigenvector is only determined up to a unit
/// factor, and `kappa2` depends on it. Here the real and imaginary parts
/// of all eigenvectors, in real Schur order, are orthonormalized into `Z`;
/// for each pair the 2x2 diagonal block of `R` in `A Z = Q R` gives, via its
/// right singular vectors, a basis in which the component of smaller
/// modulus ratio is made real and positive.
pub fn eig_pencil(p: &DMatrix<f64>, a: &DMatrix<f64>) -> Result<EigenSvdForm> {
    let n = p.nrows();
    if a.shape() != p.shape() {
        return Err(Error::DimensionMismatch("eig_pencil needs matching square matrices".into()));
    }
    let (mut x, d) = schur_eigenvectors(p)?;

    // columns of x per real Schur block: (j, Some(conjugate)) for pairs
    let mut used = vec![false; n];
    let nearest = |target: Complex64, used: &mut Vec<bool>| {
        let j = (0..n)
            .filter(|&j| !used[j])
            .min_by(|&i, &j| (d[i] - target).norm().total_cmp(&(d[j] - target).norm()))
            .expect("as many eigenvalues as blocks");
        used[j] = true;
        j
    };
    let mut items = Vec::new();
    for block in real_schur(p)?.blocks() {
        match block {
            SchurBlock::Real { lambda, .. } => items.push((nearest(Complex64::new(lambda, 0.0), &mut used), None)),
            SchurBlock::Pair { .. } => {
                let ev = block.eigenvalues();
                let j = nearest(ev[0], &mut used);
                let jc = nearest(ev[1], &mut used);
                items.push((j, Some(jc)));
            }
        }
    }

    let mut basis = DMatrix::<f64>::zeros(n, n);
    let mut col = 0;
    for &(j, jc) in &items {
        basis.set_column(col, &x.column(j).map(|z| z.re));
        col += 1;
        if jc.is_some() {
            basis.set_column(col, &x.column(j).map(|z| z.im));
            col += 1;
        }
    }
    let z = basis.qr().q();
    let r = (a * &z).qr().r();

    let mut pos = 0;
    for &(j, jc) in &items {
        let Some(jc) = jc else {
            pos += 1;
            continue;
        };
        let t = r.view((pos, pos), (2, 2)).into_owned();
        let vt = right_singular_vectors(&t);
        let zb = z.columns(pos, 2) * vt.transpose();
        let c: Vec<Complex64> = (0..2)
            .map(|i| zb.column(i).iter().zip(x.column(j).iter()).map(|(&a, &b)| b * a).sum())
            .collect();
        let ratio = c[0] / c[1];
        let reference = if l1_abs(ratio) <= 1.0 { c[1] } else { c[0] };
        let phase = reference.norm() / reference;
        let col_j = x.column(j) * phase;
        x.set_column(j, &col_j);
        x.set_column(jc, &col_j.map(|z| z.conj()));
        pos += 2;
    }
    finish(p, x, d)
}

/// Rows are the right singular vectors of a 2x2 matrix, largest singular
/// value first.
fn right_singular_vectors(t: &DMatrix<f64>) -> nalgebra::Matrix2<f64> {
    let g = t.transpose() * t;
    let eig = nalgebra::Matrix2::new(g[(0, 0)], g[(0, 1)], g[(1, 0)], g[(1, 1)]).symmetric_eigen();
    let (hi, lo) = if eig.eigenvalues[0] >= eig.eigenvalues[1] { (0, 1) } else { (1, 0) };
    let v1 = eig.eigenvectors.column(hi);
    let v2 = eig.eigenvectors.column(lo);
    nalgebra::Matrix2::new(v1[0], v1[1], v2[0], v2[1])
}

/// `X = U diag(sigma) V*` with nonincreasing `sigma`.
pub fn svd(x: &CMatrix) -> Result<(CMatrix, Vec<f64>, CMatrix)> {
    let n = x.ncols();
    let dec = nalgebra::linalg::SVD::try_new(x.clone(), true, true, f64::EPSILON, 100 * n.max(1))
        .ok_or(Error::ConvergenceFailure("singular value iteration"))?;
    let u = dec.u.ok_or(Error::ConvergenceFailure("singular vectors"))?;
    let v = dec.v_t.ok_or(Error::ConvergenceFailure("singular vectors"))?.adjoint();
    let mut order: Vec<usize> = (0..dec.singular_values.len()).collect();
    order.sort_by(|&a, &b| dec.singular_values[b].total_cmp(&dec.singular_values[a]));
    let sigma: Vec<f64> = order.iter().map(|&i| dec.singular_values[i]).collect();
    let u = CMatrix::from_fn(u.nrows(), order.len(), |r, c| u[(r, order[c])]);
    let v = CMatrix::from_fn(v.nrows(), order.len(), |r, c| v[(r, order[c])]);
    Ok((u, sigma, v))
}
