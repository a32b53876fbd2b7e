//! Sine/cosine coefficient tables of the hat functions and the series
//! assembly of the temporal matrices.
//!
//! With `s_m = sin(θ τ_m)`, `c_m = cos(θ τ_m)`, `τ_m = t_m / T`, the
//! coefficients are second differences of `s` and `c` divided by `θ²`. All
//! three matrices are sums over `j` of products of these coefficients; in
//! kernel form they read
//!
//! ```text
//! A = 2T² D S₃ Dᵀ,   M = 2T³ D S₄ Dᵀ + 2T² (D S₃ e_N) e_Nᵀ,   C = 2T² D S₃ Eᵀ
//! ```
//!
//! with `S₃[m,n] = Σ θ^{-3} s_m s_n`, `S₄[m,n] = Σ θ^{-4} s_m c_n`, `D` the
//! (negated) jumps of the hat derivatives and `E` the element difference
//! operator. The kernel form is used only for the tail `j > j_max`.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use rayon::prelude::*;

use super::tail::tail_sum;
use super::TemporalMesh;
use crate::error::{Error, Result};

/// Relative accuracy demanded of every tail expansion.
const TAIL_RTOL: f64 = 1e-9;

/// How the series beyond `j_max` is treated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailModel {
    /// Plain truncation after `j_max`.
    Truncated,
    /// Add the asymptotic expansion of the remainder.
    Asymptotic,
}

#[inline]
fn theta(j: usize) -> f64 {
    PI * (j as f64 + 0.5)
}

/// `a[i][j] = (2/T) ∫ φ_i(t) sin(θ_j t/T) dt` for every degree of freedom `i`
/// (node `t_{i+1}`) and `j = 0..=j_max`.
#[derive(Debug, Clone)]
pub struct SineCoefficientTable {
    mesh: TemporalMesh,
    j_max: usize,
    values: Vec<f64>,
}

/// `b[i][j] = ∫ φ_i(t) cos(θ_j t/T) dt`.
#[derive(Debug, Clone)]
pub struct CosineCoefficientTable {
    j_max: usize,
    values: Vec<f64>,
}

/// `(s_l - s_{l-1}) / h_l` for every element, or the cosine analogue.
/// Differences are formed as products so small elements keep full accuracy.
fn element_slopes(mesh: &TemporalMesh, j: usize, cosine: bool, out: &mut [f64]) {
    let t_end = mesh.end_time();
    let th = theta(j);
    let nodes = mesh.nodes();
    for l in 1..nodes.len() {
        let (ta, tb) = (nodes[l - 1] / t_end, nodes[l] / t_end);
        let mid = 0.5 * th * (ta + tb);
        let half = (0.5 * th * (tb - ta)).sin();
        let diff = if cosine { -2.0 * mid.sin() * half } else { 2.0 * mid.cos() * half };
        out[l - 1] = diff / (nodes[l] - nodes[l - 1]);
    }
}

impl SineCoefficientTable {
    pub fn new(mesh: &TemporalMesh, j_max: usize) -> Self {
        let n = mesh.n_elements();
        let t_end = mesh.end_time();
        let width = j_max + 1;
        let mut values = vec![0.0; n * width];
        let mut slopes = vec![0.0; n];
        for j in 0..width {
            element_slopes(mesh, j, false, &mut slopes);
            let scale = 2.0 * t_end / (theta(j) * theta(j));
            for i in 0..n {
                let right = if i + 1 < n { slopes[i + 1] } else { 0.0 };
                values[i * width + j] = scale * (slopes[i] - right);
            }
        }
        Self { mesh: mesh.clone(), j_max, values }
    }

    pub fn mesh(&self) -> &TemporalMesh {
        &self.mesh
    }

    pub fn j_max(&self) -> usize {
        self.j_max
    }

    pub fn n_t(&self) -> usize {
        self.mesh.n_elements()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * (self.j_max + 1) + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        let w = self.j_max + 1;
        &self.values[i * w..(i + 1) * w]
    }
}

impl CosineCoefficientTable {
    pub fn new(mesh: &TemporalMesh, j_max: usize) -> Self {
        let n = mesh.n_elements();
        let t_end = mesh.end_time();
        let width = j_max + 1;
        let mut values = vec![0.0; n * width];
        let mut slopes = vec![0.0; n];
        for j in 0..width {
            element_slopes(mesh, j, true, &mut slopes);
            let th = theta(j);
            let scale = t_end * t_end / (th * th);
            for i in 0..n {
                let right = if i + 1 < n { slopes[i + 1] } else { 0.0 };
                let mut b = scale * (slopes[i] - right);
                if i + 1 == n {
                    // boundary term of the hat that is cut off at T; sin θ_j = (-1)^j
                    let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                    b += sign * t_end / th;
                }
                values[i * width + j] = b;
            }
        }
        Self { j_max, values }
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * (self.j_max + 1) + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        let w = self.j_max + 1;
        &self.values[i * w..(i + 1) * w]
    }
}

/// `Σ_{j=j_max..0} w_j x_j y_j`, smallest terms first.
#[inline]
fn descending_dot(x: &[f64], y: &[f64], w: impl Fn(usize) -> f64) -> f64 {
    let mut s = 0.0;
    for j in (0..x.len()).rev() {
        s += w(j) * x[j] * y[j];
    }
    s
}

/// Dense matrix whose entry `(r, c)` is `f(r, c)`, rows in parallel.
fn par_matrix(rows: usize, cols: usize, f: impl Fn(usize, usize) -> f64 + Sync) -> DMatrix<f64> {
    let data: Vec<Vec<f64>> = (0..rows)
        .into_par_iter()
        .map(|r| (0..cols).map(|c| f(r, c)).collect())
        .collect();
    DMatrix::from_fn(rows, cols, |r, c| data[r][c])
}

/// Tail kernels on the node set `τ_0..τ_N` for the terms `j > j_max`.
struct TailKernels {
    /// `Σ θ^{-3} s_m s_n`
    s3: DMatrix<f64>,
    e3: DMatrix<f64>,
    /// `Σ θ^{-4} s_m c_n`
    s4: DMatrix<f64>,
    e4: DMatrix<f64>,
    /// `D` and `|D|`
    d: DMatrix<f64>,
    d_abs: DMatrix<f64>,
}

impl TailKernels {
    fn new(mesh: &TemporalMesh, j_max: usize, both: bool) -> Result<Self> {
        let t_end = mesh.end_time();
        let tau: Vec<f64> = mesh.nodes().iter().map(|t| t / t_end).collect();
        let np = tau.len();
        let n0 = j_max + 1;

        let eval = |p: u32, y: f64| -> Result<(f64, f64, f64)> {
            let t = tail_sum(p, n0, y);
            if t.error > TAIL_RTOL * t.scale {
                return Err(Error::TruncationBudgetExceeded {
                    j_max,
                    tol: TAIL_RTOL,
                    estimate: t.error / t.scale,
                });
            }
            Ok((t.value.re, t.value.im, t.error))
        };

        let mut s3 = DMatrix::zeros(np, np);
        let mut e3 = DMatrix::zeros(np, np);
        let mut s4 = DMatrix::zeros(np, np);
        let mut e4 = DMatrix::zeros(np, np);
        for m in 0..np {
            for n in 0..np {
                let (dm, dp) = (tau[m] - tau[n], tau[m] + tau[n]);
                if n >= m {
                    let (rm, _, em) = eval(3, dm)?;
                    let (rp, _, ep) = eval(3, dp)?;
                    s3[(m, n)] = 0.5 * (rm - rp);
                    s3[(n, m)] = s3[(m, n)];
                    e3[(m, n)] = 0.5 * (em + ep);
                    e3[(n, m)] = e3[(m, n)];
                }
                if both {
                    let (_, im, em) = eval(4, dm)?;
                    let (_, ip, ep) = eval(4, dp)?;
                    s4[(m, n)] = 0.5 * (ip + im);
                    e4[(m, n)] = 0.5 * (ep + em);
                }
            }
        }

        let nt = np - 1;
        let mut d = DMatrix::zeros(nt, np);
        for i in 0..nt {
            let l = i + 1;
            let hl = mesh.h(l);
            d[(i, l - 1)] = -1.0 / hl;
            d[(i, l)] = 1.0 / hl;
            if l < nt {
                let hn = mesh.h(l + 1);
                d[(i, l)] += 1.0 / hn;
                d[(i, l + 1)] = -1.0 / hn;
            }
        }
        let d_abs = d.abs();
        Ok(Self { s3, e3, s4, e4, d, d_abs })
    }
}

pub(crate) fn temporal_a(coeffs: &SineCoefficientTable, tail: TailModel) -> Result<(DMatrix<f64>, f64)> {
    let n = coeffs.n_t();
    let upper = par_matrix(n, n, |l, k| {
        if k < l {
            0.0
        } else {
            0.5 * descending_dot(coeffs.row(l), coeffs.row(k), theta)
        }
    });
    let mut a = DMatrix::from_fn(n, n, |l, k| if k >= l { upper[(l, k)] } else { upper[(k, l)] });
    let mut err = 0.0;
    if tail == TailModel::Asymptotic {
        let t_end = coeffs.mesh().end_time();
        let ker = TailKernels::new(coeffs.mesh(), coeffs.j_max(), false)?;
        let w = 2.0 * t_end * t_end;
        let corr = &ker.d * &ker.s3 * ker.d.transpose() * w;
        // exact symmetry
        let corr = (&corr + corr.transpose()) * 0.5;
        a += corr;
        err = (&ker.d_abs * &ker.e3 * ker.d_abs.transpose() * w).max();
    }
    Ok((a, err))
}

pub(crate) fn temporal_m(coeffs: &SineCoefficientTable, tail: TailModel) -> Result<(DMatrix<f64>, f64)> {
    let n = coeffs.n_t();
    let cos = CosineCoefficientTable::new(coeffs.mesh(), coeffs.j_max());
    let mut m = par_matrix(n, n, |l, k| descending_dot(coeffs.row(l), cos.row(k), |_| 1.0));
    let mut err = 0.0;
    if tail == TailModel::Asymptotic {
        let t_end = coeffs.mesh().end_time();
        let ker = TailKernels::new(coeffs.mesh(), coeffs.j_max(), true)?;
        let w3 = 2.0 * t_end * t_end;
        let w4 = w3 * t_end;
        m += &ker.d * &ker.s4 * ker.d.transpose() * w4;
        let ds3 = &ker.d * ker.s3.column(n);
        let mut last = m.column_mut(n - 1);
        last += ds3 * w3;
        let mut e = &ker.d_abs * &ker.e4 * ker.d_abs.transpose() * w4;
        let de3 = &ker.d_abs * ker.e3.column(n) * w3;
        let mut elast = e.column_mut(n - 1);
        elast += de3;
        err = e.max();
    }
    Ok((m, err))
}

pub(crate) fn temporal_c(coeffs: &SineCoefficientTable, tail: TailModel) -> Result<(DMatrix<f64>, f64)> {
    let n = coeffs.n_t();
    let mesh = coeffs.mesh();
    let t_end = mesh.end_time();
    let width = coeffs.j_max() + 1;
    // e[l][j] = ∫_{cell l} cos(θ_j t/T) dt
    let mut cells = vec![0.0; n * width];
    let mut slopes = vec![0.0; n];
    for j in 0..width {
        element_slopes(mesh, j, false, &mut slopes);
        let f = t_end / theta(j);
        for l in 0..n {
            cells[l * width + j] = f * slopes[l] * mesh.h(l + 1);
        }
    }
    let mut c = par_matrix(n, n, |k, l| {
        descending_dot(coeffs.row(k), &cells[l * width..(l + 1) * width], |_| 1.0)
    });
    let mut err = 0.0;
    if tail == TailModel::Asymptotic {
        let ker = TailKernels::new(mesh, coeffs.j_max(), false)?;
        let np = n + 1;
        let mut e_op = DMatrix::zeros(n, np);
        for l in 0..n {
            e_op[(l, l)] = -1.0;
            e_op[(l, l + 1)] = 1.0;
        }
        let w = 2.0 * t_end * t_end;
        c += &ker.d * &ker.s3 * e_op.transpose() * w;
        err = (&ker.d_abs * &ker.e3 * e_op.abs().transpose() * w).max();
    }
    Ok((c, err))
}

/// Temporal stiffness-like matrix `A[l,k] = ½ Σ_j θ_j a_l(j) a_k(j)`.
pub fn assemble_temporal_a(coeffs: &SineCoefficientTable, tail: TailModel) -> Result<DMatrix<f64>> {
    temporal_a(coeffs, tail).map(|(m, _)| m)
}

/// Temporal mass-like matrix `M[l,k] = Σ_j a_l(j) b_k(j)`.
pub fn assemble_temporal_m(coeffs: &SineCoefficientTable, tail: TailModel) -> Result<DMatrix<f64>> {
    temporal_m(coeffs, tail).map(|(m, _)| m)
}

/// Right-hand-side coupling `C[k,l] = Σ_j a_k(j) ∫_{cell l} cos(θ_j t/T) dt`.
pub fn assemble_temporal_c(coeffs: &SineCoefficientTable, tail: TailModel) -> Result<DMatrix<f64>> {
    temporal_c(coeffs, tail).map(|(m, _)| m)
}
