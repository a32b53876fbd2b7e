use nalgebra::DMatrix;
use rayon::prelude::*;

use super::assembly::{barycentric_gradients, SpatialOperators};
use super::manufactured::ExactSolution;
use super::mesh::TriangleMesh;
use super::quadrature::SpaceTimeRule;
use super::rhs::DirichletLift;
use crate::error::{Error, Result};
use crate::temporal::TemporalMesh;

/// Quadrature order of the default error evaluation: seven-point triangle
/// rule with four Gauss points per time element.
pub const DEFAULT_ERROR_ORDER: usize = 5;

/// Space-time errors of a discrete solution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorNorms {
    /// `‖u - u_h‖_{L²(Q)}`.
    pub l2: f64,
    /// `(‖∂_t e‖² + ‖∇_x e‖²)^{1/2}` over `Q`.
    pub h1: f64,
    pub dt: f64,
    pub grad_x: f64,
}

/// Values of the total discrete function at every vertex and every temporal
/// node `t_0..t_N` (column 0 is zero).
pub fn nodal_values(mesh_x: &TriangleMesh, ops: &SpatialOperators, interior: &DMatrix<f64>, lift: &DirichletLift) -> Result<DMatrix<f64>> {
    let n_t = interior.ncols();
    if interior.nrows() != ops.m_x() || lift.g.nrows() != ops.boundary.len() || lift.g.ncols() != n_t {
        return Err(Error::DimensionMismatch("solution, lift and spatial operators disagree".into()));
    }
    let mut full = DMatrix::zeros(mesh_x.n_vertices(), n_t + 1);
    for k in 0..n_t {
        for (i, &v) in ops.interior.iter().enumerate() {
            full[(v, k + 1)] = interior[(i, k)];
        }
        for (b, &v) in ops.boundary.iter().enumerate() {
            full[(v, k + 1)] = lift.g[(b, k)];
        }
    }
    Ok(full)
}

/// Errors of the P1 ⊗ P1 function given by its interior coefficients
/// (`M_x × N_t`) and lift, by tensor Gauss quadrature on every space-time
/// element.
pub fn error_norms<E: ExactSolution>(
    mesh_x: &TriangleMesh,
    mesh_t: &TemporalMesh,
    ops: &SpatialOperators,
    interior: &DMatrix<f64>,
    lift: &DirichletLift,
    exact: &E,
    quad_order: usize,
) -> Result<ErrorNorms> {
    if interior.ncols() != mesh_t.n_elements() {
        return Err(Error::DimensionMismatch("solution and temporal mesh disagree".into()));
    }
    let values = nodal_values(mesh_x, ops, interior, lift)?;
    let rule = SpaceTimeRule::with_order(quad_order);
    let nodes = mesh_t.nodes();
    let per_triangle: Vec<[f64; 3]> = (0..mesh_x.n_triangles())
        .into_par_iter()
        .map(|tri| {
            let corners = mesh_x.corners(tri);
            let vert = mesh_x.triangles()[tri];
            let (grad, area) = barycentric_gradients(corners);
            let mut sums = [0.0; 3];
            for l in 0..mesh_t.n_elements() {
                let (t0, t1) = (nodes[l], nodes[l + 1]);
                let h = t1 - t0;
                let u0 = vert.map(|v| values[(v, l)]);
                let u1 = vert.map(|v| values[(v, l + 1)]);
                let mut local = [0.0; 3];
                for (&s, &ws) in rule.time.nodes.iter().zip(&rule.time.weights) {
                    let t = t0 + h * s;
                    let us = [0, 1, 2].map(|a| (1.0 - s) * u0[a] + s * u1[a]);
                    let gh = [0, 1].map(|d| (0..3).map(|a| grad[a][d] * us[a]).sum::<f64>());
                    for (b, &wx) in rule.space.points.iter().zip(&rule.space.weights) {
                        let x = [
                            b[0] * corners[0][0] + b[1] * corners[1][0] + b[2] * corners[2][0],
                            b[0] * corners[0][1] + b[1] * corners[1][1] + b[2] * corners[2][1],
                        ];
                        let uh = b[0] * us[0] + b[1] * us[1] + b[2] * us[2];
                        let uht = (0..3).map(|a| b[a] * (u1[a] - u0[a])).sum::<f64>() / h;
                        let g = exact.grad_x(x, t);
                        let w = ws * wx;
                        local[0] += w * (exact.u(x, t) - uh).powi(2);
                        local[1] += w * (exact.u_t(x, t) - uht).powi(2);
                        local[2] += w * ((g[0] - gh[0]).powi(2) + (g[1] - gh[1]).powi(2));
                    }
                }
                for (acc, v) in sums.iter_mut().zip(local) {
                    *acc += v * h * area;
                }
            }
            sums
        })
        .collect();
    let total = per_triangle.iter().fold([0.0; 3], |acc, s| [acc[0] + s[0], acc[1] + s[1], acc[2] + s[2]]);
    Ok(ErrorNorms {
        l2: total[0].sqrt(),
        h1: (total[1] + total[2]).sqrt(),
        dt: total[1].sqrt(),
        grad_x: total[2].sqrt(),
    })
}
