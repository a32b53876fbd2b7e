use nalgebra::DMatrix;
use rayon::prelude::*;

use super::assembly::SpatialOperators;
use super::mesh::TriangleMesh;
use super::quadrature::SpaceTimeRule;
use crate::error::{Error, Result};
use crate::temporal::{TemporalMesh, TemporalOperators};

/// Quadrature order of the default right-hand side projection.
pub const DEFAULT_RHS_ORDER: usize = 6;

/// Space-time cell averages of the source, `f[(j, l)]` on triangle `j` and
/// time element `l`.
#[derive(Debug, Clone)]
pub struct RhsCells {
    pub f: DMatrix<f64>,
}

/// Boundary values at the temporal nodes `t_1..t_N`, one row per boundary
/// vertex in the order of [`SpatialOperators::boundary`]. The values at
/// `t_0` are zero by construction of the temporal basis.
#[derive(Debug, Clone)]
pub struct DirichletLift {
    pub g: DMatrix<f64>,
}

impl DirichletLift {
    pub fn zeros(n_boundary: usize, n_t: usize) -> Self {
        Self { g: DMatrix::zeros(n_boundary, n_t) }
    }
}

/// Piecewise constant `L²` projection of `f` by tensor Gauss quadrature.
pub fn project_rhs<F>(mesh_x: &TriangleMesh, mesh_t: &TemporalMesh, f: F, quad_order: usize) -> RhsCells
where
    F: Fn([f64; 2], f64) -> f64 + Sync,
{
    let rule = SpaceTimeRule::with_order(quad_order.max(1));
    let nodes = mesh_t.nodes();
    let n_t = mesh_t.n_elements();
    let rows: Vec<Vec<f64>> = (0..mesh_x.n_triangles())
        .into_par_iter()
        .map(|tri| {
            let p = mesh_x.corners(tri);
            let points: Vec<[f64; 2]> = rule
                .space
                .points
                .iter()
                .map(|b| [b[0] * p[0][0] + b[1] * p[1][0] + b[2] * p[2][0], b[0] * p[0][1] + b[1] * p[1][1] + b[2] * p[2][1]])
                .collect();
            (0..n_t)
                .map(|l| {
                    let (t0, t1) = (nodes[l], nodes[l + 1]);
                    let mut acc = 0.0;
                    for (&s, &ws) in rule.time.nodes.iter().zip(&rule.time.weights) {
                        let t = t0 + (t1 - t0) * s;
                        let mut inner = 0.0;
                        for (x, &wx) in points.iter().zip(&rule.space.weights) {
                            inner += wx * f(*x, t);
                        }
                        acc += ws * inner;
                    }
                    acc
                })
                .collect()
        })
        .collect();
    let f = DMatrix::from_fn(mesh_x.n_triangles(), n_t, |j, l| rows[j][l]);
    RhsCells { f }
}

/// Nodal interpolation of the boundary data.
pub fn dirichlet_lift<G>(mesh_x: &TriangleMesh, mesh_t: &TemporalMesh, g: G) -> DirichletLift
where
    G: Fn([f64; 2], f64) -> f64,
{
    let boundary = mesh_x.boundary_vertices();
    let nodes = mesh_t.nodes();
    let g = DMatrix::from_fn(boundary.len(), mesh_t.n_elements(), |b, k| g(mesh_x.vertices()[boundary[b]], nodes[k + 1]));
    DirichletLift { g }
}

/// Load vector in the global ordering (vec of the `M_x × N_t` matrix):
/// `M10 F Cᵀ` minus the space-time form applied to the lift,
/// `M_IB G A_tᵀ + A_IB G M_tᵀ`.
pub fn assemble_global_rhs(cells: &RhsCells, ops: &SpatialOperators, temp: &TemporalOperators, lift: &DirichletLift) -> Result<Vec<f64>> {
    let n_t = temp.n_t();
    let (f, g) = (&cells.f, &lift.g);
    if f.nrows() != ops.m10.n_cols() || f.ncols() != n_t {
        return Err(Error::DimensionMismatch(format!(
            "cell data is {}×{}, expected {}×{n_t}",
            f.nrows(),
            f.ncols(),
            ops.m10.n_cols()
        )));
    }
    if g.nrows() != ops.boundary.len() || g.ncols() != n_t {
        return Err(Error::DimensionMismatch(format!(
            "lift is {}×{}, expected {}×{n_t}",
            g.nrows(),
            g.ncols(),
            ops.boundary.len()
        )));
    }
    let mut rhs = ops.m10.mul_dense(f) * temp.c.transpose();
    if g.iter().any(|&v| v != 0.0) {
        rhs -= ops.m_ib.mul_dense(g) * temp.a.transpose();
        rhs -= ops.a_ib.mul_dense(g) * temp.m.transpose();
    }
    Ok(rhs.as_slice().to_vec())
}
