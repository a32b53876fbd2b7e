use rayon::prelude::*;

use super::mesh::TriangleMesh;
use crate::error::{Error, Result};
use crate::sparse::{CsrMatrix, Symmetry};

/// P1 mass and stiffness matrices with their interior/boundary splitting.
///
/// Interior degrees of freedom are numbered in increasing vertex order;
/// boundary vertices likewise, which fixes the row order of the lift.
#[derive(Debug, Clone)]
pub struct SpatialOperators {
    pub m_full: CsrMatrix<f64>,
    pub a_full: CsrMatrix<f64>,
    /// Vertex index of each interior dof.
    pub interior: Vec<usize>,
    /// Vertex index of each boundary row of the lift.
    pub boundary: Vec<usize>,
    /// `interior_index[v]` is the dof of vertex `v`, `None` on the boundary.
    pub interior_index: Vec<Option<usize>>,
    pub m_ii: CsrMatrix<f64>,
    pub a_ii: CsrMatrix<f64>,
    pub m_ib: CsrMatrix<f64>,
    pub a_ib: CsrMatrix<f64>,
    /// `m10[(i, j)] = |ω_j|/3` when interior vertex `i` is a corner of triangle `j`.
    pub m10: CsrMatrix<f64>,
    pub areas: Vec<f64>,
}

impl SpatialOperators {
    /// Number of interior dofs `M_x`.
    pub fn m_x(&self) -> usize {
        self.interior.len()
    }
}

/// Barycentric gradients of a triangle, `grad[a] = ∇λ_a`.
pub fn barycentric_gradients(p: [[f64; 2]; 3]) -> ([[f64; 2]; 3], f64) {
    let area = 0.5 * ((p[1][0] - p[0][0]) * (p[2][1] - p[0][1]) - (p[1][1] - p[0][1]) * (p[2][0] - p[0][0]));
    let mut grad = [[0.0; 2]; 3];
    for a in 0..3 {
        let (j, k) = ((a + 1) % 3, (a + 2) % 3);
        grad[a] = [(p[j][1] - p[k][1]) / (2.0 * area), (p[k][0] - p[j][0]) / (2.0 * area)];
    }
    (grad, area)
}

/// Element mass and stiffness matrices.
pub fn element_matrices(p: [[f64; 2]; 3]) -> ([[f64; 3]; 3], [[f64; 3]; 3], f64) {
    let (grad, area) = barycentric_gradients(p);
    let mut me = [[0.0; 3]; 3];
    let mut ke = [[0.0; 3]; 3];
    for a in 0..3 {
        for b in 0..3 {
            me[a][b] = area / 12.0 * if a == b { 2.0 } else { 1.0 };
            ke[a][b] = area * (grad[a][0] * grad[b][0] + grad[a][1] * grad[b][1]);
        }
    }
    (me, ke, area)
}

pub fn assemble_p1(mesh: &TriangleMesh) -> Result<SpatialOperators> {
    let n = mesh.n_vertices();
    let elements: Vec<_> = (0..mesh.n_triangles()).into_par_iter().map(|t| element_matrices(mesh.corners(t))).collect();
    let mut m_trip = Vec::with_capacity(9 * elements.len());
    let mut a_trip = Vec::with_capacity(9 * elements.len());
    let mut areas = Vec::with_capacity(elements.len());
    for (index, (tri, (me, ke, area))) in mesh.triangles().iter().zip(&elements).enumerate() {
        if !(*area > 0.0) {
            return Err(Error::DegenerateElement { index, area: *area });
        }
        areas.push(*area);
        for a in 0..3 {
            for b in 0..3 {
                m_trip.push((tri[a], tri[b], me[a][b]));
                a_trip.push((tri[a], tri[b], ke[a][b]));
            }
        }
    }
    let m_full = CsrMatrix::from_triplets(n, n, &m_trip, Symmetry::Symmetric);
    let a_full = CsrMatrix::from_triplets(n, n, &a_trip, Symmetry::Symmetric);

    let interior = mesh.interior_vertices();
    let boundary = mesh.boundary_vertices();
    let mut interior_index = vec![None; n];
    for (k, &v) in interior.iter().enumerate() {
        interior_index[v] = Some(k);
    }
    let m_ii = m_full.submatrix(&interior, &interior).with_symmetry(Symmetry::Symmetric);
    let a_ii = a_full.submatrix(&interior, &interior).with_symmetry(Symmetry::Symmetric);
    let m_ib = m_full.submatrix(&interior, &boundary).with_symmetry(Symmetry::General);
    let a_ib = a_full.submatrix(&interior, &boundary).with_symmetry(Symmetry::General);

    let mut m10_trip = Vec::new();
    for (t, tri) in mesh.triangles().iter().enumerate() {
        for &v in tri {
            if let Some(i) = interior_index[v] {
                m10_trip.push((i, t, areas[t] / 3.0));
            }
        }
    }
    let m10 = CsrMatrix::from_triplets(interior.len(), mesh.n_triangles(), &m10_trip, Symmetry::General);

    Ok(SpatialOperators { m_full, a_full, interior, boundary, interior_index, m_ii, a_ii, m_ib, a_ib, m10, areas })
}
