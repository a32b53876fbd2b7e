use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::sparse::{CsrMatrix, Symmetry};
use crate::spatial::{error_norms, DirichletLift, ErrorNorms, ExactSolution, SpatialOperators, TriangleMesh};
use crate::temporal::{TemporalMesh, TemporalOperators};

/// `(A_t ⊗ M_x + M_t ⊗ A_x) u = f` with `u = vec(U)`, `U` of size `M_x × N_t`.
///
/// `mass` and `stiffness` always share one sparsity pattern, so a single
/// symbolic analysis serves every shifted matrix `M_x + σ A_x`.
#[derive(Debug, Clone)]
pub struct SpaceTimeSystem {
    pub temporal: TemporalOperators,
    pub mass: CsrMatrix<f64>,
    pub stiffness: CsrMatrix<f64>,
    pub rhs: Vec<f64>,
}

/// Both matrices on the union of their patterns, explicit zeros filled in.
fn unify_patterns(m: &CsrMatrix<f64>, a: &CsrMatrix<f64>) -> (CsrMatrix<f64>, CsrMatrix<f64>) {
    if m.same_pattern(a) {
        return (m.clone(), a.clone());
    }
    let n = m.n_rows();
    let mut pm = Vec::new();
    let mut pa = Vec::new();
    for r in 0..n {
        for (c, v) in m.row(r) {
            pm.push((r, c, v));
            pa.push((r, c, 0.0));
        }
        for (c, v) in a.row(r) {
            pm.push((r, c, 0.0));
            pa.push((r, c, v));
        }
    }
    (
        CsrMatrix::from_triplets(n, n, &pm, Symmetry::Symmetric),
        CsrMatrix::from_triplets(n, n, &pa, Symmetry::Symmetric),
    )
}

impl SpaceTimeSystem {
    pub fn new(temporal: TemporalOperators, mass: &CsrMatrix<f64>, stiffness: &CsrMatrix<f64>, rhs: Vec<f64>) -> Result<Self> {
        let m_x = mass.n_rows();
        if mass.n_cols() != m_x || stiffness.n_rows() != m_x || stiffness.n_cols() != m_x {
            return Err(Error::DimensionMismatch("spatial matrices must be square and of equal size".into()));
        }
        if rhs.len() != m_x * temporal.n_t() {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side has length {}, expected {m_x}·{}",
                rhs.len(),
                temporal.n_t()
            )));
        }
        let (mass, stiffness) = unify_patterns(mass, stiffness);
        Ok(Self { temporal, mass, stiffness, rhs })
    }

    pub fn from_spatial(temporal: TemporalOperators, spatial: &SpatialOperators, rhs: Vec<f64>) -> Result<Self> {
        Self::new(temporal, &spatial.m_ii, &spatial.a_ii, rhs)
    }

    pub fn n_t(&self) -> usize {
        self.temporal.n_t()
    }

    pub fn m_x(&self) -> usize {
        self.mass.n_rows()
    }

    pub fn dof(&self) -> usize {
        self.rhs.len()
    }

    /// The right-hand side as the `M_x × N_t` matrix `F`.
    pub fn rhs_matrix(&self) -> DMatrix<f64> {
        DMatrix::from_column_slice(self.m_x(), self.n_t(), &self.rhs)
    }

    /// `M_x + σ A_x` on the shared pattern, mapped to any entry type.
    pub(crate) fn shifted<S: Copy>(&self, f: impl Fn(f64, f64) -> S) -> CsrMatrix<S> {
        let a = self.stiffness.values();
        self.mass.map_values(|p, m| f(m, a[p])).with_symmetry(Symmetry::Symmetric)
    }
}

/// Interior coefficients in the global ordering, optionally with the lift
/// needed to evaluate the total discrete function.
#[derive(Debug, Clone)]
pub struct SpaceTimeSolution {
    pub coefficients: Vec<f64>,
    pub m_x: usize,
    pub n_t: usize,
    pub lift: Option<DirichletLift>,
}

impl SpaceTimeSolution {
    pub fn new(coefficients: Vec<f64>, m_x: usize, n_t: usize) -> Self {
        assert_eq!(coefficients.len(), m_x * n_t, "coefficient vector length");
        Self { coefficients, m_x, n_t, lift: None }
    }

    pub fn with_lift(mut self, lift: DirichletLift) -> Self {
        self.lift = Some(lift);
        self
    }

    /// `U`, of size `M_x × N_t`.
    pub fn matrix(&self) -> DMatrix<f64> {
        DMatrix::from_column_slice(self.m_x, self.n_t, &self.coefficients)
    }

    pub fn norm(&self) -> f64 {
        self.coefficients.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// `‖self - other‖₂ / ‖other‖₂`.
    pub fn relative_difference(&self, other: &SpaceTimeSolution) -> f64 {
        assert_eq!(self.coefficients.len(), other.coefficients.len(), "solutions of different size");
        let diff: f64 = self.coefficients.iter().zip(&other.coefficients).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
        let scale = other.norm();
        if scale == 0.0 {
            diff
        } else {
            diff / scale
        }
    }

    /// Errors of the total discrete function (coefficients plus lift; a
    /// missing lift counts as zero boundary data).
    pub fn error_norms<E: ExactSolution>(
        &self,
        mesh_x: &TriangleMesh,
        mesh_t: &TemporalMesh,
        spatial: &SpatialOperators,
        exact: &E,
        quad_order: usize,
    ) -> Result<ErrorNorms> {
        let zero;
        let lift = match &self.lift {
            Some(l) => l,
            None => {
                zero = DirichletLift::zeros(spatial.boundary.len(), self.n_t);
                &zero
            }
        };
        error_norms(mesh_x, mesh_t, spatial, &self.matrix(), lift, exact, quad_order)
    }
}
