//! Spatial discretization on the L-shaped domain
//! `Ω = (-1,1)² \ ([0,1]×[-1,0])`: structured triangulations, P1 matrices,
//! the projected source, the Dirichlet lift and space-time error norms.

mod assembly;
mod manufactured;
mod mesh;
mod norms;
mod quadrature;
mod rhs;

pub use assembly::{assemble_p1, barycentric_gradients, element_matrices, SpatialOperators};
pub use manufactured::{ClosureSolution, ExactSolution, ManufacturedSolution};
pub use mesh::{build_lshape_mesh, on_lshape_boundary, refine_uniform, TriangleMesh};
pub use norms::{error_norms, nodal_values, ErrorNorms, DEFAULT_ERROR_ORDER};
pub use quadrature::{GaussLegendre, SpaceTimeRule, TriangleRule};
pub use rhs::{assemble_global_rhs, dirichlet_lift, project_rhs, DirichletLift, RhsCells, DEFAULT_RHS_ORDER};
