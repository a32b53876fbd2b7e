//! Space-time Galerkin finite elements for the heat equation `u_t - Δu = f`
//! on a two-dimensional spatial domain.
//!
//! The temporal test functions are composed with the modified Hilbert
//! transformation, which turns the discrete system into the Kronecker sum
//!
//! ```text
//! K = A_t ⊗ M_x + M_t ⊗ A_x
//! ```
//!
//! with a symmetric positive definite `A_t` and a nonsymmetric positive
//! definite `M_t`. The temporal pencil `(M_t, A_t)` is small and dense, so the
//! system is solved by decomposing `A_t^{-1} M_t` and running one sparse
//! spatial solve per temporal mode:
//!
//! * [`solvers::solve_bs_real`]: real Schur form, 2x2 blocks solved as real
//!   symmetric indefinite systems of twice the spatial size;
//! * [`solvers::solve_bs_complex`]: complex Schur form, complex symmetric
//!   spatial solves;
//! * [`solvers::solve_fd`]: full diagonalization with independent (parallel)
//!   spatial solves.
//!
//! Unknowns are stored as the column-major `M_x x N_t` coefficient matrix:
//! block `k` of the global vector holds the spatial coefficients at temporal
//! node `t_k`.

pub mod dense;
pub mod error;
pub mod experiments;
pub mod solvers;
pub mod sparse;
pub mod spatial;
pub mod temporal;

pub use error::{Error, Result};
