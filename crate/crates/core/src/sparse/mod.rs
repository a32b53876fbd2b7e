//! Sparse symmetric direct solver with separate ordering/symbolic and
//! numeric phases.
//!
//! The numeric phase is an up-looking `L D Lᵀ` factorization without
//! pivoting, generic over the entry type: real (`f64`), complex symmetric
//! (`Complex64`) and real 2x2 blocks ([`Block2`]) for interleaved real
//! systems of twice the size. One symbolic analysis serves any matrix with
//! the same pattern, e.g. every shift `M + σA`.

mod csr;
mod ldl;
mod mtx;
mod scalar;
mod symbolic;

pub use csr::{CsrMatrix, Symmetry};
pub use ldl::{factorize, NumericFactorization, PIVOT_RTOL};
pub use mtx::{read_matrix_market, write_matrix_market};
pub use scalar::{Block2, FactorScalar, Pair};
pub use symbolic::{analyze, analyze_calls, analyze_with, Ordering, SymbolicFactorization};
