use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("series tail at j_max = {j_max} cannot reach tolerance {tol:e} (estimate {estimate:e}); raise j_max")]
    TruncationBudgetExceeded { j_max: usize, tol: f64, estimate: f64 },

    #[error("invalid temporal mesh: {0}")]
    InvalidMesh(String),

    #[error("triangle {index} has non-positive area {area:e}")]
    DegenerateElement { index: usize, area: f64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("{0} did not converge within the iteration budget")]
    ConvergenceFailure(&'static str),

    #[error("eigenvector residual {residual:e} exceeds tolerance {tol:e}")]
    DefectivePencil { residual: f64, tol: f64 },

    #[error("matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("pivot {pivot:e} in column {column} is below threshold {threshold:e}")]
    SingularMatrix { column: usize, pivot: f64, threshold: f64 },

    #[error("discarded imaginary part {ratio:e} exceeds tolerance {tol:e}")]
    ImaginaryResidueTooLarge { ratio: f64, tol: f64 },

    #[error("dense system of dimension {n} exceeds the guard {limit}")]
    SizeGuardExceeded { n: usize, limit: usize },

    #[error("{0}")]
    Usage(String),

    #[error("config line {line}: {message}")]
    Config { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
