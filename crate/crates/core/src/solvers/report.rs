use std::fmt;
use std::str::FromStr;

use super::pencil::PencilVariant;
use crate::error::Error;

/// The three space-time algorithms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    /// Bartels-Stewart on the real Schur form.
    BsReal,
    /// Bartels-Stewart on the complex Schur form.
    BsComplex,
    /// Fast diagonalization.
    Fd,
}

impl Variant {
    pub const ALL: [Variant; 3] = [Variant::BsReal, Variant::BsComplex, Variant::Fd];

    pub fn name(self) -> &'static str {
        match self {
            Variant::BsReal => "bs-real",
            Variant::BsComplex => "bs-complex",
            Variant::Fd => "fd",
        }
    }

    pub fn pencil(self) -> PencilVariant {
        match self {
            Variant::BsReal => PencilVariant::RealSchur,
            Variant::BsComplex => PencilVariant::ComplexSchur,
            Variant::Fd => PencilVariant::EigenSvd,
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim().to_ascii_lowercase().as_str() {
            "bs-real" | "bsr" => Ok(Variant::BsReal),
            "bs-complex" | "bsc" => Ok(Variant::BsComplex),
            "fd" => Ok(Variant::Fd),
            other => Err(Error::Usage(format!("unknown solver `{other}` (expected bs-real, bs-complex or fd)"))),
        }
    }
}

/// Timings and diagnostics of one solve. Assembly is not included.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub variant: Variant,
    /// Decomposition actually used; differs from `variant.pencil()` after a fallback.
    pub pencil: PencilVariant,
    pub fallback: Option<String>,
    pub dof: usize,
    pub n_t: usize,
    pub m_x: usize,
    pub t_decomp: f64,
    pub t_transform_in: f64,
    pub t_spatial: f64,
    pub t_transform_out: f64,
    pub residual: f64,
    pub min_re_lambda: f64,
    pub sigma_min: Option<f64>,
    pub sigma_max: Option<f64>,
    pub kappa2: Option<f64>,
    /// `‖Im u‖ / ‖Re u‖` of the back transform, zero for the real algorithm.
    pub imaginary_ratio: f64,
    pub threads: usize,
    pub analyze_calls: usize,
}

impl SolveReport {
    pub const CSV_HEADER: [&'static str; 12] = [
        "dof",
        "N_t",
        "M_x",
        "variant",
        "t_decomp",
        "t_transform_in",
        "t_spatial",
        "t_transform_out",
        "residual",
        "minReLambda",
        "kappa2",
        "threads",
    ];

    pub fn solve_seconds(&self) -> f64 {
        self.t_decomp + self.t_transform_in + self.t_spatial + self.t_transform_out
    }

    /// `fd` after a fallback is reported as `fd/bs-complex`.
    pub fn variant_label(&self) -> String {
        match self.fallback {
            Some(_) => format!("{}/{}", self.variant, Variant::BsComplex),
            None => self.variant.to_string(),
        }
    }

    pub fn csv_record(&self) -> Vec<String> {
        vec![
            self.dof.to_string(),
            self.n_t.to_string(),
            self.m_x.to_string(),
            self.variant_label(),
            format!("{:.6}", self.t_decomp),
            format!("{:.6}", self.t_transform_in),
            format!("{:.6}", self.t_spatial),
            format!("{:.6}", self.t_transform_out),
            format!("{:.3e}", self.residual),
            format!("{:.3e}", self.min_re_lambda),
            self.kappa2.map(|k| format!("{k:.3e}")).unwrap_or_default(),
            self.threads.to_string(),
        ]
    }
}
