use super::pencil::pencil_matrix;
use crate::dense::eig_pencil;
use crate::error::Result;
use crate::temporal::{TemporalMesh, TemporalOperators};

/// Spectral statistics of the temporal pencil on one mesh.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralRow {
    pub n_t: usize,
    pub h_max: f64,
    pub h_min: f64,
    pub min_re_lambda: f64,
    pub sigma_min: f64,
    pub sigma_max: f64,
    pub kappa2: f64,
}

pub fn eig_study(mesh: &TemporalMesh, temp: &TemporalOperators) -> Result<SpectralRow> {
    let eig = eig_pencil(&pencil_matrix(temp)?, &temp.a)?;
    Ok(SpectralRow {
        n_t: temp.n_t(),
        h_max: mesh.h_max(),
        h_min: mesh.h_min(),
        min_re_lambda: eig.d.iter().map(|z| z.re).fold(f64::INFINITY, f64::min),
        sigma_min: eig.sigma_min(),
        sigma_max: eig.sigma_max(),
        kappa2: eig.kappa2(),
    })
}
