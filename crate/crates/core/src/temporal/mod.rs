//! Temporal discretization: piecewise linear hat functions on a partition of
//! `(0, T)` and the dense matrices obtained by composing the test functions
//! with the modified Hilbert transformation `H_T`.
//!
//! `H_T` maps `sin(θ_j t/T)` to `cos(θ_j t/T)` with `θ_j = π/2 + jπ`. Writing
//! each hat function as a sine series, every matrix entry becomes a series in
//! `j`. The first `j_max + 1` terms are summed from the coefficient tables in
//! [`series`]; the remainder is added from the asymptotic expansion in [`tail`].

mod series;
mod tail;

pub use series::{
    assemble_temporal_a, assemble_temporal_c, assemble_temporal_m, CosineCoefficientTable,
    SineCoefficientTable, TailModel,
};

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Default number of explicitly summed series terms (`j = 0..=j_max`).
pub const DEFAULT_JMAX: usize = 4000;

/// Largest `j_max` tried by [`TemporalOperators::assemble`] before giving up.
const JMAX_CEILING: usize = 1 << 22;

/// Partition `0 = t_0 < t_1 < ... < t_N = T` of the time interval.
///
/// The hat function at `t_0` is not part of the basis, so the temporal
/// degrees of freedom are the nodes `t_1..t_N`; index `i` in every matrix of
/// this module refers to node `t_{i+1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct TemporalMesh {
    nodes: Vec<f64>,
}

impl TemporalMesh {
    pub fn new(nodes: Vec<f64>) -> Result<Self> {
        if nodes.len() < 2 {
            return Err(Error::InvalidMesh("need at least two nodes".into()));
        }
        if nodes[0] != 0.0 {
            return Err(Error::InvalidMesh(format!("first node is {} instead of 0", nodes[0])));
        }
        if let Some(w) = nodes.windows(2).find(|w| !(w[1] > w[0]) || !w[1].is_finite()) {
            return Err(Error::InvalidMesh(format!("nodes {} and {} are not increasing", w[0], w[1])));
        }
        Ok(Self { nodes })
    }

    pub fn uniform(n: usize, end_time: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidMesh("need at least one element".into()));
        }
        Self::new((0..=n).map(|i| end_time * i as f64 / n as f64).collect())
    }

    /// Halves every interval `levels` times.
    pub fn bisected(&self, levels: usize) -> Self {
        let mut nodes = self.nodes.clone();
        for _ in 0..levels {
            let mut next = Vec::with_capacity(2 * nodes.len() - 1);
            for w in nodes.windows(2) {
                next.push(w[0]);
                next.push(0.5 * (w[0] + w[1]));
            }
            next.push(*nodes.last().unwrap());
            nodes = next;
        }
        Self { nodes }
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Number of elements, equal to the number of temporal degrees of freedom.
    pub fn n_elements(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn end_time(&self) -> f64 {
        *self.nodes.last().unwrap()
    }

    /// Length of element `l` (1-based, `t_{l-1}..t_l`).
    pub fn h(&self, l: usize) -> f64 {
        self.nodes[l] - self.nodes[l - 1]
    }

    pub fn h_max(&self) -> f64 {
        self.nodes.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max)
    }

    pub fn h_min(&self) -> f64 {
        self.nodes.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min)
    }

    /// Value of the hat function at node `t_{i+1}` (0-based degree of freedom `i`).
    pub fn hat(&self, i: usize, t: f64) -> f64 {
        let l = i + 1;
        let t_l = self.nodes[l];
        let t_prev = self.nodes[l - 1];
        if t >= t_prev && t <= t_l {
            return (t - t_prev) / (t_l - t_prev);
        }
        if l < self.n_elements() {
            let t_next = self.nodes[l + 1];
            if t > t_l && t <= t_next {
                return (t_next - t) / (t_next - t_l);
            }
        }
        0.0
    }
}

/// The three dense temporal matrices.
///
/// * `a[(l, k)] = <∂_t φ_k, H_T φ_l>`, symmetric positive definite;
/// * `m[(l, k)] = <φ_k, H_T φ_l>`, nonsymmetric with positive definite symmetric part;
/// * `c[(k, l)] = <χ_l, H_T φ_k>` with `χ_l` the indicator of element `l`.
///
/// Row indices are test functions throughout.
#[derive(Debug, Clone)]
pub struct TemporalOperators {
    pub a: DMatrix<f64>,
    pub m: DMatrix<f64>,
    pub c: DMatrix<f64>,
    pub j_max: usize,
    /// Largest estimated absolute error of any entry from the tail expansion.
    pub tail_error: f64,
}

impl TemporalOperators {
    /// Assembles all matrices with the asymptotic tail correction.
    ///
    /// `j_max` is doubled until the tail expansion converges for every pair of
    /// nodes, so the returned `j_max` may exceed the requested one.
    pub fn assemble(mesh: &TemporalMesh, j_max: usize) -> Result<Self> {
        let mut j = j_max;
        loop {
            match Self::assemble_with(mesh, j, TailModel::Asymptotic) {
                Err(Error::TruncationBudgetExceeded { .. }) if j < JMAX_CEILING => {
                    j = (2 * j).max(64);
                }
                other => return other,
            }
        }
    }

    /// Assembles with a fixed `j_max` and the given tail treatment.
    pub fn assemble_with(mesh: &TemporalMesh, j_max: usize, tail: TailModel) -> Result<Self> {
        let sines = SineCoefficientTable::new(mesh, j_max);
        let (a, ea) = series::temporal_a(&sines, tail)?;
        let (m, em) = series::temporal_m(&sines, tail)?;
        let (c, ec) = series::temporal_c(&sines, tail)?;
        Ok(Self {
            a,
            m,
            c,
            j_max,
            tail_error: ea.max(em).max(ec),
        })
    }

    pub fn n_t(&self) -> usize {
        self.a.nrows()
    }
}
