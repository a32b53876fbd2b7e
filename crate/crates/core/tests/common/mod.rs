#![allow(dead_code)]

use nalgebra::DMatrix;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use stheat::sparse::{CsrMatrix, Symmetry};
use stheat::solvers::SpaceTimeSystem;
use stheat::temporal::{TemporalMesh, TemporalOperators};

pub const BASE_NODES: [f64; 5] = [0.0, 1.0 / 32.0, 1.0 / 16.0, 1.0 / 8.0, 0.5];

pub fn base_mesh() -> TemporalMesh {
    TemporalMesh::new(BASE_NODES.to_vec()).unwrap()
}

fn dense_to_csr(d: &DMatrix<f64>) -> CsrMatrix<f64> {
    let mut t = Vec::new();
    for i in 0..d.nrows() {
        for j in 0..d.ncols() {
            if d[(i, j)] != 0.0 {
                t.push((i, j, d[(i, j)]));
            }
        }
    }
    CsrMatrix::from_triplets(d.nrows(), d.ncols(), &t, Symmetry::Symmetric)
}

/// SPD matrix `B Bᵀ + shift·I` with a random sparse-ish `B`.
fn random_spd(rng: &mut StdRng, n: usize, shift: f64) -> DMatrix<f64> {
    let b = DMatrix::from_fn(n, n, |_, _| if rng.random_bool(0.6) { rng.random_range(-1.0..1.0) } else { 0.0 });
    &b * b.transpose() + DMatrix::identity(n, n) * shift
}

/// Random temporal mesh with `n_t` elements on `(0, T)`.
pub fn random_time_mesh(rng: &mut StdRng, n_t: usize) -> TemporalMesh {
    let t_end = rng.random_range(0.2..2.0);
    let mut w: Vec<f64> = (0..n_t).map(|_| rng.random_range(0.1..1.0)).collect();
    let total: f64 = w.iter().sum();
    w.iter_mut().for_each(|x| *x *= t_end / total);
    let mut nodes = vec![0.0];
    for g in w {
        nodes.push(nodes.last().unwrap() + g);
    }
    *nodes.last_mut().unwrap() = t_end;
    TemporalMesh::new(nodes).unwrap()
}

/// Small space-time system with random SPD spatial matrices, assembled
/// temporal matrices and a random right-hand side.
pub fn random_system(seed: u64) -> SpaceTimeSystem {
    let mut rng = StdRng::seed_from_u64(seed);
    let n_t = rng.random_range(1..=6);
    let m_x = rng.random_range(1..=8);
    let mesh = random_time_mesh(&mut rng, n_t);
    let temporal = TemporalOperators::assemble(&mesh, 2000).unwrap();
    let mass = dense_to_csr(&random_spd(&mut rng, m_x, 0.05));
    let stiffness = dense_to_csr(&random_spd(&mut rng, m_x, 0.01));
    let rhs = (0..m_x * n_t).map(|_| rng.random_range(-1.0..1.0)).collect();
    SpaceTimeSystem::new(temporal, &mass, &stiffness, rhs).unwrap()
}
