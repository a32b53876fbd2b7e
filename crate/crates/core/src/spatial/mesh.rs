use std::collections::HashMap;
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};

const GEOM_TOL: f64 = 1e-12;

/// Conforming triangulation with counterclockwise triangles.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangleMesh {
    vertices: Vec<[f64; 2]>,
    triangles: Vec<[usize; 3]>,
    boundary: Vec<bool>,
    level: usize,
}

/// Whether `p` lies on the boundary of `(-1,1)² \ ([0,1]×[-1,0])`.
pub fn on_lshape_boundary(p: [f64; 2]) -> bool {
    let [x, y] = p;
    let near = |a: f64, b: f64| (a - b).abs() < GEOM_TOL;
    near(x.abs(), 1.0) || near(y.abs(), 1.0) || (near(x, 0.0) && y < GEOM_TOL) || (near(y, 0.0) && x > -GEOM_TOL)
}

fn signed_area(p: [f64; 2], q: [f64; 2], r: [f64; 2]) -> f64 {
    0.5 * ((q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0]))
}

/// L-shaped mesh with lattice spacing `0.5·2^{-level}`; every lattice square
/// is cut along its bottom-left to top-right diagonal.
pub fn build_lshape_mesh(level: usize) -> TriangleMesh {
    let s = 0.5 * 0.5f64.powi(level as i32);
    let n = 4usize << level;
    let coord = |k: usize| -1.0 + k as f64 * s;
    let mut index = vec![usize::MAX; (n + 1) * (n + 1)];
    let mut vertices = Vec::new();
    for j in 0..=n {
        for i in 0..=n {
            let (x, y) = (coord(i), coord(j));
            if !(x > GEOM_TOL && y < -GEOM_TOL) {
                index[j * (n + 1) + i] = vertices.len();
                vertices.push([x, y]);
            }
        }
    }
    let id = |i: usize, j: usize| index[j * (n + 1) + i];
    let mut triangles = Vec::new();
    for j in 0..n {
        for i in 0..n {
            // the removed quadrant is the lower right one
            if 2 * i >= n && 2 * j < n {
                continue;
            }
            let (a, b, c, d) = (id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1));
            triangles.push([a, b, c]);
            triangles.push([a, c, d]);
        }
    }
    let boundary = vertices.iter().map(|&p| on_lshape_boundary(p)).collect();
    TriangleMesh { vertices, triangles, boundary, level }
}

/// Red refinement: every triangle is split into four through its edge
/// midpoints. New midpoints are flagged by their geometric position.
pub fn refine_uniform(mesh: &TriangleMesh) -> TriangleMesh {
    let mut vertices = mesh.vertices.clone();
    let mut boundary = mesh.boundary.clone();
    let mut midpoints: HashMap<(usize, usize), usize> = HashMap::new();
    let mut midpoint = |a: usize, b: usize, vertices: &mut Vec<[f64; 2]>, boundary: &mut Vec<bool>| {
        let key = (a.min(b), a.max(b));
        *midpoints.entry(key).or_insert_with(|| {
            let (p, q) = (vertices[a], vertices[b]);
            let m = [0.5 * (p[0] + q[0]), 0.5 * (p[1] + q[1])];
            // an interior edge can join two boundary vertices, so test geometrically
            boundary.push(boundary[a] && boundary[b] && on_lshape_boundary(m));
            vertices.push(m);
            vertices.len() - 1
        })
    };
    let mut triangles = Vec::with_capacity(4 * mesh.triangles.len());
    for &[a, b, c] in &mesh.triangles {
        let ab = midpoint(a, b, &mut vertices, &mut boundary);
        let bc = midpoint(b, c, &mut vertices, &mut boundary);
        let ca = midpoint(c, a, &mut vertices, &mut boundary);
        triangles.extend([[a, ab, ca], [ab, b, bc], [ca, bc, c], [ab, bc, ca]]);
    }
    TriangleMesh { vertices, triangles, boundary, level: mesh.level + 1 }
}

impl TriangleMesh {
    /// Validates orientation and index bounds.
    pub fn from_parts(vertices: Vec<[f64; 2]>, triangles: Vec<[usize; 3]>, boundary: Vec<bool>, level: usize) -> Result<Self> {
        if boundary.len() != vertices.len() {
            return Err(Error::InvalidMesh("one boundary flag per vertex expected".into()));
        }
        for (index, t) in triangles.iter().enumerate() {
            if t.iter().any(|&v| v >= vertices.len()) {
                return Err(Error::InvalidMesh(format!("triangle {index} references a missing vertex")));
            }
            let area = signed_area(vertices[t[0]], vertices[t[1]], vertices[t[2]]);
            if !(area > 0.0) {
                return Err(Error::DegenerateElement { index, area });
            }
        }
        Ok(Self { vertices, triangles, boundary, level })
    }

    pub fn vertices(&self) -> &[[f64; 2]] {
        &self.vertices
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn boundary_flags(&self) -> &[bool] {
        &self.boundary
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn n_triangles(&self) -> usize {
        self.triangles.len()
    }

    /// Interior vertices in increasing index order; position = interior dof.
    pub fn interior_vertices(&self) -> Vec<usize> {
        (0..self.vertices.len()).filter(|&v| !self.boundary[v]).collect()
    }

    pub fn boundary_vertices(&self) -> Vec<usize> {
        (0..self.vertices.len()).filter(|&v| self.boundary[v]).collect()
    }

    pub fn n_interior(&self) -> usize {
        self.boundary.iter().filter(|&&b| !b).count()
    }

    /// Signed area; positive for every triangle of a valid mesh.
    pub fn area(&self, t: usize) -> f64 {
        let [a, b, c] = self.triangles[t];
        signed_area(self.vertices[a], self.vertices[b], self.vertices[c])
    }

    pub fn corners(&self, t: usize) -> [[f64; 2]; 3] {
        self.triangles[t].map(|v| self.vertices[v])
    }

    /// `sqrt` of the largest element area, `s/√2` on the lattice meshes.
    pub fn h_x(&self) -> f64 {
        (0..self.n_triangles()).map(|t| self.area(t)).fold(0.0, f64::max).sqrt()
    }

    pub fn n_edges(&self) -> usize {
        let mut edges: Vec<(usize, usize)> = self
            .triangles
            .iter()
            .flat_map(|&[a, b, c]| [(a, b), (b, c), (c, a)])
            .map(|(p, q)| (p.min(q), p.max(q)))
            .collect();
        edges.sort_unstable();
        edges.dedup();
        edges.len()
    }

    /// Plain-text listing: a `vertices` section with `x y on_boundary` lines
    /// and a `triangles` section with 0-based corner indices.
    pub fn write_listing(&self, path: &Path) -> Result<()> {
        let mut out = BufWriter::new(std::fs::File::create(path)?);
        writeln!(out, "vertices {}", self.vertices.len())?;
        for (p, &b) in self.vertices.iter().zip(&self.boundary) {
            writeln!(out, "{:.17e} {:.17e} {}", p[0], p[1], u8::from(b))?;
        }
        writeln!(out, "triangles {}", self.triangles.len())?;
        for t in &self.triangles {
            writeln!(out, "{} {} {}", t[0], t[1], t[2])?;
        }
        out.flush()?;
        Ok(())
    }
}
