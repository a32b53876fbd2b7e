//! Gauss-Legendre rules on `[0, 1]`, triangle rules in barycentric
//! coordinates, and their space-time tensor products.

use std::f64::consts::PI;

/// `n`-point Gauss-Legendre rule mapped to `[0, 1]` (weights sum to 1).
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one point");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                // three-term recurrence for P_n(x) and P_n'(x)
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                let pn = if n == 1 { x } else { p1 };
                let pm = if n == 1 { 1.0 } else { p0 };
                dp = n as f64 * (x * pn - pm) / (x * x - 1.0);
                let dx = pn / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            if n == 1 {
                x = 0.0;
                dp = 1.0;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = 0.5 * (1.0 - x);
            nodes[n - 1 - i] = 0.5 * (1.0 + x);
            weights[i] = 0.5 * w;
            weights[n - 1 - i] = 0.5 * w;
        }
        if n == 1 {
            nodes[0] = 0.5;
            weights[0] = 1.0;
        }
        Self { nodes, weights }
    }

    /// Fewest points integrating polynomials of degree `degree` exactly.
    pub fn with_degree(degree: usize) -> Self {
        Self::new(degree / 2 + 1)
    }
}

/// Rule on the reference triangle: barycentric points, weights summing to 1
/// (multiply by the element area).
#[derive(Debug, Clone)]
pub struct TriangleRule {
    pub points: Vec<[f64; 3]>,
    pub weights: Vec<f64>,
}

impl TriangleRule {
    /// Seven-point rule, exact for degree 5.
    pub fn degree5() -> Self {
        let r15 = 15f64.sqrt();
        let a1 = (6.0 - r15) / 21.0;
        let a2 = (6.0 + r15) / 21.0;
        let w1 = (155.0 - r15) / 1200.0;
        let w2 = (155.0 + r15) / 1200.0;
        let third = 1.0 / 3.0;
        let mut points = vec![[third, third, third]];
        let mut weights = vec![9.0 / 40.0];
        for (a, w) in [(a1, w1), (a2, w2)] {
            let b = 1.0 - 2.0 * a;
            points.extend([[a, a, b], [a, b, a], [b, a, a]]);
            weights.extend([w, w, w]);
        }
        Self { points, weights }
    }

    /// Collapsed Gauss product rule exact for degree `degree`.
    pub fn collapsed(degree: usize) -> Self {
        // the collapse adds one degree in the first direction
        let g = GaussLegendre::with_degree(degree + 1);
        let mut points = Vec::new();
        let mut weights = Vec::new();
        for (&u, &wu) in g.nodes.iter().zip(&g.weights) {
            for (&v, &wv) in g.nodes.iter().zip(&g.weights) {
                let l1 = u;
                let l2 = v * (1.0 - u);
                points.push([1.0 - l1 - l2, l1, l2]);
                weights.push(2.0 * wu * wv * (1.0 - u));
            }
        }
        Self { points, weights }
    }

    /// The seven-point rule up to degree 5, collapsed rules beyond.
    pub fn with_degree(degree: usize) -> Self {
        if degree <= 5 {
            Self::degree5()
        } else {
            Self::collapsed(degree)
        }
    }
}

/// Tensor product of a triangle rule and a Gauss rule in time.
#[derive(Debug, Clone)]
pub struct SpaceTimeRule {
    pub space: TriangleRule,
    pub time: GaussLegendre,
}

impl SpaceTimeRule {
    /// Order `q`: triangle rule of degree `q`, `⌈(q + 3)/2⌉` Gauss points in
    /// time. Order 5 is the seven-point rule with four points in time.
    pub fn with_order(q: usize) -> Self {
        Self {
            space: TriangleRule::with_degree(q),
            time: GaussLegendre::new((q + 3).div_ceil(2)),
        }
    }
}
