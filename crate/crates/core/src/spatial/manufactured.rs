use std::f64::consts::PI;

/// Exact solution with its derivatives, for error measurement.
pub trait ExactSolution: Sync {
    fn u(&self, x: [f64; 2], t: f64) -> f64;
    fn grad_x(&self, x: [f64; 2], t: f64) -> [f64; 2];
    fn u_t(&self, x: [f64; 2], t: f64) -> f64;
}

/// `u(x, t) = 5/(2πt) · exp(-|x - c|²/(4t)) · sin(π x₁ x₂)` with `c = (1/4, -1/4)`:
/// a heat kernel centred at `c` times a factor vanishing on both axes.
/// `u → 0` as `t → 0` away from `c`, and `c` lies outside the L-shape.
#[derive(Debug, Clone, Copy, Default)]
pub struct ManufacturedSolution;

impl ManufacturedSolution {
    const CENTER: [f64; 2] = [0.25, -0.25];

    fn kernel(x: [f64; 2], t: f64) -> (f64, f64) {
        let dx = x[0] - Self::CENTER[0];
        let dy = x[1] - Self::CENTER[1];
        let r2 = dx * dx + dy * dy;
        (5.0 / (2.0 * PI * t) * (-r2 / (4.0 * t)).exp(), r2)
    }

    /// `f = ∂_t u - Δ_x u`.
    ///
    /// The heat kernel `g` satisfies `g_t = Δg`, so with `S = sin(π x₁ x₂)`
    /// only `-2∇g·∇S - g ΔS` remains.
    pub fn rhs(&self, x: [f64; 2], t: f64) -> f64 {
        let (g, _) = Self::kernel(x, t);
        let p = PI * x[0] * x[1];
        let (s, c) = p.sin_cos();
        let dx = x[0] - Self::CENTER[0];
        let dy = x[1] - Self::CENTER[1];
        g * (PI * c / t * (dx * x[1] + dy * x[0]) + PI * PI * (x[0] * x[0] + x[1] * x[1]) * s)
    }
}

impl ExactSolution for ManufacturedSolution {
    fn u(&self, x: [f64; 2], t: f64) -> f64 {
        let (g, _) = Self::kernel(x, t);
        g * (PI * x[0] * x[1]).sin()
    }

    fn grad_x(&self, x: [f64; 2], t: f64) -> [f64; 2] {
        let (g, _) = Self::kernel(x, t);
        let (s, c) = (PI * x[0] * x[1]).sin_cos();
        let dx = x[0] - Self::CENTER[0];
        let dy = x[1] - Self::CENTER[1];
        [
            -g * dx / (2.0 * t) * s + g * PI * c * x[1],
            -g * dy / (2.0 * t) * s + g * PI * c * x[0],
        ]
    }

    fn u_t(&self, x: [f64; 2], t: f64) -> f64 {
        let (g, r2) = Self::kernel(x, t);
        g * (-1.0 / t + r2 / (4.0 * t * t)) * (PI * x[0] * x[1]).sin()
    }
}

/// Exact solution given by plain closures.
pub struct ClosureSolution<U, G, D> {
    pub u: U,
    pub grad_x: G,
    pub u_t: D,
}

impl<U, G, D> ExactSolution for ClosureSolution<U, G, D>
where
    U: Fn([f64; 2], f64) -> f64 + Sync,
    G: Fn([f64; 2], f64) -> [f64; 2] + Sync,
    D: Fn([f64; 2], f64) -> f64 + Sync,
{
    fn u(&self, x: [f64; 2], t: f64) -> f64 {
        (self.u)(x, t)
    }

    fn grad_x(&self, x: [f64; 2], t: f64) -> [f64; 2] {
        (self.grad_x)(x, t)
    }

    fn u_t(&self, x: [f64; 2], t: f64) -> f64 {
        (self.u_t)(x, t)
    }
}
