//! Remainders `Σ_{j ≥ n} θ_j^{-p} e^{i θ_j y}` of the kernel series, with
//! `θ_j = π(j + 1/2)`.
//!
//! Away from `y ∈ 2ℤ` the sum is expanded in derivatives of `θ^{-p}`:
//! with `z = e^{iπy}`,
//!
//! ```text
//! Σ_{j≥0} z^j f(n + j) = f(n)/(1 - z) + Σ_{k≥1} Li_{-k}(z) f^{(k)}(n)/k!
//! ```
//!
//! which is asymptotic in `1/(n |1 - z|)`. On `y ∈ 2ℤ` the sum is a Hurwitz
//! zeta value.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

const MAX_TERMS: usize = 48;

#[derive(Debug, Clone, Copy)]
pub(crate) struct TailSum {
    pub value: Complex64,
    /// Magnitude of the last retained term (zero for the zeta branch).
    pub error: f64,
    /// Magnitude of the leading term, used for relative tolerances.
    pub scale: f64,
}

/// Coefficients of `Li_{-k}(z)` as polynomials in `w = z/(1 - z)`:
/// `P_0 = w`, `P_{k+1} = w(1 + w) P_k'`.
fn polylog_polynomials() -> &'static [Vec<f64>] {
    static TABLE: OnceLock<Vec<Vec<f64>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut out = vec![vec![0.0, 1.0]];
        for k in 0..MAX_TERMS {
            let c = &out[k];
            let mut next = vec![0.0; c.len() + 1];
            for i in 1..c.len() {
                next[i] += i as f64 * c[i];
                next[i + 1] += i as f64 * c[i];
            }
            out.push(next);
        }
        out
    })
}

fn horner(coeffs: &[f64], w: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * w + c)
}

/// Hurwitz zeta `ζ(s, a)` for integer `s ≥ 2`, `a > 0`, by Euler-Maclaurin.
pub(crate) fn hurwitz_zeta(s: u32, a: f64) -> f64 {
    // B_{2j} / (2j)!
    const B2J_OVER_FACT: [f64; 8] = [
        1.0 / 12.0,
        -1.0 / 720.0,
        1.0 / 30240.0,
        -1.0 / 1209600.0,
        1.0 / 47900160.0,
        -691.0 / 1307674368000.0,
        1.0 / 74724249600.0,
        -3617.0 / 10670622842880000.0,
    ];
    let sf = s as f64;
    let shift = if a < 24.0 { (24.0 - a).ceil() as usize } else { 0 };
    let mut direct = 0.0;
    for k in (0..shift).rev() {
        direct += (a + k as f64).powi(-(s as i32));
    }
    let b = a + shift as f64;
    let mut sum = b.powf(1.0 - sf) / (sf - 1.0) + 0.5 * b.powf(-sf);
    // rising factorial s(s+1)...(s+2j-2) times b^{-s-2j+1}
    let mut rising = sf;
    let mut power = b.powf(-sf - 1.0);
    for (j, c) in B2J_OVER_FACT.iter().enumerate() {
        if j > 0 {
            let q = sf + (2 * j) as f64;
            rising *= (q - 1.0) * q;
            power /= b * b;
        }
        sum += c * rising * power;
    }
    direct + sum
}

/// `Σ_{j ≥ n} θ_j^{-p} e^{i θ_j y}`.
pub(crate) fn tail_sum(p: u32, n: usize, y: f64) -> TailSum {
    // e^{iθ_j y} has period 4 in y
    let y = y - 4.0 * (y / 4.0).round();
    let a = n as f64 + 0.5;
    let pi_p = PI.powi(-(p as i32));

    if y == 0.0 || y.abs() == 2.0 {
        let zeta = pi_p * hurwitz_zeta(p, a);
        let sign = if y == 0.0 { 1.0 } else { -1.0 };
        return TailSum {
            value: Complex64::new(sign * zeta, 0.0),
            error: 0.0,
            scale: zeta,
        };
    }

    let half = 0.5 * PI * y;
    // 1 - z = -2i sin(πy/2) e^{iπy/2}, w = z/(1 - z) = -1/2 + (i/2) cot(πy/2)
    let w = Complex64::new(-0.5, 0.5 * half.cos() / half.sin());
    let one_minus_z_inv = w + 1.0;

    let polys = polylog_polynomials();
    // f^{(k)}(n)/k! = π^{-p} (-1)^k C(p+k-1, k) a^{-p-k}
    let mut deriv = pi_p * a.powi(-(p as i32));
    let mut sum = one_minus_z_inv * deriv;
    let scale = sum.norm();
    let mut last = scale;
    for k in 1..=MAX_TERMS {
        deriv *= -((p as usize + k - 1) as f64) / (k as f64 * a);
        let term = horner(&polys[k], w) * deriv;
        let mag = term.norm();
        if mag >= last {
            break;
        }
        sum += term;
        last = mag;
        if mag <= 1e-18 * scale {
            break;
        }
    }

    let phase = Complex64::from_polar(1.0, reduced_phase(n, y));
    TailSum {
        value: phase * sum,
        error: last,
        scale,
    }
}

/// `θ_n y` reduced modulo `2π`.
fn reduced_phase(n: usize, y: f64) -> f64 {
    let nf = n as f64;
    let big = (y * nf) % 2.0;
    let small = 0.5 * y;
    PI * ((big + small) % 2.0)
}
