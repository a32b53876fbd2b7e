use std::ops::{AddAssign, Mul, Sub, SubAssign};

use num_complex::Complex64;

/// Entry type of a symmetric `L D Lᵀ` factorization.
///
/// Block scalars are not commutative: "symmetric" means `a_ji = a_ijᵀ`, and
/// `transpose` is the identity for `f64` and for complex numbers (complex
/// symmetric systems are factorized without conjugation).
pub trait FactorScalar:
    Copy + Send + Sync + Sub<Output = Self> + Mul<Output = Self> + AddAssign + SubAssign + 'static
{
    type Vector: Copy + Send + Sync + SubAssign + 'static;

    fn zero() -> Self;
    fn zero_vector() -> Self::Vector;
    fn transpose(self) -> Self;
    /// Only called on pivots that passed the threshold test.
    fn inverse(self) -> Self;
    /// Largest entry magnitude.
    fn magnitude(self) -> f64;
    /// Smallest singular value (the size of a pivot).
    fn pivot_size(self) -> f64;
    fn apply(self, v: Self::Vector) -> Self::Vector;
    fn apply_transpose(self, v: Self::Vector) -> Self::Vector;
}

impl FactorScalar for f64 {
    type Vector = f64;

    fn zero() -> Self {
        0.0
    }
    fn zero_vector() -> f64 {
        0.0
    }
    fn transpose(self) -> Self {
        self
    }
    fn inverse(self) -> Self {
        1.0 / self
    }
    fn magnitude(self) -> f64 {
        self.abs()
    }
    fn pivot_size(self) -> f64 {
        self.abs()
    }
    fn apply(self, v: f64) -> f64 {
        self * v
    }
    fn apply_transpose(self, v: f64) -> f64 {
        self * v
    }
}

impl FactorScalar for Complex64 {
    type Vector = Complex64;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn zero_vector() -> Complex64 {
        Complex64::new(0.0, 0.0)
    }
    fn transpose(self) -> Self {
        self
    }
    fn inverse(self) -> Self {
        self.inv()
    }
    fn magnitude(self) -> f64 {
        self.norm()
    }
    fn pivot_size(self) -> f64 {
        self.norm()
    }
    fn apply(self, v: Complex64) -> Complex64 {
        self * v
    }
    fn apply_transpose(self, v: Complex64) -> Complex64 {
        self * v
    }
}

/// Real 2x2 block `[[m[0][0], m[0][1]], [m[1][0], m[1][1]]]`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Block2 {
    pub m: [[f64; 2]; 2],
}

/// Two-component real vector, the right-hand side entry type of [`Block2`].
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Pair(pub [f64; 2]);

impl Block2 {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Self { m: [[a, b], [c, d]] }
    }

    pub fn det(&self) -> f64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }
}

impl Sub for Block2 {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        let mut r = self;
        r -= o;
        r
    }
}

impl Mul for Block2 {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let (a, b) = (self.m, o.m);
        Self {
            m: [
                [a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]],
                [a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]],
            ],
        }
    }
}

impl AddAssign for Block2 {
    fn add_assign(&mut self, o: Self) {
        for i in 0..2 {
            for j in 0..2 {
                self.m[i][j] += o.m[i][j];
            }
        }
    }
}

impl SubAssign for Block2 {
    fn sub_assign(&mut self, o: Self) {
        for i in 0..2 {
            for j in 0..2 {
                self.m[i][j] -= o.m[i][j];
            }
        }
    }
}

impl SubAssign for Pair {
    fn sub_assign(&mut self, o: Self) {
        self.0[0] -= o.0[0];
        self.0[1] -= o.0[1];
    }
}

impl FactorScalar for Block2 {
    type Vector = Pair;

    fn zero() -> Self {
        Self::default()
    }
    fn zero_vector() -> Pair {
        Pair::default()
    }
    fn transpose(self) -> Self {
        Self::new(self.m[0][0], self.m[1][0], self.m[0][1], self.m[1][1])
    }
    fn inverse(self) -> Self {
        let det = self.det();
        Self::new(self.m[1][1] / det, -self.m[0][1] / det, -self.m[1][0] / det, self.m[0][0] / det)
    }
    fn magnitude(self) -> f64 {
        self.m.iter().flatten().fold(0.0, |a, v| a.max(v.abs()))
    }
    fn pivot_size(self) -> f64 {
        // σ_max σ_min = |det|, σ_max² + σ_min² = ‖B‖_F²
        let f2: f64 = self.m.iter().flatten().map(|v| v * v).sum();
        let det = self.det().abs();
        let s = (f2 + 2.0 * det).sqrt();
        let d = (f2 - 2.0 * det).max(0.0).sqrt();
        if s == 0.0 {
            0.0
        } else {
            2.0 * det / (s + d)
        }
    }
    fn apply(self, v: Pair) -> Pair {
        let [x, y] = v.0;
        Pair([self.m[0][0] * x + self.m[0][1] * y, self.m[1][0] * x + self.m[1][1] * y])
    }
    fn apply_transpose(self, v: Pair) -> Pair {
        let [x, y] = v.0;
        Pair([self.m[0][0] * x + self.m[1][0] * y, self.m[0][1] * x + self.m[1][1] * y])
    }
}
