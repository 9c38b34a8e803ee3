//! Reduction of points of the upper half-plane to the standard fundamental domain.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::precision::Real;

/// Smallest imaginary part accepted by the reduction.
pub const MIN_IMAG: f64 = 1e-8;

const MAX_STEPS: usize = 10_000;

/// A reduced point z′ = γ z with −1/2 < Re z′ ≤ 1/2 and |z′| ≥ 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DomainPoint {
    pub re: f64,
    pub im: f64,
    /// γ ∈ SL₂(ℤ) with z′ = γ z.
    pub word: [[i64; 2]; 2],
}

impl DomainPoint {
    pub fn z(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    pub fn in_domain(&self) -> bool {
        self.re > -0.5 - 1e-12 && self.re <= 0.5 + 1e-12 && self.re * self.re + self.im * self.im >= 1.0 - 1e-12
    }
}

fn mat_mul(a: [[i64; 2]; 2], b: [[i64; 2]; 2]) -> [[i64; 2]; 2] {
    [
        [a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]],
        [a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]],
    ]
}

/// Integer shift bringing x into (−1/2, 1/2].
fn shift_for(x: f64) -> f64 {
    (x - 0.5).ceil()
}

/// Reduces `z` to the fundamental domain, recording the reducing word.
pub fn reduce_to_fundamental_domain(z: Complex64) -> Result<DomainPoint> {
    if !(z.im > MIN_IMAG) || !z.re.is_finite() {
        return Err(Error::Precision(format!("Im z = {} is below {MIN_IMAG}", z.im)));
    }
    let (mut x, mut y) = (z.re, z.im);
    let mut word = [[1i64, 0], [0, 1]];
    for _ in 0..MAX_STEPS {
        let n = shift_for(x);
        if n != 0.0 {
            x -= n;
            word = mat_mul([[1, -(n as i64)], [0, 1]], word);
        }
        let r2 = x * x + y * y;
        if r2 < 1.0 - 1e-15 {
            x = -x / r2;
            y /= r2;
            word = mat_mul([[0, -1], [1, 0]], word);
        } else {
            return Ok(DomainPoint { re: x, im: y, word });
        }
    }
    Err(Error::Precision(format!("reduction of {z} did not terminate")))
}

/// Reduction for any scalar type; decisions are taken on `f64` shadows.
pub fn reduce_generic<R: Real>(x: R, y: R) -> Result<(R, R)> {
    if !(y.to_f64() > MIN_IMAG) {
        return Err(Error::Precision(format!("Im z = {} is below {MIN_IMAG}", y.to_f64())));
    }
    let (mut x, mut y) = (x, y);
    let ctx = x.ctx();
    for _ in 0..MAX_STEPS {
        let n = shift_for(x.to_f64());
        if n != 0.0 {
            x = x - R::from_f64(n, ctx);
        }
        let r2 = x.clone() * x.clone() + y.clone() * y.clone();
        if r2.to_f64() < 1.0 - 1e-15 {
            x = -(x / r2.clone());
            y = y / r2;
        } else {
            return Ok((x, y));
        }
    }
    Err(Error::Precision("reduction did not terminate".into()))
}

/// Applies γ = [[a, b], [c, d]] to z.
pub fn mobius(g: [[i64; 2]; 2], z: Complex64) -> Complex64 {
    let [[a, b], [c, d]] = g;
    (z * a as f64 + b as f64) / (z * c as f64 + d as f64)
}
