//! Plus-space Kloosterman sums S_k^+(m, n, c), theta-multiplier sums S_∞∞,
//! quadratic Weyl sums T_m and streaming partial sums.

mod factored;
mod stream;
mod weyl;

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ntheory::arith::mod_inverse;
use crate::ntheory::{gcd, is_discriminant, kronecker, sigma0, Weight};

pub use factored::theta_sum_factored;
pub use stream::{
    partial_sums, PartialSumRecord, PartialSumStream, StreamConfig, SumFamily, WeightMode,
    DEFAULT_STREAM_CAP,
};
pub use weyl::{square_roots_mod, weyl_sum, weyl_sum_with, weyl_via_kohnen, RootMethod};

/// Tolerance on the imaginary part of sums that are real in exact arithmetic.
pub const REALITY_TOL: f64 = 1e-10;

/// Evaluation strategy for the exponential sums.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KloostermanMethod {
    /// Direct summation over reduced residues.
    #[default]
    Naive,
    /// Multiplicative decomposition into local sums with closed-form Salié sums.
    Factored,
}

/// e(x) = exp(2πi x).
pub fn e(x: f64) -> Complex64 {
    let (s, c) = (2.0 * PI * x).sin_cos();
    Complex64::new(c, s)
}

/// A plus-space Kloosterman sum request.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct KloostermanQuery {
    pub weight: Weight,
    pub m: i64,
    pub n: i64,
    pub c: u64,
}

impl KloostermanQuery {
    pub fn new(weight: Weight, m: i64, n: i64, c: u64) -> Result<Self> {
        if m <= 0 || n <= 0 || c == 0 {
            return Err(Error::Domain(format!("m, n, c must be positive (m={m}, n={n}, c={c})")));
        }
        check_admissible(weight, m, n, c)?;
        Ok(KloostermanQuery { weight, m, n, c })
    }
}

/// Plus-space conditions: 4 | c and (−1)^λ m, (−1)^λ n ≡ 0, 1 (mod 4).
pub fn check_admissible(weight: Weight, m: i64, n: i64, c: u64) -> Result<()> {
    if !c.is_multiple_of(4) {
        return Err(Error::Admissibility(format!("modulus {c} is not a multiple of 4")));
    }
    for (name, v) in [("m", m), ("n", n)] {
        if !is_discriminant(weight.sign() * v) {
            return Err(Error::Admissibility(format!(
                "(-1)^lambda {name} = {} is not 0 or 1 mod 4",
                weight.sign() * v
            )));
        }
    }
    Ok(())
}

/// Theta-multiplier coefficient (c/d) ε_d^{2k} for odd d > 0.
pub(crate) fn theta_coef(c: u64, d: u64, two_k: i32) -> Complex64 {
    let chi = f64::from(kronecker(c as i64, d as i64));
    if d % 4 == 1 {
        Complex64::new(chi, 0.0)
    } else if two_k == 1 {
        Complex64::new(0.0, chi)
    } else {
        Complex64::new(0.0, -chi)
    }
}

/// Per-modulus data reused across many (m, n): reduced residues, inverses,
/// theta coefficients and the table of c-th roots of unity.
#[derive(Debug, Clone)]
pub struct KloostermanTable {
    pub c: u64,
    pub two_k: i32,
    residues: Vec<(u64, u64, Complex64)>,
    roots: Vec<Complex64>,
}

impl KloostermanTable {
    pub fn new(c: u64, weight: Weight) -> Result<Self> {
        if c == 0 || !c.is_multiple_of(4) {
            return Err(Error::Admissibility(format!("modulus {c} is not a multiple of 4")));
        }
        let two_k = weight.two_k();
        let residues = (1..c)
            .step_by(2)
            .filter(|&d| gcd(d as i64, c as i64) == 1)
            .map(|d| {
                let inv = mod_inverse(d as i64, c as i64).expect("coprime") as u64;
                (d, inv, theta_coef(c, d, two_k))
            })
            .collect();
        let roots = (0..c).map(|k| e(k as f64 / c as f64)).collect();
        Ok(KloostermanTable { c, two_k, residues, roots })
    }

    /// S_∞∞(m, n, c, ν_θ^{2k}) without the plus-space normalization.
    pub fn theta_sum(&self, m: i64, n: i64) -> Complex64 {
        let c = self.c as i128;
        let mm = (m as i128).rem_euclid(c);
        let nn = (n as i128).rem_euclid(c);
        let mut acc = Complex64::new(0.0, 0.0);
        for &(d, inv, coef) in &self.residues {
            let idx = (mm * inv as i128 + nn * d as i128) % c;
            acc += coef * self.roots[idx as usize];
        }
        acc
    }
}

fn plus_normalization(weight: Weight, c: u64) -> Complex64 {
    let factor = if c.is_multiple_of(8) { 1.0 } else { 2.0 };
    e(-weight.k() / 4.0) * factor
}

/// S_∞∞(m, n, c, ν_θ^{2k}) = Σ_{d mod c}^* (c/d) ε_d^{2k} e((m d̄ + n d)/c).
pub fn s_theta_infinity(m: i64, n: i64, c: u64, wt: Weight) -> Result<Complex64> {
    s_theta_infinity_with(m, n, c, wt, KloostermanMethod::Naive)
}

pub fn s_theta_infinity_with(m: i64, n: i64, c: u64, wt: Weight, method: KloostermanMethod) -> Result<Complex64> {
    if c == 0 || !c.is_multiple_of(4) {
        return Err(Error::Admissibility(format!("modulus {c} is not a multiple of 4")));
    }
    Ok(match method {
        KloostermanMethod::Naive => theta_sum_naive(m, n, c, wt.two_k()),
        KloostermanMethod::Factored => theta_sum_factored(m, n, c, wt.two_k()),
    })
}

pub(crate) fn theta_sum_naive(m: i64, n: i64, c: u64, two_k: i32) -> Complex64 {
    let ci = c as i128;
    let mm = (m as i128).rem_euclid(ci);
    let nn = (n as i128).rem_euclid(ci);
    let mut acc = Complex64::new(0.0, 0.0);
    for d in (1..c).step_by(2) {
        if gcd(d as i64, c as i64) != 1 {
            continue;
        }
        let inv = mod_inverse(d as i64, c as i64).expect("coprime") as i128;
        let idx = (mm * inv + nn * d as i128) % ci;
        acc += theta_coef(c, d, two_k) * e(idx as f64 / c as f64);
    }
    acc
}

/// The complex value of the plus-space sum for arbitrary integers m, n (admissibility checked).
pub fn s_plus_complex(weight: Weight, m: i64, n: i64, c: u64, method: KloostermanMethod) -> Result<Complex64> {
    check_admissible(weight, m, n, c)?;
    let raw = s_theta_infinity_with(m, n, c, weight, method)?;
    Ok(raw * plus_normalization(weight, c))
}

/// Real part of [`s_plus_complex`] after checking the imaginary part vanishes.
pub fn s_plus_signed(weight: Weight, m: i64, n: i64, c: u64, method: KloostermanMethod) -> Result<f64> {
    let z = s_plus_complex(weight, m, n, c, method)?;
    if z.im.abs() > REALITY_TOL {
        return Err(Error::Precision(format!(
            "S^+ (m={m}, n={n}, c={c}) has imaginary part {:.3e}",
            z.im
        )));
    }
    Ok(z.re)
}

/// S_k^+(m, n, c).
pub fn s_plus(q: &KloostermanQuery) -> Result<f64> {
    s_plus_signed(q.weight, q.m, q.n, q.c, KloostermanMethod::Naive)
}

pub fn s_plus_with(q: &KloostermanQuery, method: KloostermanMethod) -> Result<f64> {
    s_plus_signed(q.weight, q.m, q.n, q.c, method)
}

/// Plus-space sum evaluated from a precomputed table.
pub fn s_plus_from_table(table: &KloostermanTable, m: i64, n: i64) -> Complex64 {
    let w = if table.two_k == 1 { Weight::Half } else { Weight::MinusHalf };
    table.theta_sum(m, n) * plus_normalization(w, table.c)
}

/// Weil-type bound 2 σ₀(c) gcd(m, n, c)^{1/2} √c.
pub fn weil_bound(m: i64, n: i64, c: u64) -> f64 {
    let g = gcd(gcd(m, n), c as i64).max(1);
    2.0 * sigma0(c) as f64 * (g as f64).sqrt() * (c as f64).sqrt()
}
