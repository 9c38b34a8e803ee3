//! Weyl-sum series Σ_{4|c ≤ X} T_m(d′, d; c)·k(4πm√D/c) with a partial-summation tail estimate.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::special::kernel_f;
use crate::error::Result;
use crate::kloosterman::{partial_sums, StreamConfig, SumFamily, WeightMode};
use crate::quadforms::GenusCharacterSpec;

/// Kernel applied to α/c with α = 4πm√D.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesKernel {
    /// sin x, for cycle integrals.
    Sine,
    /// f(x) = Ci(2x) sin x − Si(2x) cos x + log 2 · sin x, for surface integrals.
    Surface,
}

impl SeriesKernel {
    pub fn eval(self, x: f64) -> f64 {
        match self {
            SeriesKernel::Sine => x.sin(),
            SeriesKernel::Surface => kernel_f(x),
        }
    }
}

/// Truncated series with its tail estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelSeries {
    pub cutoff: f64,
    pub terms: usize,
    /// Σ_{4|c ≤ X} T·k(α/c).
    pub partial: f64,
    /// Estimate of Σ_{c > X}, from the mean of S(t) = Σ_{c ≤ t} T/√c over [X/2, X].
    pub tail: f64,
}

impl KernelSeries {
    pub fn corrected(&self) -> f64 {
        self.partial + self.tail
    }
}

/// Sums the kernel series up to `cutoff`.
pub fn kernel_series(
    spec: &GenusCharacterSpec,
    m: u32,
    kernel: SeriesKernel,
    cutoff: f64,
    cfg: StreamConfig,
) -> Result<KernelSeries> {
    let alpha = 4.0 * PI * m as f64 * (spec.disc as f64).sqrt();
    let records = partial_sums(SumFamily::Weyl { m: m as i64, spec: *spec }, cutoff, WeightMode::InvSqrtC, cfg)?;
    let mut partial = 0.0;
    for r in &records {
        partial += r.term * kernel.eval(alpha / r.x as f64);
    }
    let tail = match records.last() {
        None => 0.0,
        Some(last) => {
            let x = last.x as f64;
            let window: Vec<f64> = records.iter().filter(|r| r.x as f64 >= x / 2.0).map(|r| r.value).collect();
            let mean = window.iter().sum::<f64>() / window.len() as f64;
            // Σ_{c>X} ΔS(c)·g(c) ≈ (S(∞) − S(X))·g(X) with g(c) = √c·k(α/c).
            (mean - last.value) * x.sqrt() * kernel.eval(alpha / x)
        }
    };
    Ok(KernelSeries { cutoff, terms: records.len(), partial, tail })
}
