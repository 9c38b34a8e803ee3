//! Exact q-expansions of E₄, Δ and j.

use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ntheory::arith::divisors;

/// Default cap on the number of j coefficients handed out by [`j_coefficients`].
pub const DEFAULT_J_CAP: usize = 256;

/// Hard limit for the internal coefficient table used by evaluators.
pub const J_TABLE_LIMIT: usize = 8192;

/// A Laurent series Σ_{n ≥ leading_exponent} coeffs[n − leading_exponent] qⁿ with exact coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QSeries {
    pub leading_exponent: i64,
    pub coeffs: Vec<BigInt>,
}

impl QSeries {
    /// Coefficient of qⁿ (zero outside the stored range).
    pub fn coeff(&self, n: i64) -> BigInt {
        let i = n - self.leading_exponent;
        if i < 0 || i as usize >= self.coeffs.len() {
            BigInt::zero()
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    /// Largest exponent stored.
    pub fn last_exponent(&self) -> i64 {
        self.leading_exponent + self.coeffs.len() as i64 - 1
    }
}

fn sigma(n: u64, k: u32) -> BigInt {
    divisors(n).into_iter().map(|d| BigInt::from(d).pow(k)).sum()
}

/// E₄ = 1 + 240 Σ σ₃(n) qⁿ through q^{len−1}.
pub fn e4_series(len: usize) -> Vec<BigInt> {
    (0..len)
        .map(|n| if n == 0 { BigInt::one() } else { sigma(n as u64, 3) * 240 })
        .collect()
}

/// Coefficients of Π (1 − qⁿ)^k through q^{len−1}, by the logarithmic-derivative recurrence
/// n a_n = −k Σ_{j=1}^{n} σ₁(j) a_{n−j}.
pub fn eta_product_power(k: i64, len: usize) -> Vec<BigInt> {
    let sig: Vec<BigInt> = (0..len).map(|n| if n == 0 { BigInt::zero() } else { sigma(n as u64, 1) }).collect();
    let mut a = vec![BigInt::zero(); len];
    if len == 0 {
        return a;
    }
    a[0] = BigInt::one();
    for n in 1..len {
        let mut s = BigInt::zero();
        for j in 1..=n {
            s += &sig[j] * &a[n - j];
        }
        a[n] = -(s * k) / n as i64;
    }
    a
}

/// Δ = q Π (1 − qⁿ)^24 as a series starting at q¹.
pub fn delta_series(len: usize) -> QSeries {
    QSeries { leading_exponent: 1, coeffs: eta_product_power(24, len) }
}

fn mul_trunc(a: &[BigInt], b: &[BigInt], len: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// c(n) for −1 ≤ n ≤ `n_max`, as j = E₄³/Δ.
fn compute_j(n_max: usize) -> Vec<BigInt> {
    let len = n_max + 2;
    let e4 = e4_series(len);
    let e4sq = mul_trunc(&e4, &e4, len);
    let e4cube = mul_trunc(&e4sq, &e4, len);
    let inv = eta_product_power(-24, len);
    mul_trunc(&e4cube, &inv, len)
}

static J_TABLE: Mutex<Option<Arc<Vec<BigInt>>>> = Mutex::new(None);

/// Shared table of c(−1), …, c(n_max) (grown on demand, never shrunk).
pub(crate) fn j_table(n_max: usize) -> Result<Arc<Vec<BigInt>>> {
    if n_max > J_TABLE_LIMIT {
        return Err(Error::Resource(format!("{n_max} j coefficients exceed the limit {J_TABLE_LIMIT}")));
    }
    let mut guard = J_TABLE.lock().unwrap_or_else(|e| e.into_inner());
    if let Some(t) = guard.as_ref() {
        if t.len() >= n_max + 2 {
            return Ok(Arc::clone(t));
        }
    }
    let want = n_max.max(64).max(guard.as_ref().map_or(0, |t| 2 * t.len())).min(J_TABLE_LIMIT);
    let table = Arc::new(compute_j(want));
    *guard = Some(Arc::clone(&table));
    Ok(table)
}

/// Exact q-expansion of j through q^N, subject to `cap`.
pub fn j_coefficients_capped(n: usize, cap: usize) -> Result<QSeries> {
    if n > cap {
        return Err(Error::Resource(format!("N = {n} exceeds the cap {cap}")));
    }
    let t = j_table(n)?;
    Ok(QSeries { leading_exponent: -1, coeffs: t[..n + 2].to_vec() })
}

/// Exact q-expansion of j = q^{−1} + 744 + 196884 q + … through q^N.
pub fn j_coefficients(n: usize) -> Result<QSeries> {
    j_coefficients_capped(n, DEFAULT_J_CAP)
}

/// The reference computation without the shared table (used to validate caches).
pub fn j_coefficients_uncached(n: usize) -> QSeries {
    QSeries { leading_exponent: -1, coeffs: compute_j(n) }
}
