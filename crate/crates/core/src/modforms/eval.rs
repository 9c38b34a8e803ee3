//! Pointwise evaluation of j_m = q^{−m} + Σ_{n≥1} c_m(n) qⁿ at reduced points.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex};

use num_bigint::{BigInt, Sign};
use num_complex::Complex64;

use super::domain::{reduce_generic, reduce_to_fundamental_domain};
use super::faber::jm_coefficients_hecke;
use crate::error::{Error, Result};
use crate::ntheory::sigma1;
use crate::precision::{Cx, Real};

/// Largest m accepted by the evaluators.
pub const MAX_EVAL_M: u32 = 32;

/// Truncated q-expansion of j_m with cached floating data.
#[derive(Debug)]
pub struct JmSeries {
    pub m: u32,
    /// c_m(1), …, c_m(N).
    pub coeffs: Vec<BigInt>,
    ln_abs: Vec<f64>,
    sign: Vec<f64>,
    mp_cache: Mutex<HashMap<usize, Arc<Vec<crate::precision::MpReal>>>>,
}

fn ln_abs_bigint(x: &BigInt) -> f64 {
    if x.sign() == Sign::NoSign {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 1000 {
        use num_traits::ToPrimitive;
        return x.to_f64().map(|v| v.abs().ln()).unwrap_or(f64::NEG_INFINITY);
    }
    let shift = bits - 64;
    let top: BigInt = x.magnitude().clone().into();
    let top: BigInt = top >> shift;
    use num_traits::ToPrimitive;
    top.to_f64().unwrap_or(1.0).ln() + shift as f64 * std::f64::consts::LN_2
}

/// Number of terms so that every omitted term is below e^{log_tol} at the lowest point of the domain.
pub fn required_terms(m: u32, log_tol: f64) -> usize {
    let mf = m as f64;
    let margin = (sigma1(m as u64) as f64).ln() + 2.0;
    let peak = (4.0 * mf / 3.0).ceil() as usize;
    let f = |n: f64| 4.0 * PI * (mf * n).sqrt() - PI * 3f64.sqrt() * n + margin;
    let mut n = peak.max(1);
    while f(n as f64) >= log_tol {
        n += 1;
    }
    n
}

/// Truncation target for double evaluation, relative to the size of the pole at the domain floor.
pub(crate) fn double_log_tol(m: u32) -> f64 {
    -40.0 + PI * 3f64.sqrt() * m as f64
}

/// Absolute truncation target for extended evaluation.
pub(crate) const EXTENDED_LOG_TOL: f64 = -50.0;

type SeriesCache = Mutex<Option<HashMap<(u32, usize), Arc<JmSeries>>>>;

static SERIES: SeriesCache = Mutex::new(None);

/// Shared series for j_m with `n_terms` coefficients.
pub fn jm_series(m: u32, n_terms: usize) -> Result<Arc<JmSeries>> {
    if m == 0 || m > MAX_EVAL_M {
        return Err(Error::Domain(format!("m = {m} outside 1..={MAX_EVAL_M}")));
    }
    let mut guard = SERIES.lock().unwrap_or_else(|e| e.into_inner());
    let map = guard.get_or_insert_with(HashMap::new);
    if let Some(s) = map.get(&(m, n_terms)) {
        return Ok(Arc::clone(s));
    }
    let coeffs = jm_coefficients_hecke(m, n_terms)?;
    let ln_abs = coeffs.iter().map(ln_abs_bigint).collect();
    let sign = coeffs
        .iter()
        .map(|c| match c.sign() {
            Sign::Minus => -1.0,
            Sign::NoSign => 0.0,
            Sign::Plus => 1.0,
        })
        .collect();
    let s = Arc::new(JmSeries { m, coeffs, ln_abs, sign, mp_cache: Mutex::new(HashMap::new()) });
    map.insert((m, n_terms), Arc::clone(&s));
    Ok(s)
}

/// Default series for double-precision evaluation.
pub fn jm_series_double(m: u32) -> Result<Arc<JmSeries>> {
    jm_series(m, required_terms(m, double_log_tol(m)))
}

/// Default series for extended-precision evaluation.
pub fn jm_series_extended(m: u32) -> Result<Arc<JmSeries>> {
    jm_series(m, required_terms(m, EXTENDED_LOG_TOL))
}

impl JmSeries {
    /// j_m at a point already in the fundamental domain (double precision).
    pub fn eval_reduced(&self, x: f64, y: f64) -> Complex64 {
        let m = self.m as f64;
        let (s, c) = (2.0 * PI * (m * x).fract()).sin_cos();
        let pole = (2.0 * PI * m * y).exp();
        let mut re = pole * c;
        let mut im = -pole * s;
        for (i, (&la, &sg)) in self.ln_abs.iter().zip(&self.sign).enumerate() {
            if sg == 0.0 {
                continue;
            }
            let n = (i + 1) as f64;
            let mag = sg * (la - 2.0 * PI * n * y).exp();
            let (s, c) = (2.0 * PI * (n * x).fract()).sin_cos();
            re += mag * c;
            im += mag * s;
        }
        Complex64::new(re, im)
    }

    /// j_m minus its polar term q^{−m}, at a reduced point.
    pub fn eval_reduced_regular(&self, x: f64, y: f64) -> Complex64 {
        let m = self.m as f64;
        let (s, c) = (2.0 * PI * (m * x).fract()).sin_cos();
        let pole = (2.0 * PI * m * y).exp();
        self.eval_reduced(x, y) - Complex64::new(pole * c, -pole * s)
    }

    fn mp_coeffs(&self, bits: usize) -> Arc<Vec<crate::precision::MpReal>> {
        let mut g = self.mp_cache.lock().unwrap_or_else(|e| e.into_inner());
        Arc::clone(g.entry(bits).or_insert_with(|| {
            Arc::new(self.coeffs.iter().map(|c| crate::precision::MpReal::from_bigint(c, bits)).collect())
        }))
    }

    /// j_m at a reduced point for any scalar type.
    pub fn eval_reduced_generic<R: Real>(&self, x: &R, y: &R, coeffs: &[R]) -> Cx<R> {
        let ctx = x.ctx();
        let q = Cx::e(x, y);
        let m = self.m as f64;
        let pole = Cx::e(&(-x.scale(m)), &(-y.scale(m)));
        let mut acc = pole;
        let mut qn = q.clone();
        for c in coeffs {
            acc = acc.add(&qn.scale(c));
            qn = qn.mul(&q);
        }
        let _ = ctx;
        acc
    }
}

/// Scalars that can supply the exact coefficients of a series at their precision.
pub trait SeriesScalar: Real {
    fn series_coeffs(series: &JmSeries, ctx: Self::Ctx) -> Arc<Vec<Self>>;
}

impl SeriesScalar for f64 {
    fn series_coeffs(series: &JmSeries, _: ()) -> Arc<Vec<f64>> {
        Arc::new(series.coeffs.iter().map(|c| f64::from_bigint(c, ())).collect())
    }
}

impl SeriesScalar for crate::precision::MpReal {
    fn series_coeffs(series: &JmSeries, bits: usize) -> Arc<Vec<Self>> {
        series.mp_coeffs(bits)
    }
}

/// j_m(z) in double precision.
pub fn eval_jm(m: u32, z: Complex64) -> Result<Complex64> {
    let s = jm_series_double(m)?;
    let p = reduce_to_fundamental_domain(z)?;
    Ok(s.eval_reduced(p.re, p.im))
}

/// j_m(z) using an explicit number of series terms.
pub fn eval_jm_with_terms(m: u32, z: Complex64, n_terms: usize) -> Result<Complex64> {
    let s = jm_series(m, n_terms)?;
    let p = reduce_to_fundamental_domain(z)?;
    Ok(s.eval_reduced(p.re, p.im))
}

/// j_m(z) for any scalar type (reduction included).
pub fn eval_jm_generic<R: SeriesScalar>(series: &JmSeries, coeffs: &[R], x: R, y: R) -> Result<Cx<R>> {
    let (x, y) = reduce_generic(x, y)?;
    Ok(series.eval_reduced_generic(&x, &y, coeffs))
}
