//! Traces of j_m over CM points of discriminant d < 0.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::eval::{jm_series_double, jm_series_extended, SeriesScalar};
use crate::error::Result;
use crate::precision::{MpReal, PrecisionMode, Real};
use crate::quadforms::{reduced_forms_imaginary, QuadForm};

/// Above this value of π·m·√|d| the double evaluator loses too many digits.
pub const DOUBLE_EXPONENT_LIMIT: f64 = 18.0;

/// Precision chosen automatically for a CM trace.
pub fn auto_precision(d: i64, m: u32) -> PrecisionMode {
    let x = PI * m as f64 * ((-d) as f64).sqrt();
    if x <= DOUBLE_EXPONENT_LIMIT {
        PrecisionMode::Double
    } else {
        PrecisionMode::Extended { bits: 64 + (x / std::f64::consts::LN_2).ceil() as usize + 30 }
    }
}

/// z_A = (−b + i√|d|)/(2a).
pub fn heegner(q: &QuadForm) -> Complex64 {
    let d = q.disc();
    Complex64::new(-(q.b as f64) / (2.0 * q.a as f64), ((-d) as f64).sqrt() / (2.0 * q.a as f64))
}

/// Tr_d(j_m) = (1/ω_d) Σ_A j_m(z_A), precision chosen automatically.
pub fn cm_trace(d: i64, m: u32) -> Result<f64> {
    cm_trace_with(d, m, auto_precision(d, m))
}

/// Tr_d(j_m) at the requested precision.
pub fn cm_trace_with(d: i64, m: u32, mode: PrecisionMode) -> Result<f64> {
    let classes = reduced_forms_imaginary(d)?;
    let omega = classes.omega as f64;
    match mode {
        PrecisionMode::Double => {
            let s = jm_series_double(m)?;
            let mut total = 0.0;
            for f in &classes.forms {
                let z = heegner(f);
                total += s.eval_reduced(z.re, z.im).re;
            }
            Ok(total / omega)
        }
        PrecisionMode::Extended { bits } => {
            let s = jm_series_extended(m)?;
            let coeffs = MpReal::series_coeffs(&s, bits);
            let sqrt_d = MpReal::from_f64((-d) as f64, bits).sqrt();
            let mut total = MpReal::zero(bits);
            for f in &classes.forms {
                let two_a = MpReal::from_f64(2.0 * f.a as f64, bits);
                let x = MpReal::from_f64(-(f.b as f64), bits) / two_a.clone();
                let y = sqrt_d.clone() / two_a;
                total = total + s.eval_reduced_generic(&x, &y, &coeffs).re;
            }
            Ok(total.to_f64() / omega)
        }
    }
}

/// Tr_d(j_1) minus the polar contributions e(−z_A) of the points above height 1.
pub fn cm_trace_deviation(d: i64) -> Result<f64> {
    let classes = reduced_forms_imaginary(d)?;
    let s = jm_series_double(1)?;
    let mut total = 0.0;
    for f in &classes.forms {
        let z = heegner(f);
        let v = if z.im > 1.0 { s.eval_reduced_regular(z.re, z.im) } else { s.eval_reduced(z.re, z.im) };
        total += v.re;
    }
    Ok(total / classes.omega as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ntheory::is_fundamental;

    #[test]
    fn small_traces() {
        for (d, t) in [(-3, -248.0), (-4, 492.0), (-7, -4119.0), (-8, 7256.0)] {
            let v = cm_trace(d, 1).unwrap();
            assert!((v - t).abs() < 1e-6, "d={d}: {v}");
        }
    }

    #[test]
    fn integrality_up_to_500() {
        for d in (-500..0).filter(|&d| is_fundamental(d)) {
            let v = cm_trace(d, 1).unwrap();
            assert!((v - v.round()).abs() < 1e-6, "d={d}: {v}");
        }
    }

    #[test]
    fn extended_agrees_with_double() {
        for d in [-3, -20, -23, -31] {
            let a = cm_trace_with(d, 1, PrecisionMode::Double).unwrap();
            let b = cm_trace_with(d, 1, PrecisionMode::Extended { bits: 128 }).unwrap();
            assert!((a - b).abs() < 1e-6 * a.abs().max(1.0), "d={d}");
        }
    }

    #[test]
    fn deviation_examples() {
        assert!((cm_trace_deviation(-3).unwrap() + 248.0).abs() < 1e-6);
        assert!((cm_trace_deviation(-4).unwrap() - 492.0).abs() < 1e-6);
        let v = cm_trace_deviation(-7).unwrap();
        let want = -4119.0 + (PI * 7f64.sqrt()).exp();
        assert!((v - want).abs() < 1e-6, "{v} vs {want}");
    }
}
