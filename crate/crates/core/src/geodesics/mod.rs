//! Cycle integrals, winding numbers and surface integrals of j_m, directly and via Weyl-sum series.

pub mod cycle;
pub mod quadrature;
pub mod scan;
pub mod series;
pub mod special;
pub mod surface;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::{try_ordered_map, Execution};
use crate::kloosterman::StreamConfig;
use crate::modforms::jm_series_double;
use crate::ntheory::{is_fundamental, is_square, sigma1};
use crate::precision::PrecisionMode;
use crate::quadforms::{genus_character, reduced_forms_imaginary, zagier_cycles, GenusCharacterSpec};

pub use cycle::{class_cycle_integral, class_cycle_integral_detailed, cycle_arcs, single_segment_integral, CycleArc, CycleIntegral};
pub use scan::{asymptotic_scan, asymptotic_scan_each, odd_fundamental_discriminants, scan_csv_header, DSelector, ScanRow};
pub use series::{kernel_series, KernelSeries, SeriesKernel};
pub use special::{cisi, kernel_f};
pub use surface::{nu_mass, nu_mass_grid, winding_number, DomainPiece};

/// Largest m·√D handled in double precision.
pub const DOUBLE_BUDGET: f64 = 8.0;

/// Largest m·√D for which [`QuadratureSpec::auto`] stays in double precision: rounding
/// of integrands of size e^{πm√D} then stays near 10⁻¹⁰.
pub const AUTO_DOUBLE_BUDGET: f64 = 4.5;

/// Default cutoff X of the series methods.
pub const DEFAULT_CUTOFF: f64 = 1e5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuadratureScheme {
    AdaptiveGauss,
    CompositeGauss,
}

/// Quadrature settings for cycle integrals. Extended precision always uses the composite rule.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub scheme: QuadratureScheme,
    pub abs_tol: f64,
    pub max_nodes: usize,
    pub precision_mode: PrecisionMode,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            scheme: QuadratureScheme::AdaptiveGauss,
            abs_tol: 1e-8,
            max_nodes: 4_000_000,
            precision_mode: PrecisionMode::Double,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0) || self.max_nodes == 0 {
            return Err(Error::Domain("quadrature needs abs_tol > 0 and a positive node budget".into()));
        }
        if let PrecisionMode::Extended { bits } = self.precision_mode {
            if bits < 64 {
                return Err(Error::Domain(format!("extended precision needs ≥ 64 bits, got {bits}")));
            }
        }
        Ok(())
    }

    /// Double precision when m√D ≤ [`AUTO_DOUBLE_BUDGET`], otherwise enough bits for integrands of size e^{πm√D}.
    pub fn auto(disc: i64, m: u32) -> Self {
        let x = m as f64 * (disc as f64).sqrt();
        if x <= AUTO_DOUBLE_BUDGET {
            return QuadratureSpec::default();
        }
        let bits = 64 + (PI * x / std::f64::consts::LN_2).ceil() as usize + 40;
        QuadratureSpec {
            scheme: QuadratureScheme::CompositeGauss,
            abs_tol: 1e-6,
            precision_mode: PrecisionMode::Extended { bits },
            ..QuadratureSpec::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TraceMethod {
    Direct,
    Series,
    SurfaceDirect,
    SurfaceSeries,
}

impl TraceMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            TraceMethod::Direct => "direct",
            TraceMethod::Series => "series",
            TraceMethod::SurfaceDirect => "surface_direct",
            TraceMethod::SurfaceSeries => "surface_series",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "direct" => TraceMethod::Direct,
            "series" => TraceMethod::Series,
            "surface_direct" => TraceMethod::SurfaceDirect,
            "surface_series" => TraceMethod::SurfaceSeries,
            _ => return Err(Error::Domain(format!("unknown method {s:?}"))),
        })
    }

    pub fn is_surface(self) -> bool {
        matches!(self, TraceMethod::SurfaceDirect | TraceMethod::SurfaceSeries)
    }
}

/// Settings shared by the trace evaluators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceSettings {
    /// `None` picks [`QuadratureSpec::auto`].
    pub quadrature: Option<QuadratureSpec>,
    pub cutoff: f64,
    pub tail_correction: bool,
    /// Gauss order per dimension for surface integrals.
    pub surface_order: usize,
    pub exec: Execution,
}

impl Default for TraceSettings {
    fn default() -> Self {
        TraceSettings {
            quadrature: None,
            cutoff: DEFAULT_CUTOFF,
            tail_correction: true,
            surface_order: 48,
            exec: Execution::Parallel,
        }
    }
}

impl TraceSettings {
    fn stream(&self) -> StreamConfig {
        StreamConfig::default().with_exec(self.exec)
    }
}

/// One evaluated trace.
///
/// Cycle traces (`direct`, `series`) are in the arc-length normalization ∫ j_m ds, with
/// `normalized_value` = value/2π. Surface traces are already normalized by 1/4π, and
/// `normalized_value` = value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceReport {
    #[serde(rename = "D")]
    pub disc: i64,
    pub d: i64,
    pub m: u32,
    pub method: TraceMethod,
    pub value: f64,
    pub main_term: f64,
    pub residual: f64,
    pub normalized_value: f64,
    /// Series cutoff X, or the quadrature tolerance for direct methods.
    pub cutoff_or_tol: f64,
    /// Tail estimate (series) or quadrature error estimate (direct).
    pub error_estimate: f64,
    /// False for discriminants outside the odd fundamental setting of the asymptotic results.
    pub in_hypotheses: bool,
}

impl TraceReport {
    #[allow(clippy::too_many_arguments)]
    fn new(disc: i64, d: i64, m: u32, method: TraceMethod, value: f64, main_term: f64, cutoff_or_tol: f64, error_estimate: f64) -> Self {
        let normalized_value = if method.is_surface() { value } else { value / (2.0 * PI) };
        TraceReport {
            disc,
            d,
            m,
            method,
            value,
            main_term,
            residual: value - main_term,
            normalized_value,
            cutoff_or_tol,
            error_estimate,
            in_hypotheses: disc % 2 == 1 && is_fundamental(disc),
        }
    }

    /// value/2π for cycle traces.
    pub fn normalized(&self) -> f64 {
        self.normalized_value
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

fn check_m(m: u32) -> Result<()> {
    if m == 0 {
        return Err(Error::Domain("m must be positive".into()));
    }
    Ok(())
}

/// −24·δ·σ₁(m)·(total geodesic length), with δ = 1 exactly when χ_d is trivial.
pub fn cycle_main_term(spec: &GenusCharacterSpec, m: u32) -> Result<f64> {
    if !spec.is_trivial() {
        return Ok(0.0);
    }
    let total: f64 = zagier_cycles(spec.disc)?.iter().map(|c| c.length()).sum();
    Ok(-24.0 * sigma1(m as u64) as f64 * total)
}

/// −24·σ₁(m)·h(d)h(d′)/(ω_d ω_{d′}) for d < 0, else 0.
pub fn surface_main_term(spec: &GenusCharacterSpec, m: u32) -> Result<f64> {
    if spec.d > 0 {
        return Ok(0.0);
    }
    let a = reduced_forms_imaginary(spec.d)?;
    let b = reduced_forms_imaginary(spec.d_prime)?;
    let mass = (a.class_number() * b.class_number()) as f64 / (a.omega * b.omega) as f64;
    Ok(-24.0 * sigma1(m as u64) as f64 * mass)
}

/// Tr_{d,d′}(j_m) over closed geodesics, directly or by the sine-kernel series.
pub fn trace_cycle(disc: i64, d: i64, m: u32, method: TraceMethod, settings: &TraceSettings) -> Result<TraceReport> {
    check_m(m)?;
    let spec = GenusCharacterSpec::new(disc, d)?;
    if disc <= 0 || is_square(disc) {
        return Err(Error::Domain(format!("{disc} is not a positive nonsquare discriminant")));
    }
    match method {
        TraceMethod::Direct => {
            let quad = settings.quadrature.unwrap_or_else(|| QuadratureSpec::auto(disc, m));
            if d < 0 {
                return Ok(TraceReport::new(disc, d, m, method, 0.0, 0.0, quad.abs_tol, 0.0));
            }
            quad.validate()?;
            cycle::check_budget(disc, m, &quad)?;
            let cycles = zagier_cycles(disc)?;
            let parts = try_ordered_map(settings.exec, &cycles, |c| -> Result<(f64, f64)> {
                let chi = genus_character(&spec, &c.forms[0])?;
                if chi == 0 {
                    return Ok((0.0, 0.0));
                }
                let r = class_cycle_integral_detailed(c, m, &quad)?;
                Ok((chi as f64 * r.value, r.error))
            })?;
            let value = parts.iter().map(|p| p.0).sum();
            let error = parts.iter().map(|p| p.1).sum();
            let main = cycle_main_term(&spec, m)?;
            Ok(TraceReport::new(disc, d, m, method, value, main, quad.abs_tol, error))
        }
        TraceMethod::Series => {
            let s = kernel_series(&spec, m, SeriesKernel::Sine, settings.cutoff, settings.stream())?;
            let sum = if settings.tail_correction { s.corrected() } else { s.partial };
            let main = cycle_main_term(&spec, m)?;
            let value = 2.0 * PI * sum + main;
            Ok(TraceReport::new(disc, d, m, method, value, main, settings.cutoff, 2.0 * PI * s.tail.abs()))
        }
        _ => Err(Error::Mode(format!("{} is a surface method; use surface_trace", method.as_str()))),
    }
}

/// Regularized surface trace (1/4π) Σ χ_d ∫_ℱ j_m ν_Q dμ, directly or by the f-kernel series.
pub fn surface_trace(disc: i64, d: i64, m: u32, method: TraceMethod, settings: &TraceSettings) -> Result<TraceReport> {
    check_m(m)?;
    let spec = GenusCharacterSpec::new(disc, d)?;
    surface::check_surface_args(&spec)?;
    let main = surface_main_term(&spec, m)?;
    match method {
        TraceMethod::SurfaceDirect => {
            let order = settings.surface_order;
            if d > 0 {
                return Ok(TraceReport::new(disc, d, m, method, 0.0, 0.0, order as f64, 0.0));
            }
            let quad = settings.quadrature.unwrap_or_default();
            if quad.precision_mode != PrecisionMode::Double {
                return Err(Error::Mode("surface quadrature runs in double precision only".into()));
            }
            cycle::check_budget(disc, m, &quad)?;
            let series = jm_series_double(m)?;
            let (value, err) = surface::surface_integral(&spec, &series, order)?;
            Ok(TraceReport::new(disc, d, m, method, value, main, order as f64, err))
        }
        TraceMethod::SurfaceSeries => {
            if d > 0 {
                return Ok(TraceReport::new(disc, d, m, method, 0.0, 0.0, settings.cutoff, 0.0));
            }
            let s = kernel_series(&spec, m, SeriesKernel::Surface, settings.cutoff, settings.stream())?;
            let sum = if settings.tail_correction { s.corrected() } else { s.partial };
            let value = sum / PI + main;
            Ok(TraceReport::new(disc, d, m, method, value, main, settings.cutoff, s.tail.abs() / PI))
        }
        _ => Err(Error::Mode(format!("{} is a cycle method; use trace_cycle", method.as_str()))),
    }
}

/// Dispatches on the method.
pub fn trace(disc: i64, d: i64, m: u32, method: TraceMethod, settings: &TraceSettings) -> Result<TraceReport> {
    if method.is_surface() {
        surface_trace(disc, d, m, method, settings)
    } else {
        trace_cycle(disc, d, m, method, settings)
    }
}
