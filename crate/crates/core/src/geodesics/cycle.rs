//! Cycle integrals ∫_{𝒞_A} j_m(z) |dz|/y over closed geodesics.

use num_bigint::BigInt;
use num_complex::Complex64;

use super::quadrature::{adaptive_gauss, composite_gauss, rule_f64, rule_mp};
use super::{QuadratureScheme, QuadratureSpec};
use crate::error::{Error, Result};
use crate::modforms::{jm_series_double, jm_series_extended, reduce_generic, reduce_to_fundamental_domain, JmSeries, SeriesScalar};
use crate::precision::{Cx, MpReal, PrecisionMode};
use crate::quadforms::{FormCycle, QuadForm};

/// Nodes per panel of the composite rule.
pub const COMPOSITE_ORDER: usize = 24;

/// One arc of the cycle: the part of the semicircle of `form` from its apex (s = 0)
/// to s = `s_end`, with z(s) = center − radius·tanh s + i·radius·sech s.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CycleArc {
    pub form: QuadForm,
    pub center: f64,
    pub radius: f64,
    pub s_end: f64,
}

/// Exact rational data (numerator over 2a of ReB − center, etc.) shared by both precisions.
struct ArcData {
    a: i64,
    b: i64,
    /// t·√D = −(2a·Re B + b), as num/den with Re B = n + 2a′b′/(b′² + D).
    t_num: i128,
    t_den: i128,
}

fn arc_data(cycle: &FormCycle) -> Vec<ArcData> {
    let l = cycle.forms.len();
    let disc = cycle.disc as i128;
    (0..l)
        .map(|i| {
            let q = cycle.forms[i];
            let nx = cycle.forms[(i + 1) % l];
            let n = cycle.cf_exponents[i] as i128;
            let (a, b) = (q.a as i128, q.b as i128);
            let (a2, b2) = (nx.a as i128, nx.b as i128);
            let den = b2 * b2 + disc;
            // 2a·ReB + b = ((2a n + b)·den + 4 a a′ b′) / den.
            let num = (2 * a * n + b) * den + 4 * a * a2 * b2;
            ArcData { a: q.a, b: q.b, t_num: -num, t_den: den }
        })
        .collect()
}

/// The arcs whose union is a fundamental segment of the cycle's geodesic.
pub fn cycle_arcs(cycle: &FormCycle) -> Vec<CycleArc> {
    let sd = (cycle.disc as f64).sqrt();
    arc_data(cycle)
        .into_iter()
        .zip(&cycle.forms)
        .map(|(a, &form)| {
            let t = (a.t_num as f64 / a.t_den as f64) / sd;
            CycleArc {
                form,
                center: -(a.b as f64) / (2.0 * a.a as f64),
                radius: sd / (2.0 * a.a as f64),
                s_end: t.atanh(),
            }
        })
        .collect()
}

fn integrand_f64(series: &JmSeries, arc: &CycleArc, s: f64) -> Result<Complex64> {
    let z = Complex64::new(arc.center - arc.radius * s.tanh(), arc.radius / s.cosh());
    let p = reduce_to_fundamental_domain(z)?;
    Ok(series.eval_reduced(p.re, p.im))
}

/// Checks the double-precision budget m√D ≤ 8.
pub fn check_budget(disc: i64, m: u32, spec: &QuadratureSpec) -> Result<()> {
    if spec.precision_mode == PrecisionMode::Double && m as f64 * (disc as f64).sqrt() > super::DOUBLE_BUDGET {
        return Err(Error::Mode(format!(
            "m·√D = {:.3} exceeds {} in double precision; use extended precision",
            m as f64 * (disc as f64).sqrt(),
            super::DOUBLE_BUDGET
        )));
    }
    Ok(())
}

/// Value and error estimate of a cycle integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CycleIntegral {
    pub value: f64,
    pub error: f64,
    pub nodes: usize,
}

/// ∫_{𝒞_A} j_m(z) |dz|/y, summed arc by arc.
pub fn class_cycle_integral(cycle: &FormCycle, m: u32, spec: &QuadratureSpec) -> Result<f64> {
    Ok(class_cycle_integral_detailed(cycle, m, spec)?.value)
}

pub fn class_cycle_integral_detailed(cycle: &FormCycle, m: u32, spec: &QuadratureSpec) -> Result<CycleIntegral> {
    spec.validate()?;
    check_budget(cycle.disc, m, spec)?;
    let (value, error, nodes) = match spec.precision_mode {
        PrecisionMode::Double => {
            let series = jm_series_double(m)?;
            match spec.scheme {
                QuadratureScheme::AdaptiveGauss => integrate_adaptive(cycle, &series, spec)?,
                QuadratureScheme::CompositeGauss => {
                    let coeffs = f64::series_coeffs(&series, ());
                    integrate_composite::<f64>(cycle, &series, &coeffs, (), spec, &rule_f64(COMPOSITE_ORDER))?
                }
            }
        }
        PrecisionMode::Extended { bits } => {
            let series = jm_series_extended(m)?;
            let coeffs = MpReal::series_coeffs(&series, bits);
            integrate_composite::<MpReal>(cycle, &series, &coeffs, bits, spec, &rule_mp(COMPOSITE_ORDER, bits))?
        }
    };
    Ok(CycleIntegral { value, error, nodes })
}

fn integrate_adaptive(cycle: &FormCycle, series: &JmSeries, spec: &QuadratureSpec) -> Result<(f64, f64, usize)> {
    let arcs = cycle_arcs(cycle);
    let tol = spec.abs_tol / arcs.len() as f64;
    let mut total = Complex64::new(0.0, 0.0);
    let mut error = 0.0;
    let mut nodes = 0;
    for arc in &arcs {
        let budget = spec.max_nodes.saturating_sub(nodes);
        let r = adaptive_gauss(|s| integrand_f64(series, arc, s), arc.s_end, 0.0, tol, budget)?;
        total += r.value;
        error += r.error;
        nodes += r.nodes;
    }
    finish(total.re, total.im, error, nodes, spec)
}

fn finish(re: f64, im: f64, error: f64, nodes: usize, spec: &QuadratureSpec) -> Result<(f64, f64, usize)> {
    let scale = re.abs().max(1.0);
    if im.abs() > (100.0 * spec.abs_tol).max(1e-8 * scale) {
        return Err(Error::Accuracy(format!("cycle integral has imaginary part {im:.3e}")));
    }
    Ok((re, error, nodes))
}

fn integrate_composite<R: SeriesScalar>(
    cycle: &FormCycle,
    series: &JmSeries,
    coeffs: &[R],
    ctx: R::Ctx,
    spec: &QuadratureSpec,
    rule: &[(R, R)],
) -> Result<(f64, f64, usize)> {
    let sd = R::from_f64(cycle.disc as f64, ctx).sqrt();
    let data = arc_data(cycle);
    let arcs = cycle_arcs(cycle);
    let tol = spec.abs_tol / arcs.len() as f64;
    let mut total = Cx::zero(ctx);
    let mut error = 0.0;
    let mut nodes = 0usize;
    let one = R::one(ctx);
    for (d, arc) in data.iter().zip(&arcs) {
        let two_a = R::from_f64(2.0 * d.a as f64, ctx);
        let center = -(R::from_f64(d.b as f64, ctx) / two_a.clone());
        let radius = sd.clone() / two_a;
        let t = R::from_bigint(&BigInt::from(d.t_num), ctx) / R::from_bigint(&BigInt::from(d.t_den), ctx) / sd.clone();
        let s_end = ((one.clone() + t.clone()) / (one.clone() - t)).ln().scale(0.5);
        let f = |s: &R| -> Result<Cx<R>> {
            let x = center.clone() - radius.clone() * s.tanh();
            let y = radius.clone() * s.sech();
            let (x, y) = reduce_generic(x, y)?;
            Ok(series.eval_reduced_generic(&x, &y, coeffs))
        };
        let zero = R::zero(ctx);
        let mut panels = ((arc.s_end.abs() * 4.0).ceil() as usize).max(2);
        let mut prev = composite_gauss(&f, &s_end, &zero, panels, rule)?;
        nodes += panels * rule.len();
        loop {
            if nodes + 2 * panels * rule.len() > spec.max_nodes {
                return Err(Error::Accuracy(format!("node budget {} exhausted", spec.max_nodes)));
            }
            panels *= 2;
            let next = composite_gauss(&f, &s_end, &zero, panels, rule)?;
            nodes += panels * rule.len();
            let diff = (next.re.clone() - prev.re.clone()).to_f64().hypot((next.im.clone() - prev.im.clone()).to_f64());
            prev = next;
            if diff <= tol {
                error += diff;
                break;
            }
        }
        total = total.add(&prev);
    }
    finish(total.re.to_f64(), total.im.to_f64(), error, nodes, spec)
}

/// Cross-check: one segment of length ℓ on the first form's semicircle, starting at s = `offset`.
pub fn single_segment_integral(cycle: &FormCycle, m: u32, offset: f64, spec: &QuadratureSpec) -> Result<f64> {
    check_budget(cycle.disc, m, spec)?;
    let series = jm_series_double(m)?;
    let q = cycle.forms[0];
    let sd = (cycle.disc as f64).sqrt();
    let arc = CycleArc { form: q, center: -(q.b as f64) / (2.0 * q.a as f64), radius: sd / (2.0 * q.a as f64), s_end: 0.0 };
    let r = adaptive_gauss(|s| integrand_f64(&series, &arc, s), offset, offset + cycle.length(), spec.abs_tol, spec.max_nodes)?;
    Ok(finish(r.value.re, r.value.im, r.error, r.nodes, spec)?.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadforms::zagier_cycles;

    #[test]
    fn arcs_tile_one_period() {
        for d in [5, 8, 12, 13, 17, 21, 33, 60, 229] {
            for c in zagier_cycles(d).unwrap() {
                let total: f64 = cycle_arcs(&c).iter().map(|a| -a.s_end).sum();
                assert!((total - c.length()).abs() < 1e-9 * c.length(), "D={d}: {total} vs {}", c.length());
            }
        }
    }

    #[test]
    fn raw_values() {
        let spec = QuadratureSpec::default();
        for (d, want) in [(5, -72.518_980_9), (13, -147.086_252), (17, -276.115_922)] {
            let c = &zagier_cycles(d).unwrap()[0];
            let v = class_cycle_integral(c, 1, &spec).unwrap();
            assert!((v - want).abs() < 1e-5, "D={d}: {v}");
        }
    }

    #[test]
    fn endpoint_invariance() {
        let spec = QuadratureSpec::default();
        for d in [5, 8, 13, 17, 21] {
            for c in zagier_cycles(d).unwrap() {
                let v = class_cycle_integral(&c, 1, &spec).unwrap();
                // Segments centred near the apex stay away from the real axis.
                for shift in [-0.5, 0.0, 0.5] {
                    let off = -c.length() / 2.0 + shift;
                    let w = single_segment_integral(&c, 1, off, &spec).unwrap();
                    assert!((v - w).abs() < 1e-6, "D={d} shift={shift}: {v} vs {w}");
                }
            }
        }
    }

    #[test]
    fn composite_and_extended_agree() {
        let c = &zagier_cycles(13).unwrap()[0];
        let a = class_cycle_integral(c, 1, &QuadratureSpec::default()).unwrap();
        let mut spec = QuadratureSpec { scheme: QuadratureScheme::CompositeGauss, ..QuadratureSpec::default() };
        let b = class_cycle_integral(c, 1, &spec).unwrap();
        spec.precision_mode = PrecisionMode::Extended { bits: 128 };
        let e = class_cycle_integral(c, 1, &spec).unwrap();
        assert!((a - b).abs() < 1e-6 && (a - e).abs() < 1e-6, "{a} {b} {e}");
    }

    #[test]
    fn budget_is_enforced() {
        let c = &zagier_cycles(77).unwrap()[0];
        assert!(matches!(class_cycle_integral(c, 1, &QuadratureSpec::default()), Err(Error::Mode(_))));
    }
}
