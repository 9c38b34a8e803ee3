//! Winding numbers ν_Q and integrals over the fundamental domain weighted by them.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::quadrature::rule_f64;
use crate::error::{Error, Result};
use crate::modforms::JmSeries;
use crate::quadforms::{genus_character, ClassIndex, GenusCharacterSpec, QuadForm};

/// Relative distance to a semicircle below which a point counts as lying on it.
pub const DEGENERACY_TOL: f64 = 1e-12;

/// Forms [a, b, c] of discriminant D whose (closed) disk reaches height ≥ `y_min` over
/// |x − x0| ≤ `half_width`.
fn forms_near(disc: i64, x0: f64, half_width: f64, y_min: f64) -> Vec<QuadForm> {
    let sd = (disc as f64).sqrt();
    let amax = (sd / (2.0 * y_min)).floor() as i64;
    let mut out = Vec::new();
    for a_abs in 1..=amax {
        let r = sd / (2.0 * a_abs as f64);
        for a in [a_abs, -a_abs] {
            // center = −b/(2a) ∈ [x0 − half_width − r, x0 + half_width + r].
            let lo = x0 - half_width - r;
            let hi = x0 + half_width + r;
            let (blo, bhi) = {
                let u = -2.0 * a as f64 * lo;
                let v = -2.0 * a as f64 * hi;
                (u.min(v).floor() as i64 - 1, u.max(v).ceil() as i64 + 1)
            };
            for b in blo..=bhi {
                let num = b * b - disc;
                if num % (4 * a) != 0 {
                    continue;
                }
                out.push(QuadForm::new(a, b, num / (4 * a)));
            }
        }
    }
    out
}

fn disk(q: &QuadForm, sd: f64) -> (f64, f64) {
    (-(q.b as f64) / (2.0 * q.a as f64), sd / (2.0 * q.a.abs() as f64))
}

/// Orientation sign of a crossing: +1 for a > 0.
fn orientation(q: &QuadForm) -> i64 {
    q.a.signum()
}

/// ν_Q(z): signed count of translates of the geodesic of Q crossing the ray from z to i∞.
pub fn winding_number(q: &QuadForm, z: Complex64) -> Result<i64> {
    let index = ClassIndex::new(q.disc())?;
    winding_number_indexed(&index, index.class_of(q)?, z)
}

/// ν for class `class` of a prebuilt index.
pub fn winding_number_indexed(index: &ClassIndex, class: usize, z: Complex64) -> Result<i64> {
    if !(z.im > 0.0) {
        return Err(Error::Domain(format!("{z} is not in the upper half-plane")));
    }
    let disc = index.disc;
    let sd = (disc as f64).sqrt();
    if z.im > sd / 2.0 {
        return Ok(0);
    }
    let mut nu = 0;
    for f in forms_near(disc, z.re, 0.0, z.im) {
        let (cen, r) = disk(&f, sd);
        let gap = (z.re - cen).powi(2) + z.im * z.im - r * r;
        if gap.abs() < DEGENERACY_TOL * r * r {
            return Err(Error::Degenerate(format!("{z} lies on the geodesic of {f}")));
        }
        if gap < 0.0 && index.class_of(&f)? == class {
            nu += orientation(&f);
        }
    }
    Ok(nu)
}

/// ℱ ∩ {|z − center| < radius} as φ ∈ (φ_lo, φ_hi) with x = center − radius·cos φ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DomainPiece {
    pub center: f64,
    pub radius: f64,
    pub x_lo: f64,
    pub x_hi: f64,
}

impl DomainPiece {
    pub fn new(center: f64, radius: f64) -> Option<DomainPiece> {
        let mut lo = (-0.5f64).max(center - radius);
        let mut hi = 0.5f64.min(center + radius);
        // Above the unit circle inside the disk: 2·center·x > 1 + center² − radius².
        let k = 1.0 + center * center - radius * radius;
        if center > 0.0 {
            lo = lo.max(k / (2.0 * center));
        } else if center < 0.0 {
            hi = hi.min(k / (2.0 * center));
        } else if k >= 0.0 {
            return None;
        }
        (lo < hi).then_some(DomainPiece { center, radius, x_lo: lo, x_hi: hi })
    }

    /// Hyperbolic area, in closed form.
    pub fn area(&self) -> f64 {
        let f = |x: f64| x.asin() - ((x - self.center) / self.radius).clamp(-1.0, 1.0).asin();
        f(self.x_hi) - f(self.x_lo)
    }

    /// ∫∫ g(x + iy) dx dy / y² by a tensor Gauss rule of order n.
    pub fn integrate(&self, n: usize, g: &impl Fn(Complex64) -> Complex64) -> Complex64 {
        let rule = rule_f64(n);
        let phi = |x: f64| ((self.center - x) / self.radius).clamp(-1.0, 1.0).acos();
        let (p0, p1) = (phi(self.x_lo), phi(self.x_hi));
        let (ph, pm) = (0.5 * (p1 - p0), 0.5 * (p1 + p0));
        let mut acc = Complex64::new(0.0, 0.0);
        for &(u, wu) in rule.iter() {
            let p = pm + ph * u;
            let (s, c) = p.sin_cos();
            let x = self.center - self.radius * c;
            let y1 = self.radius * s;
            let y0 = (1.0 - x * x).sqrt();
            let (yh, ym) = (0.5 * (y1 - y0), 0.5 * (y1 + y0));
            let mut inner = Complex64::new(0.0, 0.0);
            for &(v, wv) in rule.iter() {
                let y = ym + yh * v;
                inner += g(Complex64::new(x, y)) * (wv / (y * y));
            }
            acc += inner * (yh * wu * self.radius * s);
        }
        acc * ph
    }
}

/// Pieces of ℱ cut out by the translates of each class, with their orientation signs.
pub fn class_pieces(index: &ClassIndex) -> Result<Vec<Vec<(i64, DomainPiece)>>> {
    let sd = (index.disc as f64).sqrt();
    let mut out = vec![Vec::new(); index.cycles.len()];
    // A disk reaching ℱ has radius ≥ √3/2.
    for f in forms_near(index.disc, 0.0, 0.5, 3f64.sqrt() / 2.0) {
        let (cen, r) = disk(&f, sd);
        if let Some(p) = DomainPiece::new(cen, r) {
            out[index.class_of(&f)?].push((orientation(&f), p));
        }
    }
    Ok(out)
}

pub(crate) fn check_surface_args(spec: &GenusCharacterSpec) -> Result<()> {
    let disc = spec.disc;
    if disc <= 0 || crate::ntheory::is_square(disc) {
        return Err(Error::Domain(format!("{disc} is not a positive nonsquare discriminant")));
    }
    Ok(())
}

/// (1/4π) Σ_classes χ_d ∫_ℱ ν_Q dμ, with exact areas.
pub fn nu_mass(disc: i64, d: i64) -> Result<f64> {
    let spec = GenusCharacterSpec::new(disc, d)?;
    check_surface_args(&spec)?;
    if d > 0 {
        return Ok(0.0);
    }
    let index = ClassIndex::new(disc)?;
    let pieces = class_pieces(&index)?;
    let mut total = 0.0;
    for (cyc, ps) in index.cycles.iter().zip(&pieces) {
        let chi = genus_character(&spec, &cyc.forms[0])?;
        let area: f64 = ps.iter().map(|(s, p)| *s as f64 * p.area()).sum();
        total += chi as f64 * area;
    }
    Ok(total / (4.0 * PI))
}

/// Midpoint-grid estimate of (1/4π) Σ χ_d ∫_ℱ ν_Q dμ, an independent check of [`nu_mass`].
pub fn nu_mass_grid(disc: i64, d: i64, n: usize) -> Result<f64> {
    let spec = GenusCharacterSpec::new(disc, d)?;
    check_surface_args(&spec)?;
    if d > 0 {
        return Ok(0.0);
    }
    let index = ClassIndex::new(disc)?;
    let chis: Vec<i32> = index.cycles.iter().map(|c| genus_character(&spec, &c.forms[0])).collect::<Result<_>>()?;
    let top = (disc as f64).sqrt() / 2.0;
    let mut total = 0.0;
    // Uniform in (x, 1/y): dμ = dx·d(1/y).
    for i in 0..n {
        let x = -0.5 + (i as f64 + 0.5) / n as f64;
        let t_hi = 1.0 / (1.0 - x * x).sqrt();
        let t_lo = 1.0 / top;
        if t_hi <= t_lo {
            continue;
        }
        let h = (t_hi - t_lo) / n as f64;
        for k in 0..n {
            let y = 1.0 / (t_lo + (k as f64 + 0.5) * h);
            let mut v = 0.0;
            for (c, &chi) in chis.iter().enumerate() {
                if chi != 0 {
                    v += chi as f64 * winding_number_indexed(&index, c, Complex64::new(x, y))? as f64;
                }
            }
            total += v * h / n as f64;
        }
    }
    Ok(total / (4.0 * PI))
}

/// (1/4π) Σ χ_d ∫_ℱ j_m ν_Q dμ and an error estimate from two rule orders.
pub fn surface_integral(spec: &GenusCharacterSpec, series: &JmSeries, order: usize) -> Result<(f64, f64)> {
    let index = ClassIndex::new(spec.disc)?;
    let pieces = class_pieces(&index)?;
    let g = |z: Complex64| series.eval_reduced(z.re, z.im);
    let eval = |n: usize| -> Result<Complex64> {
        let mut total = Complex64::new(0.0, 0.0);
        for (cyc, ps) in index.cycles.iter().zip(&pieces) {
            let chi = genus_character(spec, &cyc.forms[0])?;
            if chi == 0 {
                continue;
            }
            for (s, p) in ps {
                total += p.integrate(n, &g) * (chi as f64 * *s as f64);
            }
        }
        Ok(total / (4.0 * PI))
    };
    let fine = eval(order)?;
    let coarse = eval(order * 2 / 3)?;
    Ok((fine.re, (fine.re - coarse.re).abs().max(fine.im.abs())))
}
