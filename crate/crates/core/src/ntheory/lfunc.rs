//! Dirichlet L-functions of real quadratic characters via the Hurwitz
//! decomposition L(s, χ_d) = |d|^{-s} Σ_a χ_d(a) ζ(s, a/|d|), with each
//! Hurwitz zeta value evaluated by Euler–Maclaurin summation.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{is_fundamental, kronecker};
use crate::error::{Error, Result};

/// Number of Bernoulli correction terms.
const EM_TERMS: usize = 24;

/// B_{2j} / (2j)! for j = 1..=EM_TERMS, from B_{2j}/(2j)! = (−1)^{j+1} 2 ζ(2j) / (2π)^{2j}.
fn bernoulli_over_factorial() -> [f64; EM_TERMS] {
    let mut out = [0.0; EM_TERMS];
    for (i, slot) in out.iter_mut().enumerate() {
        let j = (i + 1) as i32;
        let z = match j {
            1 => PI * PI / 6.0,
            2 => PI.powi(4) / 90.0,
            _ => (1..=2000).rev().map(|k| (k as f64).powi(-2 * j)).sum::<f64>(),
        };
        let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
        *slot = sign * 2.0 * z / (2.0 * PI).powi(2 * j);
    }
    out
}

/// e^z − 1 without cancellation for small |z|.
fn expm1(z: Complex64) -> Complex64 {
    if z.norm() < 1e-3 {
        let mut term = z;
        let mut acc = z;
        for k in 2..12 {
            term = term * z / k as f64;
            acc += term;
        }
        acc
    } else {
        z.exp() - 1.0
    }
}

/// Euler–Maclaurin pieces for Σ_a w_a ζ(s, a) with Σ w_a = 0 or not.
///
/// Returns the sum and an estimate of the truncation error.
fn weighted_hurwitz(weights: &[(f64, f64)], s: Complex64, balanced: bool) -> (Complex64, f64) {
    let b = bernoulli_over_factorial();
    let n_head = (30.0 + 2.0 * s.norm()).ceil() as usize;
    let mut total = Complex64::new(0.0, 0.0);
    let mut err: f64 = 0.0;
    for &(w, a) in weights {
        if w == 0.0 {
            continue;
        }
        let mut head = Complex64::new(0.0, 0.0);
        for k in (0..n_head).rev() {
            head += (-s * (k as f64 + a).ln()).exp();
        }
        let x = n_head as f64 + a;
        let lx = x.ln();
        let xs = (-s * lx).exp();
        // (x^{1-s}) / (s-1): for a balanced weight vector the constant part of
        // x^{1-s} cancels, so only expm1((1-s) ln x)/(s-1) is needed.
        let one_minus_s = Complex64::new(1.0, 0.0) - s;
        let integral = if balanced {
            if one_minus_s.norm() < 1e-14 {
                Complex64::new(-lx, 0.0)
            } else {
                -expm1(one_minus_s * lx) / one_minus_s
            }
        } else {
            (one_minus_s * lx).exp() / (s - 1.0)
        };
        let mut corr = xs * 0.5;
        // Rising factorial s(s+1)...(s+2j-2) times x^{-s-2j+1}.
        let mut rising = s;
        let mut xpow = xs / x;
        let mut last = 0.0;
        for (j, bj) in b.iter().enumerate() {
            let t = rising * xpow * *bj;
            corr += t;
            last = t.norm();
            let k = 2.0 * (j as f64 + 1.0);
            rising = rising * (s + (k - 1.0)) * (s + k);
            xpow /= x * x;
        }
        total += (head + integral + corr) * w;
        err += w.abs() * last;
    }
    (total, err)
}

/// Riemann zeta for Re s > 1/2, s ≠ 1.
pub fn zeta(s: Complex64, tol: f64) -> Result<Complex64> {
    dirichlet_l(1, s, tol)
}

/// L(s, χ_d) for a fundamental discriminant `d` (d = 1 gives ζ(s)).
pub fn dirichlet_l(d: i64, s: Complex64, tol: f64) -> Result<Complex64> {
    if !is_fundamental(d) {
        return Err(Error::Domain(format!("{d} is not a fundamental discriminant")));
    }
    if !(tol > 0.0) {
        return Err(Error::Domain("tolerance must be positive".into()));
    }
    if s.re <= 0.5 {
        return Err(Error::Domain(format!("Re s = {} is outside Re s > 1/2", s.re)));
    }
    if d == 1 && (s - 1.0).norm() < 1e-14 {
        return Err(Error::Domain("zeta has a pole at s = 1".into()));
    }
    let q = d.unsigned_abs();
    let weights: Vec<(f64, f64)> = (1..=q)
        .map(|a| (f64::from(kronecker(d, a as i64)), a as f64 / q as f64))
        .collect();
    let balanced = d != 1;
    let (sum, err) = weighted_hurwitz(&weights, s, balanced);
    let scale = (-s * (q as f64).ln()).exp();
    let value = sum * scale;
    let rounding = 64.0 * f64::EPSILON * (q as f64) * value.norm().max(1.0);
    let err_total = err * scale.norm() * 2.0 + rounding;
    if err_total > tol {
        return Err(Error::Accuracy(format!(
            "L(s, chi_{d}) at s = {s}: estimated error {err_total:.3e} exceeds tol {tol:.3e}"
        )));
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn reference_values() {
        let tol = 1e-12;
        assert!((zeta(c(2.0), tol).unwrap().re - PI * PI / 6.0).abs() < tol);
        assert!((dirichlet_l(-4, c(2.0), tol).unwrap().re - 0.915965594177219).abs() < tol);
        assert!((dirichlet_l(-3, c(1.0), tol).unwrap().re - 0.604599788078073).abs() < tol);
        // L(1, χ_{-4}) = π/4; L(1, χ_5) = 2 log φ / √5.
        assert!((dirichlet_l(-4, c(1.0), tol).unwrap().re - PI / 4.0).abs() < tol);
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((dirichlet_l(5, c(1.0), tol).unwrap().re - 2.0 * phi.ln() / 5f64.sqrt()).abs() < tol);
        assert!((zeta(c(4.0), tol).unwrap().re - PI.powi(4) / 90.0).abs() < tol);
    }

    #[test]
    fn critical_strip_and_complex_arguments() {
        let z = zeta(c(0.75), 1e-10).unwrap();
        assert!((z.re + 3.44128538694522).abs() < 1e-10, "{z}");
        let z = zeta(Complex64::new(0.75, 14.0), 1e-9).unwrap();
        assert!((z - Complex64::new(0.192576246408186, -0.0603187984025573)).norm() < 1e-9, "{z}");
        // Continuity across s = 1 for a nonprincipal character.
        let a = dirichlet_l(-3, c(1.0), 1e-10).unwrap();
        let b = dirichlet_l(-3, c(1.0 + 1e-9), 1e-10).unwrap();
        assert!((a - b).norm() < 1e-8);
    }

    #[test]
    fn errors() {
        assert!(matches!(zeta(c(1.0), 1e-10), Err(Error::Domain(_))));
        assert!(matches!(dirichlet_l(5, c(0.5), 1e-10), Err(Error::Domain(_))));
        assert!(matches!(dirichlet_l(12 * 4, c(2.0), 1e-10), Err(Error::Domain(_))));
        assert!(matches!(dirichlet_l(5, c(2.0), 1e-30), Err(Error::Accuracy(_))));
    }

    #[test]
    fn matches_partial_sums_at_two() {
        let tol = 1e-10;
        for d in (-30i64..=30).filter(|&d| is_fundamental(d)) {
            let l = dirichlet_l(d, c(2.0), tol).unwrap().re;
            let n = 1_000_000i64;
            let mut direct = 0.0;
            for k in (1..=n).rev() {
                direct += f64::from(kronecker(d, k)) / (k as f64 * k as f64);
            }
            let tail = if d == 1 { 1.0 / n as f64 } else { 2.0 * d.abs() as f64 / (n * n) as f64 };
            assert!((l - direct).abs() < 10.0 * tol + tail, "d={d}: {l} vs {direct}");
        }
    }
}
