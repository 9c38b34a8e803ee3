//! The Dirichlet series φ⁺(n, s) = Σ_{4|c} S⁺(0, n, c)/c^{2s}, its closed form, and the
//! vanishing of theta-multiplier sums in two residue classes.

use std::f64::consts::LN_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::{ordered_map, Execution};
use crate::kloosterman::{s_plus_complex, s_theta_infinity_with, KloostermanMethod};
use crate::ntheory::{cpow_real, dirichlet_l, frak_s, fundamental_part, gcd, sigma0, zeta, Weight};

/// Threshold for a sum to count as zero.
pub const VANISHING_TOL: f64 = 1e-10;

/// Moduli up to this bound enter the tail bound exactly.
pub const EXACT_TAIL_LIMIT: u64 = 1000;

const L_TOL: f64 = 1e-12;

/// Nicolas–Robin: σ₀(c) ≤ c^{θ(c)} with θ(c) = 1.5379·log 2 / log log c, for c ≥ 3.
pub fn divisor_exponent(c: f64) -> f64 {
    1.5379 * LN_2 / c.ln().ln()
}

/// Validated input to φ⁺.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhiPlusQuery {
    pub n: i64,
    pub s: Complex64,
    pub cutoff: f64,
    /// n = w² d with d fundamental.
    pub d: i64,
    pub w: u64,
}

impl PhiPlusQuery {
    pub fn new(n: i64, s: Complex64, cutoff: f64) -> Result<Self> {
        if n <= 0 || !matches!(n % 4, 0 | 1) {
            return Err(Error::Admissibility(format!("n = {n} must be positive and ≡ 0, 1 (mod 4)")));
        }
        if !(s.re > 0.75) {
            return Err(Error::Domain(format!("Re s = {} must exceed 3/4", s.re)));
        }
        if !(cutoff >= 0.0) || !cutoff.is_finite() {
            return Err(Error::Domain(format!("invalid cutoff {cutoff}")));
        }
        let (d, w) = fundamental_part(n)?;
        Ok(PhiPlusQuery { n, s, cutoff, d, w })
    }
}

/// Truncated series with a rigorous bound on the omitted part.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhiPlusSeries {
    pub value: Complex64,
    pub tail_bound: f64,
    pub terms: usize,
}

/// Σ_{4|c ≤ X} S⁺(0, n, c)/c^{2s}.
pub fn phi_plus_series(q: &PhiPlusQuery, exec: Execution) -> Result<PhiPlusSeries> {
    let last = (q.cutoff.floor() as u64) / 4 * 4;
    let cs: Vec<u64> = (1..=last / 4).map(|k| 4 * k).collect();
    let two_s = q.s * 2.0;
    let terms = ordered_map(exec, &cs, |&c| -> Result<Complex64> {
        let v = s_plus_complex(Weight::Half, 0, q.n, c, KloostermanMethod::Factored)?;
        Ok(v * cpow_real(c as f64, -two_s))
    });
    let mut value = Complex64::new(0.0, 0.0);
    for t in terms {
        value += t?;
    }
    Ok(PhiPlusSeries { value, tail_bound: tail_bound(q.n, q.s.re, last), terms: cs.len() })
}

/// 2·Σ_{4|c > X} σ₀(c)·gcd(n, c)^{1/2}·c^{1/2 − 2σ}: exact up to [`EXACT_TAIL_LIMIT`], then
/// σ₀(c) ≤ c^{θ(C)}, gcd(n, c) ≤ n and an integral comparison. Infinite if that fails to converge.
pub fn tail_bound(n: i64, sigma: f64, last: u64) -> f64 {
    let a = 0.5 - 2.0 * sigma;
    let mut exact = 0.0;
    let mut c = last + 4;
    while c <= EXACT_TAIL_LIMIT {
        let g = gcd(n, c as i64) as f64;
        exact += sigma0(c) as f64 * g.sqrt() * (c as f64).powf(a);
        c += 4;
    }
    // Remaining c ≥ start, each term ≤ √n·c^{b} with b = a + θ(start); Σ_{4|c ≥ start} c^b ≤ ∫_{start−4}^∞ t^b dt / 4.
    let start = c as f64;
    let b = a + divisor_exponent(start.max(16.0));
    if b >= -1.0 {
        return f64::INFINITY;
    }
    let rest = (n as f64).sqrt() * (start - 4.0).powf(b + 1.0) / (4.0 * (-b - 1.0));
    2.0 * (exact + rest)
}

/// 2^{3/2−4s} w^{1−2s} L(2s − 1/2, χ_d)/ζ(4s − 1) · 𝔖_d(w, 2s − 1).
pub fn phi_plus_closed(n: i64, s: Complex64) -> Result<Complex64> {
    let q = PhiPlusQuery::new(n, s, 0.0)?;
    let one = Complex64::new(1.0, 0.0);
    let l = dirichlet_l(q.d, s * 2.0 - 0.5, L_TOL)?;
    let z = zeta(s * 4.0 - 1.0, L_TOL)?;
    let frak = frak_s(q.d, q.w, s * 2.0 - 1.0)?;
    let pre = cpow_real(2.0, one * 1.5 - s * 4.0) * cpow_real(q.w as f64, one - s * 2.0);
    Ok(pre * l / z * frak)
}

/// Whether the residue classes force S_∞∞(0, n, c) = 0: n ≡ 0 (4) with c ≡ 8 (16), or n ≡ 1 (4) with 16 | c.
pub fn vanishing_predicted(n: i64, c: u64) -> bool {
    (n.rem_euclid(4) == 0 && c % 16 == 8) || (n.rem_euclid(4) == 1 && c.is_multiple_of(16))
}

/// |S_∞∞(0, n, c, ν_θ^{2k})| < 10⁻¹⁰.
pub fn vanishing_check(n: i64, c: u64, wt: Weight) -> Result<bool> {
    let v = s_theta_infinity_with(0, n, c, wt, KloostermanMethod::Naive)?;
    Ok(v.norm() < VANISHING_TOL)
}

/// JSON verification record comparing the series with the closed form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhiPlusReport {
    pub n: i64,
    pub s_re: f64,
    pub s_im: f64,
    pub cutoff: f64,
    pub series_re: f64,
    pub series_im: f64,
    pub closed_re: f64,
    pub closed_im: f64,
    pub diff: f64,
    pub tail_bound: f64,
    pub pass: bool,
}

pub fn phi_plus_report(n: i64, s: Complex64, cutoff: f64, exec: Execution) -> Result<PhiPlusReport> {
    let q = PhiPlusQuery::new(n, s, cutoff)?;
    let series = phi_plus_series(&q, exec)?;
    let closed = phi_plus_closed(n, s)?;
    let diff = (series.value - closed).norm();
    Ok(PhiPlusReport {
        n,
        s_re: s.re,
        s_im: s.im,
        cutoff,
        series_re: series.value.re,
        series_im: series.value.im,
        closed_re: closed.re,
        closed_im: closed.im,
        diff,
        tail_bound: series.tail_bound,
        pass: diff <= series.tail_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kloosterman::s_plus_signed;

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn empty_and_single_term() {
        let q = PhiPlusQuery::new(5, re(1.25), 3.0).unwrap();
        let s = phi_plus_series(&q, Execution::Sequential).unwrap();
        assert_eq!(s.value, Complex64::new(0.0, 0.0));
        assert!(s.tail_bound > 0.0 && s.tail_bound.is_finite());
        let q = PhiPlusQuery::new(5, re(1.25), 4.0).unwrap();
        let s = phi_plus_series(&q, Execution::Sequential).unwrap();
        let want = s_plus_signed(Weight::Half, 0, 5, 4, KloostermanMethod::Naive).unwrap() / 4f64.powf(2.5);
        assert!((s.value.re - want).abs() < 1e-15 && s.value.im.abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_queries() {
        assert!(PhiPlusQuery::new(5, re(0.75), 10.0).is_err());
        assert!(PhiPlusQuery::new(6, re(1.25), 10.0).is_err());
        assert!(PhiPlusQuery::new(-3, re(1.25), 10.0).is_err());
    }

    #[test]
    fn closed_form_values() {
        // w = 1 for n = 5: 2^{−7/2} L(2, χ₅)/ζ(4).
        let v = phi_plus_closed(5, re(1.25)).unwrap();
        let l = dirichlet_l(5, re(2.0), 1e-12).unwrap().re;
        let z = std::f64::consts::PI.powi(4) / 90.0;
        assert!((v.re - 2f64.powf(-3.5) * l / z).abs() < 1e-10);
        for (n, s) in [(5, 1.25), (8, 1.5), (13, 1.25), (45, 1.5)] {
            let r = phi_plus_report(n, re(s), 2000.0, Execution::Parallel).unwrap();
            assert!(r.pass, "{r:?}");
        }
    }

    #[test]
    fn factored_terms_match_naive() {
        for n in [1, 4, 5, 8, 12, 45] {
            for c in (4..=400).step_by(4) {
                let a = s_plus_complex(Weight::Half, 0, n, c, KloostermanMethod::Factored).unwrap();
                let b = s_plus_complex(Weight::Half, 0, n, c, KloostermanMethod::Naive).unwrap();
                assert!((a - b).norm() < 1e-9, "n={n} c={c}");
            }
        }
    }

    #[test]
    fn vanishing_examples() {
        assert!(vanishing_check(4, 8, Weight::Half).unwrap());
        assert!(vanishing_check(1, 16, Weight::Half).unwrap());
        assert!(!vanishing_check(4, 4, Weight::Half).unwrap());
        let v = s_theta_infinity_with(0, 4, 4, Weight::Half, KloostermanMethod::Naive).unwrap();
        assert!((v - Complex64::new(1.0, 1.0)).norm() < 1e-12);
        assert!(vanishing_check(4, 6, Weight::Half).is_err());
    }

    #[test]
    fn vanishing_is_exhaustive() {
        for c in (8..=512).step_by(8) {
            for n in 0..=64 {
                if vanishing_predicted(n, c) {
                    for wt in [Weight::Half, Weight::MinusHalf] {
                        assert!(vanishing_check(n, c, wt).unwrap(), "n={n} c={c}");
                    }
                }
            }
        }
    }

    #[test]
    fn tail_bound_is_monotone_and_dominates() {
        let t1 = tail_bound(5, 1.25, 1000);
        let t2 = tail_bound(5, 1.25, 100_000);
        assert!(t2 < t1);
        assert_eq!(tail_bound(5, 0.8, 1000), f64::INFINITY);
        // The bound exceeds the actual remaining terms between 100 and 1000.
        let q = PhiPlusQuery::new(5, re(1.25), 100.0).unwrap();
        let a = phi_plus_series(&q, Execution::Sequential).unwrap();
        let q = PhiPlusQuery::new(5, re(1.25), 1000.0).unwrap();
        let b = phi_plus_series(&q, Execution::Sequential).unwrap();
        assert!((b.value - a.value).norm() <= a.tail_bound);
    }
}
