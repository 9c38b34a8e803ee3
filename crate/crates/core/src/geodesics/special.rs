//! Cosine and sine integrals and the surface kernel f.

use std::f64::consts::{FRAC_PI_2, LN_2};

use num_complex::Complex64;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const SERIES_LIMIT: f64 = 4.0;

/// (Ci(x), Si(x)) for x > 0.
pub fn cisi(x: f64) -> (f64, f64) {
    assert!(x > 0.0, "cisi needs x > 0");
    if x <= SERIES_LIMIT {
        cisi_series(x)
    } else {
        cisi_cf(x)
    }
}

fn cisi_series(x: f64) -> (f64, f64) {
    // Si = Σ_{n odd} ±xⁿ/(n·n!), Ci = γ + ln x + Σ_{n even} ±xⁿ/(n·n!).
    let mut si = 0.0;
    let mut ci = 0.0;
    let mut term = x;
    for n in 1..200u32 {
        let contrib = term / n as f64;
        let sign = if (n / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if n % 2 == 1 {
            si += sign * contrib;
        } else {
            ci += sign * contrib;
        }
        if contrib < 1e-18 {
            break;
        }
        term *= x / (n + 1) as f64;
    }
    (EULER_GAMMA + x.ln() + ci, si)
}

fn cisi_cf(x: f64) -> (f64, f64) {
    // E₁(ix) by the modified Lentz algorithm; Ci = −Re, Si = π/2 + Im of e^{−ix}·CF.
    let tiny = 1e-300;
    let mut b = Complex64::new(1.0, x);
    let mut c = Complex64::new(1.0 / tiny, 0.0);
    let mut d = b.inv();
    let mut h = d;
    for i in 1..1000 {
        let a = -((i * i) as f64);
        b += 2.0;
        d = (d * a + b).inv();
        c = b + c.inv() * a;
        let del = c * d;
        h *= del;
        if (del - 1.0).norm() < 1e-16 {
            break;
        }
    }
    let h = Complex64::new(x.cos(), -x.sin()) * h;
    (-h.re, FRAC_PI_2 + h.im)
}

/// f(x) = Ci(2x) sin x − Si(2x) cos x + log 2 · sin x.
pub fn kernel_f(x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    let (ci, si) = cisi(2.0 * x);
    let (s, c) = x.sin_cos();
    ci * s - si * c + LN_2 * s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_values() {
        // Ci(π), Si(π), Ci(1), Si(1), Ci(10), Si(10).
        let (ci, si) = cisi(std::f64::consts::PI);
        assert!((ci - 0.073_667_912_046_425_48).abs() < 1e-13);
        assert!((si - 1.851_937_051_982_466_2).abs() < 1e-13);
        let (ci, si) = cisi(1.0);
        assert!((ci - 0.337_403_922_900_968_1).abs() < 1e-13);
        assert!((si - 0.946_083_070_367_183).abs() < 1e-13);
        let (ci, si) = cisi(10.0);
        assert!((ci + 0.045_456_433_004_455_37).abs() < 1e-13);
        assert!((si - 1.658_347_594_218_874).abs() < 1e-13);
    }

    #[test]
    fn branches_agree_at_the_switch() {
        let (a, b) = cisi_series(4.0);
        let (c, d) = cisi_cf(4.0);
        assert!((a - c).abs() < 1e-12 && (b - d).abs() < 1e-12);
        let (a, b) = cisi_series(5.5);
        let (c, d) = cisi_cf(5.5);
        assert!((a - c).abs() < 1e-10 && (b - d).abs() < 1e-10);
    }

    #[test]
    fn kernel_values_and_limits() {
        assert!((kernel_f(FRAC_PI_2) - 0.766_815_092_606_371_2).abs() < 1e-12);
        assert!(kernel_f(1e-12).abs() < 1e-9);
        assert!((cisi(1e6).1 - FRAC_PI_2).abs() < 1e-5);
        for i in 1..2000 {
            let x = i as f64 * 0.01;
            let bound = 1f64.min(x * x.ln().abs().max(1.0));
            assert!(kernel_f(x).abs() <= 2.0 * bound, "x={x}");
        }
    }
}
