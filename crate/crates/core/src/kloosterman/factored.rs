//! Multiplicative evaluation of theta-multiplier sums.
//!
//! Write c = 2^t c′ with c′ odd. For odd d > 0, reciprocity gives
//! (c/d) ε_d^{2k} = (d/c′) ψ(d) with ψ(d) = (2/d)^t (−1)^{(c′−1)(d−1)/4} ε_d^{2k},
//! a function of d mod 2^t. Splitting e(x/c) by partial fractions over the
//! prime powers q of c turns the sum into a product of local sums
//! Σ_{x mod q}^* χ_q(x) e((M x̄ + N x)/q). Local sums modulo an odd prime use the
//! Salié closed form; all other local sums are summed directly.

use num_complex::Complex64;

use super::e;
use crate::ntheory::arith::{factorize_unchecked, mod_inverse, sqrt_mod_prime};
use crate::ntheory::kronecker;

fn psi(d: u64, t: u32, c_odd: u64, two_k: i32) -> Complex64 {
    let mut s = 1.0;
    if t % 2 == 1 && matches!(d % 8, 3 | 5) {
        s = -s;
    }
    if (c_odd % 4 == 3) && (d % 4 == 3) {
        s = -s;
    }
    if d % 4 == 1 {
        Complex64::new(s, 0.0)
    } else if two_k == 1 {
        Complex64::new(0.0, s)
    } else {
        Complex64::new(0.0, -s)
    }
}

fn local_two(mm: u64, nn: u64, q: u64, t: u32, c_odd: u64, two_k: i32) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    let qi = q as u128;
    for x in (1..q).step_by(2) {
        let inv = mod_inverse(x as i64, q as i64).expect("odd") as u128;
        let idx = (mm as u128 * inv + nn as u128 * x as u128) % qi;
        acc += psi(x, t, c_odd, two_k) * e(idx as f64 / q as f64);
    }
    acc
}

fn local_odd_power(mm: u64, nn: u64, p: u64, q: u64, e_pow: u32) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    let qi = q as u128;
    for x in 1..q {
        if x % p == 0 {
            continue;
        }
        let chi = if e_pow.is_multiple_of(2) { 1.0 } else { f64::from(kronecker(x as i64, p as i64)) };
        let inv = mod_inverse(x as i64, q as i64).expect("coprime") as u128;
        let idx = (mm as u128 * inv + nn as u128 * x as u128) % qi;
        acc += e(idx as f64 / q as f64) * chi;
    }
    acc
}

/// Σ_{x mod p}^* (x/p) e((M x̄ + N x)/p) for an odd prime p.
fn salie(mm: u64, nn: u64, p: u64) -> Complex64 {
    let (mm, nn) = (mm % p, nn % p);
    let (mm, nn) = if nn == 0 { (nn, mm) } else { (mm, nn) };
    if nn == 0 {
        return Complex64::new(0.0, 0.0);
    }
    let eps = if p % 4 == 1 { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 1.0) };
    let leg = f64::from(kronecker(nn as i64, p as i64));
    let prod = (mm as u128 * nn as u128 % p as u128) as u64;
    let s: Complex64 = sqrt_mod_prime(prod, p)
        .into_iter()
        .map(|y| e((2 * y % p) as f64 / p as f64))
        .sum();
    eps * (p as f64).sqrt() * leg * s
}

/// S_∞∞(m, n, c, ν_θ^{2k}) by the multiplicative decomposition (4 | c).
pub fn theta_sum_factored(m: i64, n: i64, c: u64, two_k: i32) -> Complex64 {
    debug_assert!(c.is_multiple_of(4));
    let factors = factorize_unchecked(c);
    let t = factors[0].1;
    let c_odd = c >> t;
    let mut acc = Complex64::new(1.0, 0.0);
    for &(p, k) in &factors {
        let q = p.pow(k);
        let r = c / q;
        let r_inv = mod_inverse((r % q) as i64, q as i64).expect("coprime cofactor") as i128;
        let qi = q as i128;
        let mm = ((m as i128).rem_euclid(qi) * r_inv % qi) as u64;
        let nn = ((n as i128).rem_euclid(qi) * r_inv % qi) as u64;
        let local = if p == 2 {
            local_two(mm, nn, q, t, c_odd, two_k)
        } else if k == 1 {
            salie(mm, nn, p)
        } else {
            local_odd_power(mm, nn, p, q, k)
        };
        acc *= local;
        if acc.norm() == 0.0 {
            break;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kloosterman::theta_sum_naive;

    #[test]
    fn salie_closed_form_matches_direct() {
        for p in [3u64, 5, 7, 11, 13, 17, 19, 23] {
            for mm in 0..p {
                for nn in 0..p {
                    let a = salie(mm, nn, p);
                    let b = local_odd_power(mm, nn, p, p, 1);
                    assert!((a - b).norm() < 1e-10, "p={p} M={mm} N={nn}");
                }
            }
        }
    }

    #[test]
    fn agrees_with_naive_sampled() {
        for c in (4..=1200u64).step_by(4) {
            for two_k in [1, -1] {
                for (m, n) in [(0, 0), (0, 5), (1, 5), (-3, -7), (13, 4), (1, 1), (21, 8)] {
                    let a = theta_sum_factored(m, n, c, two_k);
                    let b = theta_sum_naive(m, n, c, two_k);
                    assert!((a - b).norm() < 1e-9, "c={c} 2k={two_k} m={m} n={n}: {a} vs {b}");
                }
            }
        }
    }
}
