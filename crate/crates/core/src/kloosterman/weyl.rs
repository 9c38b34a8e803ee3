//! Quadratic Weyl sums T_m(d′, d; c) and Kohnen's identity.

use serde::{Deserialize, Serialize};

use super::{e, s_plus_signed, KloostermanMethod, REALITY_TOL};
use crate::error::{Error, Result};
use crate::ntheory::arith::{factorize_unchecked, mod_inverse, sqrt_mod_prime, Sieve};
use crate::ntheory::{divisors, gcd, kronecker, Weight};
use crate::quadforms::{genus_character, GenusCharacterSpec, QuadForm};

/// How the solutions of b² ≡ D (mod c) are found.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RootMethod {
    /// Scan for c ≤ 10⁴, CRT beyond.
    #[default]
    Auto,
    Scan,
    Crt,
}

const SCAN_LIMIT: u64 = 10_000;

fn roots_prime_power(d: i64, p: u64, k: u32) -> Vec<u64> {
    let q = p.pow(k);
    if p != 2 && k == 1 {
        return sqrt_mod_prime(d.rem_euclid(p as i64) as u64, p);
    }
    let target = d.rem_euclid(q as i64) as u128;
    (0..q).filter(|&b| (b as u128 * b as u128) % q as u128 == target).collect()
}

fn roots_crt(d: i64, factors: &[(u64, u32)]) -> Vec<u64> {
    let mut acc: Vec<u64> = vec![0];
    let mut modulus: u64 = 1;
    for &(p, k) in factors {
        let q = p.pow(k);
        let local = roots_prime_power(d, p, k);
        if local.is_empty() {
            return Vec::new();
        }
        // x ≡ a (mod modulus), x ≡ b (mod q).
        let inv = mod_inverse((modulus % q) as i64, q as i64).expect("coprime") as u128;
        let mut next = Vec::with_capacity(acc.len() * local.len());
        for &a in &acc {
            for &b in &local {
                let diff = (b as i128 - a as i128).rem_euclid(q as i128) as u128;
                let t = diff * inv % q as u128;
                next.push(a + modulus * t as u64);
            }
        }
        acc = next;
        modulus *= q;
    }
    acc.sort_unstable();
    acc
}

/// All b mod c with b² ≡ D (mod c), ascending.
pub fn square_roots_mod(d: i64, c: u64, method: RootMethod, sieve: Option<&Sieve>) -> Vec<u64> {
    let scan = match method {
        RootMethod::Scan => true,
        RootMethod::Crt => false,
        RootMethod::Auto => c <= SCAN_LIMIT,
    };
    if c == 1 {
        return vec![0];
    }
    if scan {
        let target = d.rem_euclid(c as i64) as u128;
        (0..c).filter(|&b| (b as u128 * b as u128) % c as u128 == target).collect()
    } else {
        let f = match sieve {
            Some(s) => s.factorize(c),
            None => factorize_unchecked(c),
        };
        roots_crt(d, &f)
    }
}

fn check_weyl_args(spec: &GenusCharacterSpec, m: i64, c: u64) -> Result<()> {
    if spec.disc <= 0 || crate::ntheory::arith::is_square(spec.disc) {
        return Err(Error::Domain(format!("D = {} must be positive and nonsquare", spec.disc)));
    }
    if m <= 0 {
        return Err(Error::Domain(format!("m = {m} must be positive")));
    }
    if c == 0 || !c.is_multiple_of(4) {
        return Err(Error::Admissibility(format!("modulus {c} is not a multiple of 4")));
    }
    Ok(())
}

/// T_m(d′, d; c) = Σ_{b mod c, b² ≡ D} χ_d([c/4, b, (b² − D)/c]) e(2mb/c).
pub fn weyl_sum(m: i64, spec: &GenusCharacterSpec, c: u64) -> Result<f64> {
    weyl_sum_with(m, spec, c, RootMethod::Auto, None)
}

pub fn weyl_sum_with(
    m: i64,
    spec: &GenusCharacterSpec,
    c: u64,
    method: RootMethod,
    sieve: Option<&Sieve>,
) -> Result<f64> {
    check_weyl_args(spec, m, c)?;
    let disc = spec.disc;
    let a = (c / 4) as i64;
    let mut re = 0.0;
    let mut im = 0.0;
    for b in square_roots_mod(disc, c, method, sieve) {
        let bi = b as i64;
        let form = QuadForm::new(a, bi, (bi * bi - disc) / c as i64);
        let chi = genus_character(spec, &form)?;
        if chi == 0 {
            continue;
        }
        let idx = (2 * m as i128 * bi as i128).rem_euclid(c as i128);
        let z = e(idx as f64 / c as f64);
        re += f64::from(chi) * z.re;
        im += f64::from(chi) * z.im;
    }
    if im.abs() > REALITY_TOL {
        return Err(Error::Precision(format!("T_{m}(c={c}) has imaginary part {im:.3e}")));
    }
    Ok(re)
}

/// Σ_{n | (m, c/4)} (d/n) √(2n/c) S^+_{1/2}(d′, m² d/n², c/n).
///
/// When d, d′ < 0 the sum is routed through S^+_{−1/2}(−d′, −m²d/n², c/n).
pub fn weyl_via_kohnen(m: i64, spec: &GenusCharacterSpec, c: u64, method: KloostermanMethod) -> Result<f64> {
    check_weyl_args(spec, m, c)?;
    let (d, dp) = (spec.d, spec.d_prime);
    let g = gcd(m, (c / 4) as i64) as u64;
    let mut acc = 0.0;
    for n in divisors(g) {
        let chi = kronecker(d, n as i64);
        if chi == 0 {
            continue;
        }
        let ni = n as i64;
        let second = (m / ni) * (m / ni) * d;
        let cn = c / n;
        let s = if dp < 0 && second < 0 {
            s_plus_signed(Weight::MinusHalf, -dp, -second, cn, method)?
        } else {
            s_plus_signed(Weight::Half, dp, second, cn, method)?
        };
        acc += f64::from(chi) * (2.0 * n as f64 / c as f64).sqrt() * s;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let s = GenusCharacterSpec::new(5, 5).unwrap();
        assert!((weyl_sum(1, &s, 4).unwrap() + 2.0).abs() < 1e-12);
        assert!((weyl_via_kohnen(1, &s, 4, KloostermanMethod::Naive).unwrap() + 2.0).abs() < 1e-12);
        let s1 = GenusCharacterSpec::new(5, 1).unwrap();
        assert_eq!(weyl_sum(1, &s1, 12).unwrap(), 0.0);
        let s = GenusCharacterSpec::new(21, -3).unwrap();
        let a = weyl_sum(1, &s, 4).unwrap();
        let b = weyl_via_kohnen(1, &s, 4, KloostermanMethod::Naive).unwrap();
        assert!((a - b).abs() < 1e-9);
        let a = weyl_sum(2, &s, 8).unwrap();
        let b = weyl_via_kohnen(2, &s, 8, KloostermanMethod::Naive).unwrap();
        assert!((a - b).abs() < 1e-9);
    }

    #[test]
    fn crt_roots_match_scan() {
        let sieve = Sieve::new(20_000);
        for d in [5i64, 8, 13, 21, 33, 45, 105, 221] {
            for c in (4..=4000u64).step_by(4) {
                let a = square_roots_mod(d, c, RootMethod::Scan, None);
                let b = square_roots_mod(d, c, RootMethod::Crt, Some(&sieve));
                assert_eq!(a, b, "D={d} c={c}");
            }
        }
    }

    #[test]
    fn both_argument_orders_agree() {
        for (d, dp) in [(5, 1), (-3, -7), (13, 1)] {
            let s = GenusCharacterSpec::new(d * dp, d).unwrap();
            let t = s.swapped().unwrap();
            for c in (4..=200u64).step_by(4) {
                for m in 1..=3 {
                    let a = weyl_sum(m, &s, c).unwrap();
                    let b = weyl_sum(m, &t, c).unwrap();
                    assert!((a - b).abs() < 1e-9, "d={d} c={c} m={m}");
                }
            }
        }
    }
}
