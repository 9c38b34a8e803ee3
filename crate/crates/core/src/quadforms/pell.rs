//! Minimal solutions of t² − D u² = ±4 by the continued fraction of (b₀ + √D)/2.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::zagier::check_positive_disc;
use crate::error::Result;
use crate::ntheory::arith::isqrt;

/// The minimal automorph (t, u) with t² − D u² = 4 and its logarithm.
#[derive(Debug, Clone, PartialEq)]
pub struct PellUnit {
    pub disc: i64,
    pub t: BigUint,
    pub u: BigUint,
    /// log((t + u√D)/2), half the length of any primitive closed geodesic of discriminant D.
    pub log_eps: f64,
    /// Whether t² − D u² = −4 is solvable (the fundamental unit has norm −1).
    pub norm_minus_one: bool,
}

impl PellUnit {
    /// log of the fundamental unit of norm ±1 (half of `log_eps` when a norm −1 unit exists).
    pub fn log_fundamental_unit(&self) -> f64 {
        if self.norm_minus_one {
            self.log_eps / 2.0
        } else {
            self.log_eps
        }
    }

    /// Length 2·log ε of a primitive closed geodesic.
    pub fn geodesic_length(&self) -> f64 {
        2.0 * self.log_eps
    }

    /// Total geodesic mass h·2·log ε for `h` classes.
    pub fn total_mass(&self, h: usize) -> f64 {
        h as f64 * self.geodesic_length()
    }
}

fn log_half_sum(t: &BigUint, u: &BigUint, d: i64) -> f64 {
    let tf = t.to_f64().unwrap_or(f64::INFINITY);
    let uf = u.to_f64().unwrap_or(f64::INFINITY);
    ((tf + uf * (d as f64).sqrt()) / 2.0).ln()
}

/// Minimal positive (t, u) with t² − D u² = 4.
pub fn fundamental_automorph(d: i64) -> Result<PellUnit> {
    check_positive_disc(d)?;
    let s = isqrt(d as u64) as i64;
    let b0 = d.rem_euclid(2);
    // ω = (P + √D)/Q with P = b0, Q = 2.
    let (mut p, mut q) = (b0, 2i64);
    let (mut h_prev, mut h) = (BigInt::zero(), BigInt::one());
    let (mut k_prev, mut k) = (BigInt::one(), BigInt::zero());
    let dd = BigInt::from(d);
    loop {
        let a = (p + s).div_euclid(q);
        let h_next = &h * a + &h_prev;
        let k_next = &k * a + &k_prev;
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
        p = a * q - p;
        q = (d - p * p) / q;
        // t = 2h − b0 k, u = k gives t² − D u² = 4 N(h − k ω).
        let t = BigInt::from(2) * &h - BigInt::from(b0) * &k;
        let norm4 = &t * &t - &dd * &k * &k;
        if norm4 == BigInt::from(4) || norm4 == BigInt::from(-4) {
            let minus = norm4.is_negative();
            let (t, u) = if minus {
                ((&t * &t + &dd * &k * &k) / 2, &t * &k)
            } else {
                (t, k.clone())
            };
            let t = t.abs().to_biguint().expect("positive");
            let u = u.abs().to_biguint().expect("positive");
            let log_eps = log_half_sum(&t, &u, d);
            return Ok(PellUnit { disc: d, t, u, log_eps, norm_minus_one: minus });
        }
    }
}
