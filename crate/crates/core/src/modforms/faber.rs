//! Faber polynomials P_m with P_m(j) = q^{−m} + O(q), and the q-expansions of j_m.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::series::{j_table, QSeries};
use crate::error::{Error, Result};
use crate::ntheory::arith::divisors;
use crate::ntheory::gcd;

/// Largest degree supported by [`faber_polynomial`].
pub const MAX_FABER_DEGREE: u32 = 32;

/// Monic integer polynomial, coefficients in ascending degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaberPolynomial {
    pub m: u32,
    pub coeffs: Vec<BigInt>,
}

impl FaberPolynomial {
    /// Coefficients from the leading term down.
    pub fn coeffs_descending(&self) -> Vec<BigInt> {
        self.coeffs.iter().rev().cloned().collect()
    }

    /// Evaluates the polynomial at an exact integer.
    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }
}

/// Laurent series with exponents from `lead` to `top` inclusive.
#[derive(Clone)]
struct Laurent {
    lead: i64,
    c: Vec<BigInt>,
}

impl Laurent {
    fn get(&self, e: i64) -> BigInt {
        let i = e - self.lead;
        if i < 0 || i as usize >= self.c.len() {
            BigInt::zero()
        } else {
            self.c[i as usize].clone()
        }
    }

    fn mul(&self, o: &Laurent, top: i64) -> Laurent {
        let lead = self.lead + o.lead;
        let len = (top - lead + 1).max(0) as usize;
        let mut c = vec![BigInt::zero(); len];
        for (i, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (k, y) in o.c.iter().enumerate() {
                let idx = i + k;
                if idx >= len {
                    break;
                }
                c[idx] += x * y;
            }
        }
        Laurent { lead, c }
    }
}

fn j_laurent(top: i64) -> Result<Laurent> {
    let t = j_table((top.max(0)) as usize)?;
    Ok(Laurent { lead: -1, c: t[..(top + 2) as usize].to_vec() })
}

/// Powers j^0, …, j^m truncated at q^top.
fn j_powers(m: u32, top: i64) -> Result<Vec<Laurent>> {
    // Each factor of j lowers the leading exponent by one, so keep m extra terms in the partial products.
    let keep = top + m as i64;
    let j = j_laurent(keep + m as i64)?;
    let mut pows = vec![Laurent { lead: 0, c: vec![BigInt::one()] }];
    for k in 1..=m as usize {
        let p = pows[k - 1].mul(&j, keep);
        pows.push(p);
    }
    Ok(pows)
}

fn faber_with_powers(m: u32, pows: &[Laurent]) -> (FaberPolynomial, Laurent) {
    let mut poly = vec![BigInt::zero(); m as usize + 1];
    poly[m as usize] = BigInt::one();
    let mut cur = pows[m as usize].clone();
    for e in (-(m as i64) + 1)..=0 {
        let c = cur.get(e);
        if c.is_zero() {
            continue;
        }
        let k = (-e) as usize;
        poly[k] -= &c;
        let p = &pows[k];
        for (i, x) in p.c.iter().enumerate() {
            let ee = p.lead + i as i64;
            let idx = ee - cur.lead;
            if idx >= 0 && (idx as usize) < cur.c.len() {
                cur.c[idx as usize] -= &c * x;
            }
        }
    }
    (FaberPolynomial { m, coeffs: poly }, cur)
}

/// The monic P_m with P_m(j) = q^{−m} + O(q).
pub fn faber_polynomial(m: u32) -> Result<FaberPolynomial> {
    if m == 0 || m > MAX_FABER_DEGREE {
        return Err(Error::Resource(format!("Faber degree {m} outside 1..={MAX_FABER_DEGREE}")));
    }
    let pows = j_powers(m, 0)?;
    Ok(faber_with_powers(m, &pows).0)
}

/// q-expansion of P_m(j) through q^N by exact composition.
pub fn compose_faber(m: u32, n: usize) -> Result<(FaberPolynomial, QSeries)> {
    if m == 0 || m > MAX_FABER_DEGREE {
        return Err(Error::Resource(format!("Faber degree {m} outside 1..={MAX_FABER_DEGREE}")));
    }
    let pows = j_powers(m, n as i64)?;
    let (p, cur) = faber_with_powers(m, &pows);
    let lead = -(m as i64);
    let coeffs = (lead..=n as i64).map(|e| cur.get(e)).collect();
    Ok((p, QSeries { leading_exponent: lead, coeffs }))
}

/// c_m(n) = Σ_{d | (m, n)} (m/d) c(mn/d²) for n ≥ 1: the q-expansion of j_m from j alone.
pub fn jm_coefficients_hecke(m: u32, n_max: usize) -> Result<Vec<BigInt>> {
    let t = j_table(m as usize * n_max.max(1))?;
    let c = |k: u64| &t[(k + 1) as usize];
    let mut out = Vec::with_capacity(n_max);
    for n in 1..=n_max as u64 {
        let g = gcd(m as i64, n as i64) as u64;
        let mut s = BigInt::zero();
        for d in divisors(g) {
            s += c(m as u64 * n / (d * d)) * BigInt::from(m as u64 / d);
        }
        out.push(s);
    }
    Ok(out)
}
