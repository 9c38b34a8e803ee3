//! Exact elementary arithmetic: Kronecker symbols, the theta factor ε_d,
//! fundamental-discriminant decompositions, divisor sums and Dirichlet L-values.
//!
//! Kronecker symbol conventions for non-positive lower arguments:
//!
//! | case            | value                      |
//! |-----------------|----------------------------|
//! | `(a / 0)`       | 1 if a = ±1, else 0        |
//! | `(a / −1)`      | sign(a) for a ≠ 0, 0 for a = 0 |
//! | `(a / −n)`      | `(a / −1) · (a / n)`       |

pub mod arith;
mod lfunc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
pub use arith::{divisors, factorize, gcd, is_square, isqrt, mod_inverse, moebius, sigma0, sigma1, Sieve};
pub use lfunc::{dirichlet_l, zeta};

/// Half-integral weight k = λ + 1/2 with k = ±1/2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Weight {
    #[serde(rename = "1/2")]
    Half,
    #[serde(rename = "-1/2")]
    MinusHalf,
}

impl Weight {
    pub fn k(self) -> f64 {
        match self {
            Weight::Half => 0.5,
            Weight::MinusHalf => -0.5,
        }
    }

    pub fn lambda(self) -> i64 {
        match self {
            Weight::Half => 0,
            Weight::MinusHalf => -1,
        }
    }

    /// 2k ∈ {1, −1}.
    pub fn two_k(self) -> i32 {
        match self {
            Weight::Half => 1,
            Weight::MinusHalf => -1,
        }
    }

    /// (−1)^λ.
    pub fn sign(self) -> i64 {
        match self {
            Weight::Half => 1,
            Weight::MinusHalf => -1,
        }
    }

    pub fn flip(self) -> Weight {
        match self {
            Weight::Half => Weight::MinusHalf,
            Weight::MinusHalf => Weight::Half,
        }
    }

    /// Parses `0.5`, `1/2`, `-0.5` or `-1/2`.
    pub fn parse(s: &str) -> Result<Weight> {
        match s.trim() {
            "0.5" | "1/2" | "+0.5" | "+1/2" => Ok(Weight::Half),
            "-0.5" | "-1/2" => Ok(Weight::MinusHalf),
            other => Err(Error::Domain(format!("weight must be ±1/2, got {other}"))),
        }
    }
}

/// Jacobi symbol (a/n) for odd n > 0.
pub fn jacobi(a: i64, n: i64) -> i32 {
    debug_assert!(n > 0 && n % 2 == 1);
    let mut a = a.rem_euclid(n);
    let mut n = n;
    let mut s = 1;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let r = n % 8;
            if r == 3 || r == 5 {
                s = -s;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            s = -s;
        }
        a %= n;
    }
    if n == 1 {
        s
    } else {
        0
    }
}

/// Kronecker symbol (a/n), extended to all integers n (see the module table).
pub fn kronecker(a: i64, n: i64) -> i32 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    let mut s = 1;
    let mut n = n;
    if n < 0 {
        n = -n;
        if a == 0 {
            return 0;
        }
        if a < 0 {
            s = -s;
        }
    }
    let v = n.trailing_zeros();
    if v > 0 {
        if a % 2 == 0 {
            return 0;
        }
        n >>= v;
        let r = a.rem_euclid(8);
        if v % 2 == 1 && (r == 3 || r == 5) {
            s = -s;
        }
    }
    if n == 1 {
        return s;
    }
    s * jacobi(a, n)
}

/// ε_d = 1 if d ≡ 1 (mod 4), i if d ≡ 3 (mod 4).
pub fn eps_factor(d: i64) -> Result<Complex64> {
    match d.rem_euclid(4) {
        1 => Ok(Complex64::new(1.0, 0.0)),
        3 => Ok(Complex64::new(0.0, 1.0)),
        _ => Err(Error::Domain(format!("ε_d needs odd d, got {d}"))),
    }
}

/// True for d ≡ 0, 1 (mod 4).
pub fn is_discriminant(d: i64) -> bool {
    matches!(d.rem_euclid(4), 0 | 1)
}

/// Fundamental discriminants, with 1 counted as fundamental.
pub fn is_fundamental(d: i64) -> bool {
    if d == 0 {
        return false;
    }
    let a = d.unsigned_abs();
    match d.rem_euclid(4) {
        1 => arith::is_squarefree(a),
        0 => {
            let m = d / 4;
            matches!(m.rem_euclid(4), 2 | 3) && arith::is_squarefree(m.unsigned_abs())
        }
        _ => false,
    }
}

/// δ_d: 1 for d = 1, 0 otherwise.
pub fn delta(d: i64) -> i64 {
    i64::from(d == 1)
}

/// Decomposition (−1)^λ n = w² d with d fundamental.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FundDecomposition {
    pub n: u64,
    pub sign_weight: Weight,
    pub d: i64,
    pub w: u64,
}

impl FundDecomposition {
    pub fn reconstruct(&self) -> i64 {
        (self.w * self.w) as i64 * self.d
    }
}

/// Splits `(−1)^λ n` into `w² d` with `d` a fundamental discriminant.
pub fn fund_decompose(n: u64, wt: Weight) -> Result<FundDecomposition> {
    if n == 0 {
        return Err(Error::Domain("n must be positive".into()));
    }
    let signed = wt.sign() * n as i64;
    if !is_discriminant(signed) {
        return Err(Error::Admissibility(format!(
            "(-1)^lambda n = {signed} is not 0 or 1 mod 4"
        )));
    }
    let (d, w) = fundamental_part(signed)?;
    Ok(FundDecomposition { n, sign_weight: wt, d, w })
}

/// Writes a nonzero discriminant `disc` as `w² d` with `d` fundamental.
pub fn fundamental_part(disc: i64) -> Result<(i64, u64)> {
    if disc == 0 || !is_discriminant(disc) {
        return Err(Error::Domain(format!("{disc} is not a nonzero discriminant")));
    }
    let mut core = 1u64;
    let mut f = 1u64;
    for (p, e) in factorize(disc.unsigned_abs())? {
        if e % 2 == 1 {
            core *= p;
        }
        f *= p.pow(e / 2);
    }
    let d0 = disc.signum() * core as i64;
    if d0.rem_euclid(4) == 1 {
        Ok((d0, f))
    } else {
        Ok((4 * d0, f / 2))
    }
}

/// σ_s(n) = Σ_{ℓ|n} ℓ^s, or τ_s(n) = σ_{2s}(n)/n^s when `normalized`.
pub fn divisor_power_sum(n: u64, s: Complex64, normalized: bool) -> Complex64 {
    let ds = divisors(n);
    if normalized {
        let nn = n as f64;
        ds.iter()
            .map(|&l| {
                // ℓ^{2s} n^{-s} = (ℓ²/n)^s
                let base = (l as f64) * (l as f64) / nn;
                cpow_real(base, s)
            })
            .sum()
    } else {
        ds.iter().map(|&l| cpow_real(l as f64, s)).sum()
    }
}

/// x^s for real x > 0 and complex s.
pub fn cpow_real(x: f64, s: Complex64) -> Complex64 {
    (s * x.ln()).exp()
}

/// 𝔖_d(w, s) = Σ_{ℓ|w} μ(ℓ) χ_d(ℓ) τ_s(w/ℓ) / √ℓ.
pub fn frak_s(d: i64, w: u64, s: Complex64) -> Result<Complex64> {
    if !is_fundamental(d) {
        return Err(Error::Domain(format!("{d} is not a fundamental discriminant")));
    }
    if w == 0 {
        return Err(Error::Domain("w must be positive".into()));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for l in divisors(w) {
        let mu = moebius(l);
        if mu == 0 {
            continue;
        }
        let chi = kronecker(d, l as i64);
        if chi == 0 {
            continue;
        }
        let coef = f64::from(mu * chi) / (l as f64).sqrt();
        acc += divisor_power_sum(w / l, s, true) * coef;
    }
    Ok(acc)
}

/// Kinds of special values exposed for reporting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpecialKind {
    SigmaS,
    TauS,
    FrakS,
    Moebius,
    Kronecker,
    Eps,
    DirichletL,
    Zeta,
    DeltaD,
}

/// A tagged special value with the arguments it was evaluated at.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpecialValue {
    pub kind: SpecialKind,
    pub argument: String,
    pub re: f64,
    pub im: f64,
}

impl SpecialValue {
    pub fn new(kind: SpecialKind, argument: impl Into<String>, value: Complex64) -> Result<Self> {
        let ok = match kind {
            SpecialKind::Moebius | SpecialKind::Kronecker => {
                value.im == 0.0 && [-1.0, 0.0, 1.0].contains(&value.re)
            }
            SpecialKind::Eps => value == Complex64::new(1.0, 0.0) || value == Complex64::new(0.0, 1.0),
            SpecialKind::DeltaD => value.im == 0.0 && (value.re == 0.0 || value.re == 1.0),
            _ => value.re.is_finite() && value.im.is_finite(),
        };
        if !ok {
            return Err(Error::Domain(format!("{value} is not a valid {kind:?} value")));
        }
        Ok(SpecialValue { kind, argument: argument.into(), re: value.re, im: value.im })
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}
