//! Integer arithmetic helpers: factorization, divisors, Möbius, modular inverses.

use crate::error::{Error, Result};

/// Largest input accepted by [`factorize`].
pub const FACTOR_LIMIT: u64 = 100_000_000;

/// Factors `n` by trial division with a 2,3,5 wheel.
pub fn factorize(n: u64) -> Result<Vec<(u64, u32)>> {
    if n == 0 {
        return Err(Error::Domain("cannot factor 0".into()));
    }
    if n > FACTOR_LIMIT {
        return Err(Error::Domain(format!("{n} exceeds the factorization limit {FACTOR_LIMIT}")));
    }
    Ok(factorize_unchecked(n))
}

pub(crate) fn factorize_unchecked(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    for p in [2u64, 3, 5] {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
    }
    const GAPS: [u64; 8] = [4, 2, 4, 2, 4, 6, 2, 6];
    let mut p = 7u64;
    let mut i = 0;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += GAPS[i];
        i = (i + 1) % 8;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Smallest-prime-factor table for bulk factorization of many moduli.
#[derive(Debug, Clone)]
pub struct Sieve {
    spf: Vec<u32>,
}

impl Sieve {
    pub fn new(limit: usize) -> Self {
        let mut spf = vec![0u32; limit + 1];
        for i in 2..=limit {
            if spf[i] == 0 {
                let mut j = i;
                while j <= limit {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                    j += i;
                }
            }
        }
        Sieve { spf }
    }

    pub fn limit(&self) -> u64 {
        (self.spf.len() - 1) as u64
    }

    /// Factors `n`, falling back to trial division beyond the table.
    pub fn factorize(&self, n: u64) -> Vec<(u64, u32)> {
        if n as usize >= self.spf.len() {
            return factorize_unchecked(n);
        }
        let mut n = n as usize;
        let mut out: Vec<(u64, u32)> = Vec::new();
        while n > 1 {
            let p = self.spf[n] as usize;
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p as u64, e));
        }
        out
    }
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut ds = vec![1u64];
    for (p, e) in factorize_unchecked(n) {
        let len = ds.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                ds.push(ds[i] * pk);
            }
        }
    }
    ds.sort_unstable();
    ds
}

pub fn sigma0(n: u64) -> u64 {
    factorize_unchecked(n).iter().map(|&(_, e)| e as u64 + 1).product()
}

pub fn sigma1(n: u64) -> u64 {
    divisors(n).iter().sum()
}

pub fn moebius(n: u64) -> i32 {
    let f = factorize_unchecked(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn is_squarefree(n: u64) -> bool {
    n != 0 && factorize_unchecked(n).iter().all(|&(_, e)| e == 1)
}

pub fn gcd(a: i64, b: i64) -> i64 {
    num_integer::gcd(a, b)
}

/// Inverse of `a` modulo `m` (m ≥ 1), if it exists.
pub fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    let (mut r0, mut r1) = (a.rem_euclid(m), m);
    let (mut s0, mut s1) = (1i64, 0i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 == 1 {
        Some(s0.rem_euclid(m))
    } else if m == 1 {
        Some(0)
    } else {
        None
    }
}

pub fn mod_pow(b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u128 % m as u128;
    let mut x = b as u128 % m as u128;
    while e > 0 {
        if e & 1 == 1 {
            r = r * x % m as u128;
        }
        x = x * x % m as u128;
        e >>= 1;
    }
    r as u64
}

/// Square roots of `a` modulo an odd prime `p` by Tonelli–Shanks.
pub fn sqrt_mod_prime(a: u64, p: u64) -> Vec<u64> {
    let a = a % p;
    if a == 0 {
        return vec![0];
    }
    if mod_pow(a, (p - 1) / 2, p) != 1 {
        return Vec::new();
    }
    let r = if p % 4 == 3 {
        mod_pow(a, (p + 1) / 4, p)
    } else {
        let mut q = p - 1;
        let mut s = 0;
        while q.is_multiple_of(2) {
            q /= 2;
            s += 1;
        }
        let mut z = 2;
        while mod_pow(z, (p - 1) / 2, p) != p - 1 {
            z += 1;
        }
        let mut m = s;
        let mut c = mod_pow(z, q, p);
        let mut t = mod_pow(a, q, p);
        let mut r = mod_pow(a, q.div_ceil(2), p);
        while t != 1 {
            let mut i = 0;
            let mut tt = t;
            while tt != 1 {
                tt = (tt as u128 * tt as u128 % p as u128) as u64;
                i += 1;
            }
            let b = mod_pow(c, 1 << (m - i - 1), p);
            m = i;
            c = (b as u128 * b as u128 % p as u128) as u64;
            t = (t as u128 * c as u128 % p as u128) as u64;
            r = (r as u128 * b as u128 % p as u128) as u64;
        }
        r
    };
    let mut v = vec![r, p - r];
    v.sort_unstable();
    v.dedup();
    v
}

/// Integer square root (floor).
pub fn isqrt(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut x = (n as f64).sqrt() as u64;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

pub fn is_square(n: i64) -> bool {
    n >= 0 && {
        let r = isqrt(n as u64);
        r * r == n as u64
    }
}
