//! Integral binary quadratic forms: reduction of definite forms, Zagier
//! cycles and automorphs of indefinite forms, Pell units and genus characters.

mod pell;
mod zagier;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ntheory::{gcd, is_discriminant, is_fundamental, kronecker};

pub use pell::{fundamental_automorph, PellUnit};
pub use zagier::{
    cycles_csv, narrow_class_count, zagier_cycles, zagier_reduce, zagier_reduced_forms, ClassIndex,
    FormCycle, Generator,
};

/// The form Q(x, y) = a x² + b x y + c y².
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuadForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl QuadForm {
    pub const fn new(a: i64, b: i64, c: i64) -> Self {
        QuadForm { a, b, c }
    }

    pub fn disc(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn content(&self) -> i64 {
        gcd(gcd(self.a, self.b), self.c)
    }

    pub fn is_primitive(&self) -> bool {
        self.content() == 1
    }

    pub fn eval(&self, x: i64, y: i64) -> i64 {
        self.a * x * x + self.b * x * y + self.c * y * y
    }

    /// Q ∘ γ for γ = [[p, q], [r, s]]: (x, y) ↦ Q(px + qy, rx + sy).
    pub fn act(&self, g: [[i64; 2]; 2]) -> QuadForm {
        let [[p, q], [r, s]] = g;
        QuadForm {
            a: self.eval(p, r),
            b: 2 * self.a * p * q + self.b * (p * s + q * r) + 2 * self.c * r * s,
            c: self.eval(q, s),
        }
    }

    /// Center and radius of the semicircle joining the roots of Q(x, 1) (D > 0, a ≠ 0).
    pub fn semicircle(&self) -> (f64, f64) {
        let d = self.disc() as f64;
        let a = self.a as f64;
        (-(self.b as f64) / (2.0 * a), d.sqrt() / (2.0 * a.abs()))
    }

    /// The Heegner point (−b + i√|D|)/(2a) of a positive definite form.
    pub fn heegner_point(&self) -> (f64, f64) {
        let d = self.disc().unsigned_abs() as f64;
        let a = self.a as f64;
        (-(self.b as f64) / (2.0 * a), d.sqrt() / (2.0 * a))
    }
}

impl std::fmt::Display for QuadForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{},{},{}]", self.a, self.b, self.c)
    }
}

/// Reduced forms of a negative discriminant together with ω_d.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImaginaryClasses {
    pub d: i64,
    pub forms: Vec<QuadForm>,
    pub omega: u32,
}

impl ImaginaryClasses {
    pub fn class_number(&self) -> usize {
        self.forms.len()
    }
}

/// All primitive reduced positive definite forms of discriminant `d < 0`.
pub fn reduced_forms_imaginary(d: i64) -> Result<ImaginaryClasses> {
    if d >= 0 || !is_discriminant(d) {
        return Err(Error::Domain(format!("{d} is not a negative discriminant")));
    }
    let n = -d;
    let mut forms = Vec::new();
    let amax = ((n as f64 / 3.0).sqrt()) as i64 + 1;
    for a in 1..=amax {
        for b in -a + 1..=a {
            if (b * b + n) % (4 * a) != 0 {
                continue;
            }
            let c = (b * b + n) / (4 * a);
            if c < a || (c == a && b < 0) {
                continue;
            }
            let q = QuadForm::new(a, b, c);
            if q.is_primitive() {
                forms.push(q);
            }
        }
    }
    forms.sort_by_key(|q| (q.a, q.b));
    let omega = match d {
        -3 => 3,
        -4 => 2,
        _ => 1,
    };
    Ok(ImaginaryClasses { d, forms, omega })
}

/// Class number h(d) for a negative discriminant.
pub fn class_number_imaginary(d: i64) -> Result<usize> {
    Ok(reduced_forms_imaginary(d)?.class_number())
}

/// A factorization D = d·d′ with d fundamental, selecting the genus character χ_d.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusCharacterSpec {
    #[serde(rename = "D")]
    pub disc: i64,
    pub d: i64,
    pub d_prime: i64,
}

impl GenusCharacterSpec {
    pub fn new(disc: i64, d: i64) -> Result<Self> {
        if !is_discriminant(disc) || disc == 0 {
            return Err(Error::Domain(format!("{disc} is not a discriminant")));
        }
        if !is_fundamental(d) {
            return Err(Error::Domain(format!("{d} is not a fundamental discriminant")));
        }
        if disc % d != 0 {
            return Err(Error::Domain(format!("{d} does not divide {disc}")));
        }
        let d_prime = disc / d;
        if !is_discriminant(d_prime) {
            return Err(Error::Domain(format!("cofactor {d_prime} of {disc} is not a discriminant")));
        }
        Ok(GenusCharacterSpec { disc, d, d_prime })
    }

    /// Whether χ_d is the trivial character (d = 1 or d′ = 1).
    pub fn is_trivial(&self) -> bool {
        self.d == 1 || self.d_prime == 1
    }

    /// The same factorization with the roles of d and d′ exchanged (needs d′ fundamental).
    pub fn swapped(&self) -> Result<Self> {
        GenusCharacterSpec::new(self.disc, self.d_prime)
    }
}

/// Default half-width of the box searched for a represented value coprime to d.
pub const GENUS_SEARCH_BOUND: i64 = 50;

/// χ_d(Q): 0 if gcd(a, b, c, d) > 1, else (d/n) for a value n of Q coprime to d.
pub fn genus_character(spec: &GenusCharacterSpec, q: &QuadForm) -> Result<i32> {
    genus_character_with_bound(spec, q, GENUS_SEARCH_BOUND)
}

pub fn genus_character_with_bound(spec: &GenusCharacterSpec, q: &QuadForm, bound: i64) -> Result<i32> {
    if q.disc() != spec.disc {
        return Err(Error::Domain(format!("form {q} does not have discriminant {}", spec.disc)));
    }
    let d = spec.d;
    if spec.is_trivial() {
        return Ok(1);
    }
    if gcd(q.content(), d) > 1 {
        return Ok(0);
    }
    // Fast candidates first: Q(1,0), Q(0,1), Q(1,1), Q(1,-1).
    for n in [q.a, q.c, q.a + q.b + q.c, q.a - q.b + q.c] {
        if n != 0 && gcd(n, d) == 1 {
            return Ok(kronecker(d, n));
        }
    }
    for r in 1..=bound {
        for x in -r..=r {
            for y in -r..=r {
                if x.abs().max(y.abs()) != r {
                    continue;
                }
                let n = q.eval(x, y);
                if n != 0 && gcd(n, d) == 1 {
                    return Ok(kronecker(d, n));
                }
            }
        }
    }
    Err(Error::Search(format!(
        "no value of {q} coprime to {d} with |x|, |y| <= {bound}"
    )))
}
