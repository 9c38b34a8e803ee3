//! Zagier-reduced indefinite forms, their minus continued fraction cycles and automorphs.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::QuadForm;
use crate::error::{Error, Result};
use crate::ntheory::arith::{divisors, is_square, isqrt};
use crate::ntheory::is_discriminant;

/// Maximum number of reduction steps before giving up on a form.
const MAX_REDUCTION_STEPS: usize = 1_000_000;

/// A generator power in the automorph word: `T(n)` is T^n, `S` is S.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Generator {
    T(i64),
    S,
}

/// One Γ₁-class of forms of positive discriminant, as a cycle of Zagier-reduced forms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormCycle {
    pub disc: i64,
    pub forms: Vec<QuadForm>,
    pub cf_exponents: Vec<i64>,
    pub automorph_word: Vec<Generator>,
    pub ell: usize,
}

pub(crate) fn check_positive_disc(d: i64) -> Result<()> {
    if d <= 0 || !is_discriminant(d) || is_square(d) {
        return Err(Error::Domain(format!("{d} is not a positive nonsquare discriminant")));
    }
    Ok(())
}

pub(crate) fn is_zagier_reduced(q: &QuadForm) -> bool {
    q.a > 0 && q.c > 0 && q.a + q.b + q.c < 0
}

/// ⌊w⌋ for the larger root w = (−b + √D)/(2a) of Q(x, 1), computed exactly.
fn root_floor(q: &QuadForm, sqrt_floor: i64) -> i64 {
    if q.a > 0 {
        (-q.b + sqrt_floor).div_euclid(2 * q.a)
    } else {
        (q.b - sqrt_floor - 1).div_euclid(-2 * q.a)
    }
}

/// One minus continued fraction step: n = ⌈w⌉ and w ↦ 1/(n − w).
pub(crate) fn zagier_step(q: &QuadForm, sqrt_floor: i64) -> (QuadForm, i64) {
    let n = root_floor(q, sqrt_floor) + 1;
    let next = QuadForm::new(q.a * n * n + q.b * n + q.c, -(2 * q.a * n + q.b), q.a);
    (next, n)
}

/// Reduces an indefinite form of nonsquare discriminant to a Zagier-reduced form in its class.
pub fn zagier_reduce(q: &QuadForm) -> Result<QuadForm> {
    let d = q.disc();
    check_positive_disc(d)?;
    if q.a == 0 {
        return Err(Error::Domain(format!("form {q} has a = 0")));
    }
    let s = isqrt(d as u64) as i64;
    let mut cur = *q;
    for _ in 0..MAX_REDUCTION_STEPS {
        if is_zagier_reduced(&cur) {
            return Ok(cur);
        }
        cur = zagier_step(&cur, s).0;
        if cur.a == 0 {
            return Err(Error::Domain(format!("reduction of {q} hit a = 0")));
        }
    }
    Err(Error::Resource(format!("reduction of {q} did not terminate")))
}

/// All Zagier-reduced forms of discriminant `d`.
pub fn zagier_reduced_forms(d: i64) -> Result<Vec<QuadForm>> {
    check_positive_disc(d)?;
    let mut out = Vec::new();
    let start = isqrt(d as u64) as i64 + 1;
    // a + c < B forces D = B² − 4ac ≥ 2B − 1.
    for big_b in start..=(d + 1) / 2 {
        if (big_b * big_b - d) % 4 != 0 {
            continue;
        }
        let p = (big_b * big_b - d) / 4;
        for a in divisors(p as u64) {
            let a = a as i64;
            let c = p / a;
            if a + c < big_b {
                out.push(QuadForm::new(a, -big_b, c));
            }
        }
    }
    out.sort();
    Ok(out)
}

impl FormCycle {
    fn from_forms(disc: i64, forms: Vec<QuadForm>, exps: Vec<i64>) -> FormCycle {
        let ell = forms.len();
        let mut word = Vec::with_capacity(2 * ell);
        for &n in &exps {
            word.push(Generator::T(n));
            word.push(Generator::S);
        }
        FormCycle { disc, forms, cf_exponents: exps, automorph_word: word, ell }
    }

    /// Product of the automorph word as an integer matrix.
    pub fn automorph_matrix(&self) -> [[BigInt; 2]; 2] {
        let mut m = [[BigInt::one(), BigInt::zero()], [BigInt::zero(), BigInt::one()]];
        for g in &self.automorph_word {
            let (p, q, r, s) = match *g {
                Generator::T(n) => (1, n, 0, 1),
                Generator::S => (0, -1, 1, 0),
            };
            let (p, q, r, s) = (BigInt::from(p), BigInt::from(q), BigInt::from(r), BigInt::from(s));
            m = [
                [&m[0][0] * &p + &m[0][1] * &r, &m[0][0] * &q + &m[0][1] * &s],
                [&m[1][0] * &p + &m[1][1] * &r, &m[1][0] * &q + &m[1][1] * &s],
            ];
        }
        m
    }

    pub fn automorph_trace(&self) -> BigInt {
        let m = self.automorph_matrix();
        &m[0][0] + &m[1][1]
    }

    /// Hyperbolic length 2·arccosh(t/2) of the closed geodesic.
    pub fn length(&self) -> f64 {
        let t = self.automorph_trace().abs().to_f64().unwrap_or(f64::INFINITY);
        2.0 * (t / 2.0).acosh()
    }

    pub fn is_primitive(&self) -> bool {
        self.forms[0].is_primitive()
    }

    pub fn contains(&self, q: &QuadForm) -> bool {
        self.forms.contains(q)
    }
}

/// Minimal rotation of `exps`, tie-broken by the smallest leading form.
fn canonical_rotation(forms: &[QuadForm], exps: &[i64]) -> usize {
    let l = exps.len();
    let key = |r: usize| -> (Vec<i64>, QuadForm) {
        ((0..l).map(|i| exps[(r + i) % l]).collect(), forms[r])
    };
    (0..l).min_by_key(|&r| key(r)).unwrap_or(0)
}

/// One canonicalized cycle per Γ₁-class of forms of discriminant `d`.
pub fn zagier_cycles(d: i64) -> Result<Vec<FormCycle>> {
    let all = zagier_reduced_forms(d)?;
    let s = isqrt(d as u64) as i64;
    let mut remaining: BTreeSet<QuadForm> = all.into_iter().collect();
    let mut cycles = Vec::new();
    while let Some(&first) = remaining.iter().next() {
        let mut forms = Vec::new();
        let mut exps = Vec::new();
        let mut cur = first;
        loop {
            if !remaining.remove(&cur) {
                return Err(Error::Domain(format!("cycle through {first} did not close")));
            }
            forms.push(cur);
            let (next, n) = zagier_step(&cur, s);
            exps.push(n);
            cur = next;
            if cur == first {
                break;
            }
        }
        let r = canonical_rotation(&forms, &exps);
        forms.rotate_left(r);
        exps.rotate_left(r);
        cycles.push(FormCycle::from_forms(d, forms, exps));
    }
    cycles.sort_by(|x, y| (&x.cf_exponents, x.forms[0]).cmp(&(&y.cf_exponents, y.forms[0])));
    Ok(cycles)
}

/// Number of Γ₁-classes (cycles) of discriminant `d`.
pub fn narrow_class_count(d: i64) -> Result<usize> {
    Ok(zagier_cycles(d)?.len())
}

/// Lookup from any form of discriminant D to the index of its cycle.
#[derive(Debug, Clone)]
pub struct ClassIndex {
    pub disc: i64,
    pub cycles: Vec<FormCycle>,
    index: HashMap<QuadForm, usize>,
}

impl ClassIndex {
    pub fn new(d: i64) -> Result<Self> {
        let cycles = zagier_cycles(d)?;
        let mut index = HashMap::new();
        for (i, c) in cycles.iter().enumerate() {
            for f in &c.forms {
                index.insert(*f, i);
            }
        }
        Ok(ClassIndex { disc: d, cycles, index })
    }

    /// Index of the cycle containing the class of `q`.
    pub fn class_of(&self, q: &QuadForm) -> Result<usize> {
        if q.disc() != self.disc {
            return Err(Error::Domain(format!("form {q} does not have discriminant {}", self.disc)));
        }
        let r = zagier_reduce(q)?;
        self.index
            .get(&r)
            .copied()
            .ok_or_else(|| Error::Domain(format!("reduced form {r} missing from the cycle table")))
    }
}

/// CSV rows `D,class_index,ell,cf_exponents,a,b,c`, one per form.
pub fn cycles_csv(cycles: &[FormCycle], header: bool) -> String {
    let mut out = String::new();
    if header {
        out.push_str("D,class_index,ell,cf_exponents,a,b,c\n");
    }
    for (i, cyc) in cycles.iter().enumerate() {
        let exps: Vec<String> = cyc.cf_exponents.iter().map(|n| n.to_string()).collect();
        let exps = exps.join(";");
        for f in &cyc.forms {
            let _ = writeln!(out, "{},{},{},{},{},{},{}", cyc.disc, i, cyc.ell, exps, f.a, f.b, f.c);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64, c: i64) -> QuadForm {
        QuadForm::new(a, b, c)
    }

    #[test]
    fn prototype_cycles() {
        let c5 = zagier_cycles(5).unwrap();
        assert_eq!(c5.len(), 1);
        assert_eq!(c5[0].forms, vec![q(1, -3, 1)]);
        assert_eq!(c5[0].cf_exponents, vec![3]);
        let c8 = zagier_cycles(8).unwrap();
        assert_eq!(c8[0].cf_exponents, vec![2, 4]);
        let c13 = zagier_cycles(13).unwrap();
        assert_eq!(c13.len(), 1);
        assert_eq!(c13[0].ell, 3);
        assert_eq!(c13[0].cf_exponents, vec![2, 2, 5]);
        let c17 = zagier_cycles(17).unwrap();
        assert_eq!(c17[0].ell, 5);
        assert_eq!(zagier_cycles(21).unwrap().len(), 2);
        assert_eq!(narrow_class_count(5).unwrap(), 1);
        assert_eq!(narrow_class_count(13).unwrap(), 1);
        assert_eq!(narrow_class_count(21).unwrap(), 2);
        assert!(zagier_cycles(9).is_err());
        assert!(zagier_cycles(7).is_err());
    }

    #[test]
    fn automorph_traces() {
        assert_eq!(zagier_cycles(5).unwrap()[0].automorph_trace(), BigInt::from(3));
        assert_eq!(zagier_cycles(13).unwrap()[0].automorph_trace(), BigInt::from(11));
        assert_eq!(zagier_cycles(8).unwrap()[0].automorph_trace(), BigInt::from(6));
    }

    #[test]
    fn steps_stay_reduced() {
        for d in (5..300).filter(|&d| check_positive_disc(d).is_ok()) {
            let s = isqrt(d as u64) as i64;
            for f in zagier_reduced_forms(d).unwrap() {
                let (g, n) = zagier_step(&f, s);
                assert!(n >= 2);
                assert!(is_zagier_reduced(&g), "{f} -> {g}");
                assert_eq!(g.disc(), d);
            }
        }
    }

    #[test]
    fn reduction_lands_in_class() {
        let idx = ClassIndex::new(21).unwrap();
        let q0 = q(1, 1, -5);
        let c = idx.class_of(&q0).unwrap();
        for g in [[[1, 1], [0, 1]], [[0, -1], [1, 0]], [[2, 3], [1, 2]], [[5, -7], [-2, 3]]] {
            assert_eq!(idx.class_of(&q0.act(g)).unwrap(), c);
        }
        assert_ne!(idx.class_of(&q(3, 3, -1)).unwrap(), c);
    }

    #[test]
    fn csv_layout() {
        let csv = cycles_csv(&zagier_cycles(13).unwrap(), true);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "D,class_index,ell,cf_exponents,a,b,c");
        assert_eq!(lines.len(), 4);
        assert!(lines[1].starts_with("13,0,3,2;2;5,"));
    }
}
