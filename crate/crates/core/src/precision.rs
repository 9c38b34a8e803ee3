//! Scalar abstraction over `f64` and an arbitrary-precision binary float, so
//! that evaluators can run in double or extended precision from one code path.

use std::cell::RefCell;
use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constant cache"));
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

/// Floating-point precision used by an evaluator.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum PrecisionMode {
    #[default]
    Double,
    /// Binary floats with the given mantissa width in bits.
    Extended { bits: usize },
}

/// Real scalars supporting the handful of operations the evaluators need.
pub trait Real:
    Clone
    + Debug
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Precision context (unit for `f64`, mantissa bits for extended floats).
    type Ctx: Copy + Send + Sync + Debug;

    fn ctx(&self) -> Self::Ctx;
    fn from_f64(x: f64, ctx: Self::Ctx) -> Self;
    fn from_bigint(x: &BigInt, ctx: Self::Ctx) -> Self;
    fn to_f64(&self) -> f64;
    fn pi(ctx: Self::Ctx) -> Self;
    fn exp(&self) -> Self;
    fn ln(&self) -> Self;
    fn sin(&self) -> Self;
    fn cos(&self) -> Self;
    fn sqrt(&self) -> Self;

    fn zero(ctx: Self::Ctx) -> Self {
        Self::from_f64(0.0, ctx)
    }

    fn one(ctx: Self::Ctx) -> Self {
        Self::from_f64(1.0, ctx)
    }

    fn scale(&self, k: f64) -> Self {
        self.clone() * Self::from_f64(k, self.ctx())
    }

    fn tanh(&self) -> Self {
        let e2 = self.scale(2.0).exp();
        let one = Self::one(self.ctx());
        (e2.clone() - one.clone()) / (e2 + one)
    }

    fn sech(&self) -> Self {
        let e = self.exp();
        let one = Self::one(self.ctx());
        Self::from_f64(2.0, self.ctx()) / (e.clone() + one / e)
    }
}

impl Real for f64 {
    type Ctx = ();

    fn ctx(&self) {}
    fn from_f64(x: f64, _: ()) -> f64 {
        x
    }
    fn from_bigint(x: &BigInt, _: ()) -> f64 {
        x.to_f64().unwrap_or(f64::NAN)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn pi(_: ()) -> f64 {
        std::f64::consts::PI
    }
    fn exp(&self) -> f64 {
        f64::exp(*self)
    }
    fn ln(&self) -> f64 {
        f64::ln(*self)
    }
    fn sin(&self) -> f64 {
        f64::sin(*self)
    }
    fn cos(&self) -> f64 {
        f64::cos(*self)
    }
    fn sqrt(&self) -> f64 {
        f64::sqrt(*self)
    }
    fn tanh(&self) -> f64 {
        f64::tanh(*self)
    }
    fn sech(&self) -> f64 {
        1.0 / f64::cosh(*self)
    }
}

/// Arbitrary-precision binary float with an explicit mantissa width.
#[derive(Debug, Clone)]
pub struct MpReal {
    v: BigFloat,
    bits: usize,
}

impl MpReal {
    pub fn new(v: BigFloat, bits: usize) -> Self {
        MpReal { v, bits }
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    pub fn inner(&self) -> &BigFloat {
        &self.v
    }

    fn join(&self, other: &Self) -> usize {
        self.bits.max(other.bits)
    }
}

fn bigfloat_to_f64(v: &BigFloat) -> f64 {
    if v.is_zero() {
        return 0.0;
    }
    if v.is_nan() {
        return f64::NAN;
    }
    if v.is_inf_pos() {
        return f64::INFINITY;
    }
    if v.is_inf_neg() {
        return f64::NEG_INFINITY;
    }
    let Some((words, _, sign, exp, _)) = v.as_raw_parts() else {
        return f64::NAN;
    };
    let top = *words.last().unwrap_or(&0);
    let next = if words.len() >= 2 { words[words.len() - 2] } else { 0 };
    // Mantissa is normalized: value = 0.m × 2^exp with the top word holding the leading bits.
    let frac = top as f64 / 2f64.powi(64) + next as f64 / 2f64.powi(128);
    let mag = if exp > 1100 {
        f64::INFINITY
    } else if exp < -1200 {
        0.0
    } else {
        frac * 2f64.powi(exp)
    };
    if sign == astro_float::Sign::Neg {
        -mag
    } else {
        mag
    }
}

macro_rules! mp_binop {
    ($tr:ident, $f:ident, $m:ident) => {
        impl $tr for MpReal {
            type Output = MpReal;
            fn $f(self, rhs: MpReal) -> MpReal {
                let p = self.join(&rhs);
                MpReal { v: self.v.$m(&rhs.v, p, RM), bits: p }
            }
        }
    };
}

mp_binop!(Add, add, add);
mp_binop!(Sub, sub, sub);
mp_binop!(Mul, mul, mul);
mp_binop!(Div, div, div);

impl Neg for MpReal {
    type Output = MpReal;
    fn neg(self) -> MpReal {
        MpReal { v: self.v.neg(), bits: self.bits }
    }
}

impl Real for MpReal {
    type Ctx = usize;

    fn ctx(&self) -> usize {
        self.bits
    }
    fn from_f64(x: f64, bits: usize) -> Self {
        MpReal { v: BigFloat::from_f64(x, bits), bits }
    }
    fn from_bigint(x: &BigInt, bits: usize) -> Self {
        if let Some(small) = x.to_i64() {
            return MpReal { v: BigFloat::from_i64(small, bits), bits };
        }
        let s = x.to_string();
        let v = with_consts(|cc| BigFloat::parse(&s, Radix::Dec, bits, RM, cc));
        MpReal { v, bits }
    }
    fn to_f64(&self) -> f64 {
        bigfloat_to_f64(&self.v)
    }
    fn pi(bits: usize) -> Self {
        MpReal { v: with_consts(|cc| cc.pi(bits, RM)), bits }
    }
    fn exp(&self) -> Self {
        MpReal { v: with_consts(|cc| self.v.exp(self.bits, RM, cc)), bits: self.bits }
    }
    fn ln(&self) -> Self {
        MpReal { v: with_consts(|cc| self.v.ln(self.bits, RM, cc)), bits: self.bits }
    }
    fn sin(&self) -> Self {
        MpReal { v: with_consts(|cc| self.v.sin(self.bits, RM, cc)), bits: self.bits }
    }
    fn cos(&self) -> Self {
        MpReal { v: with_consts(|cc| self.v.cos(self.bits, RM, cc)), bits: self.bits }
    }
    fn sqrt(&self) -> Self {
        MpReal { v: self.v.sqrt(self.bits, RM), bits: self.bits }
    }
}

/// Minimal complex arithmetic over a [`Real`] scalar.
#[derive(Debug, Clone)]
pub struct Cx<R: Real> {
    pub re: R,
    pub im: R,
}

impl<R: Real> Cx<R> {
    pub fn new(re: R, im: R) -> Self {
        Cx { re, im }
    }

    pub fn zero(ctx: R::Ctx) -> Self {
        Cx { re: R::zero(ctx), im: R::zero(ctx) }
    }

    pub fn add(&self, o: &Self) -> Self {
        Cx { re: self.re.clone() + o.re.clone(), im: self.im.clone() + o.im.clone() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Cx {
            re: self.re.clone() * o.re.clone() - self.im.clone() * o.im.clone(),
            im: self.re.clone() * o.im.clone() + self.im.clone() * o.re.clone(),
        }
    }

    pub fn scale(&self, k: &R) -> Self {
        Cx { re: self.re.clone() * k.clone(), im: self.im.clone() * k.clone() }
    }

    /// exp(2πi·z) for z = x + iy: e^{−2πy} (cos 2πx + i sin 2πx).
    pub fn e(x: &R, y: &R) -> Self {
        let two_pi = R::pi(x.ctx()).scale(2.0);
        let mag = (-(two_pi.clone() * y.clone())).exp();
        let ang = two_pi * x.clone();
        Cx { re: mag.clone() * ang.cos(), im: mag * ang.sin() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mp_round_trip_and_transcendentals() {
        for x in [3.5, -0.1, 1e-300, 6.02e23, -2.0f64.powi(-40)] {
            assert_eq!(MpReal::from_f64(x, 128).to_f64(), x);
        }
        let p = 256;
        let pi = MpReal::pi(p);
        assert_eq!(pi.to_f64(), std::f64::consts::PI);
        let big = (MpReal::from_f64(499.0, p).sqrt() * pi).exp();
        let rel = (big.to_f64() / 3.005_101_108_071_026_2e30 - 1.0).abs();
        assert!(rel < 1e-15, "{}", big.to_f64());
        let s = MpReal::from_f64(0.3, p).sin();
        assert!((s.to_f64() - 0.3f64.sin()).abs() < 1e-16);
        let n: BigInt = "123456789012345678901234567890".parse().unwrap();
        let v = MpReal::from_bigint(&n, p);
        assert!((v.to_f64() / 1.2345678901234568e29 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn extended_precision_resolves_cancellation() {
        let p = 200;
        let big = MpReal::from_f64(2f64.powi(80), p);
        let one = MpReal::one(p);
        let diff = (big.clone() + one) - big;
        assert_eq!(diff.to_f64(), 1.0);
        let t = MpReal::from_f64(0.7, p);
        assert!((t.tanh().to_f64() - 0.7f64.tanh()).abs() < 1e-15);
        assert!((t.sech().to_f64() - 1.0 / 0.7f64.cosh()).abs() < 1e-15);
    }
}
