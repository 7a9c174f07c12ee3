//! The scalar abstraction every numerical routine is generic over.

use std::fmt::{Debug, Display};
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use crate::dd::{two_prod, DD};
use crate::error::ParseRealError;

pub trait Real:
    Copy
    + Debug
    + Display
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
{
    /// Unit roundoff of the format.
    const EPSILON: f64;
    /// Significant decimal digits used when serializing.
    const DIGITS: usize;
    const NAME: &'static str;

    fn from_f64(x: f64) -> Self;
    fn from_i64(n: i64) -> Self;
    fn to_f64(self) -> f64;
    fn pi() -> Self;
    fn two_pi() -> Self;

    fn zero() -> Self {
        Self::from_f64(0.0)
    }
    fn one() -> Self {
        Self::from_f64(1.0)
    }

    fn abs(self) -> Self;
    fn sqrt(self) -> Self;
    fn exp(self) -> Self;
    fn ln(self) -> Self;
    fn floor(self) -> Self;
    fn round(self) -> Self;
    fn sincos(self) -> (Self, Self);
    fn atan2(y: Self, x: Self) -> Self;
    /// `(sin 2πx, cos 2πx)` with the integer part of `x` removed exactly.
    fn sincos_2pi(self) -> (Self, Self);
    /// A representative of `n·self mod 1`, computed from the exact product
    /// so that large `n` loses no absolute accuracy.
    fn mul_mod1(self, n: i64) -> Self;
    fn is_finite(self) -> bool;
    fn parse(s: &str) -> Result<Self, ParseRealError>;
    /// Round-trippable decimal text with [`Real::DIGITS`] significant digits.
    fn to_decimal(self) -> String;

    fn sin(self) -> Self {
        self.sincos().0
    }
    fn cos(self) -> Self {
        self.sincos().1
    }
    fn sqr(self) -> Self {
        self * self
    }
    /// `x - floor(x)`, in `[0, 1)`.
    fn fract(self) -> Self {
        let r = self - self.floor();
        if r >= Self::one() {
            r - Self::one()
        } else if r < Self::zero() {
            r + Self::one()
        } else {
            r
        }
    }
    fn max(self, other: Self) -> Self {
        if other > self { other } else { self }
    }
    fn min(self, other: Self) -> Self {
        if other < self { other } else { self }
    }
}

impl Real for f64 {
    const EPSILON: f64 = f64::EPSILON / 2.0;
    const DIGITS: usize = 17;
    const NAME: &'static str = "double";

    #[inline(always)]
    fn from_f64(x: f64) -> Self {
        x
    }
    #[inline(always)]
    fn from_i64(n: i64) -> Self {
        n as f64
    }
    #[inline(always)]
    fn to_f64(self) -> f64 {
        self
    }
    fn pi() -> Self {
        std::f64::consts::PI
    }
    fn two_pi() -> Self {
        std::f64::consts::TAU
    }
    #[inline(always)]
    fn abs(self) -> Self {
        f64::abs(self)
    }
    #[inline(always)]
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    #[inline(always)]
    fn exp(self) -> Self {
        f64::exp(self)
    }
    #[inline(always)]
    fn ln(self) -> Self {
        f64::ln(self)
    }
    #[inline(always)]
    fn floor(self) -> Self {
        f64::floor(self)
    }
    #[inline(always)]
    fn round(self) -> Self {
        f64::round(self)
    }
    #[inline(always)]
    fn sincos(self) -> (Self, Self) {
        f64::sin_cos(self)
    }
    #[inline(always)]
    fn atan2(y: Self, x: Self) -> Self {
        f64::atan2(y, x)
    }
    #[inline]
    fn sincos_2pi(self) -> (Self, Self) {
        let r = self - self.round();
        let q = (4.0 * r).round();
        let s = r - 0.25 * q;
        let (sn, cs) = (std::f64::consts::TAU * s).sin_cos();
        match (q as i64).rem_euclid(4) {
            0 => (sn, cs),
            1 => (cs, -sn),
            2 => (-sn, -cs),
            _ => (-cs, sn),
        }
    }
    #[inline]
    fn mul_mod1(self, n: i64) -> Self {
        let (p, e) = two_prod(self, n as f64);
        (p - p.round()) + e
    }
    #[inline(always)]
    fn is_finite(self) -> bool {
        f64::is_finite(self)
    }
    fn parse(s: &str) -> Result<Self, ParseRealError> {
        s.trim().parse::<f64>().map_err(|_| ParseRealError::new(s))
    }
    fn to_decimal(self) -> String {
        format!("{self:e}")
    }
}

impl Real for DD {
    const EPSILON: f64 = DD::EPSILON;
    const DIGITS: usize = 30;
    const NAME: &'static str = "dd";

    #[inline(always)]
    fn from_f64(x: f64) -> Self {
        DD::from_f64(x)
    }
    fn from_i64(n: i64) -> Self {
        DD::from_i64(n)
    }
    #[inline(always)]
    fn to_f64(self) -> f64 {
        DD::to_f64(self)
    }
    fn pi() -> Self {
        DD::PI
    }
    fn two_pi() -> Self {
        DD::TWO_PI
    }
    fn abs(self) -> Self {
        DD::abs(self)
    }
    fn sqrt(self) -> Self {
        DD::sqrt(self)
    }
    fn exp(self) -> Self {
        DD::exp(self)
    }
    fn ln(self) -> Self {
        DD::ln(self)
    }
    fn floor(self) -> Self {
        DD::floor(self)
    }
    fn round(self) -> Self {
        DD::round(self)
    }
    fn sincos(self) -> (Self, Self) {
        DD::sincos(self)
    }
    fn atan2(y: Self, x: Self) -> Self {
        DD::atan2(y, x)
    }
    fn sincos_2pi(self) -> (Self, Self) {
        DD::sincos_2pi(self)
    }
    fn mul_mod1(self, n: i64) -> Self {
        let nf = n as f64;
        let (p1, e1) = two_prod(self.hi(), nf);
        let (p2, e2) = two_prod(self.lo(), nf);
        // p1 - round(p1) is exact; the rest is small
        let r = DD::from_f64(p1 - p1.round());
        r + DD::from_f64(e1) + DD::from_f64(p2) + DD::from_f64(e2)
    }
    fn is_finite(self) -> bool {
        DD::is_finite(self)
    }
    fn parse(s: &str) -> Result<Self, ParseRealError> {
        DD::parse_decimal(s)
    }
    fn to_decimal(self) -> String {
        self.to_sci_string(Self::DIGITS)
    }
}

/// `(p + q·√d) / r` evaluated in `T`; used for tableau coefficients.
pub fn surd<T: Real>(p: i64, q: i64, d: i64, r: i64) -> T {
    let s = T::from_i64(d).sqrt();
    (T::from_i64(p) + T::from_i64(q) * s) / T::from_i64(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sincos_2pi_matches_radians_f64() {
        for i in 0..100 {
            let x = -3.0 + 0.0617 * i as f64;
            let (s, c) = x.sincos_2pi();
            let (s2, c2) = (std::f64::consts::TAU * x).sin_cos();
            assert!((s - s2).abs() < 1e-14 && (c - c2).abs() < 1e-14);
        }
    }

    #[test]
    fn mul_mod1_handles_large_multipliers() {
        let rho = (5f64.sqrt() - 1.0) / 2.0;
        let n = 123_456_789i64;
        let direct = DD::from_f64(rho).mul_mod1(n);
        let got = rho.mul_mod1(n);
        let diff = (DD::from_f64(got) - direct).to_f64();
        assert!((diff - diff.round()).abs() < 1e-16);
    }

    #[test]
    fn dd_mul_mod1_is_exact_to_dd() {
        let x = DD::parse_decimal("0.618033988749894848204586834365638").unwrap();
        let n = 10_000_019i64;
        let want = (x * DD::from_i64(n)).fract();
        let got = x.mul_mod1(n).fract();
        assert!((got - want).abs().to_f64() < 1e-24);
    }

    #[test]
    fn surd_value() {
        let v: DD = surd(7, 1, 21, 14);
        let want = DD::parse_decimal("0.827326835353988571899146228123").unwrap();
        assert!((v - want).abs().to_f64() < 1e-29);
    }

    #[test]
    fn decimal_forms() {
        assert_eq!(0.25f64.to_decimal(), "2.5e-1");
        assert_eq!(DD::from_f64(0.25).to_decimal(), format!("2.{}e-1", "5".to_string() + &"0".repeat(28)));
    }
}
