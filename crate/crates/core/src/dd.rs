//! Double-double ("two-float") arithmetic.
//!
//! A [`DD`] is the unevaluated sum `hi + lo` of two doubles with
//! `|lo| <= ulp(hi)/2`, giving roughly 31 significant decimal digits.
//! Addition, multiplication and division are built from the error-free
//! transformations [`two_sum`] and [`two_prod`]; the transcendental
//! functions reduce their argument exactly and finish with short Taylor
//! series.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::sync::OnceLock;

use crate::error::ParseRealError;

/// `s + e == a + b` exactly, `s = fl(a + b)`.
#[inline(always)]
pub fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

/// Like [`two_sum`] but requires `|a| >= |b|` (or `a == 0`).
#[inline(always)]
pub fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let e = b - (s - a);
    (s, e)
}

/// `p + e == a * b` exactly, `p = fl(a * b)`.
#[inline(always)]
pub fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    #[cfg(target_feature = "fma")]
    {
        (p, a.mul_add(b, -p))
    }
    #[cfg(not(target_feature = "fma"))]
    {
        let (ah, al) = split(a);
        let (bh, bl) = split(b);
        let e = ((ah * bh - p) + ah * bl + al * bh) + al * bl;
        (p, e)
    }
}

#[cfg(not(target_feature = "fma"))]
#[inline(always)]
fn split(a: f64) -> (f64, f64) {
    const SPLITTER: f64 = 134_217_729.0; // 2^27 + 1
    let t = SPLITTER * a;
    let hi = t - (t - a);
    (hi, a - hi)
}

#[derive(Clone, Copy, Default, PartialEq)]
pub struct DD {
    hi: f64,
    lo: f64,
}

// 2π, π and ln 2 as three non-overlapping doubles.
#[allow(clippy::approx_constant)]
const TWO_PI_3: [f64; 3] = [6.283185307179586, 2.4492935982947064e-16, -5.989539619436679e-33];
#[allow(clippy::approx_constant)]
const PI_3: [f64; 3] = [3.141592653589793, 1.2246467991473532e-16, -2.9947698097183397e-33];
#[allow(clippy::approx_constant)]
const LN2_3: [f64; 3] = [0.6931471805599453, 2.3190468138462996e-17, 5.707708438416212e-34];

// π/2 and 2π/64, exact power-of-two scalings of the above.
const PI_HALF_3: [f64; 3] = [PI_3[0] * 0.5, PI_3[1] * 0.5, PI_3[2] * 0.5];
const TWO_PI_DIV_3: [f64; 3] =
    [TWO_PI_3[0] / SINCOS_TABLE_DIV, TWO_PI_3[1] / SINCOS_TABLE_DIV, TWO_PI_3[2] / SINCOS_TABLE_DIV];

/// Number of table intervals per turn used by the sine/cosine kernel.
const SINCOS_TABLE_DIV: f64 = 64.0;
/// Largest radian argument accepted by [`DD::checked_sincos`].
pub const TRIG_RANGE: f64 = 1073741824.0; // 2^30

impl DD {
    pub const ZERO: DD = DD { hi: 0.0, lo: 0.0 };
    pub const ONE: DD = DD { hi: 1.0, lo: 0.0 };
    pub const PI: DD = DD { hi: PI_3[0], lo: PI_3[1] };
    pub const TWO_PI: DD = DD { hi: TWO_PI_3[0], lo: TWO_PI_3[1] };
    pub const LN2: DD = DD { hi: LN2_3[0], lo: LN2_3[1] };
    /// Unit roundoff of the representation, 2^-104.
    pub const EPSILON: f64 = 4.930380657631324e-32;

    /// Builds a normalized pair from two arbitrary doubles.
    #[inline]
    pub fn new(hi: f64, lo: f64) -> Self {
        let (h, l) = two_sum(hi, lo);
        DD { hi: h, lo: l }
    }

    #[inline(always)]
    const fn from_parts(hi: f64, lo: f64) -> Self {
        DD { hi, lo }
    }

    #[inline]
    pub const fn from_f64(x: f64) -> Self {
        DD { hi: x, lo: 0.0 }
    }

    /// Exact for every `i64`.
    pub fn from_i64(n: i64) -> Self {
        let hi = n as f64;
        // hi is within 2^10 of n for |n| < 2^63, so the remainder fits an i64.
        let rem = if hi >= 9.223372036854775807e18 {
            n.wrapping_sub(i64::MAX).wrapping_sub(1)
        } else {
            n - hi as i64
        };
        DD::new(hi, rem as f64)
    }

    #[inline(always)]
    pub fn hi(self) -> f64 {
        self.hi
    }

    #[inline(always)]
    pub fn lo(self) -> f64 {
        self.lo
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }

    pub fn is_nan(self) -> bool {
        self.hi.is_nan() || self.lo.is_nan()
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }

    /// Multiplies by `2^k` exactly (barring over/underflow).
    pub fn ldexp(self, k: i32) -> Self {
        let s = pow2(k);
        DD { hi: self.hi * s, lo: self.lo * s }
    }

    #[inline]
    pub fn add_f64(self, b: f64) -> Self {
        let (s1, s2) = two_sum(self.hi, b);
        let s2 = s2 + self.lo;
        let (h, l) = quick_two_sum(s1, s2);
        DD { hi: h, lo: l }
    }

    #[inline]
    pub fn mul_f64(self, b: f64) -> Self {
        let (p, e) = two_prod(self.hi, b);
        let e = self.lo.mul_add(b, e);
        let (h, l) = quick_two_sum(p, e);
        DD { hi: h, lo: l }
    }

    #[inline]
    pub fn sqr(self) -> Self {
        self * self
    }

    pub fn recip(self) -> Self {
        DD::ONE / self
    }

    pub fn floor(self) -> Self {
        let fh = self.hi.floor();
        if fh == self.hi {
            let (h, l) = quick_two_sum(fh, self.lo.floor());
            DD { hi: h, lo: l }
        } else {
            DD { hi: fh, lo: 0.0 }
        }
    }

    /// Nearest integer, ties away from zero.
    pub fn round(self) -> Self {
        let rh = self.hi.round();
        if rh == self.hi {
            let (h, l) = quick_two_sum(rh, self.lo.round());
            DD { hi: h, lo: l }
        } else if (rh - self.hi).abs() == 0.5 {
            // hi is a half-integer; lo decides the direction.
            if self.lo > 0.0 && rh < self.hi {
                DD::from_f64(rh + 1.0)
            } else if self.lo < 0.0 && rh > self.hi {
                DD::from_f64(rh - 1.0)
            } else {
                DD::from_f64(rh)
            }
        } else {
            DD::from_f64(rh)
        }
    }

    /// `self - floor(self)`, in `[0, 1)`.
    pub fn fract(self) -> Self {
        let r = self - self.floor();
        if r >= DD::ONE {
            r - DD::ONE
        } else if r < DD::ZERO {
            r + DD::ONE
        } else {
            r
        }
    }

    pub fn sqrt(self) -> Self {
        if self.hi == 0.0 {
            return DD::ZERO;
        }
        if self.hi < 0.0 {
            return DD::from_f64(f64::NAN);
        }
        // Karp's trick: one Newton step on the double approximation.
        let x = 1.0 / self.hi.sqrt();
        let ax = self.hi * x;
        let diff = self - DD::from_f64(ax).sqr();
        DD::from_f64(ax).add_f64(diff.hi * (x * 0.5))
    }

    pub fn exp(self) -> Self {
        if self.hi > 709.782712893384 {
            return DD::from_f64(f64::INFINITY);
        }
        if self.hi < -745.2 {
            return DD::ZERO;
        }
        if self.hi == 0.0 {
            return DD::ONE;
        }
        let k = (self.hi / LN2_3[0]).round();
        let r = reduce3(self, k, &LN2_3);
        // exp(r) = exp(r/16)^16, |r/16| <= 0.0217
        let s = r.ldexp(-4);
        let e = expm1_taylor(s);
        // (1 + e)^2 - 1 = e(2 + e), keeps the small part accurate
        let mut e = e;
        for _ in 0..4 {
            e = e * (e + DD::from_f64(2.0));
        }
        (e + DD::ONE).ldexp(k as i32)
    }

    pub fn ln(self) -> Self {
        if self.hi <= 0.0 {
            return DD::from_f64(if self.hi == 0.0 { f64::NEG_INFINITY } else { f64::NAN });
        }
        if self.hi == 1.0 && self.lo == 0.0 {
            return DD::ZERO;
        }
        let x0 = DD::from_f64(self.hi.ln());
        // Newton on exp(x) = a
        x0 + self * (-x0).exp() - DD::ONE
    }

    /// `sin(2πx)` and `cos(2πx)` with `x` in turns. The integer part of `x`
    /// is removed exactly, so the result is accurate for any finite `x`.
    pub fn sincos_2pi(self) -> (DD, DD) {
        let r = self - self.round();
        let q = (r.hi * 4.0).round();
        let s = r - DD::from_f64(q * 0.25);
        let k = (s.hi * SINCOS_TABLE_DIV).round();
        let u = (s - DD::from_f64(k / SINCOS_TABLE_DIV)) * DD::TWO_PI;
        quadrant(sincos_table_combine(u, k), q)
    }

    pub fn sin_2pi(self) -> Self {
        self.sincos_2pi().0
    }

    pub fn cos_2pi(self) -> Self {
        self.sincos_2pi().1
    }

    /// Sine and cosine of an angle in radians. Quarter turns are removed
    /// with a three-term π/2, so accuracy holds up to `|a| ~ 2^30`.
    pub fn sincos(self) -> (DD, DD) {
        let j = (self.hi / (0.5 * PI_3[0])).round();
        let r = if j == 0.0 { self } else { reduce3(self, j, &PI_HALF_3) };
        let k = (r.hi * (SINCOS_TABLE_DIV / TWO_PI_3[0])).round();
        let u = if k == 0.0 { r } else { reduce3(r, k, &TWO_PI_DIV_3) };
        quadrant(sincos_table_combine(u, k), j)
    }

    /// [`DD::sincos`] with the supported range enforced.
    pub fn checked_sincos(self) -> Result<(DD, DD), crate::error::Error> {
        if !(self.hi.abs() <= TRIG_RANGE) {
            return Err(crate::error::Error::Range(self.hi));
        }
        Ok(self.sincos())
    }

    pub fn sin(self) -> Self {
        self.sincos().0
    }

    pub fn cos(self) -> Self {
        self.sincos().1
    }

    /// Four-quadrant arctangent in radians.
    pub fn atan2(y: DD, x: DD) -> DD {
        if x.hi == 0.0 && y.hi == 0.0 {
            return DD::ZERO;
        }
        let t0 = DD::from_f64(y.hi.atan2(x.hi));
        let (s, c) = t0.sincos();
        // Newton on x sin t - y cos t = 0
        let num = y * c - x * s;
        let den = x * c + y * s;
        t0 + num / den
    }

    pub fn powi(self, n: i32) -> Self {
        let mut base = if n < 0 { self.recip() } else { self };
        let mut e = n.unsigned_abs();
        let mut acc = DD::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base = base.sqr();
            e >>= 1;
        }
        acc
    }

    /// Decimal rendering with `digits` significant digits in scientific
    /// notation, e.g. `7.18053759982066107095244936117e-1`.
    pub fn to_sci_string(self, digits: usize) -> String {
        if self.is_nan() {
            return "NaN".into();
        }
        if !self.is_finite() {
            return if self.hi > 0.0 { "inf".into() } else { "-inf".into() };
        }
        if self.hi == 0.0 {
            return format!("0.{}e0", "0".repeat(digits.saturating_sub(1)));
        }
        let digits = digits.max(1);
        let neg = self.hi < 0.0;
        let mut x = self.abs();
        let mut e10 = x.hi.log10().floor() as i32;
        x = x * pow10(-e10);
        if x.hi >= 10.0 {
            x = x / DD::from_f64(10.0);
            e10 += 1;
        } else if x.hi < 1.0 {
            x = x * DD::from_f64(10.0);
            e10 -= 1;
        }
        // two guard digits, then round
        let mut ds: Vec<u8> = Vec::with_capacity(digits + 2);
        for _ in 0..digits + 2 {
            let d = x.hi.floor().clamp(0.0, 9.0);
            ds.push(d as u8);
            x = (x - DD::from_f64(d)) * DD::from_f64(10.0);
        }
        // guard digits may hold values outside 0..9 after cancellation; fix up
        let round_up = ds[digits] >= 5;
        ds.truncate(digits);
        if round_up {
            let mut i = digits;
            loop {
                if i == 0 {
                    ds.insert(0, 1);
                    ds.truncate(digits);
                    e10 += 1;
                    break;
                }
                i -= 1;
                if ds[i] == 9 {
                    ds[i] = 0;
                } else {
                    ds[i] += 1;
                    break;
                }
            }
        }
        let mut s = String::with_capacity(digits + 8);
        if neg {
            s.push('-');
        }
        s.push((b'0' + ds[0]) as char);
        if digits > 1 {
            s.push('.');
            for d in &ds[1..] {
                s.push((b'0' + d) as char);
            }
        }
        s.push('e');
        s.push_str(&e10.to_string());
        s
    }

    /// Parses a decimal literal (`-0.123`, `1.5e-3`, `42`) without rounding
    /// through `f64`.
    pub fn parse_decimal(text: &str) -> Result<DD, ParseRealError> {
        let err = || ParseRealError::new(text);
        let t = text.trim();
        if t.is_empty() {
            return Err(err());
        }
        let (neg, body) = match t.as_bytes()[0] {
            b'-' => (true, &t[1..]),
            b'+' => (false, &t[1..]),
            _ => (false, t),
        };
        let (mantissa, exp_part) = match body.find(['e', 'E']) {
            Some(i) => (&body[..i], Some(&body[i + 1..])),
            None => (body, None),
        };
        let mut exp10: i32 = match exp_part {
            Some(e) => e.parse::<i32>().map_err(|_| err())?,
            None => 0,
        };
        let (int_part, frac_part) = match mantissa.find('.') {
            Some(i) => (&mantissa[..i], &mantissa[i + 1..]),
            None => (mantissa, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(err());
        }
        let mut acc = DD::ZERO;
        let mut seen = 0usize;
        for (i, ch) in int_part.bytes().chain(frac_part.bytes()).enumerate() {
            if !ch.is_ascii_digit() {
                return Err(err());
            }
            let d = (ch - b'0') as f64;
            if seen == 0 && d == 0.0 {
                if i >= int_part.len() {
                    exp10 -= 1;
                }
                continue;
            }
            // digits past 34 cannot change a double-double
            if seen < 34 {
                acc = acc * DD::from_f64(10.0) + DD::from_f64(d);
                if i >= int_part.len() {
                    exp10 -= 1;
                }
            } else if i < int_part.len() {
                exp10 += 1;
            }
            seen += 1;
        }
        let mut v = if exp10 >= 0 { acc * pow10(exp10) } else { acc / pow10(-exp10) };
        if neg {
            v = -v;
        }
        Ok(v)
    }
}

fn pow2(k: i32) -> f64 {
    if (-1022..=1023).contains(&k) {
        f64::from_bits(((k + 1023) as u64) << 52)
    } else {
        2f64.powi(k)
    }
}

fn pow10(k: i32) -> DD {
    DD::from_f64(10.0).powi(k)
}

/// `a - k * c` with `c` given as three doubles; `k` is an integer-valued
/// double small enough that `k * c[i]` is captured exactly by `two_prod`.
fn reduce3(a: DD, k: f64, c: &[f64; 3]) -> DD {
    let mut r = a;
    for &ci in c {
        let (p, e) = two_prod(k, ci);
        r = r - DD::from_parts(p, 0.0);
        r = r - DD::from_parts(e, 0.0);
    }
    r
}

fn inv_factorials() -> &'static [DD; 24] {
    static TABLE: OnceLock<[DD; 24]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = [DD::ONE; 24];
        for i in 1..24 {
            t[i] = t[i - 1] / DD::from_f64(i as f64);
        }
        t
    })
}

/// `exp(x) - 1` for `|x| <= 0.022`.
fn expm1_taylor(x: DD) -> DD {
    let f = inv_factorials();
    // terms up to x^14/14! are below 2^-110 relative for this range
    let mut acc = f[14];
    for i in (1..14).rev() {
        acc = acc * x + f[i];
    }
    acc * x
}

/// Taylor sine/cosine of a small angle `u` (radians) using `terms` pairs.
fn taylor_sincos(u: DD, terms: usize) -> (DD, DD) {
    let f = inv_factorials();
    let u2 = u.sqr();
    let mut s = DD::ZERO;
    let mut c = DD::ZERO;
    for i in (0..terms).rev() {
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        s = s * u2 + f[2 * i + 1].mul_f64(sign);
        c = c * u2 + f[2 * i].mul_f64(sign);
    }
    (s * u, c)
}

/// sin/cos of 2πk/64 for k = 0..=8.
fn sincos_table() -> &'static [(DD, DD); 9] {
    static TABLE: OnceLock<[(DD, DD); 9]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = [(DD::ZERO, DD::ONE); 9];
        for (k, slot) in t.iter_mut().enumerate().skip(1) {
            let u = DD::TWO_PI * DD::from_f64(k as f64 / SINCOS_TABLE_DIV);
            // series on u/4 (|u/4| <= π/16), then two angle doublings
            let (s, c) = taylor_sincos(u.ldexp(-2), 11);
            let (s, c) = (DD::from_f64(2.0) * s * c, c.sqr() - s.sqr());
            *slot = (DD::from_f64(2.0) * s * c, c.sqr() - s.sqr());
        }
        t
    })
}

/// Rotates `(sin u, cos u)` by `k` quarter turns.
fn quadrant((sn, cs): (DD, DD), k: f64) -> (DD, DD) {
    match (k as i64).rem_euclid(4) {
        0 => (sn, cs),
        1 => (cs, -sn),
        2 => (-sn, -cs),
        _ => (-cs, sn),
    }
}

/// sin/cos of `u + 2πk/64` for `|u| <= 2π/128` radians and `|k| <= 8`.
fn sincos_table_combine(u: DD, k: f64) -> (DD, DD) {
    // nine pairs reach u^17/17! < 1e-35
    let (su, cu) = taylor_sincos(u, 9);
    if k == 0.0 {
        return (su, cu);
    }
    let (sk, ck) = sincos_table()[k.abs() as usize];
    let sk = if k < 0.0 { -sk } else { sk };
    (sk * cu + ck * su, ck * cu - sk * su)
}

impl Neg for DD {
    type Output = DD;
    #[inline(always)]
    fn neg(self) -> DD {
        DD { hi: -self.hi, lo: -self.lo }
    }
}

impl Add for DD {
    type Output = DD;
    #[inline(always)]
    fn add(self, b: DD) -> DD {
        let (s1, s2) = two_sum(self.hi, b.hi);
        let (t1, t2) = two_sum(self.lo, b.lo);
        let s2 = s2 + t1;
        let (s1, s2) = quick_two_sum(s1, s2);
        let s2 = s2 + t2;
        let (h, l) = quick_two_sum(s1, s2);
        DD { hi: h, lo: l }
    }
}

impl Sub for DD {
    type Output = DD;
    #[inline(always)]
    fn sub(self, b: DD) -> DD {
        self + (-b)
    }
}

impl Mul for DD {
    type Output = DD;
    #[inline(always)]
    fn mul(self, b: DD) -> DD {
        let (ch, cl1) = two_prod(self.hi, b.hi);
        let tl0 = self.lo * b.lo;
        let tl1 = self.hi.mul_add(b.lo, tl0);
        let cl2 = self.lo.mul_add(b.hi, tl1);
        let cl3 = cl1 + cl2;
        let (h, l) = quick_two_sum(ch, cl3);
        DD { hi: h, lo: l }
    }
}

impl Div for DD {
    type Output = DD;
    #[inline]
    fn div(self, b: DD) -> DD {
        let q1 = self.hi / b.hi;
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        let (h, l) = quick_two_sum(q1, q2);
        DD { hi: h, lo: l }.add_f64(q3)
    }
}

macro_rules! assign_ops {
    ($($tr:ident $m:ident $op:tt),*) => {$(
        impl $tr for DD {
            #[inline(always)]
            fn $m(&mut self, b: DD) { *self = *self $op b; }
        }
    )*};
}
assign_ops!(AddAssign add_assign +, SubAssign sub_assign -, MulAssign mul_assign *, DivAssign div_assign /);

impl PartialOrd for DD {
    fn partial_cmp(&self, other: &DD) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&other.lo),
            o => o,
        }
    }
}

impl Sum for DD {
    fn sum<I: Iterator<Item = DD>>(iter: I) -> DD {
        iter.fold(DD::ZERO, |a, b| a + b)
    }
}

impl From<f64> for DD {
    fn from(x: f64) -> DD {
        DD::from_f64(x)
    }
}

impl FromStr for DD {
    type Err = ParseRealError;
    fn from_str(s: &str) -> Result<DD, ParseRealError> {
        DD::parse_decimal(s)
    }
}

impl fmt::Display for DD {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(30);
        f.write_str(&self.to_sci_string(digits))
    }
}

impl fmt::Debug for DD {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DD({:e} + {:e})", self.hi, self.lo)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: DD, b: DD) -> f64 {
        ((a - b) / b).abs().to_f64()
    }

    #[test]
    fn add_keeps_tiny_part() {
        let tiny = 2f64.powi(-60);
        let s = DD::ONE + DD::from_f64(tiny);
        assert_eq!((s - DD::ONE).to_f64(), tiny);
    }

    #[test]
    fn mul_identity() {
        let x = DD::new(1.2345, 3.0e-18);
        assert_eq!(x * DD::ONE, x);
    }

    #[test]
    fn sin_cos_at_zero() {
        assert_eq!(DD::ZERO.sin(), DD::ZERO);
        assert_eq!(DD::ZERO.cos(), DD::ONE);
    }

    #[test]
    fn sin_pi_is_tiny() {
        assert!(DD::PI.sin().abs().to_f64() <= 1e-30);
        // sin(π_dd) = sin(π - δ) = δ with δ = π - π_dd, about -3e-33
        assert!((DD::PI.sin().to_f64() + 2.9947698097183397e-33).abs() < 1e-35);
    }

    #[test]
    fn exp_one_is_e() {
        let e = DD::parse_decimal("2.718281828459045235360287471352662497757").unwrap();
        assert!(rel(DD::ONE.exp(), e) < 1e-31);
    }

    #[test]
    fn ln_inverts_exp() {
        for x in [0.1, 0.5, 1.7, 10.0, -3.3] {
            let d = DD::from_f64(x);
            assert!((d.exp().ln() - d).abs().to_f64() < 1e-30 * x.abs().max(1.0));
        }
    }

    #[test]
    fn sqrt_squares_back() {
        let two = DD::from_f64(2.0);
        let r = two.sqrt();
        assert!(rel(r * r, two) < 1e-31);
    }

    #[test]
    fn sincos_2pi_quadrants() {
        let q = DD::from_f64(0.25);
        let (s, c) = q.sincos_2pi();
        assert_eq!(s, DD::ONE);
        assert!(c.abs().to_f64() < 1e-32);
        let (s, c) = DD::from_f64(-0.5).sincos_2pi();
        assert!(s.abs().to_f64() < 1e-32);
        assert_eq!(c, -DD::ONE);
    }

    #[test]
    fn pythagoras_holds() {
        for i in 0..200 {
            let x = DD::from_f64(i as f64 * 0.0137 - 1.3);
            let (s, c) = x.sincos();
            assert!(((s * s + c * c) - DD::ONE).abs().to_f64() < 4e-31);
        }
    }

    #[test]
    fn large_argument_reduction() {
        // sin(2^30) via the turn form of the same number
        let a = DD::from_f64(2f64.powi(30));
        let turns = a / DD::TWO_PI;
        let direct = a.sin();
        // turns carries a relative error ~1e-32, i.e. ~2e-24 absolute; the
        // radian path must agree with it at that level and be self-consistent
        assert!((direct - turns.sin_2pi()).abs().to_f64() < 1e-22);
        let (s, c) = a.sincos();
        assert!(((s * s + c * c) - DD::ONE).abs().to_f64() < 4e-31);
    }

    #[test]
    fn atan2_roundtrip() {
        for i in 0..64 {
            let t = DD::from_f64(-3.1 + i as f64 * 0.097);
            let (s, c) = t.sincos();
            let back = DD::atan2(s, c);
            assert!((back - t).abs().to_f64() < 1e-30, "{i}");
        }
    }

    #[test]
    fn parse_and_print() {
        let s = "0.718053759982066107095244936117";
        let v = DD::parse_decimal(s).unwrap();
        assert_eq!(v.to_sci_string(30), "7.18053759982066107095244936117e-1");
        assert_eq!(DD::parse_decimal("-1.5e-3").unwrap().hi(), -1.5e-3);
        assert_eq!(DD::parse_decimal("42").unwrap(), DD::from_f64(42.0));
        assert_eq!(DD::parse_decimal("0.000").unwrap(), DD::ZERO);
        assert!(DD::parse_decimal("1.2.3").is_err());
        assert!(DD::parse_decimal("").is_err());
        assert!(DD::parse_decimal("abc").is_err());
    }

    #[test]
    fn parse_beats_double_rounding() {
        let v = DD::parse_decimal("0.1").unwrap();
        // 0.1 - fl(0.1) = -5.551115123125783e-18
        assert!((v.lo() + 5.551115123125783e-18).abs() < 1e-33);
    }

    #[test]
    fn floor_round_fract() {
        let x = DD::new(3.0, -1e-20);
        assert_eq!(x.floor(), DD::from_f64(2.0));
        assert_eq!(x.round(), DD::from_f64(3.0));
        assert!((x.fract() - DD::ONE).abs().to_f64() < 1e-19);
        let h = DD::new(2.5, 1e-20);
        assert_eq!(h.round(), DD::from_f64(3.0));
        let h = DD::new(2.5, -1e-20);
        assert_eq!(h.round(), DD::from_f64(2.0));
    }

    #[test]
    fn from_i64_is_exact() {
        let n = (1i64 << 60) + 12345;
        let d = DD::from_i64(n);
        assert_eq!(d.hi() as i128 + d.lo() as i128, n as i128);
    }

    mod oracle {
        use super::super::*;
        use num_rational::BigRational;
        use num_traits::{FromPrimitive, Signed, ToPrimitive};
        use proptest::prelude::*;

        fn exact(x: DD) -> BigRational {
            BigRational::from_f64(x.hi()).unwrap() + BigRational::from_f64(x.lo()).unwrap()
        }

        fn rel_err(got: DD, want: &BigRational) -> f64 {
            ((exact(got) - want) / want).abs().to_f64().unwrap()
        }

        fn non_overlapping(x: DD) -> bool {
            x.hi() + x.lo() == x.hi()
        }

        fn dd() -> impl Strategy<Value = DD> {
            (-1.0f64..1.0, -1.0f64..1.0, -15i32..15)
                .prop_filter("nonzero", |(h, _, _)| h.abs() > 1e-3)
                .prop_map(|(h, l, e)| DD::new(h, l * h.abs() * 1e-16).ldexp(e * 3))
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(1000))]

            #[test]
            fn add_cancels_exactly(a in -1.0f64..1.0, b in -1.0f64..1.0, ea in -50i32..50, eb in -50i32..50) {
                let (a, b) = (a * 2f64.powi(ea), b * 2f64.powi(eb));
                let s = DD::from_f64(a) + DD::from_f64(b);
                prop_assert_eq!(exact(s), BigRational::from_f64(a).unwrap() + BigRational::from_f64(b).unwrap());
                prop_assert_eq!(s - DD::from_f64(a) - DD::from_f64(b), DD::ZERO);
            }

            #[test]
            fn arithmetic_is_accurate(x in dd(), y in dd()) {
                let (ex, ey) = (exact(x), exact(y));
                let bound = 2f64.powi(-104);
                let s = x + y;
                let es = &ex + &ey;
                if es.abs().to_f64().unwrap() > 1e-300 {
                    // the sum bound is relative to |x| + |y|
                    let scale = ex.abs() + ey.abs();
                    let err = ((exact(s) - &es) / scale).abs().to_f64().unwrap();
                    prop_assert!(err <= 2.0 * bound, "add {err:e}");
                }
                prop_assert!(rel_err(x * y, &(&ex * &ey)) <= bound * 4.0);
                prop_assert!(rel_err(x / y, &(&ex / &ey)) <= bound * 4.0);
                prop_assert!(non_overlapping(s) && non_overlapping(x * y) && non_overlapping(x / y));
            }

            #[test]
            fn rounds_like_double(x in 0.01f64..100.0, y in 0.01f64..100.0) {
                let (a, b) = (DD::from_f64(x), DD::from_f64(y));
                let ulp = |v: f64| v.abs() * f64::EPSILON;
                prop_assert!(((a * b).to_f64() - x * y).abs() <= 2.0 * ulp(x * y));
                prop_assert!(((a / b).to_f64() - x / y).abs() <= 2.0 * ulp(x / y));
                prop_assert!((a.sqrt().to_f64() - x.sqrt()).abs() <= 2.0 * ulp(x.sqrt()));
                prop_assert!((a.ln().to_f64() - x.ln()).abs() <= 2.0 * ulp(x.ln()) + 1e-300);
                let t = x / 10.0;
                prop_assert!((DD::from_f64(t).exp().to_f64() - t.exp()).abs() <= 2.0 * ulp(t.exp()));
                prop_assert!((DD::from_f64(x).sin().to_f64() - x.sin()).abs() <= 2.0 * f64::EPSILON);
            }
        }
    }
}
