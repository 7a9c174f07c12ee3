//! Fourier coefficients of functions sampled along a quasiperiodic orbit.
//!
//! With the conjugate angle `θ_n = nρ mod 1` known, the coefficients are
//! weighted Birkhoff averages of `2 f(x_n) cos 2πkθ_n` and
//! `2 f(x_n) sin 2πkθ_n`; no FFT is possible because the `θ_n` are not a
//! grid.

use std::f64::consts::PI;

use crate::averaging::CompensatedSum;
use crate::error::{Error, Result};
use crate::kernels::WeightSequence;
use crate::real::Real;

/// `f(θ) ≈ b[0]/2 + Σ_{k≥1} b[k] cos 2πkθ + c[k] sin 2πkθ`. `c[0]` is kept
/// at zero so both vectors share the index.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierSpectrum1D<T> {
    pub kmax: usize,
    pub b: Vec<T>,
    pub c: Vec<T>,
}

impl<T: Real> FourierSpectrum1D<T> {
    pub fn zeros(kmax: usize) -> Self {
        FourierSpectrum1D { kmax, b: vec![T::zero(); kmax + 1], c: vec![T::zero(); kmax + 1] }
    }

    /// `sqrt(b_k² + c_k²)`; index 0 holds `|b_0|/2`, the mean.
    pub fn magnitudes(&self) -> Vec<T> {
        let mut m: Vec<T> =
            self.b.iter().zip(&self.c).map(|(&b, &c)| (b * b + c * c).sqrt()).collect();
        m[0] = self.b[0].abs() * T::from_f64(0.5);
        m
    }

    /// Truncated series at `θ`.
    pub fn evaluate(&self, theta: T) -> T {
        let mut acc = CompensatedSum::new();
        acc.add(self.b[0] * T::from_f64(0.5));
        for k in 1..=self.kmax {
            let (s, c) = (theta * T::from_i64(k as i64)).fract().sincos_2pi();
            acc.add(self.b[k] * c);
            acc.add(self.c[k] * s);
        }
        acc.value()
    }

    /// The spectrum of `θ ↦ f(θ + δ)`.
    pub fn shifted(&self, delta: T) -> Self {
        let mut out = self.clone();
        for k in 1..=self.kmax {
            let (s, c) = delta.mul_mod1(k as i64).sincos_2pi();
            out.b[k] = self.b[k] * c + self.c[k] * s;
            out.c[k] = self.c[k] * c - self.b[k] * s;
        }
        out
    }
}

pub fn fourier_coeffs_1d<T: Real>(
    values: &[T],
    rho: T,
    kmax: usize,
    weights: &WeightSequence<T>,
) -> Result<FourierSpectrum1D<T>> {
    let n = weights.len();
    if values.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: values.len() });
    }
    if 2 * kmax >= n {
        return Err(Error::InvalidInput(format!(
            "kmax = {kmax} needs more than {} samples, got {n}",
            2 * kmax
        )));
    }
    let mut b = vec![CompensatedSum::new(); kmax + 1];
    let mut c = vec![CompensatedSum::new(); kmax + 1];
    let mut ex = vec![(T::zero(), T::one()); kmax + 1];
    for (i, (&f, &w)) in values.iter().zip(weights.as_slice()).enumerate() {
        if !f.is_finite() {
            return Err(Error::NonFinite { index: i });
        }
        let theta = rho.mul_mod1(i as i64);
        harmonics(theta, &mut ex);
        let wf = w * f;
        b[0].add(wf);
        for k in 1..=kmax {
            let (s, co) = ex[k];
            b[k].add(wf * co);
            c[k].add(wf * s);
        }
    }
    let two = T::from_f64(2.0);
    let mut out = FourierSpectrum1D::zeros(kmax);
    for k in 0..=kmax {
        out.b[k] = two * b[k].value();
        out.c[k] = two * c[k].value();
    }
    out.c[0] = T::zero();
    Ok(out)
}

/// `(sin, cos)` of `2πkθ` for `k = 0..out.len()`. The angle-addition
/// recurrence is reseeded from a direct evaluation every few steps so the
/// rounding error stays bounded independent of `k`.
fn harmonics<T: Real>(theta: T, out: &mut [(T, T)]) {
    const RESEED: usize = 16;
    if out.is_empty() {
        return;
    }
    out[0] = (T::zero(), T::one());
    let (s1, c1) = theta.sincos_2pi();
    for k in 1..out.len() {
        out[k] = if k % RESEED == 0 {
            theta.mul_mod1(k as i64).sincos_2pi()
        } else {
            let (s, c) = out[k - 1];
            (s * c1 + c * s1, c * c1 - s * s1)
        };
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Complex<T> {
    pub re: T,
    pub im: T,
}

impl<T: Real> Complex<T> {
    pub fn norm(self) -> T {
        (self.re * self.re + self.im * self.im).sqrt()
    }
}

/// Complex coefficients of `f(x, y)` against `e^{2πi(jx+ky)}` (`plus`) and
/// `e^{2πi(jx−ky)}` (`minus`) for `0 ≤ j ≤ jmax`, `0 ≤ k ≤ kmax`, stored
/// row-major in `j`. Together with conjugation these cover every frequency
/// of a real `f`.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierSpectrum2D<T> {
    pub jmax: usize,
    pub kmax: usize,
    pub plus: Vec<Complex<T>>,
    pub minus: Vec<Complex<T>>,
}

impl<T: Real> FourierSpectrum2D<T> {
    fn index(&self, j: usize, k: usize) -> usize {
        j * (self.kmax + 1) + k
    }

    pub fn plus(&self, j: usize, k: usize) -> Complex<T> {
        self.plus[self.index(j, k)]
    }

    pub fn minus(&self, j: usize, k: usize) -> Complex<T> {
        self.minus[self.index(j, k)]
    }

    /// `(√(j²+k²), |coefficient|)` for every stored nonzero frequency, both
    /// families, with the duplicated axes listed once.
    pub fn radial_magnitudes(&self) -> Vec<(f64, f64)> {
        let mut out = Vec::new();
        for j in 0..=self.jmax {
            for k in 0..=self.kmax {
                if j == 0 && k == 0 {
                    continue;
                }
                let r = ((j * j + k * k) as f64).sqrt();
                out.push((r, self.plus(j, k).norm().to_f64()));
                if j > 0 && k > 0 {
                    out.push((r, self.minus(j, k).norm().to_f64()));
                }
            }
        }
        out
    }
}

pub fn fourier_coeffs_2d<T: Real>(
    values: &[T],
    rho: [T; 2],
    jmax: usize,
    kmax: usize,
    weights: &WeightSequence<T>,
) -> Result<FourierSpectrum2D<T>> {
    let n = weights.len();
    if values.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: values.len() });
    }
    if 2 * jmax.max(kmax) >= n {
        return Err(Error::InvalidInput(format!(
            "jmax = {jmax}, kmax = {kmax} need more than {} samples, got {n}",
            2 * jmax.max(kmax)
        )));
    }
    let size = (jmax + 1) * (kmax + 1);
    let zero = [CompensatedSum::new(), CompensatedSum::new()];
    let mut plus = vec![zero; size];
    let mut minus = vec![zero; size];
    let mut ex = vec![(T::zero(), T::one()); jmax + 1];
    let mut ey = vec![(T::zero(), T::one()); kmax + 1];
    for (i, (&f, &w)) in values.iter().zip(weights.as_slice()).enumerate() {
        if !f.is_finite() {
            return Err(Error::NonFinite { index: i });
        }
        harmonics(rho[0].mul_mod1(i as i64), &mut ex);
        harmonics(rho[1].mul_mod1(i as i64), &mut ey);
        let wf = w * f;
        for (j, &(sx, cx)) in ex.iter().enumerate() {
            // wf·e^{-2πijx}
            let (ar, ai) = (wf * cx, -(wf * sx));
            for (k, &(sy, cy)) in ey.iter().enumerate() {
                let idx = j * (kmax + 1) + k;
                // times e^{-2πiky}
                plus[idx][0].add(ar * cy + ai * sy);
                plus[idx][1].add(ai * cy - ar * sy);
                // times e^{+2πiky}
                minus[idx][0].add(ar * cy - ai * sy);
                minus[idx][1].add(ai * cy + ar * sy);
            }
        }
    }
    let finish =
        |v: Vec<[CompensatedSum<T>; 2]>| v.iter().map(|[r, i]| Complex { re: r.value(), im: i.value() }).collect();
    Ok(FourierSpectrum2D { jmax, kmax, plus: finish(plus), minus: finish(minus) })
}

/// `g(θ_i)` at the `m` uniform angles `θ_i = i/m`. Harmonic phases are
/// formed from `k·i mod m`, so they are exact rationals before rounding.
pub fn reconstruct_conjugacy<T: Real>(spectrum: &FourierSpectrum1D<T>, m: usize) -> Vec<T> {
    let mm = T::from_i64(m as i64);
    let half = T::from_f64(0.5);
    (0..m)
        .map(|i| {
            let mut acc = CompensatedSum::new();
            acc.add(spectrum.b[0] * half);
            for k in 1..=spectrum.kmax {
                let phase = T::from_i64(((k * i) % m) as i64) / mm;
                let (s, c) = phase.sincos_2pi();
                acc.add(spectrum.b[k] * c);
                acc.add(spectrum.c[k] * s);
            }
            acc.value()
        })
        .collect()
}

/// Parameter shift `δ` (on a grid of `m` values) that best aligns
/// `candidate` with `reference`, maximizing their circular
/// cross-correlation `Σ_k b_k b'_k + c_k c'_k`. Conjugacies are defined only
/// up to this shift.
pub fn align_phase<T: Real>(
    reference: &FourierSpectrum1D<T>,
    candidate: &FourierSpectrum1D<T>,
    m: usize,
) -> T {
    let kmax = reference.kmax.min(candidate.kmax);
    let mm = T::from_i64(m as i64);
    let mut best = (T::zero(), None::<T>);
    for i in 0..m {
        let delta = T::from_i64(i as i64) / mm;
        let mut corr = CompensatedSum::new();
        for k in 1..=kmax {
            let (s, c) = delta.mul_mod1(k as i64).sincos_2pi();
            let bs = candidate.b[k] * c + candidate.c[k] * s;
            let cs = candidate.c[k] * c - candidate.b[k] * s;
            corr.add(reference.b[k] * bs + reference.c[k] * cs);
        }
        let v = corr.value();
        if best.1.map_or(true, |b| v > b) {
            best = (delta, Some(v));
        }
    }
    best.0
}

/// Fit of `|coefficient| ≈ α e^{-β k}`; `residual` is the RMS deviation in
/// `ln |coefficient|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayFit {
    pub alpha: f64,
    pub beta: f64,
    pub residual: f64,
    pub points: usize,
}

impl DecayFit {
    pub fn is_analytic(&self) -> bool {
        self.beta > 0.0
    }
}

pub const DECAY_MIN_POINTS: usize = 8;

pub fn decay_fit<T: Real>(spectrum: &FourierSpectrum1D<T>) -> Result<DecayFit> {
    let floor = 10.0 * T::EPSILON.to_f64();
    let pts: Vec<(f64, f64)> = spectrum
        .magnitudes()
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, m)| (k as f64, m.to_f64()))
        .collect();
    fit_exponential_decay(&pts, floor)
}

/// Least-squares line through `(x, ln y)` over points with `y > floor`.
pub fn fit_exponential_decay(points: &[(f64, f64)], floor: f64) -> Result<DecayFit> {
    let usable: Vec<(f64, f64)> =
        points.iter().filter(|&&(_, y)| y > floor && y.is_finite()).map(|&(x, y)| (x, y.ln())).collect();
    if usable.len() < DECAY_MIN_POINTS {
        return Err(Error::TooFewPoints { needed: DECAY_MIN_POINTS, got: usable.len() });
    }
    let (slope, intercept, rms) = least_squares(&usable);
    Ok(DecayFit { alpha: intercept.exp(), beta: -slope, residual: rms, points: usable.len() })
}

/// `(slope, intercept, rms residual)` of an ordinary least-squares line.
pub(crate) fn least_squares(pts: &[(f64, f64)]) -> (f64, f64, f64) {
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let intercept = my - slope * mx;
    let ss: f64 = pts.iter().map(|p| (p.1 - intercept - slope * p.0).powi(2)).sum();
    (slope, intercept, (ss / n).sqrt())
}

/// Inputs of the rotation-error sensitivity bound. `m` and
/// `diophantine_beta` only describe the `C N^{-m}` floor, whose constant is
/// not computable.
#[derive(Debug, Clone, PartialEq)]
pub struct SensitivityInput {
    pub n: usize,
    pub k: Vec<i64>,
    pub delta_rho: Vec<f64>,
    pub m: u32,
    pub diophantine_beta: f64,
}

/// Largest `N |k·Δρ|` for which the first-order bound is meaningful.
pub const SENSITIVITY_REGIME: f64 = 0.1;

/// The dominant term `π N |k·Δρ|` of the relative coefficient error caused
/// by using `ρ + Δρ` instead of `ρ`.
pub fn sensitivity_bound(input: &SensitivityInput) -> Result<f64> {
    if input.k.len() != input.delta_rho.len() {
        return Err(Error::LengthMismatch { expected: input.k.len(), got: input.delta_rho.len() });
    }
    if !(input.diophantine_beta >= 0.0) {
        return Err(Error::InvalidInput("Diophantine exponent must be nonnegative".into()));
    }
    let dot: f64 = input.k.iter().zip(&input.delta_rho).map(|(&k, &d)| k as f64 * d).sum();
    let x = input.n as f64 * dot.abs();
    if !x.is_finite() || x >= SENSITIVITY_REGIME {
        return Err(Error::Regime { value: x });
    }
    Ok(PI * x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dd::DD;
    use crate::kernels::{normalized_weights, WeightKernel};
    use proptest::prelude::*;
    use rand::{rngs::StdRng, Rng, SeedableRng};

    fn golden<T: Real>() -> T {
        (T::from_f64(5.0).sqrt() - T::one()) / T::from_f64(2.0)
    }

    fn sample<T: Real>(n: usize, rho: T, f: impl Fn(T) -> T) -> Vec<T> {
        (0..n).map(|i| f(rho.mul_mod1(i as i64))).collect()
    }

    fn spectrum_of(f: impl Fn(f64) -> f64, kmax: usize) -> FourierSpectrum1D<f64> {
        let w = normalized_weights(WeightKernel::Exp, 10_000).unwrap();
        fourier_coeffs_1d(&sample(10_000, golden(), f), golden(), kmax, &w).unwrap()
    }

    /// Trapezoid rule on a uniform grid: exact for trigonometric polynomials
    /// of degree below `m/2`.
    fn quadrature(f: impl Fn(f64) -> f64, kmax: usize, m: usize) -> FourierSpectrum1D<f64> {
        let mut s = FourierSpectrum1D::zeros(kmax);
        for i in 0..m {
            let t = i as f64 / m as f64;
            let v = f(t);
            for k in 0..=kmax {
                let a = 2.0 * PI * (k * i % m) as f64 / m as f64;
                s.b[k] += 2.0 * v * a.cos() / m as f64;
                s.c[k] += 2.0 * v * a.sin() / m as f64;
            }
        }
        s.c[0] = 0.0;
        s
    }

    fn max_diff(a: &FourierSpectrum1D<f64>, b: &FourierSpectrum1D<f64>) -> f64 {
        a.b.iter().zip(&b.b).chain(a.c.iter().zip(&b.c)).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
    }

    #[test]
    fn orthogonality_against_grid_quadrature() {
        let f = |t: f64| (2.0 * PI * t).cos();
        let s = spectrum_of(f, 20);
        assert!((s.b[1] - 1.0).abs() < 1e-12);
        assert!(max_diff(&s, &quadrature(f, 20, 64)) < 1e-12);
    }

    #[test]
    fn constant_and_sine() {
        let s = spectrum_of(|_| 0.75, 10);
        assert!((s.b[0] - 1.5).abs() < 1e-12);
        assert!(s.magnitudes()[1..].iter().all(|&m| m < 1e-12));
        let s = spectrum_of(|t| (2.0 * PI * t).sin(), 10);
        assert!((s.c[1] - 1.0).abs() < 1e-12 && s.b[1].abs() < 1e-12);
    }

    #[test]
    fn rejects_undersampled() {
        let w = normalized_weights::<f64>(WeightKernel::Exp, 100).unwrap();
        let v = vec![0.0; 100];
        assert!(fourier_coeffs_1d(&v, 0.3, 50, &w).is_err());
        assert!(fourier_coeffs_1d(&v, 0.3, 49, &w).is_ok());
        assert!(matches!(
            fourier_coeffs_1d(&v[..99], 0.3, 4, &w),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn parseval() {
        let f = |t: f64| {
            0.3 + 0.5 * (2.0 * PI * t).cos() - 0.2 * (6.0 * PI * t).sin() + 0.05 * (14.0 * PI * t).cos()
        };
        let s = spectrum_of(f, 12);
        let power: f64 = s.b[0].powi(2) / 4.0
            + (1..=12).map(|k| (s.b[k].powi(2) + s.c[k].powi(2)) / 2.0).sum::<f64>();
        let m = 64;
        let grid: f64 = (0..m).map(|i| f(i as f64 / m as f64).powi(2)).sum::<f64>() / m as f64;
        assert!((power - grid).abs() < 1e-8);
    }

    #[test]
    fn harmonics_match_direct_evaluation() {
        let theta = 0.3819660112501051;
        let mut h = vec![(0.0, 0.0); 200];
        harmonics(theta, &mut h);
        for (k, &(s, c)) in h.iter().enumerate() {
            let (s0, c0) = theta.mul_mod1(k as i64).sincos_2pi();
            assert!((s - s0).abs() < 1e-14 && (c - c0).abs() < 1e-14, "{k}");
        }
    }

    #[test]
    fn dd_coefficients() {
        let n = 4000;
        let rho = golden::<DD>();
        let w = normalized_weights(WeightKernel::Exp, n).unwrap();
        let f = |t: DD| {
            let (s, c) = t.sincos_2pi();
            DD::from_f64(0.1) * s + DD::from_f64(0.25) * c * c
        };
        let s = fourier_coeffs_1d(&sample(n, rho, f), rho, 5, &w).unwrap();
        // 0.25 cos² = 0.125 + 0.125 cos 4πθ
        assert!((s.c[1] - DD::from_f64(0.1)).abs().to_f64() < 1e-25);
        assert!((s.b[0] - DD::from_f64(0.25)).abs().to_f64() < 1e-25);
        assert!((s.b[2] - DD::from_f64(0.125)).abs().to_f64() < 1e-25);
        assert!(s.b[1].abs().to_f64() < 1e-25 && s.c[3].abs().to_f64() < 1e-25);
    }

    #[test]
    fn reconstruction() {
        let z = FourierSpectrum1D::<f64>::zeros(5);
        assert!(reconstruct_conjugacy(&z, 16).iter().all(|&g| g == 0.0));
        let mut s = FourierSpectrum1D::zeros(5);
        s.c[1] = 0.1;
        for (i, g) in reconstruct_conjugacy(&s, 37).into_iter().enumerate() {
            let want = 0.1 * (i as f64 / 37.0).sincos_2pi().0;
            assert!((g - want).abs() <= f64::EPSILON * want.abs().max(f64::MIN_POSITIVE), "{i}");
        }
    }

    #[test]
    fn round_trip() {
        let g = |t: f64| 0.1 * (2.0 * PI * t).sin() + 0.03 * (6.0 * PI * t).cos();
        let s = spectrum_of(g, 30);
        let m = 101;
        for (i, v) in reconstruct_conjugacy(&s, m).into_iter().enumerate() {
            assert!((v - g(i as f64 / m as f64)).abs() < 1e-10);
        }
        assert!((s.evaluate(0.2) - g(0.2)).abs() < 1e-10);
    }

    #[test]
    fn shift_and_alignment() {
        let g = |t: f64| 0.1 * (2.0 * PI * t).sin() + 0.03 * (6.0 * PI * t).cos();
        let s = spectrum_of(g, 10);
        let shifted = spectrum_of(|t| g(t + 0.25), 10);
        assert!(max_diff(&s.shifted(0.25), &shifted) < 1e-12);
        let d = align_phase(&shifted, &s, 64);
        assert_eq!(d, 0.25);
    }

    #[test]
    fn two_dimensional() {
        let n = 20_000;
        let rho = [golden::<f64>(), 2f64.sqrt() - 1.0];
        let w = normalized_weights(WeightKernel::Exp, n).unwrap();
        let vals: Vec<f64> = (0..n)
            .map(|i| (2.0 * PI * (rho[0].mul_mod1(i as i64) + rho[1].mul_mod1(i as i64))).cos())
            .collect();
        let s = fourier_coeffs_2d(&vals, rho, 4, 4, &w).unwrap();
        for j in 0..=4 {
            for k in 0..=4 {
                let want = if (j, k) == (1, 1) { 0.5 } else { 0.0 };
                assert!((s.plus(j, k).re - want).abs() < 1e-12, "{j} {k}");
                assert!(s.plus(j, k).im.abs() < 1e-12);
                assert!(s.minus(j, k).norm() < 1e-12, "{j} {k}");
            }
        }
        let ones = vec![1.0; n];
        let s = fourier_coeffs_2d(&ones, rho, 3, 3, &w).unwrap();
        assert!((s.plus(0, 0).re - 1.0).abs() < 1e-14);
        assert!(s.radial_magnitudes().iter().all(|&(_, m)| m < 1e-12));
    }

    #[test]
    fn exact_exponential_decay() {
        let mut s = FourierSpectrum1D::zeros(40);
        for k in 1..=40 {
            s.c[k] = (-0.5 * k as f64).exp();
        }
        let fit = decay_fit(&s).unwrap();
        assert!((fit.alpha - 1.0).abs() < 1e-8 && (fit.beta - 0.5).abs() < 1e-8);
        assert!(fit.residual < 1e-10 && fit.is_analytic());
    }

    #[test]
    fn white_noise_is_not_analytic() {
        let mut rng = StdRng::seed_from_u64(7);
        let pts: Vec<(f64, f64)> = (1..=200).map(|k| (k as f64, rng.gen_range(1e-3..1.0))).collect();
        let fit = fit_exponential_decay(&pts, 0.0).unwrap();
        assert!(fit.beta.abs() < 2e-3, "{fit:?}");
        assert!(fit.residual > 0.5);
    }

    #[test]
    fn decay_needs_points_above_floor() {
        let mut s = FourierSpectrum1D::zeros(20);
        for k in 1..=5 {
            s.b[k] = 1.0 / k as f64;
        }
        assert!(matches!(decay_fit(&s), Err(Error::TooFewPoints { needed: 8, got: 5 })));
    }

    fn input(n: usize, k: i64, d: f64) -> SensitivityInput {
        SensitivityInput { n, k: vec![k], delta_rho: vec![d], m: 4, diophantine_beta: 0.0 }
    }

    #[test]
    fn sensitivity_arithmetic() {
        assert_eq!(sensitivity_bound(&input(10_000, 1, 0.0)).unwrap(), 0.0);
        let b = sensitivity_bound(&input(10_000, 3, 1e-9)).unwrap();
        assert!((b - 9.42477796e-5).abs() < 1e-12);
        assert!(matches!(sensitivity_bound(&input(10_000, 1, 1e-5)), Err(Error::Regime { .. })));
    }

    #[test]
    fn perturbed_rotation_respects_bound() {
        let n = 10_000;
        let rho = golden::<f64>();
        let g = |t: f64| 0.1 * (2.0 * PI * t).sin() + 0.03 * (6.0 * PI * t).cos();
        let w = normalized_weights(WeightKernel::Exp, n).unwrap();
        let vals = sample(n, rho, g);
        let exact = fourier_coeffs_1d(&vals, rho, 3, &w).unwrap();
        let mut errs = Vec::new();
        for d in [1e-11, 1e-10, 1e-9, 1e-8] {
            let s = fourier_coeffs_1d(&vals, rho + d, 3, &w).unwrap();
            let e = ((s.b[1] - exact.b[1]).powi(2) + (s.c[1] - exact.c[1]).powi(2)).sqrt() / 0.1;
            assert!(e <= sensitivity_bound(&input(n, 1, d)).unwrap() + 1e-12);
            errs.push((d.ln(), e.ln()));
        }
        // linear in Δρ: unit slope in log-log
        let (slope, _, _) = least_squares(&errs);
        assert!((slope - 1.0).abs() < 0.05, "{slope}");
    }

    proptest! {
        #[test]
        fn odd_functions_have_no_cosine_terms(a in prop::collection::vec(-1.0f64..1.0, 5)) {
            let f = |t: f64| a.iter().enumerate().map(|(k, c)| c * (2.0 * PI * (k + 1) as f64 * t).sin()).sum();
            let s = spectrum_of(f, 12);
            prop_assert!(s.b.iter().all(|b| b.abs() <= 1e-10));
        }

        #[test]
        fn bound_is_linear(d in 1e-12f64..1e-6, n in 2usize..10_000, k in 1i64..5) {
            let b1 = sensitivity_bound(&input(n, k, d)).unwrap();
            let b2 = sensitivity_bound(&input(n, k, 0.5 * d)).unwrap();
            prop_assert!((b1 - 2.0 * b2).abs() <= 1e-15 * b1);
        }
    }
}
