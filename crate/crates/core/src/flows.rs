//! Fixed-step eighth-order Runge–Kutta integration, stroboscopic sampling
//! and Poincaré return maps with refined crossings.

use crate::error::{Error, Result};
use crate::real::{surd, Real};
use crate::systems::VectorField;

const STAGES: usize = 11;

/// Entries of the Cooper–Verner tableau as `(p, q, r)` meaning
/// `(p + q√21)/r`; row `i` lists `a_{i,0..i}`.
#[rustfmt::skip]
const A: [&[(i64, i64, i64)]; STAGES] = [
    &[],
    &[(1, 0, 2)],
    &[(1, 0, 4), (1, 0, 4)],
    &[(1, 0, 7), (-7, -3, 98), (21, 5, 49)],
    &[(11, 1, 84), (0, 0, 1), (18, 4, 63), (21, -1, 252)],
    &[(5, 1, 48), (0, 0, 1), (9, 1, 36), (-231, 14, 360), (63, -7, 80)],
    &[(10, -1, 42), (0, 0, 1), (-432, 92, 315), (633, -145, 90), (-504, 115, 70), (63, -13, 35)],
    &[(1, 0, 14), (0, 0, 1), (0, 0, 1), (0, 0, 1), (14, -3, 126), (13, -3, 63), (1, 0, 9)],
    &[(1, 0, 32), (0, 0, 1), (0, 0, 1), (0, 0, 1), (91, -21, 576), (11, 0, 72), (-385, -75, 1152), (63, 13, 128)],
    &[(1, 0, 14), (0, 0, 1), (0, 0, 1), (0, 0, 1), (1, 0, 9), (-733, -147, 2205), (515, 111, 504), (-51, -11, 56), (132, 28, 245)],
    &[(0, 0, 1), (0, 0, 1), (0, 0, 1), (0, 0, 1), (-42, 7, 18), (-18, 28, 45), (-273, -53, 72), (301, 53, 72), (28, -28, 45), (49, -7, 18)],
];

#[rustfmt::skip]
const B: [(i64, i64, i64); STAGES] = [
    (1, 0, 20), (0, 0, 1), (0, 0, 1), (0, 0, 1), (0, 0, 1), (0, 0, 1), (0, 0, 1),
    (49, 0, 180), (16, 0, 45), (49, 0, 180), (1, 0, 20),
];

#[rustfmt::skip]
const C: [(i64, i64, i64); STAGES] = [
    (0, 0, 1), (1, 0, 2), (1, 0, 2), (7, 1, 14), (7, 1, 14), (1, 0, 2),
    (7, -1, 14), (7, -1, 14), (1, 0, 2), (7, 1, 14), (1, 0, 1),
];

/// The 11-stage explicit order-8 tableau, evaluated at the precision of `T`.
#[derive(Debug, Clone)]
pub struct Rk8<T> {
    a: [[T; STAGES]; STAGES],
    b: [T; STAGES],
    c: [T; STAGES],
}

impl<T: Real> Default for Rk8<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Real> Rk8<T> {
    pub fn new() -> Self {
        let v = |&(p, q, r): &(i64, i64, i64)| surd::<T>(p, q, 21, r);
        let mut a = [[T::zero(); STAGES]; STAGES];
        for (i, row) in A.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                a[i][j] = v(e);
            }
        }
        Rk8 { a, b: B.map(|e| v(&e)), c: C.map(|e| v(&e)) }
    }

    /// One step of size `h` from `(t, x)`.
    pub fn step<const D: usize, F: VectorField<T, D> + ?Sized>(
        &self,
        f: &F,
        t: T,
        x: &[T; D],
        h: T,
    ) -> Result<[T; D]> {
        let mut k = [[T::zero(); D]; STAGES];
        for i in 0..STAGES {
            let mut y = *x;
            for (j, kj) in k.iter().enumerate().take(i) {
                let a = self.a[i][j];
                if a == T::zero() {
                    continue;
                }
                let ha = h * a;
                for d in 0..D {
                    y[d] += ha * kj[d];
                }
            }
            k[i] = f.eval(t + self.c[i] * h, &y)?;
        }
        let mut out = *x;
        for d in 0..D {
            let mut acc = T::zero();
            for (i, ki) in k.iter().enumerate() {
                if self.b[i] != T::zero() {
                    acc += self.b[i] * ki[d];
                }
            }
            out[d] += h * acc;
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct IntegratorConfig<T> {
    pub step: T,
    pub max_steps: u64,
}

impl<T: Real> IntegratorConfig<T> {
    pub fn new(step: T) -> Result<Self> {
        if !(step > T::zero()) || !step.is_finite() {
            return Err(Error::InvalidInput(format!("step must be positive, got {}", step.to_f64())));
        }
        Ok(IntegratorConfig { step, max_steps: u64::MAX })
    }

    pub fn with_max_steps(mut self, max_steps: u64) -> Self {
        self.max_steps = max_steps;
        self
    }
}

/// Integrates from `t0` to `t1` with fixed steps; the last step is shortened
/// to land exactly on `t1`.
pub fn rk8_integrate<T: Real, const D: usize, F: VectorField<T, D> + ?Sized>(
    rk: &Rk8<T>,
    f: &F,
    x0: [T; D],
    t0: T,
    t1: T,
    cfg: &IntegratorConfig<T>,
) -> Result<[T; D]> {
    if t1 < t0 {
        return Err(Error::InvalidInput("t1 must not precede t0".into()));
    }
    let span = t1 - t0;
    let full = (span / cfg.step).floor().to_f64();
    let needed = full + 1.0;
    if needed > cfg.max_steps as f64 {
        return Err(Error::StepOverflow { steps: needed as u64, max: cfg.max_steps });
    }
    let full = full as u64;
    let mut x = x0;
    for i in 0..full {
        // times from the step index, so no drift accumulates in t
        let t = t0 + T::from_i64(i as i64) * cfg.step;
        x = rk.step(f, t, &x, cfg.step)?;
    }
    let tf = t0 + T::from_i64(full as i64) * cfg.step;
    let rest = t1 - tf;
    if rest > T::zero() {
        x = rk.step(f, tf, &x, rest)?;
    }
    Ok(x)
}

/// States at `t0 + k·period` for `k = 0..count`.
pub fn stroboscopic_orbit<T: Real, const D: usize, F: VectorField<T, D> + ?Sized>(
    rk: &Rk8<T>,
    f: &F,
    x0: [T; D],
    t0: T,
    period: T,
    count: usize,
    cfg: &IntegratorConfig<T>,
) -> Result<Vec<[T; D]>> {
    let mut out = Vec::with_capacity(count);
    stroboscopic_for_each(rk, f, x0, t0, period, count, cfg, |_, x| {
        out.push(*x);
        Ok(())
    })?;
    Ok(out)
}

/// Streaming form of [`stroboscopic_orbit`].
#[allow(clippy::too_many_arguments)]
pub fn stroboscopic_for_each<T: Real, const D: usize, F: VectorField<T, D> + ?Sized>(
    rk: &Rk8<T>,
    f: &F,
    x0: [T; D],
    t0: T,
    period: T,
    count: usize,
    cfg: &IntegratorConfig<T>,
    mut visit: impl FnMut(usize, &[T; D]) -> Result<()>,
) -> Result<()> {
    if !(period > T::zero()) {
        return Err(Error::InvalidInput("period must be positive".into()));
    }
    let mut x = x0;
    for k in 0..count {
        if k > 0 {
            let ta = t0 + T::from_i64(k as i64 - 1) * period;
            let tb = t0 + T::from_i64(k as i64) * period;
            x = rk8_integrate(rk, f, x, ta, tb, cfg)?;
        }
        visit(k, &x)?;
    }
    Ok(())
}

/// A refined crossing of the section `x[coord] = 0` in the increasing
/// direction.
#[derive(Debug, Clone, Copy)]
pub struct SectionEvent<T, const D: usize> {
    pub state: [T; D],
    pub time: T,
    pub residual: T,
}

#[derive(Debug, Clone, Copy)]
pub struct SectionConfig<T> {
    pub coord: usize,
    pub tol: T,
    pub max_refine: usize,
}

impl<T: Real> SectionConfig<T> {
    /// The three-body section `q2 = 0`, default tolerance `1e-13`.
    pub fn q2() -> Self {
        SectionConfig { coord: 1, tol: T::from_f64(1e-13), max_refine: 200 }
    }

    pub fn with_tol(mut self, tol: T) -> Self {
        self.tol = tol;
        self
    }
}

/// Successive section crossings along one orbit. Integration stays on the
/// fixed time grid; each crossing is refined by re-stepping from the start
/// of the step that contains it.
pub struct PoincareSection<'a, T, const D: usize, F: ?Sized> {
    rk: &'a Rk8<T>,
    field: &'a F,
    cfg: IntegratorConfig<T>,
    sec: SectionConfig<T>,
    x: [T; D],
    t0: T,
    steps: u64,
}

impl<'a, T: Real, const D: usize, F: VectorField<T, D> + ?Sized> PoincareSection<'a, T, D, F> {
    pub fn new(
        rk: &'a Rk8<T>,
        field: &'a F,
        x0: [T; D],
        t0: T,
        cfg: IntegratorConfig<T>,
        sec: SectionConfig<T>,
    ) -> Result<Self> {
        if sec.coord >= D {
            return Err(Error::InvalidInput(format!("section coordinate {} out of range", sec.coord)));
        }
        if !(sec.tol > T::zero()) {
            return Err(Error::InvalidInput("section tolerance must be positive".into()));
        }
        Ok(PoincareSection { rk, field, cfg, sec, x: x0, t0, steps: 0 })
    }

    /// Current grid state and time.
    pub fn state(&self) -> ([T; D], T) {
        (self.x, self.time_at(self.steps))
    }

    fn time_at(&self, steps: u64) -> T {
        self.t0 + T::from_i64(steps as i64) * self.cfg.step
    }

    /// Integrates until the next crossing, allowing at most `max_steps`
    /// grid steps for the search.
    pub fn next_event(&mut self, max_steps: u64) -> Result<SectionEvent<T, D>> {
        let c = self.sec.coord;
        let h = self.cfg.step;
        for _ in 0..max_steps {
            let t = self.time_at(self.steps);
            let x1 = self.rk.step(self.field, t, &self.x, h)?;
            let x0 = self.x;
            self.x = x1;
            self.steps += 1;
            if self.steps > self.cfg.max_steps {
                return Err(Error::StepOverflow { steps: self.steps, max: self.cfg.max_steps });
            }
            if x0[c] < T::zero() && x1[c] >= T::zero() {
                let ev = self.refine(t, &x0, x1[c] - x0[c])?;
                if let Some(ev) = ev {
                    return Ok(ev);
                }
            }
        }
        Err(Error::NoCrossing { steps: max_steps as usize })
    }

    /// Root of `τ ↦ step(x0, τ)[c]` on `[0, h]`: Newton with the field as
    /// derivative, falling back to bisection when it leaves the bracket.
    fn refine(&self, t: T, x0: &[T; D], jump: T) -> Result<Option<SectionEvent<T, D>>> {
        let c = self.sec.coord;
        let h = self.cfg.step;
        let (mut lo, mut hi) = (T::zero(), h);
        let mut tau = h * (-x0[c]) / jump;
        let mut best: Option<SectionEvent<T, D>> = None;
        for _ in 0..self.sec.max_refine {
            let y = self.rk.step(self.field, t, x0, tau)?;
            let g = y[c];
            let dy = self.field.eval(t + tau, &y)?;
            if g.abs() <= self.sec.tol {
                if !(dy[c] > T::zero()) {
                    // grazing or wrong-direction crossing
                    return Ok(None);
                }
                return Ok(Some(SectionEvent { state: y, time: t + tau, residual: g.abs() }));
            }
            if best.as_ref().map_or(true, |b| g.abs() < b.residual) {
                best = Some(SectionEvent { state: y, time: t + tau, residual: g.abs() });
            }
            if g < T::zero() {
                lo = tau;
            } else {
                hi = tau;
            }
            let newton = if dy[c] != T::zero() { tau - g / dy[c] } else { lo - T::one() };
            tau = if newton > lo && newton < hi { newton } else { (lo + hi) * T::from_f64(0.5) };
            if !(hi - lo > T::zero()) {
                break;
            }
        }
        Err(Error::Stagnation { residual: best.map_or(f64::NAN, |b| b.residual.to_f64()) })
    }
}

/// The first crossing of the section after `x0`.
pub fn poincare_return_map<T: Real, const D: usize, F: VectorField<T, D> + ?Sized>(
    rk: &Rk8<T>,
    field: &F,
    x0: [T; D],
    cfg: IntegratorConfig<T>,
    sec: SectionConfig<T>,
    max_steps: u64,
) -> Result<SectionEvent<T, D>> {
    PoincareSection::new(rk, field, x0, T::zero(), cfg, sec)?.next_event(max_steps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dd::DD;
    use crate::systems::ThreeBody;
    use std::f64::consts::TAU;

    fn oscillator<T: Real>(_t: T, x: &[T; 2]) -> Result<[T; 2]> {
        Ok([x[1], -x[0]])
    }

    #[test]
    fn tableau_is_consistent() {
        let rk = Rk8::<DD>::new();
        let bsum: DD = rk.b.iter().copied().sum();
        assert!((bsum - DD::ONE).abs().to_f64() < 1e-30);
        for i in 0..STAGES {
            let row: DD = rk.a[i].iter().copied().sum();
            assert!((row - rk.c[i]).abs().to_f64() < 1e-29, "row {i}");
        }
        // order conditions Σ b c^{q-1} = 1/q up to q = 8
        for q in 1..=8 {
            let s: DD = (0..STAGES).map(|i| rk.b[i] * rk.c[i].powi(q - 1)).sum();
            assert!((s - DD::ONE / DD::from_f64(q as f64)).abs().to_f64() < 1e-29, "q={q}");
        }
    }

    #[test]
    fn harmonic_period() {
        let rk = Rk8::new();
        let cfg = IntegratorConfig::new(1e-2).unwrap();
        let x = rk8_integrate(&rk, &oscillator, [1.0, 0.0], 0.0, TAU, &cfg).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-12 && x[1].abs() < 1e-12, "{x:?}");
    }

    #[test]
    fn order_eight() {
        let rk = Rk8::<DD>::new();
        let err = |h: f64| {
            let cfg = IntegratorConfig::new(DD::from_f64(h)).unwrap();
            let t1 = DD::from_f64(4.0);
            let x = rk8_integrate(&rk, &oscillator, [DD::ONE, DD::ZERO], DD::ZERO, t1, &cfg).unwrap();
            let (s, c) = t1.sincos();
            ((x[0] - c).sqr() + (x[1] + s).sqr()).sqrt().to_f64()
        };
        let e = [err(0.1), err(0.05), err(0.025)];
        for w in e.windows(2) {
            let ratio = w[0] / w[1];
            assert!((128.0..=512.0).contains(&ratio), "{e:?}");
        }
    }

    #[test]
    fn zero_field_and_linear_growth() {
        let rk = Rk8::new();
        let cfg = IntegratorConfig::new(1e-2).unwrap();
        let zero = |_t: f64, _x: &[f64; 3]| Ok([0.0; 3]);
        assert_eq!(rk8_integrate(&rk, &zero, [1.0, 2.0, 3.0], 0.0, 5.0, &cfg).unwrap(), [1.0, 2.0, 3.0]);
        let samples = stroboscopic_orbit(&rk, &zero, [4.0; 3], 0.0, 0.7, 5, &cfg).unwrap();
        assert!(samples.iter().all(|s| *s == [4.0; 3]) && samples.len() == 5);
        let grow = |_t: f64, x: &[f64; 1]| Ok([x[0]]);
        let samples = stroboscopic_orbit(&rk, &grow, [1.0], 0.0, 0.5, 6, &cfg).unwrap();
        for (k, s) in samples.iter().enumerate() {
            let want = (0.5 * k as f64).exp();
            assert!((s[0] - want).abs() < 1e-13 * want);
        }
    }

    #[test]
    fn step_overflow_and_bad_span() {
        let rk = Rk8::new();
        let cfg = IntegratorConfig::new(1e-2).unwrap().with_max_steps(10);
        assert!(matches!(
            rk8_integrate(&rk, &oscillator, [1.0, 0.0], 0.0, 1.0, &cfg),
            Err(Error::StepOverflow { .. })
        ));
        assert!(rk8_integrate(&rk, &oscillator, [1.0, 0.0], 1.0, 0.0, &cfg).is_err());
        assert!(IntegratorConfig::new(0.0).is_err());
    }

    #[test]
    fn circular_section() {
        // q2 = sin t, q2' = cos t: upward crossings at t = 2πk only
        let field = |t: f64, _x: &[f64; 2]| Ok([0.0, t.cos()]);
        let rk = Rk8::new();
        let cfg = IntegratorConfig::new(1e-2).unwrap();
        let mut sec =
            PoincareSection::new(&rk, &field, [0.0, -1e-3f64.sin()], -1e-3, cfg, SectionConfig::q2()).unwrap();
        for k in 0..4 {
            let ev = sec.next_event(10_000).unwrap();
            assert!(ev.residual <= 1e-13);
            assert!((ev.time - TAU * k as f64).abs() < 1e-12, "{k} {}", ev.time);
        }
    }

    #[test]
    fn no_crossing_reported() {
        let field = |_t: f64, _x: &[f64; 2]| Ok([0.0, -1.0]);
        let rk = Rk8::new();
        let cfg = IntegratorConfig::new(1e-2).unwrap();
        let r = poincare_return_map(&rk, &field, [0.0, -1.0], cfg, SectionConfig::q2(), 100);
        assert!(matches!(r, Err(Error::NoCrossing { .. })));
    }

    #[test]
    fn three_body_energy_drift() {
        let tb = ThreeBody::new(0.1);
        let x0 = tb.section_state(-0.35, 0.0, -2.63).unwrap();
        let rk = Rk8::new();
        let cfg = IntegratorConfig::new(1e-3).unwrap();
        let x = rk8_integrate(&rk, &tb, x0, 0.0, 100.0, &cfg).unwrap();
        let drift = (tb.hamiltonian(&x).unwrap() - tb.hamiltonian(&x0).unwrap()).abs();
        assert!(drift <= 1e-10, "{drift:e}");
    }

    #[test]
    fn three_body_sections_have_small_residuals() {
        let tb = ThreeBody::new(0.1);
        let x0 = tb.section_state(-0.35, 0.0, -2.63).unwrap();
        let rk = Rk8::new();
        let cfg = IntegratorConfig::new(1e-3).unwrap();
        let mut sec = PoincareSection::new(&rk, &tb, x0, 0.0, cfg, SectionConfig::q2()).unwrap();
        for _ in 0..50 {
            let ev = sec.next_event(100_000).unwrap();
            assert!(ev.residual <= 1e-13);
            assert!(tb.eval(ev.time, &ev.state).unwrap()[1] > 0.0);
        }
    }
}
