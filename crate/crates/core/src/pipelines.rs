//! End-to-end computations on the benchmark systems: orbit generation,
//! circle parameterization, rotation numbers and conjugacy samples.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flows::{
    rk8_integrate, stroboscopic_for_each, IntegratorConfig, PoincareSection, Rk8, SectionConfig, SectionEvent,
};
use crate::kernels::WeightSequence;
use crate::real::Real;
use crate::rotation::{
    branch_center, centroid, check_monotone_winding, circle_angle, lift_increments, periodic_part,
    rotation_from_increments, RotationEstimate,
};
use crate::systems::{wrap_centered, PlanarMap, StandardMap, ThreeBody, TorusMap, VanDerPol};

/// Direction in which circle angles increase.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Ccw,
    Cw,
}

/// A sampled invariant circle with its unwrapped angle increments.
#[derive(Debug, Clone)]
pub struct CircleOrbit<T> {
    pub points: Vec<[T; 2]>,
    pub center: [T; 2],
    pub orientation: Orientation,
    /// Angles in turns; the lift is `angles[0]` plus partial sums of
    /// `increments`.
    pub angles: Vec<T>,
    pub increments: Vec<T>,
}

impl<T: Real> CircleOrbit<T> {
    pub fn new(points: Vec<[T; 2]>, center: Option<[T; 2]>, orientation: Orientation) -> Result<Self> {
        let center = match center {
            Some(c) => c,
            None => centroid(&points)?,
        };
        let mut angles = circle_angle(&points, Some(center))?;
        if orientation == Orientation::Cw {
            for a in angles.iter_mut() {
                *a = (T::one() - *a).fract();
            }
        }
        check_monotone_winding(&angles)?;
        let increments = lift_increments(&angles, branch_center(&angles));
        Ok(CircleOrbit { points, center, orientation, angles, increments })
    }

    /// Rotation number from the first `weights.len()` increments.
    pub fn rotation(&self, weights: &WeightSequence<T>) -> Result<RotationEstimate<T, 1>> {
        let n = weights.len();
        if self.increments.len() < n {
            return Err(Error::LengthMismatch { expected: n + 1, got: self.points.len() });
        }
        rotation_from_increments(weights.clone(), |i| Ok([self.increments[i]]))
    }

    /// `g_n = φ_n − φ_0 − nρ`: the periodic part of the conjugacy sampled
    /// at `θ_n = nρ`, with the phase origin `θ_0 = 0` at the first point.
    pub fn conjugacy_samples(&self, rho: T, n: usize) -> Result<Vec<T>> {
        periodic_part(&self.increments, rho, n)
    }
}

pub fn map_orbit<T: Real, M: PlanarMap<T>>(map: &M, state0: [T; 2], count: usize) -> Vec<[T; 2]> {
    let mut out = Vec::with_capacity(count);
    let mut s = state0;
    for _ in 0..count {
        out.push(s);
        s = map.step(s);
    }
    out
}

/// Standard-map orbit in coordinates centered on the elliptic fixed point
/// `(π, 0)`, both components in `[-π, π)`.
pub fn standard_map_circle_points<T: Real>(state0: [T; 2], count: usize) -> Vec<[T; 2]> {
    map_orbit(&StandardMap, state0, count)
        .into_iter()
        .map(|[x, y]| [wrap_centered(x - T::pi()), wrap_centered(y)])
        .collect()
}

/// The standard map's invariant circles are traversed clockwise in `(x, y)`.
pub const STANDARD_MAP_ORIENTATION: Orientation = Orientation::Cw;

pub fn standard_map_circle<T: Real>(state0: [T; 2], n: usize) -> Result<CircleOrbit<T>> {
    CircleOrbit::new(standard_map_circle_points(state0, n + 1), None, STANDARD_MAP_ORIENTATION)
}

/// Rotation vector of the torus map from the unreduced displacement, so no
/// lifting is needed.
pub fn torus_rotation<T: Real>(
    map: &TorusMap<T>,
    state0: [T; 2],
    weights: WeightSequence<T>,
) -> Result<RotationEstimate<T, 2>> {
    let mut s = state0;
    rotation_from_increments(weights, |_| {
        let d = map.increment(s);
        s = map.step(s);
        Ok(d)
    })
}

/// The torus map's unreduced displacements along an orbit, `count` of them.
pub fn torus_increments<T: Real>(map: &TorusMap<T>, state0: [T; 2], count: usize) -> Vec<[T; 2]> {
    let mut s = state0;
    (0..count)
        .map(|_| {
            let d = map.increment(s);
            s = map.step(s);
            d
        })
        .collect()
}

/// Settings of a van der Pol stroboscopic run.
#[derive(Debug, Clone, Copy)]
pub struct StroboscopicConfig<T> {
    pub burn_in: usize,
    pub integrator: IntegratorConfig<T>,
}

pub const DEFAULT_BURN_IN: usize = 1000;

/// Van der Pol states at `t_k = (burn_in + k)·2π/0.83`, `k = 0..count`.
pub fn vdp_stroboscopic<T: Real>(
    vdp: &VanDerPol<T>,
    state0: [T; 2],
    count: usize,
    cfg: &StroboscopicConfig<T>,
) -> Result<Vec<[T; 2]>> {
    let period = vdp.period();
    let rk = Rk8::new();
    let t0 = T::from_i64(cfg.burn_in as i64) * period;
    let x = rk8_integrate(&rk, vdp, state0, T::zero(), t0, &cfg.integrator)?;
    let mut out = Vec::with_capacity(count);
    stroboscopic_for_each(&rk, vdp, x, t0, period, count, &cfg.integrator, |_, x| {
        out.push(*x);
        Ok(())
    })?;
    Ok(out)
}

/// In `(x, x')` the stroboscopic images advance counter-clockwise by the
/// tabulated fraction of a turn.
pub const VDP_ORIENTATION: Orientation = Orientation::Ccw;

pub fn vdp_circle<T: Real>(
    vdp: &VanDerPol<T>,
    state0: [T; 2],
    n: usize,
    cfg: &StroboscopicConfig<T>,
) -> Result<CircleOrbit<T>> {
    CircleOrbit::new(vdp_stroboscopic(vdp, state0, n + 1, cfg)?, None, VDP_ORIENTATION)
}

/// Search budget for one section return; a return takes a few hundred
/// steps at the default step.
pub const MAX_RETURN_STEPS: u64 = 10_000_000;

/// Crossings of `q2 = 0` with `q2` increasing, `count` of them, starting
/// from `state0` at `t = 0`. `state0` itself is not reported.
pub fn three_body_sections<T: Real>(
    tb: &ThreeBody<T>,
    state0: [T; 4],
    count: usize,
    integrator: IntegratorConfig<T>,
    sec: SectionConfig<T>,
    mut visit: impl FnMut(usize, &SectionEvent<T, 4>) -> Result<()>,
) -> Result<()> {
    let rk = Rk8::new();
    let mut ps = PoincareSection::new(&rk, tb, state0, T::zero(), integrator, sec)?;
    for i in 0..count {
        let ev = ps.next_event(MAX_RETURN_STEPS)?;
        visit(i, &ev)?;
    }
    Ok(())
}

/// Section points `(q1, p1)` of `count` returns.
pub fn three_body_section_points<T: Real>(
    tb: &ThreeBody<T>,
    state0: [T; 4],
    count: usize,
    integrator: IntegratorConfig<T>,
    sec: SectionConfig<T>,
) -> Result<Vec<SectionEvent<T, 4>>> {
    let mut out = Vec::with_capacity(count);
    three_body_sections(tb, state0, count, integrator, sec, |_, ev| {
        out.push(*ev);
        Ok(())
    })?;
    Ok(out)
}

pub const THREE_BODY_ORIENTATION: Orientation = Orientation::Ccw;

pub fn three_body_circle<T: Real>(events: &[SectionEvent<T, 4>]) -> Result<CircleOrbit<T>> {
    let pts = events.iter().map(|e| [e.state[0], e.state[2]]).collect();
    CircleOrbit::new(pts, None, THREE_BODY_ORIENTATION)
}
