//! Angle parameterization of invariant circles, lifting to the real line,
//! and rotation vectors `ρ = Σ ŵ_{n,N} (y_{n+1} - y_n) mod 1`.

use crate::averaging::CompensatedSum;
use crate::error::{Error, Result};
use crate::kernels::{normalized_weights, WeightKernel, WeightSequence};
use crate::real::Real;

/// Angle of `p - center` in turns, in `[0, 1)`, counter-clockwise from the
/// positive first axis. `center` defaults to the centroid of `points`.
pub fn circle_angle<T: Real>(points: &[[T; 2]], center: Option<[T; 2]>) -> Result<Vec<T>> {
    let c = match center {
        Some(c) => c,
        None => centroid(points)?,
    };
    let inv = T::one() / T::two_pi();
    points
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let (dx, dy) = (p[0] - c[0], p[1] - c[1]);
            if dx == T::zero() && dy == T::zero() {
                return Err(Error::PointAtCenter { index: i });
            }
            Ok((T::atan2(dy, dx) * inv).fract())
        })
        .collect()
}

pub fn centroid<T: Real>(points: &[[T; 2]]) -> Result<[T; 2]> {
    if points.is_empty() {
        return Err(Error::InvalidInput("no points to parameterize".into()));
    }
    let mut sx = CompensatedSum::new();
    let mut sy = CompensatedSum::new();
    for p in points {
        sx.add(p[0]);
        sy.add(p[1]);
    }
    let n = T::from_i64(points.len() as i64);
    Ok([sx.value() / n, sy.value() / n])
}

/// Unwrapped increments in turns. Each is the representative of
/// `angles[n+1] - angles[n] mod 1` in `(c - 1/2, c + 1/2]`, where `c` is
/// the branch centre (0 gives the nearest representative).
pub fn lift_increments<T: Real>(angles: &[T], branch: T) -> Vec<T> {
    let half = T::from_f64(0.5);
    angles.windows(2).map(|w| representative(w[1] - w[0], branch, half)).collect()
}

/// Unwraps angles in turns using [`lift_increments`]. Differences of the
/// result lose about `|lifted|·ε` each; averages should be taken over the
/// increments themselves.
pub fn lift_with_branch<T: Real>(angles: &[T], branch: T) -> Vec<T> {
    let Some(&first) = angles.first() else {
        return Vec::new();
    };
    let mut acc = first;
    std::iter::once(first)
        .chain(lift_increments(angles, branch).into_iter().map(|d| {
            acc += d;
            acc
        }))
        .collect()
}

/// `g_n = Σ_{i<n} (inc_i − ρ)` for `n = 0..count`: the periodic part of a
/// lift sampled along the orbit, accumulated from bounded terms so it keeps
/// full relative precision however long the orbit is.
pub fn periodic_part<T: Real>(increments: &[T], rho: T, count: usize) -> Result<Vec<T>> {
    if increments.len() + 1 < count {
        return Err(Error::LengthMismatch { expected: count.saturating_sub(1), got: increments.len() });
    }
    let mut g = CompensatedSum::new();
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        out.push(g.value());
        if i < increments.len() {
            g.add(increments[i] - rho);
        }
    }
    Ok(out)
}

/// [`lift_with_branch`] with nearest-representative increments.
pub fn lift<T: Real>(angles: &[T]) -> Vec<T> {
    lift_with_branch(angles, T::zero())
}

#[inline]
fn representative<T: Real>(d: T, c: T, half: T) -> T {
    // d - c reduced into (-1/2, 1/2], then shifted back
    let mut r = d - c;
    r -= r.round();
    if r <= -half {
        r += T::one();
    } else if r > half {
        r -= T::one();
    }
    r + c
}

/// Circular mean of the raw increments, in `[0, 1)`: a branch centre that
/// keeps every increment of a circle homeomorphism on one sheet.
pub fn branch_center<T: Real>(angles: &[T]) -> T {
    let mut s = CompensatedSum::new();
    let mut c = CompensatedSum::new();
    for w in angles.windows(2) {
        let (sn, cs) = (w[1] - w[0]).sincos_2pi();
        s.add(sn);
        c.add(cs);
    }
    (T::atan2(s.value(), c.value()) / T::two_pi()).fract()
}

/// Verifies that `angles[n] ↦ angles[n+1]` is an orientation-preserving
/// circle map on the samples: visiting points in angular order, their
/// images must wind around exactly once.
pub fn check_monotone_winding<T: Real>(angles: &[T]) -> Result<()> {
    if angles.len() < 3 {
        return Ok(());
    }
    let m = angles.len() - 1;
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| angles[a].partial_cmp(&angles[b]).unwrap_or(std::cmp::Ordering::Equal));
    let mut descents = 0usize;
    let mut first_bad = None;
    for k in 0..m {
        let i = order[k];
        let j = order[(k + 1) % m];
        if angles[j + 1] < angles[i + 1] {
            descents += 1;
            if descents > 1 && first_bad.is_none() {
                first_bad = Some(j);
            }
        }
    }
    match first_bad {
        Some(index) => Err(Error::NonMonotoneWinding { index }),
        None => Ok(()),
    }
}

#[derive(Debug, Clone)]
pub struct RotationEstimate<T, const D: usize> {
    pub rho: [T; D],
    pub n: usize,
    pub kernel: WeightKernel,
    /// `(N_i, ρ_{N_i})` for `N_i = N/8, N/4, N/2, N`.
    pub diagnostics: Vec<(usize, [T; D])>,
}

/// Accumulates weighted increments for `N` and its partial lengths at once.
struct Levels<T, const D: usize> {
    weights: Vec<WeightSequence<T>>,
    sums: Vec<[CompensatedSum<T>; D]>,
}

impl<T: Real, const D: usize> Levels<T, D> {
    fn new(main: WeightSequence<T>) -> Result<Self> {
        let n = main.len();
        let kernel = main.kernel();
        let mut weights = Vec::new();
        for shift in (1..=3).rev() {
            let ni = n >> shift;
            if ni >= 2 {
                weights.push(normalized_weights(kernel, ni)?);
            }
        }
        weights.push(main);
        let sums = vec![[CompensatedSum::new(); D]; weights.len()];
        Ok(Levels { weights, sums })
    }

    #[inline]
    fn push(&mut self, n: usize, inc: &[T; D]) {
        for (w, s) in self.weights.iter().zip(self.sums.iter_mut()) {
            if n < w.len() {
                let wn = w.get(n);
                for d in 0..D {
                    s[d].add(wn * inc[d]);
                }
            }
        }
    }

    fn finish(self) -> RotationEstimate<T, D> {
        let diagnostics: Vec<(usize, [T; D])> = self
            .weights
            .iter()
            .zip(&self.sums)
            .map(|(w, s)| (w.len(), std::array::from_fn(|d| s[d].value().fract())))
            .collect();
        let main = self.weights.last().expect("main level");
        RotationEstimate {
            rho: diagnostics.last().expect("main level").1,
            n: main.len(),
            kernel: main.kernel(),
            diagnostics,
        }
    }
}

/// `ρ = Σ ŵ_{n,N} (lifted[n+1] - lifted[n]) mod 1`; `lifted` holds `N+1`
/// points for `N` weights.
pub fn rotation_vector<T: Real, const D: usize>(
    lifted: &[[T; D]],
    weights: &WeightSequence<T>,
) -> Result<RotationEstimate<T, D>> {
    if lifted.len() != weights.len() + 1 {
        return Err(Error::LengthMismatch { expected: weights.len() + 1, got: lifted.len() });
    }
    rotation_from_increments(weights.clone(), |n| {
        Ok(std::array::from_fn(|d| lifted[n + 1][d] - lifted[n][d]))
    })
}

/// Scalar convenience form of [`rotation_vector`].
pub fn rotation_number<T: Real>(lifted: &[T], weights: &WeightSequence<T>) -> Result<RotationEstimate<T, 1>> {
    if lifted.len() != weights.len() + 1 {
        return Err(Error::LengthMismatch { expected: weights.len() + 1, got: lifted.len() });
    }
    rotation_from_increments(weights.clone(), |n| Ok([lifted[n + 1] - lifted[n]]))
}

/// Streaming form: `inc(n)` yields the lifted increment `y_{n+1} - y_n`
/// for `n = 0..N`, in order.
pub fn rotation_from_increments<T: Real, const D: usize>(
    weights: WeightSequence<T>,
    mut inc: impl FnMut(usize) -> Result<[T; D]>,
) -> Result<RotationEstimate<T, D>> {
    let n = weights.len();
    let mut levels = Levels::new(weights)?;
    for i in 0..n {
        let d = inc(i)?;
        if d.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index: i });
        }
        levels.push(i, &d);
    }
    Ok(levels.finish())
}

/// Rotation number of a sampled invariant circle: angles about `center`
/// (centroid by default), winding check, branch choice, lift and average.
/// The orbit must hold at least `N + 1` points.
pub fn circle_rotation_number<T: Real>(
    points: &[[T; 2]],
    center: Option<[T; 2]>,
    weights: &WeightSequence<T>,
) -> Result<RotationEstimate<T, 1>> {
    let n = weights.len();
    if points.len() < n + 1 {
        return Err(Error::LengthMismatch { expected: n + 1, got: points.len() });
    }
    let angles = circle_angle(&points[..=n], center)?;
    check_monotone_winding(&angles)?;
    let inc = lift_increments(&angles, branch_center(&angles));
    rotation_from_increments(weights.clone(), |i| Ok([inc[i]]))
}
