//! Lyapunov exponents of maps as weighted averages of the log stretch
//! factors of a re-orthonormalized tangent frame.

use crate::averaging::CompensatedSum;
use crate::error::{Error, Result};
use crate::kernels::{WeightKernel, WeightSequence};
use crate::real::Real;
use crate::systems::PlanarMap;

#[derive(Debug, Clone)]
pub struct LyapunovResult<T> {
    /// Nats per iterate, largest first.
    pub exponents: Vec<T>,
    pub n: usize,
    pub kernel: WeightKernel,
}

impl<T: Real> LyapunovResult<T> {
    pub fn sum(&self) -> T {
        self.exponents.iter().fold(T::zero(), |a, &b| a + b)
    }
}

/// Orthonormal frame `Q` and one step of `J Q = Q' R` by modified
/// Gram–Schmidt with a second orthogonalization pass.
struct Frame<T, const D: usize> {
    q: [[T; D]; D], // columns
}

impl<T: Real, const D: usize> Frame<T, D> {
    fn identity() -> Self {
        let mut q = [[T::zero(); D]; D];
        for (i, col) in q.iter_mut().enumerate() {
            col[i] = T::one();
        }
        Frame { q }
    }

    /// Advances the frame and returns the diagonal of `R`.
    fn advance(&mut self, jac: &[[T; D]; D], step: usize) -> Result<[T; D]> {
        let mut v = [[T::zero(); D]; D];
        for (col, out) in self.q.iter().zip(v.iter_mut()) {
            for (r, o) in jac.iter().zip(out.iter_mut()) {
                *o = r.iter().zip(col).fold(T::zero(), |a, (&x, &y)| a + x * y);
            }
        }
        let mut diag = [T::zero(); D];
        for i in 0..D {
            let scale = dot(&v[i], &v[i]).sqrt();
            for _pass in 0..2 {
                for j in 0..i {
                    let r = dot(&v[j], &v[i]);
                    let qj = v[j];
                    for (x, q) in v[i].iter_mut().zip(qj) {
                        *x -= r * q;
                    }
                }
            }
            let norm = dot(&v[i], &v[i]).sqrt();
            // a column that cancels to rounding level is a rank deficiency
            if !(norm > T::from_f64(4.0 * T::EPSILON) * scale) || !norm.is_finite() {
                return Err(Error::Singular { step, stretch: norm.to_f64() });
            }
            let inv = T::one() / norm;
            for x in v[i].iter_mut() {
                *x *= inv;
            }
            diag[i] = norm;
        }
        self.q = v;
        Ok(diag)
    }
}

fn dot<T: Real, const D: usize>(a: &[T; D], b: &[T; D]) -> T {
    a.iter().zip(b).fold(T::zero(), |s, (&x, &y)| s + x * y)
}

/// Exponents of the cocycle `J_{N-1} ⋯ J_1 J_0`, with `jacobian(n)`
/// supplying `J_n` (row-major).
pub fn lyapunov_from_jacobians<T: Real, const D: usize>(
    weights: &WeightSequence<T>,
    mut jacobian: impl FnMut(usize) -> Result<[[T; D]; D]>,
) -> Result<LyapunovResult<T>> {
    let mut frame = Frame::<T, D>::identity();
    let mut acc = [CompensatedSum::<T>::new(); D];
    for (n, &w) in weights.as_slice().iter().enumerate() {
        let jac = jacobian(n)?;
        let r = frame.advance(&jac, n)?;
        for (a, ri) in acc.iter_mut().zip(r) {
            a.add(w * ri.ln());
        }
    }
    let mut exponents: Vec<T> = acc.iter().map(CompensatedSum::value).collect();
    exponents.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
    Ok(LyapunovResult { exponents, n: weights.len(), kernel: weights.kernel() })
}

/// Exponents along the orbit of `state0` under a planar map, `N =
/// weights.len()` iterates.
pub fn lyapunov_exponents<T: Real, M: PlanarMap<T>>(
    map: &M,
    state0: [T; 2],
    weights: &WeightSequence<T>,
) -> Result<LyapunovResult<T>> {
    let mut s = state0;
    lyapunov_from_jacobians(weights, |n| {
        if !(s[0].is_finite() && s[1].is_finite()) {
            return Err(Error::NonFinite { index: n });
        }
        let j = map.jacobian(s);
        s = map.step(s);
        Ok(j)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dd::DD;
    use crate::kernels::normalized_weights;
    use crate::systems::StandardMap;
    use proptest::prelude::*;

    #[test]
    fn rigid_rotation_has_zero_exponent() {
        let w = normalized_weights::<f64>(WeightKernel::Exp, 1000).unwrap();
        let r = lyapunov_from_jacobians(&w, |_| Ok([[1.0]])).unwrap();
        assert_eq!(r.exponents, vec![0.0]);
    }

    #[test]
    fn constant_hyperbolic_jacobian() {
        for k in WeightKernel::ALL {
            let w = normalized_weights::<f64>(k, 500).unwrap();
            let r = lyapunov_from_jacobians(&w, |_| Ok([[0.5, 0.0], [0.0, 2.0]])).unwrap();
            let ln2 = std::f64::consts::LN_2;
            assert!((r.exponents[0] - ln2).abs() < 1e-14 && (r.exponents[1] + ln2).abs() < 1e-14);
        }
        let w = normalized_weights::<DD>(WeightKernel::Exp, 200).unwrap();
        let m = [[DD::from_f64(2.0), DD::ZERO], [DD::ZERO, DD::from_f64(0.5)]];
        let r = lyapunov_from_jacobians(&w, |_| Ok(m)).unwrap();
        assert!((r.exponents[0] - DD::LN2).abs().to_f64() < 1e-29);
    }

    #[test]
    fn shear_has_zero_exponents() {
        // [[1,1],[0,1]] fixes the first axis and is already triangular
        let w = normalized_weights::<f64>(WeightKernel::Equal, 1000).unwrap();
        let r = lyapunov_from_jacobians(&w, |_| Ok([[1.0, 1.0], [0.0, 1.0]])).unwrap();
        assert_eq!(r.exponents, vec![0.0, 0.0]);
        // the transpose rotates the frame every step; growth is only polynomial
        let r = lyapunov_from_jacobians(&w, |_| Ok([[1.0, 0.0], [1.0, 1.0]])).unwrap();
        assert!(r.exponents[0] > 0.0 && r.exponents[0] < 2e-2, "{:?}", r.exponents);
        assert!(r.sum().abs() < 1e-12);
    }

    #[test]
    fn singular_step_is_reported() {
        let w = normalized_weights::<f64>(WeightKernel::Equal, 10).unwrap();
        let r = lyapunov_from_jacobians(&w, |n| Ok(if n == 4 { [[1.0, 1.0], [1.0, 1.0]] } else { [[1.0, 0.0], [0.0, 1.0]] }));
        assert!(matches!(r, Err(Error::Singular { step: 4, .. })));
    }

    #[test]
    fn chaotic_standard_map_orbit() {
        // the orbit is sticky near islands for the first ~10⁵ iterates
        let w = normalized_weights::<f64>(WeightKernel::Exp, 1_000_000).unwrap();
        let r = lyapunov_exponents(&StandardMap, [std::f64::consts::PI, 1.65], &w).unwrap();
        assert!(r.exponents[0] > 0.05, "{:?}", r.exponents);
        assert!(r.sum().abs() < 1e-8);
    }

    proptest! {
        #[test]
        fn area_preserving_sum_rule(x in 0.0f64..std::f64::consts::TAU, y in 0.0f64..std::f64::consts::TAU) {
            let w = normalized_weights::<f64>(WeightKernel::Exp, 2000).unwrap();
            let r = lyapunov_exponents(&StandardMap, [x, y], &w).unwrap();
            prop_assert!(r.sum().abs() < 1e-8);
            prop_assert!(r.exponents[0] >= r.exponents[1]);
        }
    }
}
