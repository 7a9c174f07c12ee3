//! Weighted Birkhoff averages for quasiperiodic maps and flows.
//!
//! The weighted average `WB_N(f) = Σ ŵ_{n,N} f(x_n)` with a smooth bump
//! weight converges faster than any power of `N` on quasiperiodic orbits.
//! This crate builds rotation numbers, conjugacy Fourier coefficients and
//! Lyapunov exponents on top of it, for double and double-double scalars.

pub mod averaging;
pub mod dd;
pub mod error;
pub mod flows;
pub mod fourier;
pub mod kernels;
pub mod lyapunov;
pub mod pipelines;
pub mod real;
pub mod rotation;
pub mod study;
pub mod systems;

pub use averaging::{compensated_sum, weighted_average, AverageResult, CompensatedSum, OrbitSample};
pub use dd::DD;
pub use error::{Error, Result};
pub use kernels::{normalized_weights, WeightKernel, WeightSequence};
pub use real::Real;
