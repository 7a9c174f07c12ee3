//! Weight functions for the weighted Birkhoff average and their normalized
//! sequences `ŵ_{n,N} = w(n/N) / Σ_j w(j/N)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::averaging::CompensatedSum;
use crate::error::{Error, Result};
use crate::real::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WeightKernel {
    /// Constant weight: the plain Birkhoff average.
    Equal,
    /// `t(1-t)`
    Quad,
    /// `sin²(πt)`
    Sin2,
    /// `exp(-1/(t(1-t)))`, vanishing to all orders at both ends.
    Exp,
}

impl WeightKernel {
    pub const ALL: [WeightKernel; 4] =
        [WeightKernel::Equal, WeightKernel::Quad, WeightKernel::Sin2, WeightKernel::Exp];

    pub fn name(self) -> &'static str {
        match self {
            WeightKernel::Equal => "equal",
            WeightKernel::Quad => "quad",
            WeightKernel::Sin2 => "sin2",
            WeightKernel::Exp => "exp",
        }
    }

    /// `w(t)`. Zero outside `(0,1)` for the bump kernels, and computed from
    /// `min(t, 1-t)` so that `w(t) == w(1-t)` whenever `1-t` is exact.
    pub fn evaluate<T: Real>(self, t: T) -> T {
        let zero = T::zero();
        let one = T::one();
        if self == WeightKernel::Equal {
            return if t >= zero && t <= one { one } else { zero };
        }
        if t <= zero || t >= one {
            return zero;
        }
        self.eval_folded(t.min(one - t))
    }

    /// Kernel at `m = min(t, 1-t)`, `0 < m <= 1/2`.
    fn eval_folded<T: Real>(self, m: T) -> T {
        let one = T::one();
        match self {
            WeightKernel::Equal => one,
            WeightKernel::Quad => m * (one - m),
            WeightKernel::Sin2 => {
                let s = (m * T::from_f64(0.5)).sincos_2pi().0;
                s * s
            }
            WeightKernel::Exp => (-(one / (m * (one - m)))).exp(),
        }
    }
}

impl fmt::Display for WeightKernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for WeightKernel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "equal" => Ok(WeightKernel::Equal),
            "quad" => Ok(WeightKernel::Quad),
            "sin2" => Ok(WeightKernel::Sin2),
            "exp" => Ok(WeightKernel::Exp),
            _ => Err(Error::InvalidInput(format!("unknown kernel {s:?}"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct WeightSequence<T> {
    kernel: WeightKernel,
    weights: Vec<T>,
}

impl<T: Real> WeightSequence<T> {
    pub fn kernel(&self) -> WeightKernel {
        self.kernel
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn as_slice(&self) -> &[T] {
        &self.weights
    }

    pub fn get(&self, n: usize) -> T {
        self.weights[n]
    }
}

/// `ŵ_{n,N}` for `n = 0..N`. The fold point `min(n, N-n)/N` is formed from
/// integers, so the sequence is exactly symmetric about `N/2`.
pub fn normalized_weights<T: Real>(kernel: WeightKernel, n: usize) -> Result<WeightSequence<T>> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("weight sequence needs N >= 2, got {n}")));
    }
    let nn = T::from_i64(n as i64);
    let mut raw = Vec::with_capacity(n);
    // w(j/N) only depends on min(j, N-j); evaluate each distinct value once
    let half = n / 2;
    let mut folded = Vec::with_capacity(half + 1);
    for j in 0..=half {
        let w = if j == 0 {
            if kernel == WeightKernel::Equal { T::one() } else { T::zero() }
        } else {
            kernel.eval_folded(T::from_i64(j as i64) / nn)
        };
        folded.push(w);
    }
    let mut acc = CompensatedSum::new();
    for j in 0..n {
        let w = folded[j.min(n - j)];
        acc.add(w);
        raw.push(w);
    }
    let total = acc.value();
    let inv = T::one() / total;
    for w in raw.iter_mut() {
        *w *= inv;
    }
    Ok(WeightSequence { kernel, weights: raw })
}
