//! The weighted Birkhoff average `WB_N(f) = Σ ŵ_{n,N} f(x_n)`.

use crate::error::{Error, Result};
use crate::kernels::{WeightKernel, WeightSequence};
use crate::real::Real;

/// Neumaier's compensated accumulator.
#[derive(Debug, Clone, Copy)]
pub struct CompensatedSum<T> {
    sum: T,
    comp: T,
}

impl<T: Real> Default for CompensatedSum<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Real> CompensatedSum<T> {
    pub fn new() -> Self {
        CompensatedSum { sum: T::zero(), comp: T::zero() }
    }

    #[inline(always)]
    pub fn add(&mut self, x: T) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> T {
        self.sum + self.comp
    }
}

pub fn compensated_sum<T: Real, I: IntoIterator<Item = T>>(terms: I) -> T {
    let mut acc = CompensatedSum::new();
    for x in terms {
        acc.add(x);
    }
    acc.value()
}

/// Observable values along an orbit, `len` rows of dimension `dim`,
/// stored row-major.
#[derive(Debug, Clone)]
pub struct OrbitSample<T> {
    values: Vec<T>,
    dim: usize,
}

impl<T: Real> OrbitSample<T> {
    pub fn new(values: Vec<T>, dim: usize) -> Result<Self> {
        if dim == 0 || values.len() % dim != 0 {
            return Err(Error::InvalidInput(format!(
                "{} values do not form rows of dimension {dim}",
                values.len()
            )));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index: i / dim });
        }
        Ok(OrbitSample { values, dim })
    }

    pub fn scalar(values: Vec<T>) -> Result<Self> {
        Self::new(values, 1)
    }

    pub fn len(&self) -> usize {
        self.values.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn row(&self, n: usize) -> &[T] {
        &self.values[n * self.dim..(n + 1) * self.dim]
    }
}

#[derive(Debug, Clone)]
pub struct AverageResult<T> {
    pub value: Vec<T>,
    pub n: usize,
    pub kernel: WeightKernel,
}

pub fn weighted_average<T: Real>(
    sample: &OrbitSample<T>,
    weights: &WeightSequence<T>,
) -> Result<AverageResult<T>> {
    if sample.len() != weights.len() {
        return Err(Error::LengthMismatch { expected: weights.len(), got: sample.len() });
    }
    let mut acc = vec![CompensatedSum::new(); sample.dim()];
    for (n, &w) in weights.as_slice().iter().enumerate() {
        for (a, &v) in acc.iter_mut().zip(sample.row(n)) {
            a.add(w * v);
        }
    }
    Ok(AverageResult {
        value: acc.iter().map(CompensatedSum::value).collect(),
        n: weights.len(),
        kernel: weights.kernel(),
    })
}

/// Streaming form of [`weighted_average`] for a scalar observable given as
/// a function of the index; avoids materializing long orbits.
pub fn weighted_average_fn<T: Real>(
    weights: &WeightSequence<T>,
    mut f: impl FnMut(usize) -> Result<T>,
) -> Result<T> {
    let mut acc = CompensatedSum::new();
    for (n, &w) in weights.as_slice().iter().enumerate() {
        let v = f(n)?;
        if !v.is_finite() {
            return Err(Error::NonFinite { index: n });
        }
        acc.add(w * v);
    }
    Ok(acc.value())
}
