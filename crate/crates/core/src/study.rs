//! Error-versus-N studies against a self-reference `value(N*)`, and
//! log-log slope fits.

use crate::error::{Error, Result};
use crate::fourier::least_squares;
use crate::kernels::WeightKernel;
use crate::real::Real;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow {
    pub kernel: WeightKernel,
    pub n: usize,
    pub error: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceTable {
    pub rows: Vec<ConvergenceRow>,
    /// `value(N*)` per kernel, to double precision.
    pub references: Vec<(WeightKernel, f64)>,
    pub n_star: usize,
    /// Unit roundoff of the precision the values were computed in.
    pub epsilon: f64,
}

impl ConvergenceTable {
    pub fn rows_for(&self, kernel: WeightKernel) -> impl Iterator<Item = &ConvergenceRow> {
        self.rows.iter().filter(move |r| r.kernel == kernel)
    }

    pub fn reference(&self, kernel: WeightKernel) -> Option<f64> {
        self.references.iter().find(|r| r.0 == kernel).map(|r| r.1)
    }

    /// Errors at or below this are rounding noise, not truncation error.
    pub fn floor(&self, kernel: WeightKernel) -> f64 {
        100.0 * self.epsilon * self.reference(kernel).unwrap_or(0.0).abs()
    }
}

pub fn default_grid() -> Vec<usize> {
    (10..=20).map(|p| 1usize << p).collect()
}

/// `error(N) = |value(N) − value(N*)|` for every kernel and grid point,
/// with `N* = 4·max(grid)` unless given.
pub fn convergence_study<T: Real>(
    mut quantity: impl FnMut(WeightKernel, usize) -> Result<T>,
    kernels: &[WeightKernel],
    grid: &[usize],
    n_star: Option<usize>,
) -> Result<ConvergenceTable> {
    if grid.is_empty() || kernels.is_empty() {
        return Err(Error::InvalidInput("empty kernel list or N grid".into()));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidInput("N grid must be strictly increasing".into()));
    }
    let max = *grid.last().unwrap();
    let n_star = n_star.unwrap_or(4 * max);
    if n_star < max {
        return Err(Error::InvalidInput(format!("N* = {n_star} is below max(N) = {max}")));
    }
    let mut rows = Vec::with_capacity(kernels.len() * grid.len());
    let mut references = Vec::with_capacity(kernels.len());
    for &k in kernels {
        let reference = quantity(k, n_star)?;
        references.push((k, reference.to_f64()));
        for &n in grid {
            let v = quantity(k, n)?;
            rows.push(ConvergenceRow { kernel: k, n, error: (v - reference).abs().to_f64() });
        }
    }
    Ok(ConvergenceTable { rows, references, n_star, epsilon: T::EPSILON })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlopeFit {
    pub kernel: WeightKernel,
    pub slope: f64,
    pub intercept: f64,
    pub fit_range: (usize, usize),
    pub points: usize,
}

pub const SLOPE_MIN_POINTS: usize = 4;

/// Least-squares slope of `ln error` against `ln N` over the rows above
/// the table's floor.
pub fn fit_slope(table: &ConvergenceTable, kernel: WeightKernel) -> Result<SlopeFit> {
    let floor = table.floor(kernel);
    let usable: Vec<(usize, f64)> =
        table.rows_for(kernel).filter(|r| r.error > floor).map(|r| (r.n, r.error)).collect();
    if usable.len() < SLOPE_MIN_POINTS {
        return Err(Error::TooFewPoints { needed: SLOPE_MIN_POINTS, got: usable.len() });
    }
    let pts: Vec<(f64, f64)> = usable.iter().map(|&(n, e)| ((n as f64).ln(), e.ln())).collect();
    let (slope, intercept, _) = least_squares(&pts);
    Ok(SlopeFit {
        kernel,
        slope,
        intercept,
        fit_range: (usable[0].0, usable[usable.len() - 1].0),
        points: usable.len(),
    })
}
