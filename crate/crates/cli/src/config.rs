use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};

use wbavg::systems::SystemKind;
use wbavg::{Error, Real, Result, WeightKernel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Precision {
    Double,
    Dd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Orbit,
    Rotnum,
    Fourier,
    Conjugacy,
    Lyapunov,
    Convergence,
    Section,
}

fn parse_system(s: &str) -> std::result::Result<SystemKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_kernel(s: &str) -> std::result::Result<WeightKernel, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Options shared by every subcommand; each uses the ones it needs.
#[derive(Debug, Clone, Args)]
pub struct Opts {
    /// standard | torus2d | vdp | threebody
    #[arg(long, value_parser = parse_system)]
    pub system: SystemKind,
    /// Initial condition as comma-separated decimals, parsed at the active
    /// precision. threebody takes q1,p1 (p2 solved from --energy) or
    /// q1,q2,p1,p2.
    #[arg(long, allow_hyphen_values = true)]
    pub ic: Option<String>,
    /// Number of averaged iterates / section returns.
    #[arg(long, default_value_t = 100_000)]
    pub n: usize,
    /// equal | quad | sin2 | exp
    #[arg(long, default_value = "exp", value_parser = parse_kernel)]
    pub kernel: WeightKernel,
    #[arg(long, value_enum, default_value = "double")]
    pub precision: Precision,
    /// Stroboscopic periods discarded before sampling (vdp).
    #[arg(long, default_value_t = wbavg::pipelines::DEFAULT_BURN_IN)]
    pub burn_in: usize,
    /// Integrator step; defaults to 1e-3 (double) or 1e-5 (dd).
    #[arg(long)]
    pub step: Option<String>,
    /// Section residual tolerance; defaults to 1e-13 (double) or 1e-28 (dd).
    #[arg(long)]
    pub tol: Option<String>,
    /// Highest Fourier index (1D default 200, 2D default 32).
    #[arg(long)]
    pub kmax: Option<usize>,
    /// Comma-separated N values for convergence studies (default 2^10..2^20).
    #[arg(long)]
    pub grid: Option<String>,
    /// Self-reference length for convergence studies (default 4·max N).
    #[arg(long)]
    pub n_star: Option<usize>,
    /// Comma-separated kernels for convergence studies (default all).
    #[arg(long)]
    pub kernels: Option<String>,
    /// Forcing amplitude F (vdp).
    #[arg(long, default_value = "5", allow_hyphen_values = true)]
    pub forcing: String,
    /// Energy level H (threebody).
    #[arg(long, default_value = "-2.63", allow_hyphen_values = true)]
    pub energy: String,
    /// Mass ratio μ (threebody).
    #[arg(long, default_value = "0.1")]
    pub mu: String,
    /// Torus rotation component used by 1D analyses (1 or 2).
    #[arg(long, default_value_t = 1)]
    pub component: usize,
    /// Grid size for conjugacy reconstruction.
    #[arg(long, default_value_t = 512)]
    pub samples: usize,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Output file (default: standard output).
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
}

/// Everything that determines a result; embedded in each output file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: Command,
    pub system: SystemKind,
    pub ic: Vec<String>,
    pub n: usize,
    pub kernel: WeightKernel,
    pub precision: Precision,
    pub burn_in: usize,
    pub step: String,
    pub tol: String,
    pub kmax: usize,
    pub grid: Vec<usize>,
    pub n_star: usize,
    pub kernels: Vec<WeightKernel>,
    pub forcing: String,
    pub energy: String,
    pub mu: String,
    pub component: usize,
    pub samples: usize,
}

const PI_DECIMAL: &str = "3.14159265358979323846264338327950288";

fn default_ic(system: SystemKind) -> Vec<String> {
    let v: &[&str] = match system {
        SystemKind::Standard => &[PI_DECIMAL, "1.5"],
        SystemKind::Torus2d => &["0", "0"],
        SystemKind::Vdp => &["0", "0"],
        SystemKind::ThreeBody => &["-0.25", "0"],
    };
    v.iter().map(|s| s.to_string()).collect()
}

fn split_list(s: &str) -> Vec<String> {
    s.split(',').map(|p| p.trim().to_string()).filter(|p| !p.is_empty()).collect()
}

impl RunConfig {
    pub fn from_opts(command: Command, o: &Opts) -> Result<Self> {
        let dd = o.precision == Precision::Dd;
        let two_d = o.system == SystemKind::Torus2d && command == Command::Fourier;
        let grid = match &o.grid {
            Some(g) => split_list(g)
                .iter()
                .map(|v| v.parse::<usize>().map_err(|_| Error::InvalidInput(format!("bad grid value {v:?}"))))
                .collect::<Result<Vec<_>>>()?,
            None => wbavg::study::default_grid(),
        };
        let kernels = match &o.kernels {
            Some(k) => split_list(k).iter().map(|v| v.parse()).collect::<Result<Vec<_>>>()?,
            None => WeightKernel::ALL.to_vec(),
        };
        let max = grid.iter().copied().max().unwrap_or(0);
        let cfg = RunConfig {
            command,
            system: o.system,
            ic: o.ic.as_deref().map(split_list).unwrap_or_else(|| default_ic(o.system)),
            n: o.n,
            kernel: o.kernel,
            precision: o.precision,
            burn_in: o.burn_in,
            step: o.step.clone().unwrap_or_else(|| if dd { "1e-5" } else { "1e-3" }.into()),
            tol: o.tol.clone().unwrap_or_else(|| if dd { "1e-28" } else { "1e-13" }.into()),
            kmax: o.kmax.unwrap_or(if two_d { 32 } else { 200 }),
            grid,
            n_star: o.n_star.unwrap_or(4 * max),
            kernels,
            forcing: o.forcing.clone(),
            energy: o.energy.clone(),
            mu: o.mu.clone(),
            component: o.component,
            samples: o.samples,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Checks everything that can be checked before computing.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidInput(m));
        if self.n < 2 {
            return bad(format!("--n must be at least 2, got {}", self.n));
        }
        let want: &[usize] = match self.system {
            SystemKind::ThreeBody => &[2, 4],
            _ => &[2],
        };
        if !want.contains(&self.ic.len()) {
            return bad(format!("--ic for {} needs {:?} values, got {}", self.system, want, self.ic.len()));
        }
        for v in self.ic.iter().chain([&self.step, &self.tol, &self.forcing, &self.energy, &self.mu]) {
            f64::parse(v).map_err(Error::from)?;
        }
        if !(f64::parse(&self.step)? > 0.0) || !(f64::parse(&self.tol)? > 0.0) {
            return bad("--step and --tol must be positive".into());
        }
        if !(1..=2).contains(&self.component) {
            return bad(format!("--component must be 1 or 2, got {}", self.component));
        }
        if self.samples == 0 {
            return bad("--samples must be positive".into());
        }
        if self.command == Command::Convergence {
            if self.grid.is_empty() || self.grid.windows(2).any(|w| w[1] <= w[0]) || self.grid[0] < 2 {
                return bad("--grid must be strictly increasing values >= 2".into());
            }
            if self.n_star < *self.grid.last().unwrap() {
                return bad("--n-star must be at least max(--grid)".into());
            }
            if self.kernels.is_empty() {
                return bad("--kernels is empty".into());
            }
        }
        let map_only = matches!(self.command, Command::Lyapunov);
        if map_only && !matches!(self.system, SystemKind::Standard | SystemKind::Torus2d) {
            return bad(format!("{:?} needs a map (standard or torus2d)", self.command).to_lowercase());
        }
        if self.command == Command::Section && !matches!(self.system, SystemKind::ThreeBody | SystemKind::Vdp) {
            return bad("section needs a flow (threebody or vdp)".into());
        }
        if self.command == Command::Conjugacy && self.system == SystemKind::Torus2d {
            return bad("conjugacy reconstruction is one-dimensional; use fourier for torus2d".into());
        }
        Ok(())
    }

    pub fn real<T: Real>(s: &str) -> Result<T> {
        T::parse(s).map_err(Error::from)
    }

    pub fn ic_values<T: Real>(&self) -> Result<Vec<T>> {
        self.ic.iter().map(|s| Self::real(s)).collect()
    }
}
