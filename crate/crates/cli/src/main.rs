mod commands;
mod config;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{Command, Format, Opts, Precision, RunConfig};

const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Weighted Birkhoff averages of quasiperiodic orbits: rotation numbers,
/// conjugacy Fourier series, Lyapunov exponents and convergence studies.
///
/// Every output starts with the full run configuration (`# config:` in CSV,
/// `config` in JSON) so a file can be reproduced with `wbavg replay`.
/// Exit status: 0 success, 2 invalid input, 3 numerical failure, 1 I/O.
#[derive(Parser)]
#[command(name = "wbavg", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Raw trajectory.
    ///
    /// Maps: columns n,x,y for N iterates. vdp: t,x,v for N integrator
    /// steps. threebody: t,q1,q2,p1,p2,H for N integrator steps.
    Orbit(Opts),
    /// Weighted rotation number.
    ///
    /// Summary rho (torus2d: rho1, rho2) and, for circle systems, the
    /// centroid used for angles. Rows are the partial estimates at
    /// N/8, N/4, N/2, N: columns n,rho (torus2d: n,rho1,rho2).
    Rotnum(Opts),
    /// Fourier coefficients of the conjugacy's periodic part.
    ///
    /// 1D systems: columns k,b,c,magnitude with g(θ) = b0/2 + Σ b_k cos 2πkθ
    /// + c_k sin 2πkθ. torus2d (component --component): columns
    /// family,j,k,re,im,magnitude for frequencies (j,k) ("plus") and (j,−k)
    /// ("minus"). The summary holds the exponential decay fit.
    Fourier(Opts),
    /// Conjugacy reconstructed on a uniform grid.
    ///
    /// Columns theta,g,h with h(θ) = θ + g(θ), θ = i/--samples.
    Conjugacy(Opts),
    /// Lyapunov exponents of a map, descending.
    ///
    /// Columns index,exponent; summary sum.
    Lyapunov(Opts),
    /// Error against a long self-reference over a grid of N.
    ///
    /// Columns kernel,N,error; summary reference_<kernel> and the fitted
    /// log-log slope_<kernel> (or the reason no slope was fitted).
    Convergence(Opts),
    /// Section returns of a flow.
    ///
    /// threebody: crossings of q2 = 0 upward, columns
    /// k,t,q1,p1,p2,residual,dH. vdp: stroboscopic samples after burn-in,
    /// columns k,t,x,v.
    Section(Opts),
    /// Re-run the configuration embedded in an earlier output file.
    Replay {
        file: std::path::PathBuf,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
}

enum Failure {
    Input(String),
    Numerical(String),
    Io(String),
}

impl From<wbavg::Error> for Failure {
    fn from(e: wbavg::Error) -> Self {
        if e.is_numerical() {
            Failure::Numerical(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

fn embedded_config(text: &str) -> Result<RunConfig, Failure> {
    let json = if let Some(line) = text.lines().find_map(|l| l.strip_prefix("# config: ")) {
        serde_json::from_str::<RunConfig>(line)
    } else {
        serde_json::from_str::<serde_json::Value>(text)
            .and_then(|v| serde_json::from_value::<RunConfig>(v["config"].clone()))
    };
    let cfg = json.map_err(|e| Failure::Input(format!("no usable configuration in file: {e}")))?;
    cfg.validate()?;
    Ok(cfg)
}

fn run(cli: Cli) -> Result<(), Failure> {
    let (cfg, format, out) = match cli.cmd {
        Cmd::Replay { file, format, out } => {
            let text = std::fs::read_to_string(&file).map_err(|e| Failure::Io(format!("{}: {e}", file.display())))?;
            (embedded_config(&text)?, format, out)
        }
        Cmd::Orbit(o) => (RunConfig::from_opts(Command::Orbit, &o)?, o.format, o.out),
        Cmd::Rotnum(o) => (RunConfig::from_opts(Command::Rotnum, &o)?, o.format, o.out),
        Cmd::Fourier(o) => (RunConfig::from_opts(Command::Fourier, &o)?, o.format, o.out),
        Cmd::Conjugacy(o) => (RunConfig::from_opts(Command::Conjugacy, &o)?, o.format, o.out),
        Cmd::Lyapunov(o) => (RunConfig::from_opts(Command::Lyapunov, &o)?, o.format, o.out),
        Cmd::Convergence(o) => (RunConfig::from_opts(Command::Convergence, &o)?, o.format, o.out),
        Cmd::Section(o) => (RunConfig::from_opts(Command::Section, &o)?, o.format, o.out),
    };
    let report = match cfg.precision {
        Precision::Double => commands::execute::<f64>(&cfg)?,
        Precision::Dd => commands::execute::<wbavg::DD>(&cfg)?,
    };
    let config = serde_json::to_value(&cfg).expect("config serializes");
    let text = match format {
        Format::Csv => report.to_csv(&config, VERSION),
        Format::Json => report.to_json(&config, VERSION),
    };
    let written = match out {
        Some(p) => std::fs::write(&p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => std::io::stdout().lock().write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    written.map_err(Failure::Io)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Numerical(m)) => {
            eprintln!("numerical failure: {m}");
            ExitCode::from(3)
        }
        Err(Failure::Io(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
