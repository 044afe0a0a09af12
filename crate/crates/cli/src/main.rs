//! `jacobi-lt`: batch front end for finite-gap Jacobi experiments.

mod commands;
mod config;
mod svg;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use jacobi_lt::InequalityKind;
use serde_json::json;

use config::ExperimentConfig;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] jacobi_lt::Error),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.kind(),
            CliError::Config(_) => "config",
            CliError::Io { .. } => "io",
        }
    }

    fn exit_code(&self) -> u8 {
        match self.kind() {
            "numeric" | "quadrature" => 3,
            "contour" => 4,
            _ => 2,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "jacobi-lt", version, about = "Eigenvalues of perturbed finite-gap Jacobi operators and eigenvalue-sum bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Bands of the periodic background (bands.json)
    Spectrum(Common),
    /// Discrete eigenvalues of the perturbed operator (eigenvalues.csv)
    Eig(Common),
    /// Schatten bound for D^{1/2}(J'-z)^{-1}D^{1/2} at the configured points
    #[command(visible_alias = "thm21")]
    Sandwich(Common),
    /// Moment integrals of a reflectionless measure against their envelope
    #[command(visible_alias = "thm22")]
    Envelope(Common),
    /// Both sides of an eigenvalue-sum inequality (report.json)
    LtReport(Common),
    /// Inequality ratios along t·δJ
    Sweep(Common),
    /// Weighted zero sums on the disk or on the complement of E
    Zeros(Common),
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Experiment configuration (JSON)
    #[arg(short = 'c', long = "config")]
    config: PathBuf,
    /// Inequality kind, e.g. lt-nsa or kato-sa
    #[arg(long)]
    spec: Option<InequalityKind>,
    /// Exponent p
    #[arg(short = 'p')]
    p: Option<f64>,
    /// ε; 0 evaluates the open endpoint for exploration
    #[arg(long)]
    eps: Option<f64>,
    /// Output directory (overrides outputs.dir)
    #[arg(short = 'o', long = "out")]
    out: Option<PathBuf>,
    /// Half-width M of the truncation sections
    #[arg(long = "truncation-m")]
    truncation_m: Option<usize>,
    /// Truncation eigenvalues closer than this to E are discarded
    #[arg(long)]
    filter_dist: Option<f64>,
    /// Contour localisation tolerance
    #[arg(long)]
    contour_tol: Option<f64>,
    /// Relative quadrature tolerance
    #[arg(long)]
    quad_tol: Option<f64>,
    /// eig: also run the truncation oracle
    #[arg(long)]
    with_truncation: bool,
}

impl Common {
    /// Loads the config and applies command-line overrides.
    fn resolve(&self) -> Result<ExperimentConfig, CliError> {
        let mut cfg = ExperimentConfig::load(&self.config)?;
        if let Some(dir) = &self.out {
            cfg.outputs.dir = dir.clone();
        }
        let s = &mut cfg.solver;
        if let Some(v) = self.truncation_m {
            s.truncation_m = v;
        }
        if let Some(v) = self.filter_dist {
            s.filter_dist = v;
        }
        if let Some(v) = self.contour_tol {
            s.contour_tol = v;
        }
        if let Some(v) = self.quad_tol {
            s.quad_tol = v;
        }
        if self.spec.is_some() || cfg.spec.is_some() {
            let base = cfg.spec;
            let kind = self
                .spec
                .or(base.map(|s| s.kind()))
                .ok_or_else(|| CliError::Config("--spec is required when the config has no spec".into()))?;
            let p = self
                .p
                .or(base.map(|s| s.p()))
                .ok_or_else(|| CliError::Config("-p is required when the config has no spec".into()))?;
            let eps = self.eps.or(base.map(|s| s.eps())).unwrap_or(0.0);
            cfg.spec = Some(if eps == 0.0 && kind.uses_eps() {
                jacobi_lt::InequalitySpec::at_zero_eps(kind, p)?
            } else {
                jacobi_lt::InequalitySpec::new(kind, p, eps)?
            });
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var("JACOBI_LT_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

fn report_error(err: &CliError, dir: Option<&Path>) -> ExitCode {
    let code = err.exit_code();
    let body = json!({
        "error": {
            "kind": err.kind(),
            "message": err.to_string(),
            "exit_code": code,
        }
    });
    let text = serde_json::to_string_pretty(&body).expect("error JSON");
    eprintln!("{text}");
    if let Some(dir) = dir {
        if std::fs::create_dir_all(dir).is_ok() {
            let _ = std::fs::write(dir.join("error.json"), format!("{text}\n"));
        }
    }
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    let (name, common) = match &cli.command {
        Command::Spectrum(c) => ("spectrum", c),
        Command::Eig(c) => ("eig", c),
        Command::Sandwich(c) => ("sandwich", c),
        Command::Envelope(c) => ("envelope", c),
        Command::LtReport(c) => ("lt-report", c),
        Command::Sweep(c) => ("sweep", c),
        Command::Zeros(c) => ("zeros", c),
    };
    let cfg = match common.resolve() {
        Ok(cfg) => cfg,
        Err(e) => return report_error(&e, common.out.as_deref()),
    };
    let opts = commands::Options {
        with_truncation: common.with_truncation,
        p: common.p,
    };
    match commands::run(name, &cfg, opts) {
        Ok(summary) => {
            println!("{summary}");
            ExitCode::SUCCESS
        }
        Err(e) => report_error(&e, Some(&cfg.outputs.dir)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use jacobi_lt::{Complex64, Error};

    #[test]
    fn exit_codes_follow_error_class() {
        let core = |e: Error| CliError::Core(e).exit_code();
        assert_eq!(core(Error::Invalid("x".into())), 2);
        assert_eq!(core(Error::Usage("x".into())), 2);
        assert_eq!(core(Error::Domain("x".into())), 2);
        assert_eq!(core(Error::Degenerate("x".into())), 2);
        assert_eq!(core(Error::Numeric("x".into())), 3);
        assert_eq!(core(Error::Quadrature { previous: 1.0, last: 2.0 }), 3);
        let z = Complex64::new(0.0, 0.0);
        assert_eq!(core(Error::Contour { lo: z, hi: z, reason: "x".into() }), 4);
        assert_eq!(CliError::Config("x".into()).exit_code(), 2);
    }
}
