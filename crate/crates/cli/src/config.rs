//! Experiment configuration files.

use std::path::{Path, PathBuf};

use jacobi_lt::{Complex64, InequalitySpec, PeriodicJacobi, Perturbation, ReflectionlessMeasure};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub background: PeriodicJacobi,
    #[serde(default = "Perturbation::zero")]
    pub perturbation: Perturbation,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spec: Option<InequalitySpec>,
    #[serde(default)]
    pub solver: SolverConfig,
    #[serde(default)]
    pub outputs: OutputConfig,
    /// Sample points `[re, im]` for the pointwise commands.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub z: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub measure: Option<ReflectionlessMeasure>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zeros: Option<ZerosConfig>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverConfig {
    #[serde(rename = "truncation_M", default = "default_truncation")]
    pub truncation_m: usize,
    #[serde(default = "default_filter")]
    pub filter_dist: f64,
    #[serde(default = "default_tol")]
    pub contour_tol: f64,
    #[serde(default = "default_tol")]
    pub quad_tol: f64,
}

fn default_truncation() -> usize {
    500
}

fn default_filter() -> f64 {
    0.05
}

fn default_tol() -> f64 {
    1e-10
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            truncation_m: default_truncation(),
            filter_dist: default_filter(),
            contour_tol: default_tol(),
            quad_tol: default_tol(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default = "default_dir")]
    pub dir: PathBuf,
    #[serde(default = "default_formats")]
    pub formats: Vec<Format>,
}

fn default_dir() -> PathBuf {
    PathBuf::from("out")
}

fn default_formats() -> Vec<Format> {
    vec![Format::Csv, Format::Json]
}

impl Default for OutputConfig {
    fn default() -> Self {
        OutputConfig {
            dir: default_dir(),
            formats: default_formats(),
        }
    }
}

impl OutputConfig {
    pub fn wants(&self, f: Format) -> bool {
        self.formats.contains(&f)
    }
}

/// Scales `t` for `sweep`: an explicit list, or `n` log-spaced points.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub t: Vec<f64>,
    #[serde(default = "default_t_min")]
    pub t_min: f64,
    #[serde(default = "default_t_max")]
    pub t_max: f64,
    #[serde(default = "default_n")]
    pub n: usize,
}

fn default_t_min() -> f64 {
    1e-3
}

fn default_t_max() -> f64 {
    1e2
}

fn default_n() -> usize {
    7
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            t: Vec::new(),
            t_min: default_t_min(),
            t_max: default_t_max(),
            n: default_n(),
        }
    }
}

/// Input of `zeros`: a finite Blaschke product on the disk with its growth
/// envelope, or exponents for a weighted sum over the eigenvalues of `J`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ZerosConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub disk: Option<DiskZeros>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<OmegaExponents>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiskZeros {
    pub zeros: Vec<[f64; 2]>,
    #[serde(default = "one")]
    pub k: f64,
    #[serde(default)]
    pub alpha: f64,
    #[serde(default)]
    pub beta: f64,
    #[serde(default)]
    pub gamma: f64,
    pub eps: f64,
    #[serde(default)]
    pub s: Vec<[f64; 2]>,
    #[serde(default = "default_grid")]
    pub n_r: usize,
    #[serde(default = "default_grid")]
    pub n_theta: usize,
    #[serde(default = "default_r_max")]
    pub r_max: f64,
}

fn one() -> f64 {
    1.0
}

fn default_grid() -> usize {
    100
}

fn default_r_max() -> f64 {
    0.999
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OmegaExponents {
    pub p: f64,
    pub q: f64,
    pub r: f64,
    pub eps: f64,
}

pub fn complex(v: [f64; 2]) -> Complex64 {
    Complex64::new(v[0], v[1])
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        let cfg: ExperimentConfig = serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Checks that are not covered by the field types themselves.
    pub fn validate(&self) -> Result<(), CliError> {
        let s = &self.solver;
        let positive = |name: &str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(CliError::Config(format!("solver.{name} must be positive, got {v}")))
            }
        };
        positive("filter_dist", s.filter_dist)?;
        positive("contour_tol", s.contour_tol)?;
        positive("quad_tol", s.quad_tol)?;
        if s.truncation_m == 0 {
            return Err(CliError::Config("solver.truncation_M must be positive".into()));
        }
        if self.z.iter().flatten().any(|v| !v.is_finite()) {
            return Err(CliError::Config("sample points must be finite".into()));
        }
        if let Some(sw) = &self.sweep {
            if sw.t.is_empty() && !(sw.t_min > 0.0 && sw.t_max > sw.t_min && sw.n >= 2) {
                return Err(CliError::Config("sweep needs 0 < t_min < t_max and n >= 2".into()));
            }
        }
        Ok(())
    }

    pub fn sweep_grid(&self) -> Vec<f64> {
        let sw = self.sweep.clone().unwrap_or_default();
        if sw.t.is_empty() {
            jacobi_lt::lt_bounds::log_grid(sw.t_min, sw.t_max, sw.n)
        } else {
            sw.t
        }
    }
}
