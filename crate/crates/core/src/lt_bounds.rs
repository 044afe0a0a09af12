//! Both sides of the eigenvalue-sum inequalities for a concrete `J' + δJ`,
//! and scaling sweeps that estimate the constants from below.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::eigensolver::{eigenvalues_of, EigenvalueRecord};
use crate::error::{Error, Result};
use crate::finite_gap_set::{eigenvalue_weight, FiniteGapSet, InequalityKind, InequalitySpec};
use crate::periodic_jacobi::PeriodicJacobi;
use crate::perturbation::Perturbation;

/// One evaluated inequality. `ratio = lhs / rhs` (with `0/0 = 0`) is a
/// lower bound for the constant of the inequality; it is never a proof.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub spec: InequalityKind,
    pub p: f64,
    pub eps: f64,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub open_endpoint: bool,
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
    pub eigenvalue_count: usize,
    pub unresolved_tube_radius: f64,
    pub eigenvalues: Vec<EigenvalueRecord>,
}

impl BoundReport {
    pub fn inequality_spec(&self) -> Result<InequalitySpec> {
        if self.open_endpoint {
            InequalitySpec::at_zero_eps(self.spec, self.p)
        } else {
            InequalitySpec::new(self.spec, self.p, self.eps)
        }
    }
}

/// Right-hand side of the inequality: `Σ|δa|^p + |δb|^p` for the
/// selfadjoint Lieb–Thirring forms, `‖δJ‖_p^p` for Kato's selfadjoint
/// bound and `Σ|δa|^p + |δb|^p + |δc|^p` for the non-selfadjoint ones.
pub fn rhs_sum(dj: &Perturbation, spec: &InequalitySpec) -> Result<f64> {
    let p = spec.p();
    Ok(match spec.kind() {
        InequalityKind::LtSa | InequalityKind::UltimateSa => dj.lp_sum_selfadjoint(p),
        InequalityKind::KatoSa => dj.schatten_power(p)?,
        InequalityKind::Lt0Nsa | InequalityKind::KatoNsa | InequalityKind::LtNsa => dj.lp_sum(p),
    })
}

/// `Σ weight(z)·multiplicity`.
pub fn lhs_sum(eigenvalues: &[EigenvalueRecord], set: &FiniteGapSet, spec: &InequalitySpec) -> Result<f64> {
    eigenvalues
        .iter()
        .map(|r| Ok(eigenvalue_weight(r.z, set, spec)? * r.multiplicity as f64))
        .sum()
}

fn check_applicable(dj: &Perturbation, spec: &InequalitySpec, set: &FiniteGapSet) -> Result<()> {
    spec.check_set(set)?;
    if spec.kind().is_selfadjoint() && !dj.is_selfadjoint() {
        return Err(Error::Usage(format!(
            "{} applies to selfadjoint perturbations only",
            spec.kind()
        )));
    }
    Ok(())
}

/// Assembles a report from eigenvalues that were already computed, so one
/// eigenvalue search can serve several inequalities.
pub fn report_from_eigenvalues(
    set: &FiniteGapSet,
    dj: &Perturbation,
    spec: &InequalitySpec,
    eigenvalues: &[EigenvalueRecord],
    tube: f64,
) -> Result<BoundReport> {
    check_applicable(dj, spec, set)?;
    let lhs = lhs_sum(eigenvalues, set, spec)?;
    let rhs = rhs_sum(dj, spec)?;
    let ratio = if lhs == 0.0 { 0.0 } else { lhs / rhs };
    Ok(BoundReport {
        spec: spec.kind(),
        p: spec.p(),
        eps: spec.eps(),
        open_endpoint: spec.is_open_endpoint(),
        lhs,
        rhs,
        ratio,
        eigenvalue_count: eigenvalues.iter().map(|r| r.multiplicity).sum(),
        unresolved_tube_radius: tube,
        eigenvalues: eigenvalues.to_vec(),
    })
}

/// Finds the eigenvalues over the default region and evaluates `spec`.
pub fn inequality_report(
    jac: &PeriodicJacobi,
    dj: &Perturbation,
    spec: &InequalitySpec,
    tol: f64,
) -> Result<BoundReport> {
    let set = jac.spectrum()?;
    check_applicable(dj, spec, &set)?;
    let search = eigenvalues_of(jac, dj, tol)?;
    report_from_eigenvalues(&set, dj, spec, &search.eigenvalues, search.tube)
}

/// Reports for `t·δJ` over a grid of scales.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingSweep {
    pub t: Vec<f64>,
    pub reports: Vec<BoundReport>,
    pub max_ratio: f64,
    /// Scale at which `max_ratio` is attained.
    pub argmax_t: f64,
}

pub fn scaling_sweep(
    jac: &PeriodicJacobi,
    dj: &Perturbation,
    spec: &InequalitySpec,
    t_grid: &[f64],
    tol: f64,
) -> Result<ScalingSweep> {
    if t_grid.is_empty() || t_grid.iter().any(|t| !(t.is_finite() && *t > 0.0)) {
        return Err(Error::Invalid("scaling grid needs positive finite values".into()));
    }
    // fail fast before spawning work
    check_applicable(dj, spec, &jac.spectrum()?)?;
    let reports = t_grid
        .par_iter()
        .map(|&t| inequality_report(jac, &dj.scaled(t), spec, tol))
        .collect::<Result<Vec<_>>>()?;
    let (mut max_ratio, mut argmax_t) = (f64::NEG_INFINITY, t_grid[0]);
    for (r, &t) in reports.iter().zip(t_grid) {
        if r.ratio > max_ratio {
            max_ratio = r.ratio;
            argmax_t = t;
        }
    }
    Ok(ScalingSweep {
        t: t_grid.to_vec(),
        reports,
        max_ratio,
        argmax_t,
    })
}

/// `n` log-spaced points from `lo` to `hi` inclusive.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    let (a, b) = (lo.log10(), hi.log10());
    (0..n)
        .map(|k| 10f64.powf(a + (b - a) * k as f64 / (n - 1) as f64))
        .collect()
}
