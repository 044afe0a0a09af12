//! One function per subcommand. Each returns a one-line summary; files are
//! collected first and written together at the end.

use std::path::Path;

use jacobi_lt::eigensolver::{eigenvalues_of, sort_records, truncated_eigenvalues, write_csv, EigenvalueRecord};
use jacobi_lt::lt_bounds::{report_from_eigenvalues, scaling_sweep};
use jacobi_lt::perturbation::sandwich_bound;
use jacobi_lt::quadrature::QuadratureConfig;
use jacobi_lt::reflectionless::MomentEnvelope;
use jacobi_lt::zero_sums::{disk_zero_sum, omega_zero_sum, BlaschkeProduct, GrowthEnvelope};
use jacobi_lt::{Complex64, FiniteGapSet, InequalitySpec, ReflectionlessMeasure};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{complex, ExperimentConfig, Format};
use crate::svg;
use crate::CliError;

struct Outputs {
    files: Vec<(String, String)>,
}

impl Outputs {
    fn new() -> Self {
        Outputs { files: Vec::new() }
    }

    fn json<T: Serialize>(&mut self, name: &str, value: &T) {
        let text = serde_json::to_string_pretty(value).expect("serializable output");
        self.files.push((name.to_string(), text + "\n"));
    }

    fn text(&mut self, name: &str, text: String) {
        self.files.push((name.to_string(), text));
    }

    fn write(self, dir: &Path) -> Result<(), CliError> {
        let io = |source| CliError::Io {
            path: dir.to_path_buf(),
            source,
        };
        std::fs::create_dir_all(dir).map_err(io)?;
        for (name, text) in self.files {
            let path = dir.join(&name);
            std::fs::write(&path, text).map_err(|source| CliError::Io { path, source })?;
        }
        Ok(())
    }
}

fn csv(records: &[EigenvalueRecord]) -> String {
    let mut buf = Vec::new();
    write_csv(records, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("CSV is UTF-8")
}

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

fn require_spec(cfg: &ExperimentConfig) -> Result<InequalitySpec, CliError> {
    cfg.spec
        .ok_or_else(|| CliError::Config("this command needs a spec (config `spec` or --spec/-p/--eps)".into()))
}

/// Command-line settings that are not part of the config.
#[derive(Debug, Clone, Copy)]
pub struct Options {
    pub with_truncation: bool,
    /// Bare `-p`, used by `sandwich` when no spec is given.
    pub p: Option<f64>,
}

pub fn run(name: &str, cfg: &ExperimentConfig, opts: Options) -> Result<String, CliError> {
    let mut out = Outputs::new();
    let set = cfg.background.spectrum()?;
    let summary = match name {
        "spectrum" => spectrum(cfg, &set, &mut out),
        "eig" => eig(cfg, &set, opts.with_truncation, &mut out)?,
        "sandwich" => sandwich(cfg, &set, opts.p, &mut out)?,
        "envelope" => envelope(cfg, &set, &mut out)?,
        "lt-report" => lt_report(cfg, &set, &mut out)?,
        "sweep" => sweep(cfg, &mut out)?,
        "zeros" => zeros(cfg, &set, &mut out)?,
        other => return Err(CliError::Config(format!("unknown command {other}"))),
    };
    if cfg.outputs.wants(Format::Json) {
        out.json("config.json", cfg);
    }
    out.write(&cfg.outputs.dir)?;
    Ok(summary)
}

fn spectrum(cfg: &ExperimentConfig, set: &FiniteGapSet, out: &mut Outputs) -> String {
    if cfg.outputs.wants(Format::Json) {
        out.json("bands.json", set);
    }
    if cfg.outputs.wants(Format::Svg) {
        out.text("spectrum.svg", svg::scatter(set, &[], "spectrum of the background"));
    }
    let bands: Vec<String> = set.bands().iter().map(|b| format!("[{}, {}]", b.lo, b.hi)).collect();
    format!("E = {}", bands.join(" ∪ "))
}

fn eig(cfg: &ExperimentConfig, set: &FiniteGapSet, with_truncation: bool, out: &mut Outputs) -> Result<String, CliError> {
    let search = eigenvalues_of(&cfg.background, &cfg.perturbation, cfg.solver.contour_tol)?;
    let mut records = search.eigenvalues.clone();
    let det_count = records.len();
    if with_truncation {
        records.extend(truncated_eigenvalues(
            &cfg.background,
            &cfg.perturbation,
            cfg.solver.truncation_m,
            cfg.solver.filter_dist,
        )?);
        sort_records(&mut records);
    }
    if cfg.outputs.wants(Format::Csv) {
        out.text("eigenvalues.csv", csv(&records));
    }
    if cfg.outputs.wants(Format::Json) {
        out.json(
            "eigenvalues.json",
            &json!({ "unresolved_tube_radius": search.tube, "eigenvalues": records }),
        );
    }
    if cfg.outputs.wants(Format::Svg) {
        out.text("eigenvalues.svg", svg::scatter(set, &records, "eigenvalues of J' + δJ"));
    }
    Ok(format!(
        "{det_count} eigenvalues (determinant){}",
        if with_truncation {
            format!(", {} (truncation)", records.len() - det_count)
        } else {
            String::new()
        }
    ))
}

fn sample_points(cfg: &ExperimentConfig) -> Result<Vec<Complex64>, CliError> {
    if cfg.z.is_empty() {
        return Err(CliError::Config("this command needs sample points `z`".into()));
    }
    Ok(cfg.z.iter().copied().map(complex).collect())
}

fn sandwich(cfg: &ExperimentConfig, set: &FiniteGapSet, p: Option<f64>, out: &mut Outputs) -> Result<String, CliError> {
    let p = match p {
        Some(p) => p,
        None => require_spec(cfg)?.p(),
    };
    let quad = QuadratureConfig::with_rel_tol(cfg.solver.quad_tol);
    let d = cfg.perturbation.factor().diagonal();
    let zs = sample_points(cfg)?;
    let rows = zs
        .par_iter()
        .map(|&z| {
            let b = sandwich_bound(&cfg.background, &d, z, p, &quad)?;
            Ok(json!({ "z": pair(z), "dist_E": set.dist(z), "p": p, "lhs": b.lhs, "rhs": b.rhs, "holds": b.holds, "slack": b.slack }))
        })
        .collect::<Result<Vec<Value>, jacobi_lt::Error>>()?;
    let violations = rows.iter().filter(|r| r["holds"] == json!(false)).count();
    if cfg.outputs.wants(Format::Json) {
        out.json("sandwich.json", &json!({ "sites": d.sites(), "weights": d.values(), "points": rows }));
    }
    if cfg.outputs.wants(Format::Csv) {
        let mut text = String::from("re,im,dist_E,p,lhs,rhs,holds,slack\n");
        for r in &rows {
            text.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                r["z"][0], r["z"][1], r["dist_E"], r["p"], r["lhs"], r["rhs"], r["holds"], r["slack"]
            ));
        }
        out.text("sandwich.csv", text);
    }
    Ok(format!("{} points, {violations} violations", rows.len()))
}

/// Default grid for `envelope`: 40 abscissae across `E` and 12 log-spaced
/// heights in `[1e-3, 1e2]`.
fn envelope_grid(set: &FiniteGapSet) -> Vec<Complex64> {
    let (lo, hi) = (set.lo() - 2.0, set.hi() + 2.0);
    let mut zs = Vec::new();
    for y in jacobi_lt::lt_bounds::log_grid(1e-3, 1e2, 12) {
        for k in 0..40 {
            zs.push(Complex64::new(lo + (hi - lo) * (k as f64 + 0.5) / 40.0, y));
        }
    }
    zs
}

fn envelope(cfg: &ExperimentConfig, set: &FiniteGapSet, out: &mut Outputs) -> Result<String, CliError> {
    let spec = require_spec(cfg)?;
    let env = if spec.p() > 1.0 {
        MomentEnvelope::power(spec.p())?
    } else {
        MomentEnvelope::first_moment(spec.eps())?
    };
    let measure = match &cfg.measure {
        Some(m) => m.clone(),
        None => ReflectionlessMeasure::centered(set.clone()),
    };
    let zs = if cfg.z.is_empty() {
        envelope_grid(measure.set())
    } else {
        sample_points(cfg)?
    };
    let quad = QuadratureConfig::with_rel_tol(cfg.solver.quad_tol);
    let ratios = zs
        .par_iter()
        .map(|&z| measure.envelope_ratio(z, env, &quad))
        .collect::<Result<Vec<f64>, _>>()?;
    let (mut k_hat, mut argmax) = (0.0, zs[0]);
    for (&z, &r) in zs.iter().zip(&ratios) {
        if r > k_hat {
            k_hat = r;
            argmax = z;
        }
    }
    let envelope = match env {
        MomentEnvelope::Power { p } => json!({ "kind": "power", "p": p }),
        MomentEnvelope::FirstMoment { eps } => json!({ "kind": "first-moment", "eps": eps }),
    };
    if cfg.outputs.wants(Format::Json) {
        let points: Vec<Value> = zs.iter().zip(&ratios).map(|(&z, &r)| json!({ "z": pair(z), "ratio": r })).collect();
        out.json(
            "envelope.json",
            &json!({ "measure": measure, "envelope": envelope, "k_hat": k_hat, "argmax": pair(argmax), "points": points }),
        );
    }
    if cfg.outputs.wants(Format::Csv) {
        let mut text = String::from("re,im,ratio\n");
        for (z, r) in zs.iter().zip(&ratios) {
            text.push_str(&format!("{},{},{}\n", z.re, z.im, r));
        }
        out.text("envelope.csv", text);
    }
    Ok(format!("K̂ = {k_hat} at z = {argmax} over {} points", zs.len()))
}

fn lt_report(cfg: &ExperimentConfig, set: &FiniteGapSet, out: &mut Outputs) -> Result<String, CliError> {
    let spec = require_spec(cfg)?;
    spec.check_set(set)?;
    let search = eigenvalues_of(&cfg.background, &cfg.perturbation, cfg.solver.contour_tol)?;
    let report = report_from_eigenvalues(set, &cfg.perturbation, &spec, &search.eigenvalues, search.tube)?;
    if cfg.outputs.wants(Format::Json) {
        out.json("report.json", &report);
    }
    if cfg.outputs.wants(Format::Csv) {
        out.text("eigenvalues.csv", csv(&report.eigenvalues));
    }
    if cfg.outputs.wants(Format::Svg) {
        out.text("eigenvalues.svg", svg::scatter(set, &report.eigenvalues, &format!("{} p = {}", spec.kind(), spec.p())));
    }
    Ok(format!(
        "{} p={} eps={}: lhs {} rhs {} ratio {}",
        spec.kind(),
        spec.p(),
        spec.eps(),
        report.lhs,
        report.rhs,
        report.ratio
    ))
}

fn sweep(cfg: &ExperimentConfig, out: &mut Outputs) -> Result<String, CliError> {
    let spec = require_spec(cfg)?;
    let grid = cfg.sweep_grid();
    let result = scaling_sweep(&cfg.background, &cfg.perturbation, &spec, &grid, cfg.solver.contour_tol)?;
    if cfg.outputs.wants(Format::Json) {
        out.json("sweep.json", &result);
    }
    if cfg.outputs.wants(Format::Csv) {
        let mut text = String::from("t,lhs,rhs,ratio,eigenvalue_count\n");
        for (t, r) in result.t.iter().zip(&result.reports) {
            text.push_str(&format!("{},{},{},{},{}\n", t, r.lhs, r.rhs, r.ratio, r.eigenvalue_count));
        }
        out.text("sweep.csv", text);
    }
    Ok(format!(
        "{} scales, max ratio {} at t = {}",
        result.t.len(),
        result.max_ratio,
        result.argmax_t
    ))
}

fn zeros(cfg: &ExperimentConfig, set: &FiniteGapSet, out: &mut Outputs) -> Result<String, CliError> {
    let zc = cfg
        .zeros
        .as_ref()
        .ok_or_else(|| CliError::Config("zeros needs a `zeros` section".into()))?;
    if zc.disk.is_none() && zc.omega.is_none() {
        return Err(CliError::Config("`zeros` needs a `disk` or an `omega` entry".into()));
    }
    let mut body = serde_json::Map::new();
    let mut lines = Vec::new();
    if let Some(d) = &zc.disk {
        let env = GrowthEnvelope::new(d.k, d.alpha, d.beta, d.gamma, d.eps, d.s.iter().copied().map(complex).collect())?;
        let product = BlaschkeProduct::new(d.zeros.iter().copied().map(complex).collect())?;
        let sum = disk_zero_sum(product.zeros(), &env)?;
        let k_hat = product.estimate_k(&env, d.n_r, d.n_theta, d.r_max)?;
        let constant = sum / k_hat;
        body.insert(
            "disk".into(),
            json!({ "zero_count": product.zeros().len(), "log_normalizer": product.log_normalizer(), "sum": sum, "k_hat": k_hat, "constant": constant }),
        );
        lines.push(format!("disk: sum {sum} = {constant}·K̂"));
    }
    if let Some(w) = &zc.omega {
        let search = eigenvalues_of(&cfg.background, &cfg.perturbation, cfg.solver.contour_tol)?;
        let zs: Vec<Complex64> = search
            .eigenvalues
            .iter()
            .flat_map(|r| std::iter::repeat_n(r.z, r.multiplicity))
            .collect();
        let sum = omega_zero_sum(&zs, set, w.p, w.q, w.r, w.eps)?;
        body.insert(
            "omega".into(),
            json!({ "exponents": w, "zero_count": zs.len(), "sum": sum, "unresolved_tube_radius": search.tube }),
        );
        lines.push(format!("omega: {} zeros, sum {sum}", zs.len()));
    }
    if cfg.outputs.wants(Format::Json) {
        out.json("zeros.json", &Value::Object(body));
    }
    Ok(lines.join("; "))
}
