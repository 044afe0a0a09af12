//! Discrete eigenvalues of `J = J' + δJ`.
//!
//! The primary method counts zeros of the perturbation determinant
//! `f(z) = det_m(I + D^{1/2}(J'-z)^{-1}D^{1/2} B)` with the argument principle
//! on rectangles, subdividing until each zero is isolated and then polishing
//! it by secant steps. The oracle diagonalises large finite sections of `J`.

use std::f64::consts::PI;
use std::io::Write;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finite_gap_set::FiniteGapSet;
use crate::linalg::{determinant, eigenvalues, tridiagonal_eigenvalues, CMatrix};
use crate::periodic_jacobi::PeriodicJacobi;
use crate::perturbation::{sandwich, FactoredPerturbation, Perturbation, SiteDiagonal};

type C = Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Determinant,
    Truncation,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Determinant => "determinant",
            Method::Truncation => "truncation",
        }
    }
}

/// One eigenvalue with its algebraic multiplicity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenvalueRecord {
    pub z: C,
    pub multiplicity: usize,
    pub method: Method,
    /// `|f(z)|` for the determinant method; distance to the matching
    /// eigenvalue of the doubled section for the truncation method.
    pub residual: f64,
    pub dist_e: f64,
    pub dist_edges: f64,
}

impl EigenvalueRecord {
    fn new(z: C, multiplicity: usize, method: Method, residual: f64, set: &FiniteGapSet) -> Self {
        EigenvalueRecord {
            z,
            multiplicity,
            method,
            residual,
            dist_e: set.dist(z),
            dist_edges: set.dist_to_edges(z),
        }
    }
}

pub const CSV_HEADER: &str = "re,im,multiplicity,method,residual,dist_E,dist_edges";

/// Writes records in the fixed CSV layout. Floats use the shortest
/// round-trip representation, so output is byte-stable.
pub fn write_csv<W: Write>(records: &[EigenvalueRecord], mut out: W) -> std::io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in records {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.z.re,
            r.z.im,
            r.multiplicity,
            r.method.name(),
            r.residual,
            r.dist_e,
            r.dist_edges
        )?;
    }
    Ok(())
}

/// Axis-parallel rectangle `[lo.re, hi.re] × [lo.im, hi.im]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContourBox {
    pub lo: C,
    pub hi: C,
    pub samples_per_side: usize,
}

impl ContourBox {
    pub const DEFAULT_SAMPLES: usize = 32;

    pub fn new(lo: C, hi: C) -> Result<Self> {
        Self::with_samples(lo, hi, Self::DEFAULT_SAMPLES)
    }

    pub fn with_samples(lo: C, hi: C, samples_per_side: usize) -> Result<Self> {
        let finite = [lo.re, lo.im, hi.re, hi.im].iter().all(|v| v.is_finite());
        if !finite || !(lo.re < hi.re && lo.im < hi.im) || samples_per_side == 0 {
            return Err(Error::Invalid(format!("degenerate contour box [{lo}, {hi}]")));
        }
        Ok(ContourBox {
            lo,
            hi,
            samples_per_side,
        })
    }

    pub fn width(&self) -> f64 {
        self.hi.re - self.lo.re
    }

    pub fn height(&self) -> f64 {
        self.hi.im - self.lo.im
    }

    pub fn diameter(&self) -> f64 {
        self.width().hypot(self.height())
    }

    pub fn center(&self) -> C {
        (self.lo + self.hi) * 0.5
    }

    pub fn contains(&self, z: C) -> bool {
        self.lo.re <= z.re && z.re <= self.hi.re && self.lo.im <= z.im && z.im <= self.hi.im
    }

    /// Counterclockwise corners starting at `lo`.
    fn corners(&self) -> [C; 4] {
        [
            self.lo,
            C::new(self.hi.re, self.lo.im),
            self.hi,
            C::new(self.lo.re, self.hi.im),
        ]
    }

    /// Same box pushed outward by one sample spacing on every side.
    fn inflated(&self) -> ContourBox {
        let n = self.samples_per_side as f64;
        let d = C::new(self.width() / n, self.height() / n);
        ContourBox {
            lo: self.lo - d,
            hi: self.hi + d,
            samples_per_side: self.samples_per_side,
        }
    }

    /// Splits at fraction `frac` of each subdivided side. Elongated boxes
    /// (aspect ratio above 2) are halved across the long side only.
    fn split(&self, frac: f64) -> Vec<ContourBox> {
        let (w, h) = (self.width(), self.height());
        let xm = self.lo.re + frac * w;
        let ym = self.lo.im + (1.0 - frac) * h;
        let mk = |lo: C, hi: C| ContourBox {
            lo,
            hi,
            samples_per_side: self.samples_per_side,
        };
        if w > 2.0 * h {
            vec![mk(self.lo, C::new(xm, self.hi.im)), mk(C::new(xm, self.lo.im), self.hi)]
        } else if h > 2.0 * w {
            vec![mk(self.lo, C::new(self.hi.re, ym)), mk(C::new(self.lo.re, ym), self.hi)]
        } else {
            vec![
                mk(self.lo, C::new(xm, ym)),
                mk(C::new(xm, self.lo.im), C::new(self.hi.re, ym)),
                mk(C::new(self.lo.re, ym), C::new(xm, self.hi.im)),
                mk(C::new(xm, ym), self.hi),
            ]
        }
    }
}

/// `det_m(I + A) = Π (1 + λ_j) exp(Σ_{k<m} (-λ_j)^k / k)`; `m = 1` is the
/// plain determinant.
pub fn regularized_det(a: &CMatrix, m: usize) -> Result<C> {
    if m == 0 {
        return Err(Error::Invalid("regularization order must be >= 1".into()));
    }
    if !a.is_square() {
        return Err(Error::Invalid("regularized determinant of a non-square matrix".into()));
    }
    if m == 1 {
        return Ok(determinant(&CMatrix::identity(a.rows()).add(a)));
    }
    let mut prod = C::new(1.0, 0.0);
    let mut expo = C::new(0.0, 0.0);
    for lam in eigenvalues(a)? {
        prod *= C::new(1.0, 0.0) + lam;
        let mut pw = C::new(1.0, 0.0);
        for k in 1..m {
            pw *= -lam;
            expo += pw / k as f64;
        }
    }
    Ok(prod * expo.exp())
}

/// `f(z)` for a fixed background and perturbation.
#[derive(Debug, Clone)]
pub struct PerturbationDeterminant<'a> {
    jac: &'a PeriodicJacobi,
    set: FiniteGapSet,
    factored: FactoredPerturbation,
    diag: SiteDiagonal,
    order: usize,
}

impl<'a> PerturbationDeterminant<'a> {
    pub fn new(jac: &'a PeriodicJacobi, dj: &Perturbation, order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::Invalid("regularization order must be >= 1".into()));
        }
        let set = jac.spectrum()?;
        let factored = dj.factor();
        let diag = factored.diagonal();
        Ok(PerturbationDeterminant {
            jac,
            set,
            factored,
            diag,
            order,
        })
    }

    pub fn set(&self) -> &FiniteGapSet {
        &self.set
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `D^{1/2}(J'-z)^{-1}D^{1/2} B` on the support.
    pub fn kernel(&self, z: C) -> Result<CMatrix> {
        Ok(sandwich(self.jac, &self.diag, z)?.matmul(&self.factored.b))
    }

    pub fn eval(&self, z: C) -> Result<C> {
        if self.factored.is_empty() {
            return Ok(C::new(1.0, 0.0));
        }
        if self.set.dist(z) == 0.0 {
            return Err(Error::Domain(format!("f(z) is not defined on E (z = {z})")));
        }
        regularized_det(&self.kernel(z)?, self.order)
    }
}

enum Winding {
    Count(i64),
    /// `|f|` fell below the zero threshold at this boundary point.
    BoundaryZero(C),
}

const MAX_DEPTH: u32 = 60;
const SPLIT_FRACTIONS: [f64; 3] = [0.5 + 0.0173, 0.5 - 0.0391, 0.5 + 0.0617];

fn zero_threshold() -> f64 {
    10.0 * f64::EPSILON
}

struct Tracker<'f, F> {
    f: &'f F,
    region: ContourBox,
    /// Real points where `f` may be singular; segments are kept shorter
    /// than half their distance to these.
    singular: &'f [f64],
}

impl<F: Fn(C) -> Result<C>> Tracker<'_, F> {
    fn value(&self, z: C) -> Result<std::result::Result<C, C>> {
        let v = (self.f)(z)?;
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::Numeric(format!("non-finite determinant at z = {z}")));
        }
        Ok(if v.norm() < zero_threshold() { Err(z) } else { Ok(v) })
    }

    /// Phase change of `f` from `za` to `zb`. A segment is accepted once `f`
    /// is close to linear on it relative to its size, which rules out
    /// hidden windings from zeros near the contour.
    fn segment(&self, za: C, fa: C, zb: C, fb: C, depth: u32) -> Result<std::result::Result<f64, C>> {
        let zm = (za + zb) * 0.5;
        let fm = match self.value(zm)? {
            Ok(v) => v,
            Err(z) => return Ok(Err(z)),
        };
        let (s1, s2) = ((fm / fa).arg(), (fb / fm).arg());
        let bend = (fm - (fa + fb) * 0.5).norm();
        if s1.abs() < PI / 4.0
            && s2.abs() < PI / 4.0
            && bend <= 0.25 * fa.norm().min(fb.norm())
            && self.resolved(za, zb)
        {
            return Ok(Ok(s1 + s2));
        }
        if depth >= MAX_DEPTH {
            return Err(Error::Contour {
                lo: self.region.lo,
                hi: self.region.hi,
                reason: format!("phase tracking did not resolve near z = {za}"),
            });
        }
        let left = match self.segment(za, fa, zm, fm, depth + 1)? {
            Ok(v) => v,
            Err(z) => return Ok(Err(z)),
        };
        let right = match self.segment(zm, fm, zb, fb, depth + 1)? {
            Ok(v) => v,
            Err(z) => return Ok(Err(z)),
        };
        Ok(Ok(left + right))
    }

    fn resolved(&self, za: C, zb: C) -> bool {
        let len = (zb - za).norm();
        self.singular.iter().all(|&e| {
            let e = C::new(e, 0.0);
            let d = zb - za;
            let s = (((e - za) * d.conj()).re / d.norm_sqr()).clamp(0.0, 1.0);
            2.0 * len <= (za + d * s - e).norm()
        })
    }

    fn winding(&self, b: &ContourBox) -> Result<Winding> {
        let corners = b.corners();
        let n = b.samples_per_side;
        let mut points = Vec::with_capacity(4 * n + 1);
        for s in 0..4 {
            let (za, zb) = (corners[s], corners[(s + 1) % 4]);
            for k in 0..n {
                points.push(za + (zb - za) * (k as f64 / n as f64));
            }
        }
        points.push(corners[0]);
        let mut values = Vec::with_capacity(points.len());
        for &z in &points {
            match self.value(z)? {
                Ok(v) => values.push(v),
                Err(z) => return Ok(Winding::BoundaryZero(z)),
            }
        }
        let mut total = 0.0;
        for k in 0..points.len() - 1 {
            match self.segment(points[k], values[k], points[k + 1], values[k + 1], 0)? {
                Ok(step) => total += step,
                Err(z) => return Ok(Winding::BoundaryZero(z)),
            }
        }
        let turns = total / (2.0 * PI);
        let rounded = turns.round();
        if (turns - rounded).abs() > 0.05 {
            return Err(Error::Contour {
                lo: b.lo,
                hi: b.hi,
                reason: format!("non-integer winding {turns}"),
            });
        }
        Ok(Winding::Count(rounded as i64))
    }
}

/// Secant iteration from the box centre. Returns the zero if it converges
/// inside the box.
fn secant<F: Fn(C) -> Result<C>>(f: &F, b: &ContourBox, tol: f64) -> Option<(C, f64)> {
    let h = 1e-3 * b.width().max(b.height());
    let mut z0 = b.center();
    let mut z1 = z0 + h;
    let mut f0 = f(z0).ok()?;
    let mut f1 = f(z1).ok()?;
    for _ in 0..100 {
        if f1 == C::new(0.0, 0.0) {
            break;
        }
        let denom = f1 - f0;
        if denom == C::new(0.0, 0.0) {
            break;
        }
        let z2 = z1 - f1 * (z1 - z0) / denom;
        if !(z2.re.is_finite() && z2.im.is_finite()) {
            return None;
        }
        let step = (z2 - z1).norm();
        z0 = z1;
        f0 = f1;
        z1 = z2;
        f1 = f(z1).ok()?;
        if step <= 4.0 * f64::EPSILON * z1.norm().max(1.0) {
            break;
        }
    }
    let last_step = (z1 - z0).norm();
    if b.contains(z1) && last_step <= tol {
        Some((z1, f1.norm()))
    } else {
        None
    }
}

/// Zeros of `f` inside `region` with multiplicities, sorted by `(re, im)`.
///
/// A zero detected on the outer boundary leads to one retry with the box
/// inflated by a sample spacing.
pub fn find_zeros<F>(f: &F, region: &ContourBox, tol: f64) -> Result<Vec<(C, usize, f64)>>
where
    F: Fn(C) -> Result<C>,
{
    find_zeros_impl(f, region, tol, true, &[])
}

fn find_zeros_impl<F>(
    f: &F,
    region: &ContourBox,
    tol: f64,
    inflate: bool,
    singular: &[f64],
) -> Result<Vec<(C, usize, f64)>>
where
    F: Fn(C) -> Result<C>,
{
    if !(tol > 0.0) {
        return Err(Error::Invalid(format!("contour tolerance must be positive, got {tol}")));
    }
    let mut outer = *region;
    let mut top = None;
    for attempt in 0..2 {
        let tracker = Tracker { f, region: outer, singular };
        match tracker.winding(&outer)? {
            Winding::Count(w) => {
                top = Some(w);
                break;
            }
            Winding::BoundaryZero(z) if attempt == 1 || !inflate => {
                return Err(Error::Contour {
                    lo: outer.lo,
                    hi: outer.hi,
                    reason: format!("zero of f on the boundary near {z}"),
                });
            }
            Winding::BoundaryZero(_) => outer = outer.inflated(),
        }
    }
    let tracker = Tracker { f, region: outer, singular };
    let mut found = Vec::new();
    let mut queue = vec![(outer, top.expect("winding computed"))];
    while let Some((b, w)) = queue.pop() {
        if w == 0 {
            continue;
        }
        if w < 0 {
            return Err(Error::Contour {
                lo: b.lo,
                hi: b.hi,
                reason: format!("negative winding {w} for an analytic function"),
            });
        }
        if w == 1 {
            if let Some((z, res)) = secant(f, &b, tol) {
                found.push((z, 1, res));
                continue;
            }
        }
        if b.diameter() < tol {
            let z = b.center();
            let res = f(z).map(|v| v.norm()).unwrap_or(f64::NAN);
            found.push((z, w as usize, res));
            continue;
        }
        let mut children = None;
        let mut tried = Vec::new();
        for frac in SPLIT_FRACTIONS {
            let parts = b.split(frac);
            let mut counts = Vec::with_capacity(parts.len());
            let mut clean = true;
            for p in &parts {
                match tracker.winding(p)? {
                    Winding::Count(c) => counts.push(c),
                    Winding::BoundaryZero(_) => {
                        clean = false;
                        break;
                    }
                }
            }
            tried.push(if clean { format!("{counts:?}") } else { "boundary zero".to_string() });
            if clean && counts.iter().sum::<i64>() == w {
                children = Some(parts.into_iter().zip(counts).collect::<Vec<_>>());
                break;
            }
        }
        match children {
            Some(c) => queue.extend(c),
            None => {
                return Err(Error::Contour {
                    lo: b.lo,
                    hi: b.hi,
                    reason: format!("no consistent subdivision of winding {w}: children {}", tried.join(", ")),
                })
            }
        }
    }
    found.sort_by(|a, b| a.0.re.total_cmp(&b.0.re).then(a.0.im.total_cmp(&b.0.im)));
    Ok(found)
}

/// Eigenvalues of `J' + δJ` inside the given boxes, by the determinant method.
pub fn find_eigenvalues(
    det: &PerturbationDeterminant<'_>,
    region: &[ContourBox],
    tol: f64,
) -> Result<Vec<EigenvalueRecord>> {
    for b in region {
        if det.set().bands().iter().any(|band| {
            band.lo <= b.hi.re && b.lo.re <= band.hi && b.lo.im <= 0.0 && 0.0 <= b.hi.im
        }) {
            return Err(Error::Invalid(format!(
                "contour box [{}, {}] meets the essential spectrum",
                b.lo, b.hi
            )));
        }
    }
    let f = |z: C| det.eval(z);
    let edges = det.set().edges();
    let mut out = Vec::new();
    for b in region {
        for (z, m, res) in find_zeros_impl(&f, b, tol, true, &edges)? {
            out.push(EigenvalueRecord::new(z, m, Method::Determinant, res, det.set()));
        }
    }
    sort_records(&mut out);
    Ok(out)
}

/// Boxes covering `{z : dist(z, E) ≤ R}` minus a tube of radius `tube`
/// around `E`, with `R = max(2, 2·‖δJ‖)` (eigenvalues satisfy
/// `dist(z, E) ≤ ‖δJ‖`).
pub fn default_region(set: &FiniteGapSet, dj: &Perturbation, tube: f64) -> Result<Vec<ContourBox>> {
    if !(tube > 0.0) {
        return Err(Error::Invalid(format!("tube radius must be positive, got {tube}")));
    }
    let r = (2.0 * dj.norm_bound()).max(2.0);
    let (lo, hi) = (set.lo() - r, set.hi() + r);
    let mut boxes = vec![
        ContourBox::new(C::new(lo, tube), C::new(hi, r))?,
        ContourBox::new(C::new(lo, -r), C::new(hi, -tube))?,
        ContourBox::new(C::new(lo, -tube), C::new(set.lo() - tube, tube))?,
        ContourBox::new(C::new(set.hi() + tube, -tube), C::new(hi, tube))?,
    ];
    for (g_lo, g_hi) in set.gaps() {
        if g_hi - g_lo > 2.0 * tube {
            boxes.push(ContourBox::new(C::new(g_lo + tube, -tube), C::new(g_hi - tube, tube))?);
        }
    }
    Ok(boxes)
}

/// Result of a full search over the default region.
#[derive(Debug, Clone)]
pub struct EigenSearch {
    pub eigenvalues: Vec<EigenvalueRecord>,
    /// Radius of the tube around `E` that was not searched.
    pub tube: f64,
}

/// Determinant-method eigenvalues over the default region. If a zero sits
/// on a separating line, the tube is widened once and the search repeated.
pub fn eigenvalues_of(jac: &PeriodicJacobi, dj: &Perturbation, tol: f64) -> Result<EigenSearch> {
    let det = PerturbationDeterminant::new(jac, dj, 1)?;
    if dj.is_zero() {
        return Ok(EigenSearch {
            eigenvalues: Vec::new(),
            tube: tol,
        });
    }
    let mut tube = tol;
    let mut last_err = None;
    for _ in 0..2 {
        let region = default_region(det.set(), dj, tube)?;
        match search_disjoint(&det, &region, tol) {
            Ok(eigenvalues) => return Ok(EigenSearch { eigenvalues, tube }),
            Err(e @ Error::Contour { .. }) => {
                last_err = Some(e);
                tube *= 3.7;
            }
            Err(e) => return Err(e),
        }
    }
    Err(last_err.expect("loop ran"))
}

/// Like `find_eigenvalues` but never inflates a box, since the default
/// boxes share edges.
fn search_disjoint(
    det: &PerturbationDeterminant<'_>,
    region: &[ContourBox],
    tol: f64,
) -> Result<Vec<EigenvalueRecord>> {
    let f = |z: C| det.eval(z);
    let edges = det.set().edges();
    let mut out = Vec::new();
    for b in region {
        for (z, m, res) in find_zeros_impl(&f, b, tol, false, &edges)? {
            out.push(EigenvalueRecord::new(z, m, Method::Determinant, res, det.set()));
        }
    }
    sort_records(&mut out);
    Ok(out)
}

pub fn sort_records(v: &mut [EigenvalueRecord]) {
    v.sort_by(|a, b| a.z.re.total_cmp(&b.z.re).then(a.z.im.total_cmp(&b.z.im)));
}

/// Eigenvalues of the section of `J' + δJ` on `-half ..= half`.
pub fn section_eigenvalues(jac: &PeriodicJacobi, dj: &Perturbation, half: usize) -> Result<Vec<C>> {
    let t = jac.truncation(half);
    let diag: Vec<C> = t
        .diag
        .iter()
        .enumerate()
        .map(|(k, &b)| dj.db_at(t.first + k as i64) + b)
        .collect();
    let sub: Vec<C> = t
        .off
        .iter()
        .enumerate()
        .map(|(k, &a)| dj.da_at(t.first + k as i64) + a)
        .collect();
    let sup: Vec<C> = t
        .off
        .iter()
        .enumerate()
        .map(|(k, &a)| dj.dc_at(t.first + k as i64) + a)
        .collect();
    tridiagonal_eigenvalues(&sub, &diag, &sup)
}

/// Tolerances of the truncation oracle.
pub const PERSIST_TOL: f64 = 1e-6;
pub const CLUSTER_TOL: f64 = 1e-5;

/// Eigenvalues of the `(2M+1)`-site section farther than `filter_dist`
/// from `E` that persist when `M` doubles. Gap eigenvalues already present
/// in the unperturbed section (states bound to the artificial boundary)
/// are removed one for one.
pub fn truncated_eigenvalues(
    jac: &PeriodicJacobi,
    dj: &Perturbation,
    half: usize,
    filter_dist: f64,
) -> Result<Vec<EigenvalueRecord>> {
    if !(filter_dist > 0.0) {
        return Err(Error::Invalid(format!("filter distance must be positive, got {filter_dist}")));
    }
    let set = jac.spectrum()?;
    if let Some((lo, hi)) = dj.site_range() {
        let width = (hi - lo + 1) as usize;
        let reach = lo.unsigned_abs().max(hi.unsigned_abs()) as usize;
        if half < 10 * width || reach >= half {
            return Err(Error::Invalid(format!(
                "section half-width {half} too small for the window [{lo}, {hi}]"
            )));
        }
    }
    let outside = |v: Vec<C>| -> Vec<C> { v.into_iter().filter(|z| set.dist(*z) > filter_dist).collect() };
    let mut cand = outside(section_eigenvalues(jac, dj, half)?);
    // the unperturbed section is selfadjoint, so its boundary states are real
    let near_real = cand.iter().any(|z| z.im.abs() < PERSIST_TOL);
    let spurious = if near_real {
        outside(section_eigenvalues(jac, &Perturbation::zero(), half)?)
    } else {
        Vec::new()
    };
    for s in spurious {
        if let Some((k, d)) = nearest(&cand, s) {
            if d < PERSIST_TOL {
                cand.swap_remove(k);
            }
        }
    }
    if cand.is_empty() {
        return Ok(Vec::new());
    }
    let doubled = section_eigenvalues(jac, dj, 2 * half)?;
    let mut kept: Vec<(C, f64)> = cand
        .into_iter()
        .filter_map(|z| nearest(&doubled, z).filter(|(_, d)| *d < PERSIST_TOL).map(|(_, d)| (z, d)))
        .collect();
    kept.sort_by(|a, b| a.0.re.total_cmp(&b.0.re).then(a.0.im.total_cmp(&b.0.im)));
    let mut out: Vec<EigenvalueRecord> = Vec::new();
    let mut used = vec![false; kept.len()];
    for i in 0..kept.len() {
        if used[i] {
            continue;
        }
        let mut members = vec![i];
        used[i] = true;
        for j in i + 1..kept.len() {
            if !used[j] && (kept[j].0 - kept[i].0).norm() < CLUSTER_TOL {
                used[j] = true;
                members.push(j);
            }
        }
        let z = members.iter().map(|&k| kept[k].0).sum::<C>() / members.len() as f64;
        let res = members.iter().map(|&k| kept[k].1).fold(0.0, f64::max);
        out.push(EigenvalueRecord::new(z, members.len(), Method::Truncation, res, &set));
    }
    sort_records(&mut out);
    Ok(out)
}

fn nearest(v: &[C], z: C) -> Option<(usize, f64)> {
    v.iter()
        .enumerate()
        .map(|(k, w)| (k, (w - z).norm()))
        .min_by(|a, b| a.1.total_cmp(&b.1))
}
