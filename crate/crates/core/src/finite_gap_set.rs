//! Finite gap sets `E = [α_1, β_1] ∪ … ∪ [α_N, β_N]` and the per-eigenvalue
//! weights of the eigenvalue-sum inequalities.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A closed band `[lo, hi]` with `lo < hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Band {
    pub lo: f64,
    pub hi: f64,
}

impl Band {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) {
            return Err(Error::Invalid(format!("band [{lo}, {hi}] is not finite")));
        }
        if lo >= hi {
            return Err(Error::Invalid(format!("band [{lo}, {hi}] has lo >= hi")));
        }
        Ok(Band { lo, hi })
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn half_width(&self) -> f64 {
        0.5 * (self.hi - self.lo)
    }

    /// Distance from `z` to the segment, by projection.
    pub fn dist(&self, z: Complex64) -> f64 {
        let x = z.re.clamp(self.lo, self.hi);
        (z - x).norm()
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_interior(&self, x: f64) -> bool {
        self.lo < x && x < self.hi
    }
}

/// An ordered union of disjoint closed bands.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawGapSet", into = "RawGapSet")]
pub struct FiniteGapSet {
    bands: Vec<Band>,
}

#[derive(Serialize, Deserialize)]
struct RawGapSet {
    bands: Vec<[f64; 2]>,
}

impl TryFrom<RawGapSet> for FiniteGapSet {
    type Error = Error;

    fn try_from(raw: RawGapSet) -> Result<Self> {
        FiniteGapSet::new(raw.bands.iter().map(|b| (b[0], b[1])).collect())
    }
}

impl From<FiniteGapSet> for RawGapSet {
    fn from(set: FiniteGapSet) -> Self {
        RawGapSet {
            bands: set.bands.iter().map(|b| [b.lo, b.hi]).collect(),
        }
    }
}

impl FiniteGapSet {
    /// Bands must be given in increasing order with open gaps between them;
    /// touching bands are rejected, not merged.
    pub fn new(bands: Vec<(f64, f64)>) -> Result<Self> {
        if bands.is_empty() {
            return Err(Error::Invalid("a finite gap set needs at least one band".into()));
        }
        let bands = bands
            .into_iter()
            .map(|(lo, hi)| Band::new(lo, hi))
            .collect::<Result<Vec<_>>>()?;
        for w in bands.windows(2) {
            if w[0].hi >= w[1].lo {
                return Err(Error::Invalid(format!(
                    "bands [{}, {}] and [{}, {}] are not separated by an open gap",
                    w[0].lo, w[0].hi, w[1].lo, w[1].hi
                )));
            }
        }
        Ok(FiniteGapSet { bands })
    }

    pub fn interval(lo: f64, hi: f64) -> Result<Self> {
        Self::new(vec![(lo, hi)])
    }

    /// The spectrum `[-2, 2]` of the free Jacobi matrix.
    pub fn free() -> Self {
        FiniteGapSet {
            bands: vec![Band { lo: -2.0, hi: 2.0 }],
        }
    }

    pub fn bands(&self) -> &[Band] {
        &self.bands
    }

    pub fn n_bands(&self) -> usize {
        self.bands.len()
    }

    /// `∂E` as `α_1, β_1, …, α_N, β_N`.
    pub fn edges(&self) -> Vec<f64> {
        self.bands.iter().flat_map(|b| [b.lo, b.hi]).collect()
    }

    /// Open gaps `(β_j, α_{j+1})`.
    pub fn gaps(&self) -> Vec<(f64, f64)> {
        self.bands.windows(2).map(|w| (w[0].hi, w[1].lo)).collect()
    }

    pub fn lo(&self) -> f64 {
        self.bands[0].lo
    }

    pub fn hi(&self) -> f64 {
        self.bands[self.bands.len() - 1].hi
    }

    pub fn contains(&self, x: f64) -> bool {
        self.bands.iter().any(|b| b.contains(x))
    }

    /// Index of the band whose interior contains `x`.
    pub fn band_of_interior(&self, x: f64) -> Option<usize> {
        self.bands.iter().position(|b| b.contains_interior(x))
    }

    /// Euclidean distance from `z` to `E`; zero exactly on `E`.
    pub fn dist(&self, z: Complex64) -> f64 {
        self.bands
            .iter()
            .map(|b| b.dist(z))
            .fold(f64::INFINITY, f64::min)
    }

    /// Distance from `z` to the endpoint set `∂E`.
    pub fn dist_to_edges(&self, z: Complex64) -> f64 {
        self.bands
            .iter()
            .flat_map(|b| [b.lo, b.hi])
            .map(|e| (z - e).norm())
            .fold(f64::INFINITY, f64::min)
    }

    pub fn is_free(&self) -> bool {
        self.bands.len() == 1 && self.bands[0].lo == -2.0 && self.bands[0].hi == 2.0
    }

    /// Hausdorff distance between `E` and a finite point set on the real line.
    pub fn hausdorff_to_points(&self, points: &[f64]) -> f64 {
        if points.is_empty() {
            return f64::INFINITY;
        }
        let mut sorted = points.to_vec();
        sorted.sort_by(f64::total_cmp);
        let from_points = sorted
            .iter()
            .map(|&x| self.dist(Complex64::new(x, 0.0)))
            .fold(0.0, f64::max);
        // sup over E of the distance to the nearest point: check edges and
        // midpoints between consecutive points that fall inside E.
        let nearest = |x: f64| {
            let i = sorted.partition_point(|&p| p < x);
            let mut d = f64::INFINITY;
            if i < sorted.len() {
                d = d.min((sorted[i] - x).abs());
            }
            if i > 0 {
                d = d.min((x - sorted[i - 1]).abs());
            }
            d
        };
        let mut from_set: f64 = 0.0;
        for b in &self.bands {
            from_set = from_set.max(nearest(b.lo)).max(nearest(b.hi));
        }
        for w in sorted.windows(2) {
            let m = 0.5 * (w[0] + w[1]);
            if self.contains(m) {
                from_set = from_set.max(nearest(m));
            }
        }
        from_points.max(from_set)
    }
}

/// `x^e` with the convention `0^0 = 1`.
pub(crate) fn pow0(x: f64, e: f64) -> f64 {
    if e == 0.0 {
        1.0
    } else {
        x.powf(e)
    }
}

/// The eigenvalue-sum inequalities that can be evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InequalityKind {
    /// `Σ dist^{p-1/2} ≤ L Σ |δa|^p + |δb|^p`, selfadjoint.
    LtSa,
    /// `Σ dist^p ≤ ‖δJ‖_p^p`, selfadjoint.
    KatoSa,
    /// `Σ dist^{p-1/2} (1+|λ|)^{1/2} ≤ C Σ |δa|^p + |δb|^p`, selfadjoint.
    UltimateSa,
    /// `Σ dist(z,[-2,2])^{p+ε} / |z²-4|^{1/2}`, free background only.
    Lt0Nsa,
    /// `Σ dist^p ≤ K_p Σ |δa|^p + |δb|^p + |δc|^p`, `p > 1`.
    KatoNsa,
    /// `Σ dist^{p+ε} (1+|z|)^{(1-3ε)/2} / dist(z,∂E)^{1/2}`.
    LtNsa,
}

impl InequalityKind {
    pub const ALL: [InequalityKind; 6] = [
        InequalityKind::LtSa,
        InequalityKind::KatoSa,
        InequalityKind::UltimateSa,
        InequalityKind::Lt0Nsa,
        InequalityKind::KatoNsa,
        InequalityKind::LtNsa,
    ];

    pub fn name(self) -> &'static str {
        match self {
            InequalityKind::LtSa => "lt-sa",
            InequalityKind::KatoSa => "kato-sa",
            InequalityKind::UltimateSa => "ultimate-sa",
            InequalityKind::Lt0Nsa => "lt0-nsa",
            InequalityKind::KatoNsa => "kato-nsa",
            InequalityKind::LtNsa => "lt-nsa",
        }
    }

    pub fn uses_eps(self) -> bool {
        matches!(self, InequalityKind::Lt0Nsa | InequalityKind::LtNsa)
    }

    pub fn is_selfadjoint(self) -> bool {
        matches!(
            self,
            InequalityKind::LtSa | InequalityKind::KatoSa | InequalityKind::UltimateSa
        )
    }
}

impl fmt::Display for InequalityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for InequalityKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.to_ascii_lowercase().replace('_', "-");
        InequalityKind::ALL
            .into_iter()
            .find(|k| k.name() == norm)
            .ok_or_else(|| Error::Invalid(format!("unknown inequality kind '{s}'")))
    }
}

/// An inequality together with its exponent `p` and, where used, `ε`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSpec", into = "RawSpec")]
pub struct InequalitySpec {
    kind: InequalityKind,
    p: f64,
    eps: f64,
    open_endpoint: bool,
}

#[derive(Serialize, Deserialize)]
struct RawSpec {
    kind: InequalityKind,
    p: f64,
    #[serde(default)]
    eps: f64,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    open_endpoint: bool,
}

impl TryFrom<RawSpec> for InequalitySpec {
    type Error = Error;

    fn try_from(raw: RawSpec) -> Result<Self> {
        if raw.open_endpoint {
            if raw.eps != 0.0 {
                return Err(Error::Invalid("open_endpoint requires eps = 0".into()));
            }
            InequalitySpec::at_zero_eps(raw.kind, raw.p)
        } else {
            InequalitySpec::new(raw.kind, raw.p, raw.eps)
        }
    }
}

impl From<InequalitySpec> for RawSpec {
    fn from(s: InequalitySpec) -> Self {
        RawSpec {
            kind: s.kind,
            p: s.p,
            eps: s.eps,
            open_endpoint: s.open_endpoint,
        }
    }
}

impl InequalitySpec {
    pub fn new(kind: InequalityKind, p: f64, eps: f64) -> Result<Self> {
        check_p(kind, p)?;
        let eps = if kind.uses_eps() {
            if !(eps.is_finite() && eps > 0.0) {
                return Err(Error::Invalid(format!("{kind} needs eps > 0, got {eps}")));
            }
            eps
        } else {
            0.0
        };
        Ok(InequalitySpec {
            kind,
            p,
            eps,
            open_endpoint: false,
        })
    }

    /// The `ε = 0` endpoint of an ε-dependent inequality. Whether these hold
    /// is open; the values are only meant for exploration.
    pub fn at_zero_eps(kind: InequalityKind, p: f64) -> Result<Self> {
        check_p(kind, p)?;
        if !kind.uses_eps() {
            return Err(Error::Invalid(format!("{kind} has no eps parameter")));
        }
        Ok(InequalitySpec {
            kind,
            p,
            eps: 0.0,
            open_endpoint: true,
        })
    }

    pub fn kind(&self) -> InequalityKind {
        self.kind
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn is_open_endpoint(&self) -> bool {
        self.open_endpoint
    }

    /// Checks that the inequality makes sense on `set`.
    pub fn check_set(&self, set: &FiniteGapSet) -> Result<()> {
        if self.kind == InequalityKind::Lt0Nsa && !set.is_free() {
            return Err(Error::Usage(
                "lt0-nsa is only defined for E = [-2, 2]".into(),
            ));
        }
        Ok(())
    }
}

fn check_p(kind: InequalityKind, p: f64) -> Result<()> {
    if !(p.is_finite() && p >= 1.0) {
        return Err(Error::Invalid(format!("{kind} needs p >= 1, got {p}")));
    }
    if kind == InequalityKind::KatoNsa && p <= 1.0 {
        return Err(Error::Invalid("kato-nsa needs p > 1".into()));
    }
    Ok(())
}

/// The weight one eigenvalue `z` contributes to the left-hand side of `spec`.
pub fn eigenvalue_weight(z: Complex64, set: &FiniteGapSet, spec: &InequalitySpec) -> Result<f64> {
    spec.check_set(set)?;
    let d = set.dist(z);
    if d == 0.0 {
        return Err(Error::Domain(format!("eigenvalue {z} lies on E")));
    }
    let p = spec.p;
    let eps = spec.eps;
    let w = match spec.kind {
        InequalityKind::LtSa => pow0(d, p - 0.5),
        InequalityKind::KatoSa | InequalityKind::KatoNsa => pow0(d, p),
        InequalityKind::UltimateSa => pow0(d, p - 0.5) * (1.0 + z.norm()).sqrt(),
        InequalityKind::Lt0Nsa => pow0(d, p + eps) / (z * z - 4.0).norm().sqrt(),
        InequalityKind::LtNsa => {
            pow0(d, p + eps) * pow0(1.0 + z.norm(), 0.5 * (1.0 - 3.0 * eps))
                / set.dist_to_edges(z).sqrt()
        }
    };
    Ok(w)
}
