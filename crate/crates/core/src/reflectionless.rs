//! Reflectionless probability measures on a finite gap set.
//!
//! Such a measure is fixed by one parameter `γ_j` per gap; its m-function is
//!
//! ```text
//! m(z) = -1/√((z-β_N)(z-α_1)) · Π_j (z-γ_j)/√((z-β_j)(z-α_{j+1}))
//! ```
//!
//! and it is absolutely continuous with an inverse square-root density at
//! every band edge not cancelled by a `γ_j`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finite_gap_set::{pow0, Band, FiniteGapSet};
use crate::quadrature::{chebyshev_integral, QuadratureConfig};

type C = Complex64;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawMeasure", into = "RawMeasure")]
pub struct ReflectionlessMeasure {
    set: FiniteGapSet,
    gammas: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct RawMeasure {
    bands: Vec<[f64; 2]>,
    gammas: Vec<f64>,
}

impl TryFrom<RawMeasure> for ReflectionlessMeasure {
    type Error = Error;

    fn try_from(raw: RawMeasure) -> Result<Self> {
        let set = FiniteGapSet::new(raw.bands.iter().map(|b| (b[0], b[1])).collect())?;
        ReflectionlessMeasure::new(set, raw.gammas)
    }
}

impl From<ReflectionlessMeasure> for RawMeasure {
    fn from(m: ReflectionlessMeasure) -> Self {
        RawMeasure {
            bands: m.set.bands().iter().map(|b| [b.lo, b.hi]).collect(),
            gammas: m.gammas,
        }
    }
}

/// Right-hand side envelope used to normalise the moment integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MomentEnvelope {
    /// `p > 1`: `1 / (dist^{p-1} dist(z,∂E)^{1/2} (1+|z|)^{1/2})`.
    Power { p: f64 },
    /// `p = 1`, `ε > 0`: `1 / (dist^ε dist(z,∂E)^{1/2} (1+|z|)^{1/2-ε})`.
    FirstMoment { eps: f64 },
}

impl MomentEnvelope {
    pub fn power(p: f64) -> Result<Self> {
        if !(p.is_finite() && p > 1.0) {
            return Err(Error::Invalid(format!("power envelope needs p > 1, got {p}")));
        }
        Ok(MomentEnvelope::Power { p })
    }

    pub fn first_moment(eps: f64) -> Result<Self> {
        if !(eps.is_finite() && eps > 0.0) {
            return Err(Error::Invalid(format!("first-moment envelope needs eps > 0, got {eps}")));
        }
        Ok(MomentEnvelope::FirstMoment { eps })
    }

    /// Exponent of `|t - z|` in the integrand.
    pub fn p(&self) -> f64 {
        match *self {
            MomentEnvelope::Power { p } => p,
            MomentEnvelope::FirstMoment { .. } => 1.0,
        }
    }

    /// Reciprocal of the envelope at `z`.
    pub fn inverse_at(&self, set: &FiniteGapSet, z: C) -> f64 {
        let d = set.dist(z);
        let de = set.dist_to_edges(z).sqrt();
        let modulus = 1.0 + z.norm();
        match *self {
            MomentEnvelope::Power { p } => pow0(d, p - 1.0) * de * modulus.sqrt(),
            MomentEnvelope::FirstMoment { eps } => pow0(d, eps) * de * modulus.powf(0.5 - eps),
        }
    }
}

impl ReflectionlessMeasure {
    /// One `γ_j ∈ [β_j, α_{j+1}]` per gap; endpoints are allowed.
    pub fn new(set: FiniteGapSet, gammas: Vec<f64>) -> Result<Self> {
        let gaps = set.gaps();
        if gammas.len() != gaps.len() {
            return Err(Error::Invalid(format!(
                "{} gaps but {} gamma values",
                gaps.len(),
                gammas.len()
            )));
        }
        for (j, (&g, &(lo, hi))) in gammas.iter().zip(&gaps).enumerate() {
            if !(lo <= g && g <= hi) {
                return Err(Error::Invalid(format!(
                    "gamma_{} = {g} is not in the gap [{lo}, {hi}]",
                    j + 1
                )));
            }
        }
        Ok(ReflectionlessMeasure { set, gammas })
    }

    /// `γ_j` at the gap midpoints.
    pub fn centered(set: FiniteGapSet) -> Self {
        let gammas = set.gaps().iter().map(|(l, h)| 0.5 * (l + h)).collect();
        ReflectionlessMeasure { set, gammas }
    }

    /// The equilibrium-free arcsine law of a single band.
    pub fn single_band(lo: f64, hi: f64) -> Result<Self> {
        Self::new(FiniteGapSet::interval(lo, hi)?, Vec::new())
    }

    pub fn set(&self) -> &FiniteGapSet {
        &self.set
    }

    pub fn gammas(&self) -> &[f64] {
        &self.gammas
    }

    /// `m(z)`. Each `√(z - e)` is the principal branch; the product over
    /// all `2N` edges then has its cut exactly on `E` and grows like `z^N`,
    /// which gives `m(z) ~ -1/z` and `Im m · Im z > 0`.
    pub fn m_function(&self, z: C) -> Result<C> {
        if self.set.dist(z) == 0.0 {
            return Err(Error::Domain(format!("m(z) is not defined on E (z = {z})")));
        }
        let log_root: C = self.set.edges().iter().map(|&e| (z - e).ln()).sum::<C>() * 0.5;
        let num: C = self.gammas.iter().map(|&g| z - g).product();
        Ok(-num * (-log_root).exp())
    }

    /// Density `w(t)` at an interior band point.
    pub fn density(&self, t: f64) -> Result<f64> {
        let k = self.set.band_of_interior(t).ok_or_else(|| {
            Error::Domain(format!("density is only defined inside the bands (t = {t})"))
        })?;
        let b = &self.set.bands()[k];
        Ok(self.regular_part(k, t) / (PI * ((t - b.lo) * (b.hi - t)).sqrt()))
    }

    /// `π w(t) √(|t-α_k||t-β_k|)` on band `k`: the product of the factors
    /// belonging to the other bands, which never exceeds one on band `k`.
    pub fn regular_part(&self, k: usize, t: f64) -> f64 {
        let mut r = 1.0;
        for (j, b) in self.set.bands().iter().enumerate() {
            if j != k {
                r /= ((t - b.lo).abs() * (t - b.hi).abs()).sqrt();
            }
        }
        for g in &self.gammas {
            r *= (t - g).abs();
        }
        r
    }

    /// `∫_E dρ(t) / |t - z|^p`, band by band with the Chebyshev substitution.
    pub fn moment_integral(&self, z: C, p: f64, cfg: &QuadratureConfig) -> Result<f64> {
        if self.set.dist(z) == 0.0 {
            return Err(Error::Domain(format!("z = {z} lies on E")));
        }
        if !(p >= 1.0) {
            return Err(Error::Invalid(format!("moment exponent must be >= 1, got {p}")));
        }
        let mut total = 0.0;
        for (k, band) in self.set.bands().iter().enumerate() {
            total += chebyshev_integral(band, cfg, |t| {
                Ok(self.regular_part(k, t) * (z - t).norm().powf(-p))
            })? / PI;
        }
        Ok(total)
    }

    /// Integral of `f` against the measure (Stieltjes-type transforms).
    pub fn integrate_complex<F: Fn(f64) -> C>(&self, f: F, cfg: &QuadratureConfig) -> Result<C> {
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, band) in self.set.bands().iter().enumerate() {
            re += chebyshev_integral(band, cfg, |t| Ok(self.regular_part(k, t) * f(t).re))? / PI;
            im += chebyshev_integral(band, cfg, |t| Ok(self.regular_part(k, t) * f(t).im))? / PI;
        }
        Ok(C::new(re, im))
    }

    /// Moment integral divided by the envelope; bounded in `z` with a bound
    /// that does not depend on the `γ_j`.
    pub fn envelope_ratio(&self, z: C, env: MomentEnvelope, cfg: &QuadratureConfig) -> Result<f64> {
        let integral = self.moment_integral(z, env.p(), cfg)?;
        Ok(integral * env.inverse_at(&self.set, z))
    }
}

/// `∫_band |t-z|^{-p} dt/√(|t-α||t-β|)`.
pub fn band_integral(band: &Band, z: C, p: f64, cfg: &QuadratureConfig) -> Result<f64> {
    if band.dist(z) == 0.0 {
        return Err(Error::Domain(format!("z = {z} lies on the band")));
    }
    chebyshev_integral(band, cfg, |t| Ok((z - t).norm().powf(-p)))
}

/// `band_integral · dist(z, band)^{p-1} · √(|z-α||z-β|)`, bounded for `p > 1`.
pub fn band_integral_ratio(band: &Band, z: C, p: f64, cfg: &QuadratureConfig) -> Result<f64> {
    let v = band_integral(band, z, p, cfg)?;
    Ok(v * pow0(band.dist(z), p - 1.0) * ((z - band.lo).norm() * (z - band.hi).norm()).sqrt())
}
