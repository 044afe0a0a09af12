//! Weighted zero sums of analytic functions with controlled growth, on the
//! unit disk and on `Ω = Ĉ \ E`, and finite Blaschke products as test
//! functions with exactly known zeros.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::Num;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finite_gap_set::{pow0, FiniteGapSet};

type C = Complex64;

/// Exponents `(p', q', r')` of the zero sum on `Ω`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExponentTriple<T> {
    pub p: T,
    pub q: T,
    pub r: T,
}

fn positive_part<T: Num + PartialOrd>(x: T) -> T {
    if x > T::zero() {
        x
    } else {
        T::zero()
    }
}

/// `p' = p+1+ε`, `q' = ½[(p+2q-1+ε)₊ - p']`, `r' = (p+q+r-ε)₊ - p' - q'`.
///
/// Generic so the arithmetic can be checked exactly over the rationals.
pub fn exponent_triple<T>(p: T, q: T, r: T, eps: T) -> Result<ExponentTriple<T>>
where
    T: Num + PartialOrd + Clone,
{
    let zero = T::zero();
    if p < zero || q < zero || r < zero || eps <= zero {
        return Err(Error::Invalid(
            "exponent triple needs p, q, r >= 0 and eps > 0".into(),
        ));
    }
    let one = T::one();
    let two = one.clone() + one.clone();
    let pp = p.clone() + one.clone() + eps.clone();
    let qp = (positive_part(p.clone() + two * q.clone() - one + eps.clone()) - pp.clone()) / (T::one() + T::one());
    let rp = positive_part(p + q + r - eps) - pp.clone() - qp.clone();
    Ok(ExponentTriple { p: pp, q: qp, r: rp })
}

/// Growth data `log|h(z)| ≤ K|z|^γ / ((1-|z|)^α dist(z,S)^β)` on the disk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthEnvelope {
    pub k: f64,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub eps: f64,
    /// Unimodular points where growth may concentrate.
    pub s: Vec<C>,
}

impl GrowthEnvelope {
    pub fn new(k: f64, alpha: f64, beta: f64, gamma: f64, eps: f64, s: Vec<C>) -> Result<Self> {
        let ok = [k, alpha, beta, gamma].iter().all(|v| v.is_finite() && *v >= 0.0);
        if !ok || !(eps.is_finite() && eps > 0.0) {
            return Err(Error::Invalid("growth envelope needs K, α, β, γ >= 0 and ε > 0".into()));
        }
        if beta > 0.0 && s.is_empty() {
            return Err(Error::Invalid("β > 0 needs at least one point in S".into()));
        }
        if s.iter().any(|z| (z.norm() - 1.0).abs() > 1e-12) {
            return Err(Error::Invalid("points of S must lie on the unit circle".into()));
        }
        Ok(GrowthEnvelope {
            k,
            alpha,
            beta,
            gamma,
            eps,
            s,
        })
    }

    fn dist_s(&self, z: C) -> f64 {
        self.s.iter().map(|s| (z - s).norm()).fold(f64::INFINITY, f64::min)
    }

    /// Left side weight of one zero.
    pub fn zero_weight(&self, z: C) -> Result<f64> {
        let r = z.norm();
        if !(r < 1.0) {
            return Err(Error::Domain(format!("zero {z} is not in the open unit disk")));
        }
        let e_dist = positive_part(self.beta - 1.0 + self.eps);
        let e_abs = positive_part(self.gamma - self.eps);
        if r == 0.0 && e_abs > 0.0 {
            return Err(Error::Domain("zero at the origin with (γ-ε)₊ > 0".into()));
        }
        let d = if e_dist > 0.0 {
            if self.s.is_empty() {
                return Err(Error::Invalid("(β-1+ε)₊ > 0 needs a nonempty S".into()));
            }
            self.dist_s(z).powf(e_dist)
        } else {
            1.0
        };
        Ok((1.0 - r).powf(self.alpha + 1.0 + self.eps) * d / pow0(r, e_abs))
    }

    /// `log|h(z)| (1-|z|)^α dist(z,S)^β / |z|^γ`, whose sup is the best `K`.
    pub fn normalized_growth(&self, log_abs: f64, z: C) -> f64 {
        let r = z.norm();
        let d = if self.beta > 0.0 { self.dist_s(z).powf(self.beta) } else { 1.0 };
        log_abs * pow0(1.0 - r, self.alpha) * d / pow0(r, self.gamma)
    }
}

/// `Σ (1-|z|)^{α+1+ε} dist(z,S)^{(β-1+ε)₊} / |z|^{(γ-ε)₊}` over the zeros,
/// listed with multiplicity.
pub fn disk_zero_sum(zeros: &[C], env: &GrowthEnvelope) -> Result<f64> {
    zeros.iter().map(|&z| env.zero_weight(z)).sum()
}

/// `dist(z,E)^{p'} dist(z,∂E)^{q'} (1+|z|)^{r'}`.
pub fn omega_summand(z: C, set: &FiniteGapSet, t: &ExponentTriple<f64>) -> Result<f64> {
    let d = set.dist(z);
    if d == 0.0 {
        return Err(Error::Domain(format!("zero {z} lies on E")));
    }
    let de = set.dist_to_edges(z);
    Ok(pow0(d, t.p) * pow0(de, t.q) * (1.0 + z.norm()).powf(t.r))
}

/// Zero sum on `Ω` with the exponents of [`exponent_triple`].
pub fn omega_zero_sum(zeros: &[C], set: &FiniteGapSet, p: f64, q: f64, r: f64, eps: f64) -> Result<f64> {
    let t = exponent_triple(p, q, r, eps)?;
    zeros.iter().map(|&z| omega_summand(z, set, &t)).sum()
}

/// `B(z) = Π (z - a)/(1 - ā z)`, with `h = B/B(0)` normalised to `|h(0)| = 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlaschkeProduct {
    zeros: Vec<C>,
}

impl BlaschkeProduct {
    pub fn new(zeros: Vec<C>) -> Result<Self> {
        if let Some(a) = zeros.iter().find(|a| !(a.norm() < 1.0)) {
            return Err(Error::Invalid(format!("Blaschke zero {a} is not in the open disk")));
        }
        if zeros.iter().any(|a| a.norm() == 0.0) {
            return Err(Error::Invalid("a zero at the origin cannot be normalised to |h(0)| = 1".into()));
        }
        Ok(BlaschkeProduct { zeros })
    }

    pub fn zeros(&self) -> &[C] {
        &self.zeros
    }

    /// `-log|B(0)| = Σ log(1/|a|)`, which is also `sup log|h|`.
    pub fn log_normalizer(&self) -> f64 {
        -self.zeros.iter().map(|a| a.norm().ln()).sum::<f64>()
    }

    /// `log|h(z)|`.
    pub fn log_abs_normalized(&self, z: C) -> f64 {
        let log_b: f64 = self
            .zeros
            .iter()
            .map(|a| ((z - a) / (C::new(1.0, 0.0) - a.conj() * z)).norm().ln())
            .sum();
        log_b + self.log_normalizer()
    }

    /// Sup of the normalised growth over a polar grid with radii
    /// `r_max·j/n_r` and `n_theta` angles.
    pub fn estimate_k(&self, env: &GrowthEnvelope, n_r: usize, n_theta: usize, r_max: f64) -> Result<f64> {
        if n_r == 0 || n_theta == 0 || !(0.0 < r_max && r_max < 1.0) {
            return Err(Error::Invalid("grid needs n_r, n_theta >= 1 and 0 < r_max < 1".into()));
        }
        let mut best = f64::NEG_INFINITY;
        for i in 1..=n_r {
            let r = r_max * i as f64 / n_r as f64;
            for j in 0..n_theta {
                let z = C::from_polar(r, 2.0 * PI * (j as f64 + 0.5) / n_theta as f64);
                let g = env.normalized_growth(self.log_abs_normalized(z), z);
                if g.is_finite() {
                    best = best.max(g);
                }
            }
        }
        Ok(best)
    }
}
