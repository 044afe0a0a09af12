//! Integrals over a band with inverse square-root endpoint behaviour.
//!
//! With `t = mid + half·cos θ` one has `dt / √((t-lo)(hi-t)) = dθ`, so
//! `∫_lo^hi g(t) dt/√((t-lo)(hi-t)) = ∫_0^π g(t(θ)) dθ`. The θ-integrand is
//! smooth and even-periodic, so the midpoint rule in θ (Gauss–Chebyshev of
//! the first kind) converges geometrically for analytic `g`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finite_gap_set::Band;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    pub rel_tol: f64,
    pub min_nodes: usize,
    pub max_nodes: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            rel_tol: 1e-10,
            min_nodes: 32,
            max_nodes: 1 << 20,
        }
    }
}

impl QuadratureConfig {
    pub fn with_rel_tol(rel_tol: f64) -> Self {
        QuadratureConfig {
            rel_tol,
            ..Self::default()
        }
    }
}

/// Gauss–Chebyshev rule with `n` nodes for `∫ g(t) dt/√((t-lo)(hi-t))`.
pub fn chebyshev_rule<G: FnMut(f64) -> f64>(band: &Band, n: usize, mut g: G) -> f64 {
    let (mid, half) = (band.mid(), band.half_width());
    let h = std::f64::consts::PI / n as f64;
    let mut sum = 0.0;
    for k in 0..n {
        let theta = (k as f64 + 0.5) * h;
        sum += g(mid + half * theta.cos());
    }
    sum * h
}

/// Same rule, doubling the node count until two successive values agree to
/// `rel_tol`. Fails with both estimates once `max_nodes` is exceeded.
pub fn chebyshev_integral<G>(band: &Band, cfg: &QuadratureConfig, mut g: G) -> Result<f64>
where
    G: FnMut(f64) -> Result<f64>,
{
    let mut n = cfg.min_nodes.max(2);
    let mut previous = try_chebyshev_rule(band, n, &mut g)?;
    let mut older = f64::NAN;
    loop {
        n *= 2;
        if n > cfg.max_nodes {
            return Err(Error::Quadrature {
                previous: older,
                last: previous,
            });
        }
        let current = try_chebyshev_rule(band, n, &mut g)?;
        if !current.is_finite() {
            return Err(Error::Numeric(format!(
                "non-finite quadrature value on [{}, {}]",
                band.lo, band.hi
            )));
        }
        if (current - previous).abs() <= cfg.rel_tol * current.abs().max(f64::MIN_POSITIVE) {
            return Ok(current);
        }
        older = previous;
        previous = current;
    }
}

fn try_chebyshev_rule<G>(band: &Band, n: usize, g: &mut G) -> Result<f64>
where
    G: FnMut(f64) -> Result<f64>,
{
    let (mid, half) = (band.mid(), band.half_width());
    let h = std::f64::consts::PI / n as f64;
    let mut sum = 0.0;
    for k in 0..n {
        let theta = (k as f64 + 0.5) * h;
        sum += g(mid + half * theta.cos())?;
    }
    Ok(sum * h)
}
