//! Periodic two-sided Jacobi matrices: discriminant, band spectrum, Floquet
//! solutions and the Green's function `G(n, m; z) = ⟨δ_n, (J' - z)^{-1} δ_m⟩`.
//!
//! Conventions: `(J'u)_n = a_{n-1} u_{n-1} + b_n u_n + a_n u_{n+1}` with
//! `a_{n+q} = a_n`, `b_{n+q} = b_n`. The transfer matrix
//! `T_n(z) = [[(z - b_n)/a_n, -a_{n-1}/a_n], [1, 0]]` maps `(u_n, u_{n-1})` to
//! `(u_{n+1}, u_n)`, the monodromy is `T_q ⋯ T_1` and `Δ(z)` is its trace.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finite_gap_set::FiniteGapSet;
use crate::poly::{bisect, Poly};
use crate::quadrature::{chebyshev_integral, QuadratureConfig};

type C = Complex64;
pub type Mat2 = [[C; 2]; 2];

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "RawPeriodic", into = "RawPeriodic")]
pub struct PeriodicJacobi {
    a: Vec<f64>,
    b: Vec<f64>,
    #[serde(skip)]
    cache: Cache,
}

#[derive(Debug, Clone, Default)]
struct Cache {
    discriminant: OnceLock<Poly>,
    spectrum: OnceLock<Result<FiniteGapSet>>,
}

#[derive(Serialize, Deserialize)]
struct RawPeriodic {
    period: usize,
    a: Vec<f64>,
    b: Vec<f64>,
}

impl TryFrom<RawPeriodic> for PeriodicJacobi {
    type Error = Error;

    fn try_from(raw: RawPeriodic) -> Result<Self> {
        if raw.a.len() != raw.period || raw.b.len() != raw.period {
            return Err(Error::Invalid(format!(
                "period {} but {} a-values and {} b-values",
                raw.period,
                raw.a.len(),
                raw.b.len()
            )));
        }
        PeriodicJacobi::new(raw.a, raw.b)
    }
}

impl From<PeriodicJacobi> for RawPeriodic {
    fn from(j: PeriodicJacobi) -> Self {
        RawPeriodic {
            period: j.a.len(),
            a: j.a,
            b: j.b,
        }
    }
}

impl PartialEq for PeriodicJacobi {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b
    }
}

/// Monodromy data at one spectral parameter.
#[derive(Debug, Clone, Copy)]
pub struct FloquetData {
    pub monodromy: Mat2,
    pub discriminant: C,
    /// `(ρ₊, ρ₋)` with `ρ₊ρ₋ = 1` and `|ρ₊| ≤ 1 ≤ |ρ₋|`.
    pub multipliers: (C, C),
    /// Seeds `(u_1, u_0)` of the Floquet solutions for `ρ₊` and `ρ₋`.
    pub seeds: ([C; 2], [C; 2]),
}

impl PeriodicJacobi {
    pub fn new(a: Vec<f64>, b: Vec<f64>) -> Result<Self> {
        if a.is_empty() || a.len() != b.len() {
            return Err(Error::Invalid(format!(
                "need equally many a- and b-values (got {} and {})",
                a.len(),
                b.len()
            )));
        }
        if let Some(x) = a.iter().find(|x| !(x.is_finite() && **x > 0.0)) {
            return Err(Error::Invalid(format!("off-diagonal a_n = {x} must be positive")));
        }
        if let Some(x) = b.iter().find(|x| !x.is_finite()) {
            return Err(Error::Invalid(format!("diagonal b_n = {x} is not finite")));
        }
        Ok(PeriodicJacobi {
            a,
            b,
            cache: Cache::default(),
        })
    }

    /// `a ≡ 1`, `b ≡ 0`.
    pub fn free() -> Self {
        PeriodicJacobi::new(vec![1.0], vec![0.0]).expect("free matrix is valid")
    }

    pub fn period(&self) -> usize {
        self.a.len()
    }

    pub fn a_coeffs(&self) -> &[f64] {
        &self.a
    }

    pub fn b_coeffs(&self) -> &[f64] {
        &self.b
    }

    pub fn a_at(&self, n: i64) -> f64 {
        self.a[n.rem_euclid(self.a.len() as i64) as usize]
    }

    pub fn b_at(&self, n: i64) -> f64 {
        self.b[n.rem_euclid(self.b.len() as i64) as usize]
    }

    pub fn transfer(&self, n: i64, z: C) -> Mat2 {
        let an = self.a_at(n);
        [
            [(z - self.b_at(n)) / an, C::new(-self.a_at(n - 1) / an, 0.0)],
            [C::new(1.0, 0.0), C::new(0.0, 0.0)],
        ]
    }

    /// `T_q(z) ⋯ T_1(z)`.
    pub fn monodromy(&self, z: C) -> Mat2 {
        let mut m = [[C::new(1.0, 0.0), C::new(0.0, 0.0)], [C::new(0.0, 0.0), C::new(1.0, 0.0)]];
        for n in 1..=self.period() as i64 {
            m = mat_mul(&self.transfer(n, z), &m);
        }
        m
    }

    pub fn discriminant(&self, z: C) -> C {
        let m = self.monodromy(z);
        m[0][0] + m[1][1]
    }

    /// `Δ(x)` for real `x` in real arithmetic.
    pub fn discriminant_real(&self, x: f64) -> f64 {
        let (mut m00, mut m01, mut m10, mut m11) = (1.0, 0.0, 0.0, 1.0);
        for n in 1..=self.period() as i64 {
            let an = self.a_at(n);
            let t00 = (x - self.b_at(n)) / an;
            let t01 = -self.a_at(n - 1) / an;
            let (n00, n01) = (t00 * m00 + t01 * m10, t00 * m01 + t01 * m11);
            m10 = m00;
            m11 = m01;
            m00 = n00;
            m01 = n01;
        }
        m00 + m11
    }

    /// `Δ` as a real polynomial of degree `q`.
    pub fn discriminant_poly(&self) -> &Poly {
        self.cache.discriminant.get_or_init(|| {
            let one = Poly::constant(1.0);
            let zero = Poly::constant(0.0);
            let mut m = [[one.clone(), zero.clone()], [zero, one]];
            for n in 1..=self.period() as i64 {
                let an = self.a_at(n);
                let t00 = Poly::linear(-self.b_at(n) / an, 1.0 / an);
                let t01 = -self.a_at(n - 1) / an;
                let n00 = &(&t00 * &m[0][0]) + &m[1][0].scale(t01);
                let n01 = &(&t00 * &m[0][1]) + &m[1][1].scale(t01);
                m = [[n00, n01], [m[0][0].clone(), m[0][1].clone()]];
            }
            &m[0][0] + &m[1][1]
        })
    }

    /// `E = Δ^{-1}([-2, 2])`: the critical points of `Δ` split the real line
    /// into monotone pieces, each holding exactly one band whose endpoints
    /// are found by bisection on `Δ = ±2`. A critical value with `|Δ| ≤ 2` is
    /// a closed gap and reported as a degeneracy.
    pub fn spectrum(&self) -> Result<FiniteGapSet> {
        self.cache
            .spectrum
            .get_or_init(|| self.compute_spectrum())
            .clone()
    }

    fn compute_spectrum(&self) -> Result<FiniteGapSet> {
        let crit = self.discriminant_poly().derivative().real_roots(0.0);
        for &c in &crit {
            let d = self.discriminant_real(c);
            if d.abs() <= 2.0 + 1e-10 {
                return Err(Error::Degenerate(format!(
                    "closed gap at x = {c} (Δ = {d})"
                )));
            }
        }
        let amax = self.a.iter().copied().fold(0.0, f64::max);
        let bmax = self.b.iter().map(|b| b.abs()).fold(0.0, f64::max);
        let bound = bmax + 2.0 * amax + 1.0;
        let mut knots = vec![-bound];
        knots.extend(crit);
        knots.push(bound);
        let mut bands = Vec::with_capacity(knots.len() - 1);
        for w in knots.windows(2) {
            let (l, r) = (w[0], w[1]);
            let edge = |target: f64| -> Result<f64> {
                let g = |x: f64| self.discriminant_real(x) - target;
                if g(l).signum() == g(r).signum() {
                    return Err(Error::Numeric(format!(
                        "no crossing of Δ = {target} on [{l}, {r}]"
                    )));
                }
                Ok(bisect(g, l, r, 0.0))
            };
            let x1 = edge(2.0)?;
            let x2 = edge(-2.0)?;
            bands.push((x1.min(x2), x1.max(x2)));
        }
        FiniteGapSet::new(bands)
    }

    /// Multipliers and Floquet seeds at `z ∉ E`.
    pub fn floquet(&self, z: C) -> Result<FloquetData> {
        let m = self.monodromy(z);
        let disc = m[0][0] + m[1][1];
        if z.im == 0.0 && disc.re.abs() < 2.0 {
            return Err(Error::Domain(format!("z = {z} lies in the spectrum")));
        }
        let s = (disc * disc - 4.0).sqrt();
        let (r1, r2) = ((disc + s) * 0.5, (disc - s) * 0.5);
        let big = if r1.norm() >= r2.norm() { r1 } else { r2 };
        if (big.norm() - 1.0).abs() <= 1e-14 {
            return Err(Error::Degenerate(format!(
                "|Δ(z)| = 2 at z = {z}: Floquet multipliers collide"
            )));
        }
        let small = big.inv();
        Ok(FloquetData {
            monodromy: m,
            discriminant: disc,
            multipliers: (small, big),
            seeds: (eigenvector(&m, small), eigenvector(&m, big)),
        })
    }

    /// Resolvent kernel at `z ∉ E`.
    pub fn resolvent(&self, z: C) -> Result<Resolvent<'_>> {
        let fl = self.floquet(z)?;
        Ok(Resolvent::from_floquet(self, z, &fl))
    }

    /// Boundary value of the resolvent kernel from the upper half-plane at an
    /// interior band point `t`. On the band `Δ(t) ∈ (-2, 2)` and the
    /// multipliers are `e^{±ik}`; continuity from `Im z > 0` selects
    /// `ρ₊ = (Δ - i·sgn(Δ'(t))·√(4 - Δ²))/2`.
    pub fn boundary_resolvent(&self, t: f64) -> Result<Resolvent<'_>> {
        let disc = self.discriminant_real(t);
        if !(disc.abs() < 2.0) {
            return Err(Error::Domain(format!("t = {t} is not an interior band point")));
        }
        let slope = self.discriminant_poly().derivative().eval(t);
        if slope == 0.0 {
            return Err(Error::Degenerate(format!("Δ'({t}) = 0 inside a band")));
        }
        let root = (4.0 - disc * disc).sqrt();
        let rho_plus = C::new(0.5 * disc, -0.5 * slope.signum() * root);
        let z = C::new(t, 0.0);
        let m = self.monodromy(z);
        let fl = FloquetData {
            monodromy: m,
            discriminant: C::new(disc, 0.0),
            multipliers: (rho_plus, rho_plus.conj()),
            seeds: (eigenvector(&m, rho_plus), eigenvector(&m, rho_plus.conj())),
        };
        Ok(Resolvent::from_floquet(self, z, &fl))
    }

    /// `⟨δ_n, (J' - z)^{-1} δ_m⟩`.
    pub fn green(&self, n: i64, m: i64, z: C) -> Result<C> {
        Ok(self.resolvent(z)?.green(n, m))
    }

    /// `⟨δ_n, |J' - z|^{-1} δ_n⟩ = ∫ dρ_n(t)/|t - z|`, with
    /// `dρ_n = (1/π) Im G(n, n; t + i0) dt` integrated band by band.
    pub fn abs_resolvent_moment(&self, n: i64, z: C, cfg: &QuadratureConfig) -> Result<f64> {
        let set = self.spectrum()?;
        if set.dist(z) == 0.0 {
            return Err(Error::Domain(format!("z = {z} lies in the spectrum")));
        }
        self.diagonal_measure_integral(n, &set, cfg, |t| 1.0 / (z - t).norm())
    }

    /// Total mass `(1/π)∫_E Im G(n, n; t + i0) dt` of the diagonal measure.
    pub fn diagonal_mass(&self, n: i64, cfg: &QuadratureConfig) -> Result<f64> {
        let set = self.spectrum()?;
        self.diagonal_measure_integral(n, &set, cfg, |_| 1.0)
    }

    fn diagonal_measure_integral<F: Fn(f64) -> f64>(
        &self,
        n: i64,
        set: &FiniteGapSet,
        cfg: &QuadratureConfig,
        f: F,
    ) -> Result<f64> {
        let mut total = 0.0;
        for band in set.bands() {
            total += chebyshev_integral(band, cfg, |t| {
                let g = self.boundary_resolvent(t)?.green(n, n);
                let root = ((t - band.lo) * (band.hi - t)).sqrt();
                Ok(g.im / PI * root * f(t))
            })?;
        }
        Ok(total)
    }

    /// `sup_n ∫ dρ_n(t)/|t - z|`, exact over one period by periodicity.
    pub fn sup_abs_resolvent_moment(&self, z: C, cfg: &QuadratureConfig) -> Result<f64> {
        let mut best: f64 = 0.0;
        for n in 0..self.period() as i64 {
            best = best.max(self.abs_resolvent_moment(n, z, cfg)?);
        }
        Ok(best)
    }

    /// Truncation to the sites `-half ..= half`.
    pub fn truncation(&self, half: usize) -> Truncation {
        let first = -(half as i64);
        let dim = 2 * half + 1;
        Truncation {
            first,
            diag: (0..dim).map(|k| self.b_at(first + k as i64)).collect(),
            off: (0..dim - 1).map(|k| self.a_at(first + k as i64)).collect(),
        }
    }
}

/// A finite section of `J'` on consecutive sites starting at `first`.
#[derive(Debug, Clone)]
pub struct Truncation {
    pub first: i64,
    pub diag: Vec<f64>,
    /// `off[k]` couples sites `first + k` and `first + k + 1`.
    pub off: Vec<f64>,
}

/// `G(n, m; z)` built from the two decaying Floquet solutions.
#[derive(Debug, Clone)]
pub struct Resolvent<'a> {
    jac: &'a PeriodicJacobi,
    z: C,
    rho_plus: C,
    base_plus: Vec<C>,
    base_minus: Vec<C>,
    wronskian: C,
}

impl<'a> Resolvent<'a> {
    fn from_floquet(jac: &'a PeriodicJacobi, z: C, fl: &FloquetData) -> Self {
        let base_plus = base_values(jac, z, fl.seeds.0);
        let base_minus = base_values(jac, z, fl.seeds.1);
        let mut r = Resolvent {
            jac,
            z,
            rho_plus: fl.multipliers.0,
            base_plus,
            base_minus,
            wronskian: C::new(0.0, 0.0),
        };
        r.wronskian = (r.u_plus(1) * r.u_minus(0) - r.u_plus(0) * r.u_minus(1)) * jac.a_at(0);
        r
    }

    pub fn z(&self) -> C {
        self.z
    }

    /// Solution decaying at `+∞`.
    pub fn u_plus(&self, n: i64) -> C {
        let q = self.jac.period() as i64;
        let (k, r) = (n.div_euclid(q), n.rem_euclid(q));
        self.base_plus[r as usize] * self.rho_plus.powi(k as i32)
    }

    /// Solution decaying at `-∞`.
    pub fn u_minus(&self, n: i64) -> C {
        let q = self.jac.period() as i64;
        let (k, r) = (n.div_euclid(q), n.rem_euclid(q));
        self.base_minus[r as usize] * self.rho_plus.powi(-(k as i32))
    }

    pub fn wronskian(&self) -> C {
        self.wronskian
    }

    pub fn green(&self, n: i64, m: i64) -> C {
        let (lo, hi) = if n <= m { (n, m) } else { (m, n) };
        self.u_plus(hi) * self.u_minus(lo) / self.wronskian
    }
}

/// `u_0, …, u_{q-1}` from the seed `(u_1, u_0)`.
fn base_values(jac: &PeriodicJacobi, z: C, seed: [C; 2]) -> Vec<C> {
    let q = jac.period();
    let mut u = Vec::with_capacity(q.max(2));
    u.push(seed[1]);
    u.push(seed[0]);
    for n in 1..q.saturating_sub(1) as i64 {
        let nu = n as usize;
        let next = ((z - jac.b_at(n)) * u[nu] - u[nu - 1] * jac.a_at(n - 1)) / jac.a_at(n);
        u.push(next);
    }
    u.truncate(q);
    u
}

fn mat_mul(x: &Mat2, y: &Mat2) -> Mat2 {
    [
        [
            x[0][0] * y[0][0] + x[0][1] * y[1][0],
            x[0][0] * y[0][1] + x[0][1] * y[1][1],
        ],
        [
            x[1][0] * y[0][0] + x[1][1] * y[1][0],
            x[1][0] * y[0][1] + x[1][1] * y[1][1],
        ],
    ]
}

/// Unit eigenvector of `m` for eigenvalue `rho`.
fn eigenvector(m: &Mat2, rho: C) -> [C; 2] {
    let v1 = [m[0][1], rho - m[0][0]];
    let v2 = [rho - m[1][1], m[1][0]];
    let n1 = v1[0].norm_sqr() + v1[1].norm_sqr();
    let n2 = v2[0].norm_sqr() + v2[1].norm_sqr();
    let (v, n) = if n1 >= n2 { (v1, n1) } else { (v2, n2) };
    let s = n.sqrt();
    [v[0] / s, v[1] / s]
}
