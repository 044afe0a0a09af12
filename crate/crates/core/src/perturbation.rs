//! Finitely supported complex perturbations `δJ` and the `D^{1/2} B D^{1/2}`
//! factorization used by the perturbation determinant.
//!
//! Layout: `δJ_{n,n-1} = δa_{n-1}`, `δJ_{n,n} = δb_n`, `δJ_{n,n+1} = δc_n`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finite_gap_set::pow0;
use crate::linalg::{schatten_power, CMatrix};
use crate::periodic_jacobi::PeriodicJacobi;
use crate::quadrature::QuadratureConfig;

pub use crate::linalg::schatten_norm;

type C = Complex64;

const ZERO: C = C::new(0.0, 0.0);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPerturbation", into = "RawPerturbation")]
pub struct Perturbation {
    n0: i64,
    da: Vec<C>,
    db: Vec<C>,
    dc: Vec<C>,
}

#[derive(Serialize, Deserialize)]
struct RawPerturbation {
    n0: i64,
    #[serde(default)]
    da: Vec<[f64; 2]>,
    #[serde(default)]
    db: Vec<[f64; 2]>,
    #[serde(default)]
    dc: Vec<[f64; 2]>,
}

impl TryFrom<RawPerturbation> for Perturbation {
    type Error = Error;

    fn try_from(raw: RawPerturbation) -> Result<Self> {
        let conv = |v: Vec<[f64; 2]>| v.into_iter().map(|[re, im]| C::new(re, im)).collect();
        Perturbation::new(raw.n0, conv(raw.da), conv(raw.db), conv(raw.dc))
    }
}

impl From<Perturbation> for RawPerturbation {
    fn from(p: Perturbation) -> Self {
        let conv = |v: Vec<C>| v.into_iter().map(|c| [c.re, c.im]).collect();
        RawPerturbation {
            n0: p.n0,
            da: conv(p.da),
            db: conv(p.db),
            dc: conv(p.dc),
        }
    }
}

impl Perturbation {
    /// Entries `da[k]`, `db[k]`, `dc[k]` sit at index `n0 + k`; the shorter
    /// lists are padded with zeros to a common window width.
    pub fn new(n0: i64, mut da: Vec<C>, mut db: Vec<C>, mut dc: Vec<C>) -> Result<Self> {
        if da.iter().chain(&db).chain(&dc).any(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(Error::Invalid("perturbation entries must be finite".into()));
        }
        let width = da.len().max(db.len()).max(dc.len());
        for v in [&mut da, &mut db, &mut dc] {
            v.resize(width, ZERO);
        }
        Ok(Perturbation { n0, da, db, dc })
    }

    pub fn zero() -> Self {
        Perturbation {
            n0: 0,
            da: Vec::new(),
            db: Vec::new(),
            dc: Vec::new(),
        }
    }

    /// `δb_n = w` and nothing else.
    pub fn single_site(n: i64, w: C) -> Self {
        Perturbation {
            n0: n,
            da: vec![ZERO],
            db: vec![w],
            dc: vec![ZERO],
        }
    }

    pub fn n0(&self) -> i64 {
        self.n0
    }

    pub fn width(&self) -> usize {
        self.db.len()
    }

    /// Index window `[n0, n1]` carrying the coefficients (`None` when empty).
    pub fn window(&self) -> Option<(i64, i64)> {
        (self.width() > 0).then(|| (self.n0, self.n0 + self.width() as i64 - 1))
    }

    fn get(v: &[C], n0: i64, n: i64) -> C {
        let k = n - n0;
        if k < 0 || k >= v.len() as i64 {
            ZERO
        } else {
            v[k as usize]
        }
    }

    pub fn da_at(&self, n: i64) -> C {
        Self::get(&self.da, self.n0, n)
    }

    pub fn db_at(&self, n: i64) -> C {
        Self::get(&self.db, self.n0, n)
    }

    pub fn dc_at(&self, n: i64) -> C {
        Self::get(&self.dc, self.n0, n)
    }

    /// Matrix entry `δJ_{n,m}`.
    pub fn entry(&self, n: i64, m: i64) -> C {
        match m - n {
            -1 => self.da_at(m),
            0 => self.db_at(n),
            1 => self.dc_at(n),
            _ => ZERO,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.da.iter().chain(&self.db).chain(&self.dc).all(|c| *c == ZERO)
    }

    /// Real diagonal and `δa = δc` real.
    pub fn is_selfadjoint(&self) -> bool {
        self.db.iter().all(|c| c.im == 0.0)
            && self.da.iter().zip(&self.dc).all(|(a, c)| a.im == 0.0 && a == c)
    }

    /// `Σ |δa_n|^p + |δb_n|^p + |δc_n|^p`.
    pub fn lp_sum(&self, p: f64) -> f64 {
        self.da
            .iter()
            .chain(&self.db)
            .chain(&self.dc)
            .map(|c| pow0(c.norm(), p))
            .sum()
    }

    /// `Σ |δa_n|^p + |δb_n|^p`, the selfadjoint right-hand side.
    pub fn lp_sum_selfadjoint(&self, p: f64) -> f64 {
        self.da.iter().chain(&self.db).map(|c| pow0(c.norm(), p)).sum()
    }

    pub fn scaled(&self, t: f64) -> Self {
        let s = |v: &[C]| v.iter().map(|c| c * t).collect();
        Perturbation {
            n0: self.n0,
            da: s(&self.da),
            db: s(&self.db),
            dc: s(&self.dc),
        }
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        let s = |v: &[C]| v.iter().map(|c| c.conj()).collect();
        Perturbation {
            n0: self.n0,
            da: s(&self.da),
            db: s(&self.db),
            dc: s(&self.dc),
        }
    }

    /// Sites `n` on which `δJ` has a nonzero row or column (a superset).
    pub fn site_range(&self) -> Option<(i64, i64)> {
        self.window().map(|(lo, hi)| (lo, hi + 1))
    }

    /// `δJ` as a dense matrix on `site_range`.
    pub fn matrix(&self) -> (i64, CMatrix) {
        match self.site_range() {
            None => (0, CMatrix::zeros(0, 0)),
            Some((lo, hi)) => {
                let dim = (hi - lo + 1) as usize;
                let m = CMatrix::from_fn(dim, dim, |i, j| self.entry(lo + i as i64, lo + j as i64));
                (lo, m)
            }
        }
    }

    /// `max(‖δJ‖_{1→1}, ‖δJ‖_{∞→∞})`, an upper bound for the operator norm.
    pub fn norm_bound(&self) -> f64 {
        let Some((lo, hi)) = self.site_range() else {
            return 0.0;
        };
        let mut best: f64 = 0.0;
        for n in lo..=hi {
            let row = self.entry(n, n - 1).norm() + self.entry(n, n).norm() + self.entry(n, n + 1).norm();
            let col = self.entry(n - 1, n).norm() + self.entry(n, n).norm() + self.entry(n + 1, n).norm();
            best = best.max(row).max(col);
        }
        best
    }

    /// Schatten `p`-th power `‖δJ‖_p^p` of the finite matrix.
    pub fn schatten_power(&self, p: f64) -> Result<f64> {
        let (_, m) = self.matrix();
        if m.rows() == 0 {
            return Ok(0.0);
        }
        schatten_power(&m, p)
    }

    /// `D_n = max{|δa_{n-1}|, |δa_n|, |δb_n|, |δc_{n-1}|, |δc_n|}`.
    pub fn d_entry(&self, n: i64) -> f64 {
        [
            self.da_at(n - 1),
            self.da_at(n),
            self.db_at(n),
            self.dc_at(n - 1),
            self.dc_at(n),
        ]
        .iter()
        .map(|c| c.norm())
        .fold(0.0, f64::max)
    }

    /// `δJ = D^{1/2} B D^{1/2}` restricted to the sites where `D > 0`.
    pub fn factor(&self) -> FactoredPerturbation {
        let mut support = Vec::new();
        let mut d = Vec::new();
        if let Some((lo, hi)) = self.site_range() {
            for n in lo..=hi {
                let dn = self.d_entry(n);
                if dn > 0.0 {
                    support.push(n);
                    d.push(dn);
                }
            }
        }
        let k = support.len();
        let b = CMatrix::from_fn(k, k, |i, j| {
            let e = self.entry(support[i], support[j]);
            if e == ZERO {
                ZERO
            } else {
                e / (d[i] * d[j]).sqrt()
            }
        });
        FactoredPerturbation { support, d, b }
    }
}

/// `D` and `B` on the support of `D`.
#[derive(Debug, Clone)]
pub struct FactoredPerturbation {
    pub support: Vec<i64>,
    pub d: Vec<f64>,
    pub b: CMatrix,
}

impl FactoredPerturbation {
    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn diagonal(&self) -> SiteDiagonal {
        SiteDiagonal {
            sites: self.support.clone(),
            values: self.d.clone(),
        }
    }

    /// `D^{1/2} B D^{1/2}` on the support.
    pub fn reconstruct(&self) -> CMatrix {
        let k = self.len();
        CMatrix::from_fn(k, k, |i, j| self.b[(i, j)] * (self.d[i] * self.d[j]).sqrt())
    }
}

/// A finitely supported nonnegative diagonal matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SiteDiagonal {
    sites: Vec<i64>,
    values: Vec<f64>,
}

impl SiteDiagonal {
    /// Zero entries are dropped.
    pub fn new(entries: Vec<(i64, f64)>) -> Result<Self> {
        let mut entries: Vec<_> = entries.into_iter().filter(|e| e.1 != 0.0).collect();
        entries.sort_by_key(|e| e.0);
        if entries.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::Invalid("repeated site in diagonal".into()));
        }
        if let Some(e) = entries.iter().find(|e| !(e.1.is_finite() && e.1 > 0.0)) {
            return Err(Error::Invalid(format!("diagonal entry {} must be nonnegative", e.1)));
        }
        Ok(SiteDiagonal {
            sites: entries.iter().map(|e| e.0).collect(),
            values: entries.iter().map(|e| e.1).collect(),
        })
    }

    pub fn sites(&self) -> &[i64] {
        &self.sites
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn power_sum(&self, p: f64) -> f64 {
        self.values.iter().map(|v| v.powf(p)).sum()
    }
}

/// `[D_n^{1/2} G(n, m; z) D_m^{1/2}]` over the sites of `d`.
pub fn sandwich(jac: &PeriodicJacobi, d: &SiteDiagonal, z: C) -> Result<CMatrix> {
    let k = d.sites.len();
    if k == 0 {
        return Ok(CMatrix::zeros(0, 0));
    }
    let r = jac.resolvent(z)?;
    let roots: Vec<f64> = d.values.iter().map(|v| v.sqrt()).collect();
    Ok(CMatrix::from_fn(k, k, |i, j| {
        r.green(d.sites[i], d.sites[j]) * (roots[i] * roots[j])
    }))
}

/// Both sides of the Schatten bound for `D^{1/2}(J' - z)^{-1} D^{1/2}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SandwichBound {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
    /// `rhs / lhs` (infinite when `lhs = 0 < rhs`).
    pub slack: f64,
}

/// `lhs = ‖D^{1/2}(J'-z)^{-1}D^{1/2}‖_p^p`,
/// `rhs = √2 Σ D_n^p · sup_n ∫dρ_n/|t-z| / dist(z, σ(J'))^{p-1}`.
pub fn sandwich_bound(
    jac: &PeriodicJacobi,
    d: &SiteDiagonal,
    z: C,
    p: f64,
    cfg: &QuadratureConfig,
) -> Result<SandwichBound> {
    if !(p >= 1.0) {
        return Err(Error::Invalid(format!("Schatten exponent must be >= 1, got {p}")));
    }
    let set = jac.spectrum()?;
    let dist = set.dist(z);
    if dist == 0.0 {
        return Err(Error::Domain(format!("z = {z} lies in the spectrum")));
    }
    if d.sites.is_empty() {
        return Ok(SandwichBound {
            lhs: 0.0,
            rhs: 0.0,
            holds: true,
            slack: 1.0,
        });
    }
    let lhs = schatten_power(&sandwich(jac, d, z)?, p)?;
    let moment = jac.sup_abs_resolvent_moment(z, cfg)?;
    let rhs = std::f64::consts::SQRT_2 * d.power_sum(p) * moment / dist.powf(p - 1.0);
    let slack = if lhs > 0.0 { rhs / lhs } else { f64::INFINITY };
    Ok(SandwichBound {
        lhs,
        rhs,
        holds: lhs <= rhs * (1.0 + 1e-9),
        slack,
    })
}
