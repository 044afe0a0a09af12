//! Small dense complex linear algebra: determinants, eigenvalues by shifted
//! Hessenberg QR, singular values by one-sided Jacobi, Schatten norms, and
//! eigenvalues of large complex tridiagonal matrices.

use std::ops::{Index, IndexMut};

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{Error, Result};

type C = Complex64;

/// Row-major dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix {
            rows,
            cols,
            data: vec![C::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn<F: FnMut(usize, usize) -> C>(rows: usize, cols: usize, mut f: F) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn from_rows(rows: &[Vec<C>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        Self::from_fn(r, c, |i, j| rows[i][j])
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        Self::from_fn(r, c, |i, j| C::new(rows[i][j], 0.0))
    }

    pub fn diagonal(values: &[C]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, v) in values.iter().enumerate() {
            m[(i, i)] = *v;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn matmul(&self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in matmul");
        let mut out = CMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> CMatrix {
        CMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, s: C) -> CMatrix {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * s).collect(),
        }
    }

    pub fn add(&self, rhs: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn frobenius_sq(&self) -> f64 {
        self.data.iter().map(|v| v.norm_sqr()).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.re.is_finite() && v.im.is_finite())
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = C;

    fn index(&self, (i, j): (usize, usize)) -> &C {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C {
        &mut self.data[i * self.cols + j]
    }
}

/// Determinant by LU with partial pivoting.
pub fn determinant(a: &CMatrix) -> C {
    assert!(a.is_square(), "determinant of a non-square matrix");
    let n = a.rows();
    let mut m = a.clone();
    let mut det = C::new(1.0, 0.0);
    for k in 0..n {
        let piv = (k..n)
            .max_by(|&i, &j| m[(i, k)].norm().total_cmp(&m[(j, k)].norm()))
            .unwrap_or(k);
        let pv = m[(piv, k)];
        if pv.is_zero() {
            return C::zero();
        }
        if piv != k {
            for j in 0..n {
                m.data.swap(piv * n + j, k * n + j);
            }
            det = -det;
        }
        det *= pv;
        for i in k + 1..n {
            let f = m[(i, k)] / pv;
            if f.is_zero() {
                continue;
            }
            for j in k + 1..n {
                let v = m[(k, j)];
                m[(i, j)] -= f * v;
            }
        }
    }
    det
}

/// Unitary Hessenberg reduction by Householder reflections.
pub fn hessenberg(a: &CMatrix) -> CMatrix {
    assert!(a.is_square());
    let n = a.rows();
    let mut h = a.clone();
    if n < 3 {
        return h;
    }
    let mut v = vec![C::zero(); n];
    for k in 0..n - 2 {
        let norm_x = (k + 1..n).map(|i| h[(i, k)].norm_sqr()).sum::<f64>().sqrt();
        if norm_x == 0.0 {
            continue;
        }
        let x0 = h[(k + 1, k)];
        let phase = if x0.norm() == 0.0 {
            C::new(1.0, 0.0)
        } else {
            x0 / x0.norm()
        };
        let alpha = -phase * norm_x;
        for i in k + 1..n {
            v[i] = h[(i, k)];
        }
        v[k + 1] -= alpha;
        let vnorm = (k + 1..n).map(|i| v[i].norm_sqr()).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            continue;
        }
        for vi in v.iter_mut().take(n).skip(k + 1) {
            *vi /= vnorm;
        }
        // H ← (I - 2vv^H) H
        for j in 0..n {
            let s: C = (k + 1..n).map(|i| v[i].conj() * h[(i, j)]).sum();
            for i in k + 1..n {
                h[(i, j)] -= v[i] * s * 2.0;
            }
        }
        // H ← H (I - 2vv^H)
        for i in 0..n {
            let s: C = (k + 1..n).map(|j| h[(i, j)] * v[j]).sum();
            for j in k + 1..n {
                h[(i, j)] -= s * v[j].conj() * 2.0;
            }
        }
        for i in k + 2..n {
            h[(i, k)] = C::zero();
        }
    }
    h
}

/// Eigenvalues of a square complex matrix: Hessenberg reduction followed by
/// single-shift QR with Wilkinson shifts and deflation. At most `50·n` QR
/// steps are taken in total.
pub fn eigenvalues(a: &CMatrix) -> Result<Vec<C>> {
    assert!(a.is_square());
    if !a.is_finite() {
        return Err(Error::Numeric("eigenvalues of a non-finite matrix".into()));
    }
    let h = hessenberg(a);
    hessenberg_qr(h)
}

fn hessenberg_qr(mut h: CMatrix) -> Result<Vec<C>> {
    let n = h.rows();
    let mut eig = Vec::with_capacity(n);
    if n == 0 {
        return Ok(eig);
    }
    let anorm = h.max_abs().max(f64::MIN_POSITIVE);
    let max_steps = 50 * n.max(1);
    let mut steps = 0usize;
    let mut since_deflation = 0usize;
    let mut hi = n - 1;
    let mut rot: Vec<(f64, C)> = Vec::with_capacity(n);
    loop {
        if hi == 0 {
            eig.push(h[(0, 0)]);
            break;
        }
        let mut l = hi;
        while l > 0 {
            let s = h[(l - 1, l - 1)].norm() + h[(l, l)].norm();
            let s = if s == 0.0 { anorm } else { s };
            if h[(l, l - 1)].norm() <= f64::EPSILON * s {
                h[(l, l - 1)] = C::zero();
                break;
            }
            l -= 1;
        }
        if l == hi {
            eig.push(h[(hi, hi)]);
            hi -= 1;
            since_deflation = 0;
            continue;
        }
        steps += 1;
        since_deflation += 1;
        if steps > max_steps {
            return Err(Error::Numeric(format!(
                "QR iteration did not converge after {max_steps} steps"
            )));
        }
        let shift = if since_deflation.is_multiple_of(11) {
            h[(hi, hi)] + C::new(0.75 * h[(hi, hi - 1)].norm(), 0.0)
        } else {
            wilkinson_shift(
                h[(hi - 1, hi - 1)],
                h[(hi - 1, hi)],
                h[(hi, hi - 1)],
                h[(hi, hi)],
            )
        };
        for i in l..=hi {
            h[(i, i)] -= shift;
        }
        rot.clear();
        for k in l..hi {
            let (c, s) = givens(h[(k, k)], h[(k + 1, k)]);
            for j in k..=hi {
                let x = h[(k, j)];
                let y = h[(k + 1, j)];
                h[(k, j)] = x * c + s * y;
                h[(k + 1, j)] = -s.conj() * x + y * c;
            }
            rot.push((c, s));
        }
        for (idx, &(c, s)) in rot.iter().enumerate() {
            let k = l + idx;
            for i in l..=(k + 1).min(hi) {
                let x = h[(i, k)];
                let y = h[(i, k + 1)];
                h[(i, k)] = x * c + y * s.conj();
                h[(i, k + 1)] = -x * s + y * c;
            }
        }
        for i in l..=hi {
            h[(i, i)] += shift;
        }
    }
    Ok(eig)
}

/// Rotation `[[c, s], [-s̄, c]]` mapping `(x, y)` to `(r, 0)`.
fn givens(x: C, y: C) -> (f64, C) {
    let ny = y.norm();
    if ny == 0.0 {
        return (1.0, C::zero());
    }
    let nx = x.norm();
    if nx == 0.0 {
        return (0.0, C::new(1.0, 0.0));
    }
    let rho = nx.hypot(ny);
    let c = nx / rho;
    let s = (x / nx) * y.conj() / rho;
    (c, s)
}

/// Eigenvalue of `[[a, b], [c, d]]` closest to `d`.
fn wilkinson_shift(a: C, b: C, c: C, d: C) -> C {
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let m = (a + d) * 0.5;
    let l1 = m + disc;
    let l2 = m - disc;
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// Singular values by one-sided (Hestenes) Jacobi rotations on the columns,
/// tolerance `1e-13`, at most 60 sweeps. Returned in decreasing order.
pub fn singular_values(a: &CMatrix) -> Result<Vec<f64>> {
    const TOL: f64 = 1e-13;
    const MAX_SWEEPS: usize = 60;
    // Work on the orientation with fewer columns.
    let m = if a.cols() > a.rows() { a.adjoint() } else { a.clone() };
    let (rows, cols) = (m.rows(), m.cols());
    let mut colv: Vec<Vec<C>> = (0..cols)
        .map(|j| (0..rows).map(|i| m[(i, j)]).collect())
        .collect();
    // rotations below roundoff of the whole matrix cannot make progress
    let floor = f64::EPSILON * f64::EPSILON * m.frobenius_sq();
    let mut converged = cols < 2;
    for _ in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        let mut rotated = false;
        for i in 0..cols {
            for j in i + 1..cols {
                let alpha: f64 = colv[i].iter().map(|v| v.norm_sqr()).sum();
                let beta: f64 = colv[j].iter().map(|v| v.norm_sqr()).sum();
                let gamma: C = colv[i].iter().zip(&colv[j]).map(|(x, y)| x.conj() * y).sum();
                let g = gamma.norm();
                if g <= floor || g <= TOL * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let t = if zeta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let (left, right) = colv.split_at_mut(j);
                let (x, y) = (&mut left[i], &mut right[0]);
                for k in 0..rows {
                    let xv = x[k];
                    let yv = y[k] * phase.conj();
                    x[k] = xv * c - yv * s;
                    y[k] = (xv * s + yv * c) * phase;
                }
            }
        }
        if !rotated {
            converged = true;
        }
    }
    if !converged {
        return Err(Error::Numeric(
            "one-sided Jacobi SVD did not converge in 60 sweeps".into(),
        ));
    }
    let mut sv: Vec<f64> = colv
        .iter()
        .map(|c| c.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt())
        .collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    Ok(sv)
}

/// Schatten `p`-norm; `p = f64::INFINITY` gives the operator norm.
pub fn schatten_norm(a: &CMatrix, p: f64) -> Result<f64> {
    if !(p >= 1.0) {
        return Err(Error::Invalid(format!("Schatten index must be >= 1, got {p}")));
    }
    let sv = singular_values(a)?;
    Ok(schatten_from_singular(&sv, p))
}

/// `Σ σ^p`, i.e. `‖A‖_p^p` for finite `p`.
pub fn schatten_power(a: &CMatrix, p: f64) -> Result<f64> {
    if !(p >= 1.0 && p.is_finite()) {
        return Err(Error::Invalid(format!("Schatten power needs finite p >= 1, got {p}")));
    }
    Ok(singular_values(a)?.iter().map(|s| s.powf(p)).sum())
}

fn schatten_from_singular(sv: &[f64], p: f64) -> f64 {
    if p.is_infinite() {
        return sv.first().copied().unwrap_or(0.0);
    }
    let top = sv.first().copied().unwrap_or(0.0);
    if top == 0.0 {
        return 0.0;
    }
    top * sv.iter().map(|s| (s / top).powf(p)).sum::<f64>().powf(1.0 / p)
}

/// Eigenvalues of the tridiagonal matrix with diagonal `diag`, subdiagonal
/// `sub` (`T[i+1][i]`) and superdiagonal `sup` (`T[i][i+1]`).
///
/// Only the products `sub_i·sup_i` matter, so the matrix is similar to the
/// complex symmetric tridiagonal with off-diagonal `√(sub_i·sup_i)`; that one
/// is diagonalised by implicit QL with complex orthogonal rotations, which
/// keeps the tridiagonal structure (O(n²) overall). Blocks that hit an
/// isotropic breakdown twice fall back to dense Hessenberg QR.
pub fn tridiagonal_eigenvalues(sub: &[C], diag: &[C], sup: &[C]) -> Result<Vec<C>> {
    let n = diag.len();
    if sub.len() + 1 != n.max(1) || sup.len() != sub.len() {
        return Err(Error::Invalid("tridiagonal dimensions do not match".into()));
    }
    let mut eig = Vec::with_capacity(n);
    let mut start = 0;
    for i in 0..=n {
        let split = i == n || (i + 1 < n && (sub[i] * sup[i]).is_zero());
        if !split {
            continue;
        }
        let end = if i == n { n } else { i + 1 };
        if end > start {
            let d = diag[start..end].to_vec();
            let mut e: Vec<C> = (start..end - 1).map(|k| (sub[k] * sup[k]).sqrt()).collect();
            e.push(C::zero());
            eig.extend(symmetric_block(d, e, &sub[start..end - 1], &sup[start..end - 1], &diag[start..end])?);
        }
        start = end;
    }
    Ok(eig)
}

fn symmetric_block(mut d: Vec<C>, mut e: Vec<C>, sub: &[C], sup: &[C], diag: &[C]) -> Result<Vec<C>> {
    match complex_symmetric_ql(&mut d, &mut e) {
        Ok(()) => Ok(d),
        Err(err) => {
            let n = diag.len();
            if n > 1500 {
                return Err(err);
            }
            let mut a = CMatrix::zeros(n, n);
            for i in 0..n {
                a[(i, i)] = diag[i];
                if i + 1 < n {
                    a[(i + 1, i)] = sub[i];
                    a[(i, i + 1)] = sup[i];
                }
            }
            hessenberg_qr(a)
        }
    }
}

/// Implicit QL on a complex symmetric tridiagonal matrix (`e[i]` couples
/// `i` and `i+1`; `e[n-1]` is ignored). Eigenvalues overwrite `d`.
fn complex_symmetric_ql(d: &mut [C], e: &mut [C]) -> Result<()> {
    const MAX_ITER: usize = 60;
    let n = d.len();
    let (mut saved_d, mut saved_e) = (Vec::with_capacity(n), Vec::with_capacity(n));
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                // L1 moduli: same test up to a factor √2, without square roots
                let dd = d[m].l1_norm() + d[m + 1].l1_norm();
                if e[m].l1_norm() <= f64::EPSILON * dd || e[m].is_zero() {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            if iter == MAX_ITER {
                return Err(Error::Numeric(format!(
                    "tridiagonal QL did not converge for eigenvalue {l}"
                )));
            }
            iter += 1;
            let shift = if iter % 12 == 0 {
                exceptional_shift(d, e, l)
            } else {
                let g = (d[l + 1] - d[l]) / (e[l] * 2.0);
                let r = (g * g + 1.0).sqrt();
                let den = if (g + r).norm() >= (g - r).norm() { g + r } else { g - r };
                d[l] - e[l] / den
            };
            saved_d.clear();
            saved_d.extend_from_slice(&d[l..=m]);
            saved_e.clear();
            saved_e.extend_from_slice(&e[l..=m]);
            if !ql_sweep(d, e, l, m, shift) {
                d[l..=m].copy_from_slice(&saved_d);
                e[l..=m].copy_from_slice(&saved_e);
                if !ql_sweep(d, e, l, m, exceptional_shift(d, e, l)) {
                    return Err(Error::Numeric("isotropic breakdown in tridiagonal QL".into()));
                }
            }
        }
    }
    Ok(())
}

fn exceptional_shift(d: &[C], e: &[C], l: usize) -> C {
    d[l] + C::new(0.75, 0.4) * (e[l].norm() + e.get(l + 1).map_or(0.0, |v| v.norm()))
}

fn ql_sweep(d: &mut [C], e: &mut [C], l: usize, m: usize, shift: C) -> bool {
    let mut g = d[m] - shift;
    let mut s = C::new(1.0, 0.0);
    let mut c = C::new(1.0, 0.0);
    let mut p = C::zero();
    for i in (l..m).rev() {
        let f = s * e[i];
        let b = c * e[i];
        let scale = f.norm() + g.norm();
        if scale == 0.0 {
            d[i + 1] -= p;
            e[m] = C::zero();
            return true;
        }
        let inv_scale = scale.recip();
        let (fs, gs) = (f * inv_scale, g * inv_scale);
        let r = (fs * fs + gs * gs).sqrt() * scale;
        if r.norm() <= 1e-6 * scale {
            return false;
        }
        e[i + 1] = r;
        let r_inv = r.inv();
        s = f * r_inv;
        c = g * r_inv;
        g = d[i + 1] - p;
        let r2 = (d[i] - g) * s + c * b * 2.0;
        p = s * r2;
        d[i + 1] = g + p;
        g = c * r2 - b;
    }
    d[l] -= p;
    e[l] = g;
    e[m] = C::zero();
    true
}

/// Sorts complex numbers by real part, then imaginary part.
pub fn sort_complex(v: &mut [C]) {
    v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
}
