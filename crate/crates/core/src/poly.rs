//! Real polynomials and root isolation for real-rooted polynomials.

use std::ops::{Add, Mul, Sub};

/// Coefficients in increasing degree.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly {
    coeffs: Vec<f64>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.len() > 1 && coeffs[coeffs.len() - 1] == 0.0 {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0.0);
        }
        Poly { coeffs }
    }

    pub fn constant(c: f64) -> Self {
        Poly::new(vec![c])
    }

    /// `c0 + c1 x`.
    pub fn linear(c0: f64, c1: f64) -> Self {
        Poly::new(vec![c0, c1])
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::constant(0.0);
        }
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| k as f64 * c)
                .collect(),
        )
    }

    pub fn scale(&self, s: f64) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Cauchy bound on the moduli of the roots.
    pub fn root_bound(&self) -> f64 {
        let n = self.degree();
        let lead = self.coeffs[n];
        1.0 + self.coeffs[..n]
            .iter()
            .map(|c| (c / lead).abs())
            .fold(0.0, f64::max)
    }

    /// All roots of a polynomial whose roots are known to be real and simple
    /// enough to be separated by the roots of its derivative (any real-rooted
    /// polynomial qualifies). Roots are isolated recursively between the
    /// critical points and refined by bisection to `abs_tol`.
    pub fn real_roots(&self, abs_tol: f64) -> Vec<f64> {
        let n = self.degree();
        if n == 0 {
            return Vec::new();
        }
        if n == 1 {
            return vec![-self.coeffs[0] / self.coeffs[1]];
        }
        let bound = self.root_bound();
        let crit = self.derivative().real_roots(abs_tol);
        let mut knots = Vec::with_capacity(crit.len() + 2);
        knots.push(-bound);
        knots.extend(crit.iter().copied().filter(|c| c.abs() < bound));
        knots.push(bound);
        let mut roots = Vec::new();
        for w in knots.windows(2) {
            let (l, r) = (w[0], w[1]);
            let (fl, fr) = (self.eval(l), self.eval(r));
            if fl == 0.0 {
                if roots.last().is_none_or(|&x: &f64| (x - l).abs() > abs_tol) {
                    roots.push(l);
                }
                continue;
            }
            if fl.signum() != fr.signum() && fr != 0.0 {
                roots.push(bisect(|x| self.eval(x), l, r, abs_tol));
            }
        }
        if let Some(&r) = knots.last() {
            if self.eval(r) == 0.0 {
                roots.push(r);
            }
        }
        roots
    }
}

/// Bisection for a sign change of `f` on `[l, r]`.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut l: f64, mut r: f64, abs_tol: f64) -> f64 {
    let mut fl = f(l);
    for _ in 0..200 {
        let m = 0.5 * (l + r);
        if r - l <= abs_tol || m <= l || m >= r {
            break;
        }
        let fm = f(m);
        if fm == 0.0 {
            return m;
        }
        if fm.signum() == fl.signum() {
            l = m;
            fl = fm;
        } else {
            r = m;
        }
    }
    0.5 * (l + r)
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new(
            (0..n)
                .map(|k| self.coeffs.get(k).unwrap_or(&0.0) + rhs.coeffs.get(k).unwrap_or(&0.0))
                .collect(),
        )
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        self + &rhs.scale(-1.0)
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = vec![0.0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_roots(roots: &[f64]) -> Poly {
        roots
            .iter()
            .fold(Poly::constant(1.0), |acc, &r| &acc * &Poly::linear(-r, 1.0))
    }

    #[test]
    fn arithmetic() {
        let p = &Poly::linear(1.0, 1.0) * &Poly::linear(-1.0, 1.0);
        assert_eq!(p.coeffs(), &[-1.0, 0.0, 1.0]);
        assert_eq!(p.derivative().coeffs(), &[0.0, 2.0]);
        assert_eq!((&p - &p).degree(), 0);
        assert_eq!(p.eval(3.0), 8.0);
    }

    #[test]
    fn real_rooted_isolation() {
        let roots = [-3.5, -1.0, 0.25, 0.3, 2.0, 7.0];
        let p = from_roots(&roots).scale(0.7);
        let found = p.real_roots(1e-13);
        assert_eq!(found.len(), roots.len());
        for (a, b) in found.iter().zip(roots.iter()) {
            assert!((a - b).abs() < 1e-10, "{a} vs {b}");
        }
    }

    #[test]
    fn linear_and_constant() {
        assert_eq!(Poly::linear(-2.0, 4.0).real_roots(1e-12), vec![0.5]);
        assert!(Poly::constant(3.0).real_roots(1e-12).is_empty());
    }
}
