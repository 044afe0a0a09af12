//! Finite-gap Jacobi operators and their complex perturbations.
//!
//! The crate builds periodic (finite-gap) Jacobi backgrounds, reflectionless
//! measures on finite gap sets, finitely supported complex perturbations, and
//! locates discrete eigenvalues of the perturbed operator twice: as zeros of a
//! perturbation determinant (argument principle) and from large truncations.
//! On top of that it evaluates the eigenvalue-sum inequalities of
//! Lieb–Thirring and Kato type and the weighted zero sums of analytic
//! functions with controlled growth.

// `!(x > 0.0)` is used on purpose: it also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod eigensolver;
pub mod error;
pub mod finite_gap_set;
pub mod linalg;
pub mod lt_bounds;
pub mod periodic_jacobi;
pub mod perturbation;
pub mod poly;
pub mod quadrature;
pub mod reflectionless;
pub mod zero_sums;

pub use error::{Error, Result};
pub use finite_gap_set::{Band, FiniteGapSet, InequalityKind, InequalitySpec};
pub use num_complex::Complex64;
pub use periodic_jacobi::PeriodicJacobi;
pub use perturbation::Perturbation;
pub use reflectionless::ReflectionlessMeasure;
