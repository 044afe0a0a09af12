//! Randomized invariants of the spectral, linear-algebra and counting layers.

use num_complex::Complex64 as C;
use num_rational::Ratio;
use proptest::prelude::*;

use jacobi_lt::eigensolver::eigenvalues_of;
use jacobi_lt::finite_gap_set::eigenvalue_weight;
use jacobi_lt::linalg::{schatten_norm, CMatrix};
use jacobi_lt::zero_sums::exponent_triple;
use jacobi_lt::{FiniteGapSet, InequalityKind, InequalitySpec, PeriodicJacobi, Perturbation};

fn finite_gap_set() -> impl Strategy<Value = FiniteGapSet> {
    prop::collection::vec(-5.0f64..5.0, 2..=8).prop_filter_map("bands need distinct edges", |mut xs| {
        xs.sort_by(f64::total_cmp);
        if xs.len() % 2 == 1 {
            xs.pop();
        }
        if xs.windows(2).any(|w| w[1] - w[0] < 1e-3) {
            return None;
        }
        FiniteGapSet::new(xs.chunks(2).map(|c| (c[0], c[1])).collect()).ok()
    })
}

fn point() -> impl Strategy<Value = C> {
    (-8.0f64..8.0, -4.0f64..4.0).prop_map(|(x, y)| C::new(x, y))
}

fn background() -> impl Strategy<Value = PeriodicJacobi> {
    prop::collection::vec((0.5f64..2.0, -1.0f64..1.0), 1..=3).prop_filter_map("open gaps", |ab| {
        let (a, b): (Vec<f64>, Vec<f64>) = ab.into_iter().unzip();
        let j = PeriodicJacobi::new(a, b).ok()?;
        j.spectrum().ok().map(|_| j)
    })
}

fn entries(width: usize, radius: f64) -> impl Strategy<Value = Vec<C>> {
    prop::collection::vec((-radius..radius, -radius..radius).prop_map(|(x, y)| C::new(x, y)), width)
}

fn perturbation(radius: f64) -> impl Strategy<Value = Perturbation> {
    (1usize..=3, -2i64..=2).prop_flat_map(move |(w, n0)| {
        (entries(w, radius), entries(w, radius), entries(w, radius))
            .prop_map(move |(da, db, dc)| Perturbation::new(n0, da, db, dc).unwrap())
    })
}

fn matrix(n: usize) -> impl Strategy<Value = CMatrix> {
    entries(n * n, 2.0).prop_map(move |v| CMatrix::from_fn(n, n, |i, j| v[i * n + j]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn distance_is_one_lipschitz(set in finite_gap_set(), z in point(), w in point()) {
        prop_assert!((set.dist(z) - set.dist(w)).abs() <= (z - w).norm() + 1e-12);
        prop_assert!(set.dist_to_edges(z) >= set.dist(z) - 1e-12);
    }

    #[test]
    fn distance_vanishes_exactly_on_the_set(set in finite_gap_set(), x in -8.0f64..8.0) {
        prop_assert_eq!(set.dist(C::new(x, 0.0)) == 0.0, set.contains(x));
    }

    #[test]
    fn nsa_weight_is_positive_and_scales(
        set in finite_gap_set(),
        z in point(),
        p in 1.0f64..3.0,
        eps in 0.01f64..0.99,
    ) {
        prop_assume!(set.dist(z) > 1e-6);
        let spec = InequalitySpec::new(InequalityKind::LtNsa, p, eps).unwrap();
        let w = eigenvalue_weight(z, &set, &spec).unwrap();
        prop_assert!(w.is_finite() && w > 0.0);
        let expected = set.dist(z).powf(p + eps) * (1.0 + z.norm()).powf(0.5 * (1.0 - 3.0 * eps))
            / set.dist_to_edges(z).sqrt();
        prop_assert!((w - expected).abs() <= 1e-12 * expected);
    }

    #[test]
    fn exponent_sum_identity(
        p in 0i64..40, q in 0i64..40, r in 0i64..40, e in 1i64..40, den in 1i64..12,
    ) {
        let f = |n: i64| Ratio::new(n, den);
        let t = exponent_triple(f(p), f(q), f(r), f(e)).unwrap();
        let zero = Ratio::from_integer(0);
        let total = (f(p) + f(q) + f(r) - f(e)).max(zero);
        prop_assert_eq!(t.p + t.q + t.r, total);
        prop_assert_eq!(t.p, f(p) + Ratio::from_integer(1) + f(e));
        if f(p) + f(q) * 2 - Ratio::from_integer(1) + f(e) <= zero {
            prop_assert_eq!(t.q * 2, -t.p);
        }
    }

    #[test]
    fn schatten_two_is_frobenius(a in matrix(4)) {
        let s2 = schatten_norm(&a, 2.0).unwrap();
        prop_assert!((s2 * s2 - a.frobenius_sq()).abs() <= 1e-10 * a.frobenius_sq().max(1.0));
    }

    #[test]
    fn schatten_norms_are_unitarily_invariant(a in matrix(4), phases in prop::collection::vec(0.0f64..6.3, 4), p in 1.0f64..4.0) {
        // diagonal phases followed by a cyclic shift form a unitary
        let u = CMatrix::from_fn(4, 4, |i, j| if (i + 1) % 4 == j { C::from_polar(1.0, phases[j]) } else { C::new(0.0, 0.0) });
        let b = u.matmul(&a).matmul(&u.adjoint());
        let (na, nb) = (schatten_norm(&a, p).unwrap(), schatten_norm(&b, p).unwrap());
        prop_assert!((na - nb).abs() <= 1e-10 * na.max(1.0));
        let inf = schatten_norm(&a, f64::INFINITY).unwrap();
        prop_assert!(inf <= na * (1.0 + 1e-12));
    }

    #[test]
    fn lp_sums_are_homogeneous(dj in perturbation(3.0), t in -4.0f64..4.0, p in 0.5f64..4.0) {
        let lhs = dj.scaled(t).lp_sum(p);
        let rhs = t.abs().powf(p) * dj.lp_sum(p);
        prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.max(1e-300));
    }

    #[test]
    fn green_function_symmetries(jac in background(), z in point(), n in -6i64..6, m in -6i64..6) {
        let set = jac.spectrum().unwrap();
        prop_assume!(set.dist(z) > 1e-3);
        let g = jac.green(n, m, z).unwrap();
        prop_assert!((g - jac.green(m, n, z).unwrap()).norm() <= 1e-12 * g.norm().max(1.0));
        prop_assert!((g.conj() - jac.green(n, m, z.conj()).unwrap()).norm() <= 1e-10 * g.norm().max(1.0));
        if z.im > 0.0 {
            prop_assert!(jac.green(n, n, z).unwrap().im > 0.0);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn conjugate_perturbation_has_conjugate_eigenvalues(jac in background(), dj in perturbation(2.0)) {
        let direct = eigenvalues_of(&jac, &dj, 1e-10).unwrap().eigenvalues;
        let mirrored = eigenvalues_of(&jac, &dj.conj(), 1e-10).unwrap().eigenvalues;
        prop_assert_eq!(direct.len(), mirrored.len());
        for r in &direct {
            let hit = mirrored
                .iter()
                .any(|s| (s.z - r.z.conj()).norm() <= 1e-8 && s.multiplicity == r.multiplicity);
            prop_assert!(hit, "no conjugate partner for {}", r.z);
        }
    }

    #[test]
    fn selfadjoint_perturbations_have_real_eigenvalues(
        jac in background(),
        n0 in -2i64..=2,
        ab in prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), 1..=3),
    ) {
        let a: Vec<C> = ab.iter().map(|x| C::new(x.0, 0.0)).collect();
        let b: Vec<C> = ab.iter().map(|x| C::new(x.1, 0.0)).collect();
        // keep the perturbed off-diagonal positive so J stays a Jacobi matrix
        let a: Vec<C> = a.iter().map(|x| C::new(x.re.max(-0.4), 0.0)).collect();
        let dj = Perturbation::new(n0, a.clone(), b, a).unwrap();
        prop_assert!(dj.is_selfadjoint());
        for r in eigenvalues_of(&jac, &dj, 1e-10).unwrap().eigenvalues {
            prop_assert!(r.z.im.abs() <= 1e-8, "non-real eigenvalue {}", r.z);
        }
    }
}
