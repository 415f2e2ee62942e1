use std::sync::{Arc, OnceLock};

use num_rational::Rational64;
use proptest::prelude::*;

use hgdeform_core::orbit::{weyl_data, WeylFamily};
use hgdeform_core::{
    bessel_kingman, chebyshev_hypergroup, check_axioms, convolve, deform, deform_semigroup, dual_map, exp_series, exponentiality_estimate,
    finite_double_coset, poisson, r_transform, Coord, GridModel, GroupTable, Hypergroup, Measure, SemicharDescriptor, Semicharacter,
    SharedHypergroup, EPS_MASS_GRID,
};

fn exact_measure(max: u32) -> impl Strategy<Value = Measure<Rational64>> {
    prop::collection::vec((0..=max, -6i64..=6, 1i64..=4), 1..5).prop_map(|v| {
        let space = chebyshev_hypergroup::<Rational64>().space().clone();
        Measure::new(space, v.into_iter().map(|(i, n, d)| (Coord::Index(i), Rational64::new(n, d))))
    })
}

fn probability(max: u32) -> impl Strategy<Value = Measure<f64>> {
    prop::collection::vec((0..=max, 0.05f64..1.0), 1..5).prop_map(|v| {
        let total: f64 = v.iter().map(|(_, w)| w).sum();
        let space = chebyshev_hypergroup::<f64>().space().clone();
        Measure::new(space, v.into_iter().map(|(i, w)| (Coord::Index(i), w / total)))
    })
}

fn chebyshev() -> SharedHypergroup<f64> {
    Arc::new(chebyshev_hypergroup::<f64>())
}

fn bk() -> &'static GridModel<f64> {
    static BK: OnceLock<GridModel<f64>> = OnceLock::new();
    BK.get_or_init(|| bessel_kingman(1.0 / 32.0, 8.0).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn convolution_is_bilinear(mu in exact_measure(12), mu2 in exact_measure(12), nu in exact_measure(12), a in -3i64..=3, b in -3i64..=3) {
        let h = chebyshev_hypergroup::<Rational64>();
        let (a, b) = (Rational64::from(a), Rational64::from(b));
        let combo = mu.scale(a).add(&mu2.scale(b)).unwrap();
        let lhs = convolve(&h, &combo, &nu).unwrap();
        let rhs = convolve(&h, &mu, &nu).unwrap().scale(a).add(&convolve(&h, &mu2, &nu).unwrap().scale(b)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn convolution_is_commutative_and_associative(mu in exact_measure(10), nu in exact_measure(10), la in exact_measure(10)) {
        let h = chebyshev_hypergroup::<Rational64>();
        prop_assert_eq!(convolve(&h, &mu, &nu).unwrap(), convolve(&h, &nu, &mu).unwrap());
        let left = convolve(&h, &convolve(&h, &mu, &nu).unwrap(), &la).unwrap();
        let right = convolve(&h, &mu, &convolve(&h, &nu, &la).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn total_variation_is_submultiplicative(mu in exact_measure(12), nu in exact_measure(12)) {
        let h = chebyshev_hypergroup::<Rational64>();
        prop_assert!(convolve(&h, &mu, &nu).unwrap().tv_norm() <= mu.tv_norm() * nu.tv_norm());
    }

    #[test]
    fn probabilities_convolve_to_probabilities(mu in probability(30), nu in probability(30)) {
        let h = chebyshev_hypergroup::<f64>();
        prop_assert!(convolve(&h, &mu, &nu).unwrap().is_probability(1e-12));
    }

    #[test]
    fn exponential_series_is_a_semigroup(rho in probability(4), s in 0.0f64..2.0, t in 0.0f64..2.0) {
        let h = chebyshev_hypergroup::<f64>();
        let eps = 1e-12;
        let lhs = convolve(&h, &exp_series(&h, &rho, s, eps).unwrap(), &exp_series(&h, &rho, t, eps).unwrap()).unwrap();
        let rhs = exp_series(&h, &rho, s + t, eps).unwrap();
        // truncation errors compound through the convolution
        let bound = eps * ((s * s.exp()) + (t * t.exp()) + (s + t).exp()) + 1e-13 * (s + t).exp();
        prop_assert!(lhs.tv_distance(&rhs).unwrap() <= 3.0 * bound);
    }

    #[test]
    fn alpha_weighting_is_a_homomorphism(mu in probability(15), nu in probability(15), c in 1.0f64..3.0) {
        let h = chebyshev();
        let a0 = Semicharacter::certified(h.as_ref(), SemicharDescriptor::Chebyshev { c }).unwrap();
        let d = deform(h.clone(), a0.clone()).unwrap();
        let lhs = convolve(h.as_ref(), &mu, &nu).unwrap().weighted_by(|z| a0.eval(z));
        let rhs = convolve(&d, &mu.weighted_by(|z| a0.eval(z)), &nu.weighted_by(|z| a0.eval(z))).unwrap();
        prop_assert!(lhs.tv_distance(&rhs).unwrap() <= 1e-12 * lhs.tv_norm());
        let mass = |m: &Measure<f64>| m.integrate(|z| a0.eval(z));
        let product = mass(&mu) * mass(&nu);
        prop_assert!((mass(&convolve(h.as_ref(), &mu, &nu).unwrap()) - product).abs() <= 1e-12 * product);
    }

    #[test]
    fn r_transform_is_multiplicative(mu in probability(15), nu in probability(15), c in 1.0f64..3.0) {
        let h = chebyshev();
        let a0 = Semicharacter::certified(h.as_ref(), SemicharDescriptor::Chebyshev { c }).unwrap();
        let d = deform(h.clone(), a0.clone()).unwrap();
        let lhs = r_transform(&a0, &convolve(h.as_ref(), &mu, &nu).unwrap()).unwrap();
        let rhs = convolve(&d, &r_transform(&a0, &mu).unwrap(), &r_transform(&a0, &nu).unwrap()).unwrap();
        prop_assert!(lhs.tv_distance(&rhs).unwrap() <= 1e-12);
        prop_assert!(lhs.is_probability(1e-12));
    }

    #[test]
    fn deformed_kernels_are_probabilities(m in 0u32..60, n in 0u32..60, c in 1.0f64..4.0) {
        let h = chebyshev();
        let a0 = Semicharacter::certified(h.as_ref(), SemicharDescriptor::Chebyshev { c }).unwrap();
        let d = deform(h, a0).unwrap();
        prop_assert!(d.kernel(&Coord::Index(m), &Coord::Index(n)).unwrap().is_probability(1e-12));
    }

    #[test]
    fn dual_map_inverts(c in 1.0f64..3.0, c1 in 0.2f64..3.0, n in 0u32..30) {
        let h = chebyshev();
        let a0 = Semicharacter::certified(h.as_ref(), SemicharDescriptor::Chebyshev { c }).unwrap();
        let alpha = Semicharacter::certified(h.as_ref(), SemicharDescriptor::Chebyshev { c: c1 }).unwrap();
        let there = dual_map(&alpha, &a0).unwrap();
        let back = dual_map(&there, &a0.reciprocal().unwrap()).unwrap();
        let x = Coord::Index(n);
        prop_assert!((back.eval(&x) - alpha.eval(&x)).abs() <= 1e-12 * (1.0 + alpha.eval(&x).abs()));
    }

    #[test]
    fn deformed_mass_is_exponential(rho in probability(3), c in 1.0f64..2.0, s in 0.0f64..1.5, t in 0.0f64..1.5) {
        let h = chebyshev();
        let a0 = Semicharacter::certified(h.as_ref(), SemicharDescriptor::Chebyshev { c }).unwrap();
        let d = deform_semigroup(&poisson(h, rho.clone()).unwrap(), a0.clone()).unwrap();
        let (ps, pt, pst) = (d.phi(s, 1e-14).unwrap(), d.phi(t, 1e-14).unwrap(), d.phi(s + t, 1e-14).unwrap());
        prop_assert!((pst - ps * pt).abs() <= 1e-11 * pst);
        let want = rho.without(&Coord::Index(0)).0.weighted_by(|z| a0.eval(z));
        prop_assert!(d.deformed.levy_measure().measure.tv_distance(&want).unwrap() <= 1e-15 * want.tv_norm());
    }

    #[test]
    fn exponentiality_constants_multiply(c0 in 1.0f64..3.0, c1 in 1.0f64..3.0, seed in any::<u64>()) {
        let h = chebyshev();
        let cert = |c| Semicharacter::certified(h.as_ref(), SemicharDescriptor::Chebyshev { c }).unwrap();
        let (a0, a1) = (cert(c0), cert(c1));
        let e = |a: &Semicharacter<f64>| exponentiality_estimate(h.as_ref(), a, 1.0, 40, seed).unwrap();
        let both = e(&a0.product(&a1).unwrap());
        prop_assert!(both <= e(&a0) * e(&a1) * (1.0 + 1e-12));
    }

    #[test]
    fn grid_kernels_have_unit_mass(i in 0u32..=128, j in 0u32..=128) {
        let k = bk().kernel(&Coord::Node(i), &Coord::Node(j)).unwrap();
        prop_assert!((k.mass() - 1.0).abs() <= EPS_MASS_GRID);
        prop_assert!(k.is_nonnegative());
    }

    #[test]
    fn weyl_rho_orbit_contains_its_negative(d in 4usize..12) {
        for family in [WeylFamily::A, WeylFamily::B, WeylFamily::C, WeylFamily::D] {
            let w = weyl_data(family, d).unwrap();
            prop_assert!(w.neg_rho_in_orbit());
            prop_assert!(w.chamber_contains(&w.rho));
        }
    }
}

#[test]
fn deformed_models_satisfy_the_axioms() {
    let h = chebyshev();
    let d = deform(h.clone(), Semicharacter::certified(h.as_ref(), SemicharDescriptor::Chebyshev { c: 2.0 }).unwrap()).unwrap();
    for seed in 0..4 {
        assert!(check_axioms(&d, 50, seed).passed(), "seed {seed}");
    }
    let g: SharedHypergroup<f64> = Arc::new(bessel_kingman(1.0 / 64.0, 16.0).unwrap());
    let a0 = Semicharacter::certified(g.as_ref(), SemicharDescriptor::BesselSinh { rho: 0.5 }).unwrap();
    let d = deform(g, a0).unwrap();
    let report = check_axioms(&d, 20, 1);
    assert!(report.passed(), "{report:?}");
    let s3: SharedHypergroup<f64> = Arc::new(finite_double_coset(GroupTable::symmetric(3), &[0, 1]).unwrap());
    let one = Semicharacter::certified(s3.as_ref(), SemicharDescriptor::Constant {}).unwrap();
    assert!(check_axioms(&deform(s3, one).unwrap(), 30, 2).passed());
}
