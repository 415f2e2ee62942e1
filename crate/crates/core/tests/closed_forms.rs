//! Reference values with known closed forms.

use std::sync::Arc;

use hgdeform_core::orbit::{weyl_data, WeylFamily};
use hgdeform_core::semichar::{default_probes, rho_of, SlProfile};
use hgdeform_core::{
    chebyshev_hypergroup, deform, deform_semigroup, poisson, r_transform, Coord, Hypergroup, Measure, SemicharDescriptor, Semicharacter,
    SharedHypergroup,
};

fn chebyshev() -> SharedHypergroup<f64> {
    Arc::new(chebyshev_hypergroup::<f64>())
}

fn t2(h: &SharedHypergroup<f64>) -> Semicharacter<f64> {
    Semicharacter::certified(h.as_ref(), SemicharDescriptor::Chebyshev { c: 2.0 }).unwrap()
}

#[test]
fn deformed_chebyshev_unit_kernel() {
    let h = chebyshev();
    let d = deform(h.clone(), t2(&h)).unwrap();
    let k = d.kernel(&Coord::Index(1), &Coord::Index(1)).unwrap();
    assert_eq!(k.weight_at(&Coord::Index(0)), 0.125);
    assert_eq!(k.weight_at(&Coord::Index(2)), 0.875);
    assert_eq!(k.len(), 2);
}

#[test]
fn deformed_haar_weights() {
    // ω = 1 at 0 and 2 elsewhere; T_n(2)² scales it
    let h = chebyshev();
    let d = deform(h.clone(), t2(&h)).unwrap();
    assert_eq!(d.haar(&Coord::Index(0)), 1.0);
    assert_eq!(d.haar(&Coord::Index(1)), 8.0);
    assert_eq!(d.haar(&Coord::Index(2)), 98.0);
}

#[test]
fn deformed_unit_jump_semigroup() {
    let h = chebyshev();
    let s = poisson(h.clone(), h.dirac(Coord::Index(1))).unwrap();
    let d = deform_semigroup(&s, t2(&h)).unwrap();
    assert_eq!(d.c, 1.0);
    assert_eq!(d.deformed.levy_measure().measure, Measure::new(h.space().clone(), [(Coord::Index(1), 2.0)]));
    for t in [0.25, 1.0, 3.0] {
        let phi = d.phi(t, 1e-14).unwrap();
        assert!((phi - f64::exp(t)).abs() < 1e-12 * phi, "t = {t}");
    }
}

#[test]
fn r_transform_of_a_two_point_measure() {
    // ½δ0 + ½δ2 is reweighted by (1, 7)/8
    let h = chebyshev();
    let mu = Measure::new(h.space().clone(), [(Coord::Index(0), 0.5), (Coord::Index(2), 0.5)]);
    let r = r_transform(&t2(&h), &mu).unwrap();
    assert_eq!(r.weight_at(&Coord::Index(0)), 0.125);
    assert_eq!(r.weight_at(&Coord::Index(2)), 0.875);
}

#[test]
fn weyl_rho_vectors() {
    let rho = |f, d| weyl_data(f, d).unwrap().rho;
    assert_eq!(rho(WeylFamily::A, 4), [3.0, 1.0, -1.0, -3.0]);
    assert_eq!(rho(WeylFamily::A, 3), [2.0, 0.0, -2.0]);
    assert_eq!(rho(WeylFamily::B, 3), [5.0, 3.0, 1.0]);
    assert_eq!(rho(WeylFamily::C, 3), [6.0, 4.0, 2.0]);
    assert_eq!(rho(WeylFamily::D, 4), [6.0, 4.0, 2.0, 0.0]);
    assert_eq!(rho(WeylFamily::D, 5), [8.0, 6.0, 4.0, 2.0, 0.0]);
}

#[test]
fn growth_exponents_of_profiles() {
    let power = SlProfile::power(2.0).unwrap();
    let r = rho_of(&power, &default_probes(8.0)).unwrap();
    assert!(r.value.abs() < 1e-6, "{r:?}");
    for k in [1.0, 2.0, 3.0] {
        let p = SlProfile::sinh_power(k).unwrap();
        let r = rho_of(&p, &default_probes(8.0)).unwrap();
        assert!((r.value - k / 2.0).abs() < 1e-5, "k = {k}: {r:?}");
    }
}
