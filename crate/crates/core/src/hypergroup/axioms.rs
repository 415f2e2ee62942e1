use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::Hypergroup;
use crate::algebra::convolve;
use crate::error::Result;
use crate::measure::Measure;
use crate::scalar::Weight;
use crate::space::{Coord, Ground};

/// Sampled defects of the hypergroup axioms.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AxiomReport {
    pub associativity_defect: f64,
    pub identity_defect: f64,
    pub commutativity_defect: f64,
    /// Relative defect `|ω(f) - ω(f_y)| / ω(|f|)` over bump functions.
    pub haar_invariance_defect: f64,
    pub sample_count: usize,
    /// The model's `ε_mass`.
    pub tolerance: f64,
    /// Largest condition factor met among the sampled kernels.
    pub condition_factor: f64,
}

impl AxiomReport {
    pub fn max_defect(&self) -> f64 {
        [self.associativity_defect, self.identity_defect, self.commutativity_defect, self.haar_invariance_defect]
            .into_iter()
            .fold(0.0, f64::max)
    }

    /// Every defect is within `ε_mass` times the condition factor.
    pub fn passed(&self) -> bool {
        self.max_defect() <= self.tolerance * self.condition_factor
    }
}

/// Range of positions used for sampled points: a third of the grid so that
/// triple sums stay on it, or the whole sampling range otherwise.
pub(crate) fn sampling_range(ground: &Ground) -> f64 {
    match ground {
        Ground::Grid(g) => g.x_max() / 3.0,
        _ => ground.max_position(),
    }
}

/// Bumps `(center, radius)` in units of the sampling range.
const BUMPS: [(f64, f64); 5] = [(0.0, 0.25), (0.3, 0.15), (0.5, 0.3), (0.9, 0.2), (1.0, 0.3)];

/// Smallest position increment of the ground space.
fn unit(ground: &Ground) -> f64 {
    match ground {
        Ground::Grid(g) => g.step(),
        _ => 1.0,
    }
}

/// `f(z) = (1 - ((z - c)/r)²)²` inside the bump, zero outside.
fn bump<S: Weight>(ground: Ground, center: f64, radius: f64) -> impl Fn(&Coord) -> S {
    let c = S::from_f64(center).expect("finite center");
    let r = S::from_f64(radius).expect("finite radius");
    move |z| {
        let u = (S::from_f64(ground.position(z)).expect("finite position") - c.clone()) / r.clone();
        let s = S::one() - u.clone() * u;
        if s <= S::zero() {
            S::zero()
        } else {
            s.clone() * s
        }
    }
}

fn tv<S: Weight>(a: &Measure<S>, b: &Measure<S>) -> f64 {
    a.tv_distance(b).map_or(f64::INFINITY, |d| d.lossy_f64())
}

fn or_inf(r: Result<f64>) -> f64 {
    r.unwrap_or(f64::INFINITY)
}

/// Samples the hypergroup axioms. Kernel failures count as infinite defects.
pub fn check_axioms<S: Weight>(hg: &dyn Hypergroup<S>, n_samples: usize, seed: u64) -> AxiomReport {
    let n_samples = n_samples.max(1);
    let ground = hg.ground();
    let range = sampling_range(&ground);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let e = hg.identity();
    let mut report = AxiomReport {
        associativity_defect: 0.0,
        identity_defect: 0.0,
        commutativity_defect: 0.0,
        haar_invariance_defect: 0.0,
        sample_count: n_samples,
        tolerance: hg.mass_tolerance(),
        condition_factor: 1.0,
    };

    for s in 0..n_samples {
        let x = ground.sample(&mut rng, range);
        let y = ground.sample(&mut rng, range);
        let z = ground.sample(&mut rng, range);
        let (dx, dy, dz) = (hg.dirac(x.clone()), hg.dirac(y.clone()), hg.dirac(z.clone()));

        let assoc = (|| -> Result<f64> {
            let left = convolve(hg, &convolve(hg, &dx, &dy)?, &dz)?;
            let right = convolve(hg, &dx, &convolve(hg, &dy, &dz)?)?;
            Ok(tv(&left, &right))
        })();
        report.associativity_defect = report.associativity_defect.max(or_inf(assoc));

        let ident = (|| -> Result<f64> { Ok(tv(&hg.kernel(&e, &x)?, &dx).max(tv(&hg.kernel(&x, &e)?, &dx))) })();
        report.identity_defect = report.identity_defect.max(or_inf(ident));

        let comm = (|| -> Result<f64> { Ok(tv(&hg.kernel(&x, &y)?, &hg.kernel(&y, &x)?)) })();
        report.commutativity_defect = report.commutativity_defect.max(or_inf(comm));

        let cond = (|| -> Result<f64> { Ok(hg.condition_factor(&x, &y)?.max(hg.condition_factor(&y, &z)?)) })();
        report.condition_factor = report.condition_factor.max(or_inf(cond));

        let (c, r) = BUMPS[s % BUMPS.len()];
        let u = unit(&ground);
        let (center, radius) = ((c * range / u).round() * u, (r * range / u).round().max(1.0) * u);
        let shift = ground.sample(&mut rng, 0.8 * range);
        report.haar_invariance_defect = report.haar_invariance_defect.max(or_inf(haar_defect(hg, center, radius, &shift)));
    }
    report
}

fn haar_defect<S: Weight>(hg: &dyn Hypergroup<S>, center: f64, radius: f64, y: &Coord) -> Result<f64> {
    let ground = hg.ground();
    let f = bump::<S>(ground, center, radius);
    let points = ground.points_up_to(center + radius + hg.position(y));
    let mut plain = S::zero();
    let mut translated = S::zero();
    for x in &points {
        let w = hg.haar(x);
        plain = plain + w.clone() * f(x);
        translated = translated + w * hg.kernel(y, x)?.integrate(&f);
    }
    Ok(((plain.clone() - translated).abs() / plain).lossy_f64())
}

#[cfg(test)]
mod tests {
    use num_rational::Rational64;

    use super::*;
    use crate::descriptor::ModelDescriptor;
    use crate::hypergroup::{chebyshev_hypergroup, Chebyshev};
    use crate::space::SpaceId;

    #[test]
    fn chebyshev_is_exact_over_rationals() {
        let h = chebyshev_hypergroup::<Rational64>();
        let report = check_axioms(&h, 100, 7);
        assert_eq!(report.max_defect(), 0.0);
        assert!(report.passed());
    }

    /// Chebyshev with every kernel scaled down to mass 0.9.
    struct Leaky(Chebyshev<f64>);

    impl Hypergroup<f64> for Leaky {
        fn label(&self) -> String {
            "leaky".into()
        }
        fn space(&self) -> &SpaceId {
            self.0.space()
        }
        fn ground(&self) -> Ground {
            self.0.ground()
        }
        fn identity(&self) -> Coord {
            self.0.identity()
        }
        fn involution(&self, x: &Coord) -> Coord {
            x.clone()
        }
        fn kernel(&self, x: &Coord, y: &Coord) -> Result<Measure<f64>> {
            Ok(self.0.kernel(x, y)?.scale(0.9))
        }
        fn haar(&self, x: &Coord) -> f64 {
            self.0.haar(x)
        }
        fn mass_tolerance(&self) -> f64 {
            self.0.mass_tolerance()
        }
        fn descriptor(&self) -> ModelDescriptor {
            self.0.descriptor()
        }
    }

    #[test]
    fn planted_mass_defect_fails() {
        let report = check_axioms(&Leaky(chebyshev_hypergroup()), 20, 1);
        assert!(report.identity_defect >= 0.1 - 1e-12);
        assert!(!report.passed());
    }
}
