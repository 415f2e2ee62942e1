//! Poisson convolution semigroups `μ_t = e^{-t‖ρ‖} exp(tρ)`, their Lévy
//! measures, deformation and generator matrices.

use std::sync::Arc;

use crate::algebra::exp_series_with_growth;
use crate::deformation::{deform, r_transform, Deformed};
use crate::error::{Error, Result};
use crate::hypergroup::{Hypergroup, SharedHypergroup};
use crate::measure::Measure;
use crate::scalar::Real;
use crate::semichar::Semicharacter;
use crate::space::Coord;

/// Default truncation tolerance of the exponential series.
pub const DEFAULT_SERIES_TOL: f64 = 1e-12;

#[derive(Clone)]
pub struct PoissonSemigroup<S> {
    hg: SharedHypergroup<S>,
    jump: Measure<S>,
    rate: S,
}

impl<S> std::fmt::Debug for PoissonSemigroup<S>
where
    S: std::fmt::Debug,
{
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PoissonSemigroup").field("jump", &self.jump).field("rate", &self.rate).finish()
    }
}

/// The Poisson semigroup with jump measure `jump`. Any mass at the identity
/// is dropped: it cancels against the normalization.
pub fn poisson<S: Real>(hg: SharedHypergroup<S>, jump: Measure<S>) -> Result<PoissonSemigroup<S>> {
    if jump.space() != hg.space() {
        return Err(Error::space_mismatch(hg.space(), jump.space()));
    }
    if let Some(c) = jump.first_negative() {
        return Err(Error::NotPositiveMeasure(format!("{c:?}")));
    }
    for c in jump.support() {
        hg.ground().check(c)?;
    }
    let (jump, _) = jump.without(&hg.identity());
    let rate = jump.tv_norm();
    Ok(PoissonSemigroup { hg, jump, rate })
}

/// A Lévy measure: nonnegative with no mass at the identity.
#[derive(Clone, Debug, PartialEq)]
pub struct LevyMeasure<S> {
    pub measure: Measure<S>,
}

impl<S: Real> PoissonSemigroup<S> {
    pub fn hypergroup(&self) -> &SharedHypergroup<S> {
        &self.hg
    }

    pub fn jump(&self) -> &Measure<S> {
        &self.jump
    }

    pub fn rate(&self) -> S {
        self.rate
    }

    /// `μ_t` with total-variation truncation error at most `eps`.
    pub fn eval(&self, t: S, eps: f64) -> Result<Measure<S>> {
        self.eval_with_growth(t, eps, 0.0)
    }

    /// `μ_t`, truncated late enough that the tail stays below `eps` even when
    /// weighted by a function `g` with `∫g dρ^{*n} ≤ growthⁿ`.
    pub fn eval_with_growth(&self, t: S, eps: f64, growth: f64) -> Result<Measure<S>> {
        let damp = (-t * self.rate).exp();
        let budget = eps * (t * self.rate.max(S::of(growth))).lossy_f64().exp();
        let (series, _) = exp_series_with_growth(self.hg.as_ref(), &self.jump, t, budget, growth)?;
        Ok(series.scale(damp))
    }

    pub fn levy_measure(&self) -> LevyMeasure<S> {
        LevyMeasure { measure: self.jump.clone() }
    }

    /// The Lévy measure vanishes.
    pub fn is_gaussian(&self) -> bool {
        self.jump.is_empty()
    }

    /// `(1/t) ∫f dμ_t` for each `t`; `f` must vanish at the identity.
    pub fn levy_limit_estimate(&self, f: impl Fn(&Coord) -> S, times: &[S], eps: f64) -> Result<Vec<S>> {
        if f(&self.hg.identity()) != S::zero() {
            return Err(Error::BadTestFunction);
        }
        times
            .iter()
            .map(|&t| {
                if !(t > S::zero()) {
                    return Err(Error::Invalid(format!("times must be positive, got {t}")));
                }
                Ok(self.eval(t, eps)?.integrate(&f) / t)
            })
            .collect()
    }

    /// Generator `A = C_{ρ⁻} - ‖ρ‖ I` on functions supported in `basis`, with
    /// `C_{ρ⁻} f(x) = ∫ f d(δx * ρ⁻)`. Rows whose kernels leak more than
    /// `tolerance` outside the basis are flagged as boundary rows.
    pub fn generator_matrix(&self, basis: &[Coord], tolerance: f64) -> Result<GeneratorMatrix<S>> {
        if !(tolerance >= 0.0) {
            return Err(Error::BadTolerance(tolerance));
        }
        let n = basis.len();
        let mut matrix = vec![vec![S::zero(); n]; n];
        let mut leaks = vec![0.0; n];
        for (i, x) in basis.iter().enumerate() {
            let mut row = Measure::zero(self.hg.space().clone());
            for (y, w) in self.jump.iter() {
                row = row.add(&self.hg.kernel(x, &self.hg.involution(y))?.scale(*w))?;
            }
            let mut inside = S::zero();
            for (j, z) in basis.iter().enumerate() {
                let w = row.weight_at(z);
                matrix[i][j] = w;
                inside = inside + w;
            }
            leaks[i] = (row.mass() - inside).lossy_f64().abs();
            matrix[i][i] = matrix[i][i] - self.rate;
        }
        let boundary: Vec<bool> = leaks.iter().map(|&l| l > tolerance).collect();
        if n > 0 && boundary.iter().all(|&b| b) {
            return Err(Error::TruncationError { tolerance });
        }
        Ok(GeneratorMatrix { basis: basis.to_vec(), matrix, c: S::zero(), leaks, boundary })
    }
}

/// Dense generator on a finite basis.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorMatrix<S> {
    pub basis: Vec<Coord>,
    pub matrix: Vec<Vec<S>>,
    /// Deformation exponent `c`; zero for an undeformed semigroup.
    pub c: S,
    /// Mass of each row's kernel falling outside the basis.
    pub leaks: Vec<f64>,
    pub boundary: Vec<bool>,
}

impl<S: Real> GeneratorMatrix<S> {
    pub fn interior_rows(&self) -> impl Iterator<Item = usize> + '_ {
        self.boundary.iter().enumerate().filter(|(_, b)| !**b).map(|(i, _)| i)
    }
}

/// The semigroup `R_{α₀}(μ_t)` on the deformed hypergroup.
#[derive(Clone, Debug)]
pub struct DeformedSemigroup<S> {
    pub base: PoissonSemigroup<S>,
    pub deformed: PoissonSemigroup<S>,
    /// `c = ∫α₀ dρ - ‖ρ‖`, so that `∫α₀ dμ_t = e^{ct}`.
    pub c: S,
    alpha0: Semicharacter<S>,
}

/// Deforms a Poisson semigroup: the jump becomes `α₀ρ` on `(X, •)`.
pub fn deform_semigroup<S: Real>(s: &PoissonSemigroup<S>, alpha0: Semicharacter<S>) -> Result<DeformedSemigroup<S>> {
    let hg: Arc<Deformed<S>> = Arc::new(deform(s.hg.clone(), alpha0.clone())?);
    let jump = s.jump.weighted_by(|c| alpha0.eval(c));
    let deformed = poisson(hg, jump)?;
    let c = deformed.rate - s.rate;
    Ok(DeformedSemigroup { base: s.clone(), deformed, c, alpha0 })
}

impl<S: Real> DeformedSemigroup<S> {
    pub fn alpha0(&self) -> &Semicharacter<S> {
        &self.alpha0
    }

    /// `R_{α₀}(μ_t)` computed from the undeformed semigroup.
    pub fn transported(&self, t: S, eps: f64) -> Result<Measure<S>> {
        let mu = self.base.eval_with_growth(t, eps, self.deformed.rate.lossy_f64())?;
        r_transform(&self.alpha0, &mu)
    }

    /// `φ(t) = ∫α₀ dμ_t`.
    pub fn phi(&self, t: S, eps: f64) -> Result<S> {
        let mu = self.base.eval_with_growth(t, eps, self.deformed.rate.lossy_f64())?;
        Ok(mu.integrate(|c| self.alpha0.eval(c)))
    }

    /// Max-abs entry of `A^{α₀} - (D_{1/α₀} A D_{α₀} - cI)` over rows that are
    /// interior for both generators.
    pub fn generator_check(&self, basis: &[Coord], tolerance: f64) -> Result<S> {
        let a = self.base.generator_matrix(basis, tolerance)?;
        let mut ad = self.deformed.generator_matrix(basis, tolerance)?;
        ad.c = self.c;
        let alpha: Vec<S> = basis.iter().map(|b| self.alpha0.eval(b)).collect();
        let mut worst = S::zero();
        for i in a.interior_rows().filter(|&i| !ad.boundary[i]) {
            for j in 0..basis.len() {
                let mut conj = a.matrix[i][j] * alpha[j] / alpha[i];
                if i == j {
                    conj = conj - self.c;
                }
                worst = worst.max((ad.matrix[i][j] - conj).abs());
            }
        }
        Ok(worst)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergroup::{chebyshev_hypergroup, finite_double_coset, GroupTable};
    use crate::semichar::SemicharDescriptor;

    fn cheb() -> SharedHypergroup<f64> {
        Arc::new(chebyshev_hypergroup::<f64>())
    }

    fn delta(hg: &SharedHypergroup<f64>, n: u32) -> Measure<f64> {
        hg.dirac(Coord::Index(n))
    }

    #[test]
    fn identity_jump_is_gaussian() {
        let h = cheb();
        let s = poisson(h.clone(), delta(&h, 0)).unwrap();
        assert!(s.is_gaussian());
        assert_eq!(s.eval(2.0, 1e-12).unwrap(), delta(&h, 0));
        let g = s.generator_matrix(&[Coord::Index(0), Coord::Index(1)], 0.0).unwrap();
        assert!(g.matrix.iter().flatten().all(|&v| v == 0.0));
    }

    #[test]
    fn generator_pattern() {
        let h = cheb();
        let s = poisson(h.clone(), delta(&h, 1)).unwrap();
        let basis: Vec<Coord> = (0..=10).map(Coord::Index).collect();
        let g = s.generator_matrix(&basis, 1e-15).unwrap();
        assert_eq!(g.matrix[0][0], -1.0);
        assert_eq!(g.matrix[0][1], 1.0);
        assert_eq!(g.matrix[5][4], 0.5);
        assert_eq!(g.matrix[5][6], 0.5);
        assert_eq!(g.matrix[5][5], -1.0);
        assert!(g.boundary[10] && !g.boundary[9]);
        assert_eq!(g.leaks[10], 0.5);
        let err = s.generator_matrix(&[Coord::Index(7)], 0.0).unwrap_err();
        assert!(matches!(err, Error::TruncationError { .. }));
    }

    #[test]
    fn finite_model_generator_has_no_leak() {
        let g = GroupTable::symmetric(3);
        let k = g.generated(&[2]);
        let h: SharedHypergroup<f64> = Arc::new(finite_double_coset(g, &k).unwrap());
        let s = poisson(h.clone(), h.dirac(Coord::Index(1))).unwrap();
        let gen = s.generator_matrix(&[Coord::Index(0), Coord::Index(1)], 0.0).unwrap();
        assert!(gen.leaks.iter().all(|&l| l == 0.0));
        // rows sum to zero
        assert!(gen.matrix.iter().all(|r| r.iter().sum::<f64>().abs() < 1e-15));
    }

    #[test]
    fn levy_limit_rejects_bad_test_functions() {
        let h = cheb();
        let s = poisson(h.clone(), delta(&h, 1)).unwrap();
        assert_eq!(s.levy_limit_estimate(|_| 1.0, &[0.1], 1e-12), Err(Error::BadTestFunction));
        assert_eq!(s.levy_limit_estimate(|_| 0.0, &[0.1, 0.01], 1e-12).unwrap(), vec![0.0, 0.0]);
    }

    #[test]
    fn strip_identity_mass() {
        let h = cheb();
        let jump = delta(&h, 0).scale(0.3).add(&delta(&h, 2)).unwrap();
        let s = poisson(h.clone(), jump).unwrap();
        assert_eq!(s.levy_measure().measure, delta(&h, 2));
        assert_eq!(s.rate(), 1.0);
        assert!(poisson(h.clone(), delta(&h, 1).scale(-1.0)).is_err());
    }

    #[test]
    fn deformation_of_gaussian_is_gaussian() {
        let h = cheb();
        let s = poisson(h.clone(), delta(&h, 0)).unwrap();
        let a0 = Semicharacter::certified(h.as_ref(), SemicharDescriptor::Cosh { s: 0.7 }).unwrap();
        let d = deform_semigroup(&s, a0).unwrap();
        assert!(d.deformed.is_gaussian());
        assert_eq!(d.c, 0.0);
    }
}
