//! Deformation of a hypergroup by a positive semicharacter:
//! `μ • ν = α₀((α₀⁻¹μ) * (α₀⁻¹ν))`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::descriptor::ModelDescriptor;
use crate::error::{Error, Result};
use crate::hypergroup::{Hypergroup, SharedHypergroup};
use crate::measure::Measure;
use crate::scalar::Real;
use crate::semichar::{dual_map, SemicharDescriptor, Semicharacter};
use crate::space::{Coord, Ground, SpaceId};

/// Serialized form of a deformed model.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeformedDescriptor {
    pub base: Box<ModelDescriptor>,
    pub alpha0: SemicharDescriptor,
}

/// The hypergroup `(X, •)` with kernel `α₀ (δx * δy) / (α₀(x) α₀(y))` and
/// Haar measure `α₀² ω`.
#[derive(Clone)]
pub struct Deformed<S> {
    base: SharedHypergroup<S>,
    alpha0: Semicharacter<S>,
    label: String,
}

impl<S> std::fmt::Debug for Deformed<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Deformed").field("label", &self.label).finish()
    }
}

/// Deforms `base` by a positive semicharacter certified on it.
pub fn deform<S: Real>(base: SharedHypergroup<S>, alpha0: Semicharacter<S>) -> Result<Deformed<S>> {
    if alpha0.space() != base.space() {
        return Err(Error::space_mismatch(base.space(), alpha0.space()));
    }
    if !alpha0.is_positive() {
        return Err(Error::NotPositive(format!("{:?}", alpha0.descriptor())));
    }
    let tolerance = base.mass_tolerance();
    let label = base.label();
    match alpha0.certificate() {
        Some(c) if c.hypergroup == label && c.mult_defect <= tolerance => {}
        Some(c) if c.hypergroup == label => {
            return Err(Error::UncertifiedSemicharacter { hypergroup: label, defect: c.mult_defect, tolerance })
        }
        _ => return Err(Error::UncertifiedSemicharacter { hypergroup: label, defect: f64::INFINITY, tolerance }),
    }
    let label = format!("{label}•{}", serde_json::to_string(alpha0.descriptor()).expect("descriptor serializes"));
    Ok(Deformed { base, alpha0, label })
}

impl<S: Real> Deformed<S> {
    pub fn base(&self) -> &SharedHypergroup<S> {
        &self.base
    }

    pub fn alpha0(&self) -> &Semicharacter<S> {
        &self.alpha0
    }

    /// `α ↦ α/α₀`, certified on this deformed hypergroup.
    pub fn dual(&self, alpha: &Semicharacter<S>, n_samples: usize, seed: u64) -> Result<Semicharacter<S>> {
        Ok(dual_map(alpha, &self.alpha0)?.certify(self, n_samples, seed))
    }
}

impl<S: Real> Hypergroup<S> for Deformed<S> {
    fn label(&self) -> String {
        self.label.clone()
    }

    fn space(&self) -> &SpaceId {
        self.base.space()
    }

    fn ground(&self) -> Ground {
        self.base.ground()
    }

    fn identity(&self) -> Coord {
        self.base.identity()
    }

    fn involution(&self, x: &Coord) -> Coord {
        self.base.involution(x)
    }

    fn kernel(&self, x: &Coord, y: &Coord) -> Result<Measure<S>> {
        let k = self.base.kernel(x, y)?;
        let norm = self.alpha0.eval(x) * self.alpha0.eval(y);
        Ok(k.weighted_by(|z| self.alpha0.eval(z) / norm))
    }

    fn haar(&self, x: &Coord) -> S {
        let a = self.alpha0.eval(x);
        a * a * self.base.haar(x)
    }

    fn mass_tolerance(&self) -> f64 {
        self.base.mass_tolerance()
    }

    fn condition_factor(&self, x: &Coord, y: &Coord) -> Result<f64> {
        let k = self.base.kernel(x, y)?;
        let (lo, hi) = k.support().map(|z| self.alpha0.eval(z)).fold((S::infinity(), S::zero()), |(lo, hi), a| (lo.min(a), hi.max(a)));
        let local = if k.is_empty() { 1.0 } else { (hi / lo).lossy_f64() };
        Ok(local * self.base.condition_factor(x, y)?)
    }

    fn descriptor(&self) -> ModelDescriptor {
        ModelDescriptor::Deformed(DeformedDescriptor { base: Box::new(self.base.descriptor()), alpha0: self.alpha0.descriptor().clone() })
    }
}

/// `R_{α₀}(μ) = α₀μ / ∫α₀ dμ` for a nonzero positive measure.
pub fn r_transform<S: Real>(alpha0: &Semicharacter<S>, mu: &Measure<S>) -> Result<Measure<S>> {
    if mu.space() != alpha0.space() {
        return Err(Error::space_mismatch(alpha0.space(), mu.space()));
    }
    if !alpha0.is_positive() {
        return Err(Error::NotPositive(format!("{:?}", alpha0.descriptor())));
    }
    if let Some(c) = mu.first_negative() {
        return Err(Error::NotPositiveMeasure(format!("{c:?}")));
    }
    if mu.is_empty() {
        return Err(Error::ZeroMeasure);
    }
    let total = mu.integrate(|c| alpha0.eval(c));
    Ok(mu.weighted_by(|c| alpha0.eval(c) / total))
}

/// `(deform(deform(H, α₀), β₀), deform(H, α₀β₀))`. `β₀` must be certified on
/// `deform(H, α₀)`; the product is certified on `H` with `β₀`'s settings.
pub fn transitivity_compose<S: Real>(
    base: SharedHypergroup<S>,
    alpha0: Semicharacter<S>,
    beta0: Semicharacter<S>,
) -> Result<(Deformed<S>, Deformed<S>)> {
    let (samples, seed) =
        beta0.certificate().map_or((crate::semichar::DEFAULT_CERT_SAMPLES, crate::semichar::DEFAULT_CERT_SEED), |c| (c.samples, c.seed));
    let product = alpha0.product(&beta0)?.certify(base.as_ref(), samples, seed);
    let once = Arc::new(deform(base.clone(), alpha0)?);
    let twice = deform(once, beta0)?;
    let direct = deform(base, product)?;
    Ok((twice, direct))
}
