use std::marker::PhantomData;

use super::Hypergroup;
use crate::descriptor::{BaseModel, ModelDescriptor};
use crate::error::Result;
use crate::measure::{Measure, EPS_MASS_DISCRETE};
use crate::scalar::Weight;
use crate::space::{Coord, Ground, SpaceId};

/// Largest index used when sampling points of `ℕ₀`.
pub const CHEBYSHEV_SAMPLE_CAP: u32 = 64;

/// The Chebyshev hypergroup on `ℕ₀` with `δm * δn = ½δ|m-n| + ½δ(m+n)`,
/// linearizing `cos(mθ)cos(nθ)`.
#[derive(Clone, Debug)]
pub struct Chebyshev<S> {
    space: SpaceId,
    _scalar: PhantomData<fn() -> S>,
}

pub fn chebyshev_hypergroup<S: Weight>() -> Chebyshev<S> {
    Chebyshev { space: SpaceId::new("chebyshev"), _scalar: PhantomData }
}

impl<S: Weight> Hypergroup<S> for Chebyshev<S> {
    fn label(&self) -> String {
        "chebyshev".into()
    }

    fn space(&self) -> &SpaceId {
        &self.space
    }

    fn ground(&self) -> Ground {
        Ground::Naturals { sample_cap: CHEBYSHEV_SAMPLE_CAP }
    }

    fn identity(&self) -> Coord {
        Coord::Index(0)
    }

    fn involution(&self, x: &Coord) -> Coord {
        x.clone()
    }

    fn kernel(&self, x: &Coord, y: &Coord) -> Result<Measure<S>> {
        self.ground().check(x)?;
        self.ground().check(y)?;
        let (m, n) = (x.label().unwrap_or(0), y.label().unwrap_or(0));
        if m == 0 || n == 0 {
            return Ok(self.dirac(Coord::Index(m.max(n))));
        }
        let half = S::from_ratio(1, 2);
        Ok(Measure::new(self.space.clone(), [(Coord::Index(m.abs_diff(n)), half.clone()), (Coord::Index(m + n), half)]))
    }

    fn haar(&self, x: &Coord) -> S {
        match x.label() {
            Some(0) => S::one(),
            _ => S::one() + S::one(),
        }
    }

    fn mass_tolerance(&self) -> f64 {
        EPS_MASS_DISCRETE
    }

    fn descriptor(&self) -> ModelDescriptor {
        ModelDescriptor::Base(BaseModel::Chebyshev {})
    }
}
