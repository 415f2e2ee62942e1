//! Commutative hypergroups: the trait, the shipped models and the axiom checker.

use std::sync::Arc;

use crate::descriptor::ModelDescriptor;
use crate::error::Result;
use crate::measure::Measure;
use crate::scalar::Weight;
use crate::space::{Coord, Ground, SpaceId};

mod axioms;
mod chebyshev;
mod double_coset;
mod grid;

pub use axioms::{check_axioms, AxiomReport};
pub use chebyshev::{chebyshev_hypergroup, Chebyshev};
pub use double_coset::{finite_double_coset, DoubleCoset, GroupTable};
pub use grid::{bessel_kingman, hyperbolic, GridDensity, GridModel};

/// A commutative hypergroup on a ground space. Implementations are immutable
/// and cheap to share across threads.
pub trait Hypergroup<S: Weight>: Send + Sync {
    /// Identifies the convolution structure (distinct for every deformation).
    fn label(&self) -> String;

    /// Identifies the ground space (shared by a model and its deformations).
    fn space(&self) -> &SpaceId;

    fn ground(&self) -> Ground;

    fn identity(&self) -> Coord;

    fn involution(&self, x: &Coord) -> Coord;

    /// The structure kernel `δx * δy`.
    fn kernel(&self, x: &Coord, y: &Coord) -> Result<Measure<S>>;

    /// Weight of the Haar measure at a point (or grid node).
    fn haar(&self, x: &Coord) -> S;

    /// Tolerance `ε_mass` for mass and axiom defects.
    fn mass_tolerance(&self) -> f64;

    /// Error amplification of the kernel at `(x, y)` relative to the
    /// undeformed base model.
    fn condition_factor(&self, _x: &Coord, _y: &Coord) -> Result<f64> {
        Ok(1.0)
    }

    fn descriptor(&self) -> ModelDescriptor;

    /// The point at position `x` (snapped to the grid for grid models).
    fn point(&self, x: f64) -> Result<Coord> {
        self.ground().coord_at(x)
    }

    fn position(&self, c: &Coord) -> f64 {
        self.ground().position(c)
    }

    fn dirac(&self, c: Coord) -> Measure<S> {
        Measure::dirac(self.space().clone(), c)
    }
}

pub type SharedHypergroup<S> = Arc<dyn Hypergroup<S>>;

impl<S: Weight, H: Hypergroup<S> + ?Sized> Hypergroup<S> for Arc<H> {
    fn label(&self) -> String {
        (**self).label()
    }
    fn space(&self) -> &SpaceId {
        (**self).space()
    }
    fn ground(&self) -> Ground {
        (**self).ground()
    }
    fn identity(&self) -> Coord {
        (**self).identity()
    }
    fn involution(&self, x: &Coord) -> Coord {
        (**self).involution(x)
    }
    fn kernel(&self, x: &Coord, y: &Coord) -> Result<Measure<S>> {
        (**self).kernel(x, y)
    }
    fn haar(&self, x: &Coord) -> S {
        (**self).haar(x)
    }
    fn mass_tolerance(&self) -> f64 {
        (**self).mass_tolerance()
    }
    fn condition_factor(&self, x: &Coord, y: &Coord) -> Result<f64> {
        (**self).condition_factor(x, y)
    }
    fn descriptor(&self) -> ModelDescriptor {
        (**self).descriptor()
    }
}
