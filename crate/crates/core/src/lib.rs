//! Commutative hypergroups, their deformations by positive semicharacters,
//! and Poisson convolution semigroups.
//!
//! Measures and the discrete models are generic over [`Weight`], which
//! includes exact rationals; anything that evaluates transcendental
//! functions is generic over [`Real`] (`f32` or `f64`).

pub mod algebra;
pub mod deformation;
pub mod descriptor;
pub mod error;
pub mod hypergroup;
pub mod io;
pub mod measure;
pub mod orbit;
pub mod scalar;
pub mod semichar;
pub mod semigroup;
pub mod space;

pub use algebra::{convolve, exp_series, translate_function};
pub use deformation::{deform, r_transform, transitivity_compose, Deformed, DeformedDescriptor};
pub use descriptor::{BaseModel, ModelDescriptor};
pub use error::{Error, Result};
pub use hypergroup::{
    bessel_kingman, chebyshev_hypergroup, check_axioms, finite_double_coset, hyperbolic, AxiomReport, Chebyshev, DoubleCoset, GridModel,
    GroupTable, Hypergroup, SharedHypergroup,
};
pub use measure::{Measure, EPS_MASS_DISCRETE, EPS_MASS_GRID};
pub use scalar::{Real, Weight};
pub use semichar::{dual_map, exponentiality_estimate, is_multiplicative, SemicharDescriptor, Semicharacter};
pub use semigroup::{deform_semigroup, poisson, DeformedSemigroup, GeneratorMatrix, LevyMeasure, PoissonSemigroup};
pub use space::{Coord, Grid, Ground, Point, SpaceId};

pub type Measure64 = Measure<f64>;
pub type Measure32 = Measure<f32>;
/// Measures with exact rational weights.
pub type ExactMeasure = Measure<num_rational::Rational64>;
pub type Hypergroup64 = SharedHypergroup<f64>;
pub type Semicharacter64 = Semicharacter<f64>;
pub type Deformed64 = Deformed<f64>;
pub type Poisson64 = PoissonSemigroup<f64>;
pub type GridModel64 = GridModel<f64>;
pub type Chebyshev64 = Chebyshev<f64>;
pub type ExactChebyshev = Chebyshev<num_rational::Rational64>;
