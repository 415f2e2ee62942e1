//! Orbit hypergroups of compact groups: Weyl chamber data, Haar sampling and
//! Monte Carlo orbit integrals.

mod characters;
mod haar;
mod weyl;

pub use characters::{exponentiality_bound_check, orbit_character_mc, positive_orbit_semicharacter_mc, BoundCheck, McEstimate};
pub use haar::{haar_orthogonal, haar_unitary, CompactGroup};
pub use weyl::{weyl_data, WeylChamberData, WeylFamily};
