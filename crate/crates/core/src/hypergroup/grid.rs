//! Hypergroups on `[0, ∞)` discretized on a uniform grid.
//!
//! The kernel `δx * δy` has a density `c(x, y) f(z)` on `[|x - y|, x + y]`.
//! On the grid its weights are composite Simpson weights of `f` over the
//! support (which always spans an even number of cells), normalized to unit
//! mass. The resulting discrete kernels are associative to rounding, and their
//! characters agree with the continuous ones to `O(h⁴)`.

use super::Hypergroup;
use crate::descriptor::{BaseModel, ModelDescriptor};
use crate::error::{Error, Result};
use crate::measure::{Measure, EPS_MASS_GRID};
use crate::scalar::Real;
use crate::space::{Coord, Grid, Ground, SpaceId};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GridDensity {
    /// `z / (2xy)`: radial part of `ℝ³` under `SO(3)`.
    BesselKingman,
    /// `sinh z / (2 sinh x sinh y)`: `SL(2, ℂ)//SU(2)`.
    Hyperbolic,
}

impl GridDensity {
    fn name(self) -> &'static str {
        match self {
            GridDensity::BesselKingman => "bessel_kingman",
            GridDensity::Hyperbolic => "hyperbolic",
        }
    }
}

#[derive(Clone, Debug)]
pub struct GridModel<S> {
    space: SpaceId,
    grid: Grid,
    density: GridDensity,
    // f(z_k) on every node
    profile: Vec<S>,
    haar: Vec<S>,
}

pub fn bessel_kingman<S: Real>(h: f64, x_max: f64) -> Result<GridModel<S>> {
    GridModel::new(GridDensity::BesselKingman, h, x_max)
}

pub fn hyperbolic<S: Real>(h: f64, x_max: f64) -> Result<GridModel<S>> {
    GridModel::new(GridDensity::Hyperbolic, h, x_max)
}

impl<S: Real> GridModel<S> {
    pub fn new(density: GridDensity, h: f64, x_max: f64) -> Result<Self> {
        let grid = Grid::new(h, x_max)?;
        let step = S::of(h);
        let profile: Vec<S> = (0..=grid.last_node())
            .map(|k| {
                let z = S::of(grid.position(k));
                match density {
                    GridDensity::BesselKingman => z,
                    GridDensity::Hyperbolic => z.sinh(),
                }
            })
            .collect();
        // The origin carries the mass of its half cell, h³/24 ≈ ∫₀^{h/2} z² dz.
        let origin = step * step * step / S::of(24.0);
        let haar = profile.iter().enumerate().map(|(k, f)| if k == 0 { origin } else { step * *f * *f }).collect();
        let space = SpaceId::new(format!("halfline[h={h};x_max={}]", grid.x_max()));
        Ok(GridModel { space, grid, density, profile, haar })
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn density(&self) -> GridDensity {
        self.density
    }

    fn node(&self, c: &Coord) -> Result<u32> {
        match c {
            Coord::Node(k) if *k <= self.grid.last_node() => Ok(*k),
            _ => Err(Error::CoordKind(format!("{c:?} is not a node of the grid [0, {}]", self.grid.x_max()))),
        }
    }
}

impl<S: Real> Hypergroup<S> for GridModel<S> {
    fn label(&self) -> String {
        format!("{}[h={};x_max={}]", self.density.name(), self.grid.step(), self.grid.x_max())
    }

    fn space(&self) -> &SpaceId {
        &self.space
    }

    fn ground(&self) -> Ground {
        Ground::Grid(self.grid)
    }

    fn identity(&self) -> Coord {
        Coord::Node(0)
    }

    fn involution(&self, x: &Coord) -> Coord {
        x.clone()
    }

    fn kernel(&self, x: &Coord, y: &Coord) -> Result<Measure<S>> {
        let (i, j) = (self.node(x)?, self.node(y)?);
        if i + j > self.grid.last_node() {
            return Err(Error::GridOverflow { x: self.grid.position(i), y: self.grid.position(j), x_max: self.grid.x_max() });
        }
        if i == 0 || j == 0 {
            return Ok(self.dirac(Coord::Node(i.max(j))));
        }
        let (lo, hi) = (i.abs_diff(j), i + j);
        let (two, four) = (S::of(2.0), S::of(4.0));
        let mut entries = Vec::with_capacity((hi - lo + 1) as usize);
        let mut total = S::zero();
        for k in lo..=hi {
            let q = if k == lo || k == hi {
                S::one()
            } else if (k - lo) % 2 == 1 {
                four
            } else {
                two
            };
            let w = q * self.profile[k as usize];
            if w != S::zero() {
                total = total + w;
                entries.push((Coord::Node(k), w));
            }
        }
        entries.iter_mut().for_each(|(_, w)| *w = *w / total);
        Ok(Measure::from_sorted(self.space.clone(), entries))
    }

    fn haar(&self, x: &Coord) -> S {
        match x {
            Coord::Node(k) if (*k as usize) < self.haar.len() => self.haar[*k as usize],
            _ => S::zero(),
        }
    }

    fn mass_tolerance(&self) -> f64 {
        EPS_MASS_GRID
    }

    fn descriptor(&self) -> ModelDescriptor {
        let (h, x_max) = (self.grid.step(), self.grid.x_max());
        ModelDescriptor::Base(match self.density {
            GridDensity::BesselKingman => BaseModel::BesselKingman { h, x_max },
            GridDensity::Hyperbolic => BaseModel::Hyperbolic { h, x_max },
        })
    }
}
