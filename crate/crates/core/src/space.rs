//! Ground spaces and their points.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Identifies the ground space a point or measure belongs to. A hypergroup and
/// all of its deformations share one space.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SpaceId(Arc<str>);

impl SpaceId {
    pub fn new(id: impl AsRef<str>) -> Self {
        SpaceId(Arc::from(id.as_ref()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for SpaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SpaceId({})", self.0)
    }
}

impl fmt::Display for SpaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Raw coordinate of a point. Grid points are stored by node index so that
/// equality is exact; their position is `node * step`.
#[derive(Clone, Debug)]
pub enum Coord {
    Index(u32),
    Node(u32),
    Vector(Vec<f64>),
}

impl Coord {
    fn rank(&self) -> u8 {
        match self {
            Coord::Index(_) => 0,
            Coord::Node(_) => 1,
            Coord::Vector(_) => 2,
        }
    }

    /// The integer label of an index or node coordinate.
    pub fn label(&self) -> Option<u32> {
        match self {
            Coord::Index(i) | Coord::Node(i) => Some(*i),
            Coord::Vector(_) => None,
        }
    }
}

impl PartialEq for Coord {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Coord {}

impl PartialOrd for Coord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Coord {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Coord::Index(a), Coord::Index(b)) | (Coord::Node(a), Coord::Node(b)) => a.cmp(b),
            (Coord::Vector(a), Coord::Vector(b)) => {
                for (x, y) in a.iter().zip(b) {
                    match x.total_cmp(y) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                a.len().cmp(&b.len())
            }
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl Hash for Coord {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rank().hash(state);
        match self {
            Coord::Index(i) | Coord::Node(i) => i.hash(state),
            Coord::Vector(v) => v.iter().for_each(|x| x.to_bits().hash(state)),
        }
    }
}

/// A point together with the space it belongs to.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point {
    pub space: SpaceId,
    pub coord: Coord,
}

impl Point {
    pub fn new(space: SpaceId, coord: Coord) -> Self {
        Point { space, coord }
    }
}

/// Uniform grid `{0, h, 2h, ..., n h}` on the half line.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    step: f64,
    last: u32,
}

pub const DEFAULT_STEP: f64 = 1.0 / 64.0;
pub const DEFAULT_X_MAX: f64 = 16.0;

impl Grid {
    pub fn new(step: f64, x_max: f64) -> Result<Self> {
        if !(step > 0.0 && step.is_finite()) {
            return Err(Error::Invalid(format!("grid step must be positive, got {step}")));
        }
        if !(x_max > 0.0 && x_max.is_finite()) {
            return Err(Error::Invalid(format!("grid range must be positive, got {x_max}")));
        }
        let last = (x_max / step + 1e-9).floor();
        if last < 1.0 || last > u32::MAX as f64 / 4.0 {
            return Err(Error::Invalid(format!("grid with step {step} on [0, {x_max}] has {last} cells")));
        }
        Ok(Grid { step, last: last as u32 })
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn last_node(&self) -> u32 {
        self.last
    }

    pub fn x_max(&self) -> f64 {
        self.last as f64 * self.step
    }

    pub fn position(&self, node: u32) -> f64 {
        node as f64 * self.step
    }

    /// Rounds to the nearest node; positions farther than `h/2` from every
    /// node are rejected.
    pub fn snap(&self, x: f64) -> Result<u32> {
        let k = (x / self.step).round();
        if !x.is_finite() || k < 0.0 || k > self.last as f64 || (x - k * self.step).abs() > 0.5 * self.step * (1.0 + 1e-12) {
            return Err(Error::OffGrid(x));
        }
        Ok(k as u32)
    }
}

/// The shape of a hypergroup's ground space.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Ground {
    /// `ℕ₀`; sampling is restricted to `{0, ..., sample_cap}`.
    Naturals {
        sample_cap: u32,
    },
    Grid(Grid),
    Finite {
        size: u32,
    },
}

impl Ground {
    pub fn check(&self, c: &Coord) -> Result<()> {
        match (self, c) {
            (Ground::Naturals { .. }, Coord::Index(_)) => Ok(()),
            (Ground::Finite { size }, Coord::Index(i)) if i < size => Ok(()),
            (Ground::Grid(g), Coord::Node(k)) if *k <= g.last => Ok(()),
            _ => Err(Error::CoordKind(format!("{c:?} on {self:?}"))),
        }
    }

    /// Real position of a point on a one-dimensional ground space.
    pub fn position(&self, c: &Coord) -> f64 {
        match (self, c) {
            (Ground::Grid(g), Coord::Node(k)) => g.position(*k),
            (_, Coord::Index(i)) | (_, Coord::Node(i)) => *i as f64,
            (_, Coord::Vector(v)) => v.iter().map(|x| x * x).sum::<f64>().sqrt(),
        }
    }

    /// Constructs the point at `x`, snapping to the nearest grid node.
    pub fn coord_at(&self, x: f64) -> Result<Coord> {
        match self {
            Ground::Grid(g) => g.snap(x).map(Coord::Node),
            Ground::Naturals { .. } | Ground::Finite { .. } => {
                let k = x.round();
                if !x.is_finite() || k < 0.0 || (x - k).abs() > 0.5 || k > u32::MAX as f64 {
                    return Err(Error::OffGrid(x));
                }
                let c = Coord::Index(k as u32);
                self.check(&c)?;
                Ok(c)
            }
        }
    }

    /// Largest position available for sampling.
    pub fn max_position(&self) -> f64 {
        match self {
            Ground::Naturals { sample_cap } => *sample_cap as f64,
            Ground::Grid(g) => g.x_max(),
            Ground::Finite { size } => size.saturating_sub(1) as f64,
        }
    }

    /// Whether kernel supports satisfy `supp(δx * δy) ⊆ [|x - y|, x + y]`.
    pub fn is_half_line(&self) -> bool {
        !matches!(self, Ground::Finite { .. })
    }

    /// All points with position at most `max_pos` (every point on a finite space).
    pub fn points_up_to(&self, max_pos: f64) -> Vec<Coord> {
        match self {
            Ground::Naturals { .. } => (0..=max_pos.max(0.0).floor() as u32).map(Coord::Index).collect(),
            Ground::Grid(g) => {
                let top = ((max_pos / g.step + 1e-9).floor().max(0.0) as u32).min(g.last);
                (0..=top).map(Coord::Node).collect()
            }
            Ground::Finite { size } => (0..*size).map(Coord::Index).collect(),
        }
    }

    /// Uniform sample over the stored points with position at most `max_pos`.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R, max_pos: f64) -> Coord {
        let bound = max_pos.min(self.max_position()).max(0.0);
        match self {
            Ground::Naturals { .. } => Coord::Index(rng.random_range(0..=bound.floor() as u32)),
            Ground::Grid(g) => Coord::Node(rng.random_range(0..=(bound / g.step + 1e-9).floor() as u32)),
            Ground::Finite { size } => Coord::Index(rng.random_range(0..*size)),
        }
    }
}
