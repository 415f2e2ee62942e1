//! Finitely supported signed measures.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use rand::Rng;

use crate::scalar::{Real, Weight};
use crate::space::{Coord, Ground, Point, SpaceId};

/// Mass tolerance for the discrete models.
pub const EPS_MASS_DISCRETE: f64 = 1e-9;
/// Mass tolerance for grid models on the half line.
pub const EPS_MASS_GRID: f64 = 1e-5;

/// A finite list of weighted points on one space. Entries are sorted by
/// coordinate, duplicates are merged and exact zeros dropped.
#[derive(Clone, Debug, PartialEq)]
pub struct Measure<S> {
    space: SpaceId,
    entries: Vec<(Coord, S)>,
}

impl<S: Weight> Measure<S> {
    pub fn new(space: SpaceId, entries: impl IntoIterator<Item = (Coord, S)>) -> Self {
        let mut merged: BTreeMap<Coord, S> = BTreeMap::new();
        for (c, w) in entries {
            match merged.get_mut(&c) {
                Some(acc) => *acc = acc.clone() + w,
                None => {
                    merged.insert(c, w);
                }
            }
        }
        Self::from_sorted(space, merged.into_iter().collect())
    }

    /// Builds from entries already sorted by coordinate without duplicates.
    pub(crate) fn from_sorted(space: SpaceId, mut entries: Vec<(Coord, S)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        entries.retain(|(_, w)| !w.is_zero());
        Measure { space, entries }
    }

    pub fn from_points(space: SpaceId, entries: impl IntoIterator<Item = (Point, S)>) -> Result<Self> {
        let mut coords = Vec::new();
        for (p, w) in entries {
            if p.space != space {
                return Err(Error::space_mismatch(&space, &p.space));
            }
            coords.push((p.coord, w));
        }
        Ok(Self::new(space, coords))
    }

    pub fn zero(space: SpaceId) -> Self {
        Measure { space, entries: Vec::new() }
    }

    pub fn dirac(space: SpaceId, at: Coord) -> Self {
        Measure { space, entries: vec![(at, S::one())] }
    }

    pub fn space(&self) -> &SpaceId {
        &self.space
    }

    pub fn entries(&self) -> &[(Coord, S)] {
        &self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Coord, &S)> + '_ {
        self.entries.iter().map(|(c, w)| (c, w))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = &Coord> + '_ {
        self.entries.iter().map(|(c, _)| c)
    }

    pub fn weight_at(&self, c: &Coord) -> S {
        match self.entries.binary_search_by(|(k, _)| k.cmp(c)) {
            Ok(i) => self.entries[i].1.clone(),
            Err(_) => S::zero(),
        }
    }

    /// Total variation norm `Σ |w|`.
    pub fn tv_norm(&self) -> S {
        self.entries.iter().fold(S::zero(), |acc, (_, w)| acc + w.abs())
    }

    /// Signed total mass `Σ w`.
    pub fn mass(&self) -> S {
        self.entries.iter().fold(S::zero(), |acc, (_, w)| acc + w.clone())
    }

    /// `∫ f dμ = Σ f(x) μ({x})`.
    pub fn integrate(&self, f: impl Fn(&Coord) -> S) -> S {
        self.entries.iter().fold(S::zero(), |acc, (c, w)| acc + f(c) * w.clone())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.iter().all(|(_, w)| *w >= S::zero())
    }

    /// Nonnegative with total mass within `eps` of one.
    pub fn is_probability(&self, eps: f64) -> bool {
        self.is_nonnegative() && (self.mass().lossy_f64() - 1.0).abs() <= eps
    }

    pub fn first_negative(&self) -> Option<&Coord> {
        self.entries.iter().find(|(_, w)| *w < S::zero()).map(|(c, _)| c)
    }

    pub fn scale(&self, factor: S) -> Self {
        let entries = self.entries.iter().map(|(c, w)| (c.clone(), w.clone() * factor.clone())).collect();
        Self::from_sorted(self.space.clone(), entries)
    }

    /// The measure `g·μ` with density `g` with respect to `μ`.
    pub fn weighted_by(&self, g: impl Fn(&Coord) -> S) -> Self {
        let entries = self.entries.iter().map(|(c, w)| (c.clone(), g(c) * w.clone())).collect();
        Self::from_sorted(self.space.clone(), entries)
    }

    fn combine(&self, other: &Self, sign: S) -> Result<Self> {
        if self.space != other.space {
            return Err(Error::space_mismatch(&self.space, &other.space));
        }
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((ca, wa)), Some((cb, wb))) => match ca.cmp(cb) {
                    std::cmp::Ordering::Less => {
                        out.push((ca.clone(), wa.clone()));
                        a.next();
                    }
                    std::cmp::Ordering::Greater => {
                        out.push((cb.clone(), sign.clone() * wb.clone()));
                        b.next();
                    }
                    std::cmp::Ordering::Equal => {
                        out.push((ca.clone(), wa.clone() + sign.clone() * wb.clone()));
                        a.next();
                        b.next();
                    }
                },
                (Some((ca, wa)), None) => {
                    out.push((ca.clone(), wa.clone()));
                    a.next();
                }
                (None, Some((cb, wb))) => {
                    out.push((cb.clone(), sign.clone() * wb.clone()));
                    b.next();
                }
                (None, None) => break,
            }
        }
        Ok(Self::from_sorted(self.space.clone(), out))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, S::one())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, -S::one())
    }

    /// `‖μ - ν‖` in total variation.
    pub fn tv_distance(&self, other: &Self) -> Result<S> {
        Ok(self.sub(other)?.tv_norm())
    }

    /// Drops entries with `|w| < threshold · ‖μ‖`.
    pub fn pruned(mut self) -> Self {
        if let Some(rel) = S::drop_threshold() {
            let cut = rel * self.tv_norm();
            self.entries.retain(|(_, w)| w.abs() >= cut);
        }
        self
    }

    /// Removes the atom at `c`, returning it.
    pub fn without(&self, c: &Coord) -> (Self, S) {
        let atom = self.weight_at(c);
        let entries = self.entries.iter().filter(|(k, _)| k != c).cloned().collect();
        (Measure { space: self.space.clone(), entries }, atom)
    }

    /// Converts the weights to another scalar type.
    pub fn cast<T: Weight>(&self) -> Option<Measure<T>> {
        let entries = self.entries.iter().map(|(c, w)| T::from_f64(w.to_f64()?).map(|v| (c.clone(), v))).collect::<Option<Vec<_>>>()?;
        Some(Measure::from_sorted(self.space.clone(), entries))
    }
}

impl<S: Real> Measure<S> {
    /// A probability measure with `atoms` sampled atoms at positions up to
    /// `max_pos` and weights uniform in `[0.1, 1)` before normalization.
    pub fn random_probability<R: Rng + ?Sized>(space: SpaceId, ground: &Ground, max_pos: f64, atoms: usize, rng: &mut R) -> Self {
        let raw: Vec<(Coord, f64)> = (0..atoms.max(1)).map(|_| (ground.sample(rng, max_pos), rng.random_range(0.1..1.0))).collect();
        let total: f64 = raw.iter().map(|(_, w)| w).sum();
        Measure::new(space, raw.into_iter().map(|(c, w)| (c, S::of(w / total))))
    }
}
