//! The convolution algebra over a hypergroup.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::hypergroup::Hypergroup;
use crate::measure::Measure;
use crate::scalar::{Real, Weight};
use crate::space::{Coord, SpaceId};

/// Accumulates weighted points. Index and node coordinates go into a dense
/// vector, anything else into an ordered map.
enum Accumulator<S> {
    Empty,
    Dense { node: bool, vals: Vec<S> },
    Sparse(BTreeMap<Coord, S>),
}

impl<S: Weight> Accumulator<S> {
    fn add(&mut self, c: &Coord, w: S) {
        match (&mut *self, c) {
            (Accumulator::Empty, Coord::Index(_) | Coord::Node(_)) => {
                *self = Accumulator::Dense { node: matches!(c, Coord::Node(_)), vals: Vec::new() };
                self.add(c, w);
            }
            (Accumulator::Dense { node, vals }, Coord::Index(i) | Coord::Node(i)) if *node == matches!(c, Coord::Node(_)) => {
                let i = *i as usize;
                if i >= vals.len() {
                    vals.resize(i + 1, S::zero());
                }
                vals[i] = vals[i].clone() + w;
            }
            (Accumulator::Sparse(map), _) => {
                let slot = map.entry(c.clone()).or_insert_with(S::zero);
                *slot = slot.clone() + w;
            }
            _ => {
                let map = self.take_map();
                *self = Accumulator::Sparse(map);
                self.add(c, w);
            }
        }
    }

    fn take_map(&mut self) -> BTreeMap<Coord, S> {
        match std::mem::replace(self, Accumulator::Empty) {
            Accumulator::Empty => BTreeMap::new(),
            Accumulator::Dense { node, vals } => {
                vals.into_iter().enumerate().map(|(i, w)| (if node { Coord::Node(i as u32) } else { Coord::Index(i as u32) }, w)).collect()
            }
            Accumulator::Sparse(map) => map,
        }
    }

    fn finish(mut self, space: SpaceId) -> Measure<S> {
        let entries = self.take_map().into_iter().collect();
        Measure::from_sorted(space, entries)
    }
}

fn ensure_space<S: Weight>(hg: &dyn Hypergroup<S>, m: &Measure<S>) -> Result<()> {
    if m.space() != hg.space() {
        return Err(Error::space_mismatch(hg.space(), m.space()));
    }
    Ok(())
}

/// `μ * ν = Σ_x Σ_y μ({x}) ν({y}) δx * δy`.
pub fn convolve<S: Weight>(hg: &dyn Hypergroup<S>, mu: &Measure<S>, nu: &Measure<S>) -> Result<Measure<S>> {
    ensure_space(hg, mu)?;
    ensure_space(hg, nu)?;
    let mut acc = Accumulator::Empty;
    for (x, a) in mu.iter() {
        for (y, b) in nu.iter() {
            let ab = a.clone() * b.clone();
            for (z, w) in hg.kernel(x, y)?.iter() {
                acc.add(z, ab.clone() * w.clone());
            }
        }
    }
    Ok(acc.finish(hg.space().clone()))
}

/// Number of terms `N` such that `Σ_{n>N} aⁿ/n! ≤ eps`.
pub(crate) fn series_length(a: f64, eps: f64) -> usize {
    // term = a^(n+1)/(n+1)!, tail ≤ term / (1 - a/(n+2)) once n + 2 > a.
    let mut n = 0usize;
    let mut term = a;
    loop {
        let ratio = a / (n as f64 + 2.0);
        if ratio < 1.0 && term / (1.0 - ratio) <= eps {
            return n;
        }
        n += 1;
        term *= a / (n as f64 + 1.0);
        if n > 100_000 {
            return n;
        }
    }
}

/// `exp(tρ) = Σ_{n≥0} tⁿ ρ^{*n} / n!`, truncated so the dropped tail has total
/// variation at most `eps`.
pub fn exp_series<S: Real>(hg: &dyn Hypergroup<S>, rho: &Measure<S>, t: S, eps: f64) -> Result<Measure<S>> {
    exp_series_with_growth(hg, rho, t, eps, 0.0).map(|(m, _)| m)
}

/// Like [`exp_series`], but the truncation also controls the tail weighted by
/// a function whose integral against `ρ` is `growth`. Returns the number of
/// convolution powers used.
pub(crate) fn exp_series_with_growth<S: Real>(
    hg: &dyn Hypergroup<S>,
    rho: &Measure<S>,
    t: S,
    eps: f64,
    growth: f64,
) -> Result<(Measure<S>, usize)> {
    if !(eps > 0.0) {
        return Err(Error::BadTolerance(eps));
    }
    if t < S::zero() {
        return Err(Error::Invalid(format!("time must be nonnegative, got {t}")));
    }
    ensure_space(hg, rho)?;
    let a = t.lossy_f64() * rho.tv_norm().lossy_f64().max(growth);
    let n_terms = if t.is_zero() || rho.is_empty() { 0 } else { series_length(a, eps) };
    let mut term = hg.dirac(hg.identity());
    let mut sum = term.clone();
    for n in 1..=n_terms {
        term = convolve(hg, &term, rho)?.scale(t / S::of(n as f64));
        sum = sum.add(&term)?;
    }
    Ok((sum, n_terms))
}

/// The translate `f_x(y) = ∫ f d(δx * δy)`.
pub fn translate_function<'a, S: Weight>(
    hg: &'a dyn Hypergroup<S>,
    f: impl Fn(&Coord) -> S + 'a,
    x: Coord,
) -> impl Fn(&Coord) -> Result<S> + 'a {
    move |y| Ok(hg.kernel(&x, y)?.integrate(&f))
}
