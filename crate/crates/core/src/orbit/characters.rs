//! Monte Carlo orbit integrals `∫_K e^{i⟨λ, k.x⟩} dk` and `∫_K e^{-⟨ρ, k.x⟩} dk`.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::haar::{check_rank, haar_orthogonal, haar_unitary, CompactGroup};
use crate::error::{Error, Result};

/// A Monte Carlo mean with its standard error.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct McEstimate<T> {
    pub estimate: T,
    pub stderr: f64,
    pub n: usize,
    pub seed: u64,
}

const TRACE_TOL: f64 = 1e-12;

fn check_inputs(group: CompactGroup, a: &[f64], x: &[f64]) -> Result<usize> {
    let d = a.len();
    if x.len() != d {
        return Err(Error::DimensionError(format!("vectors of length {d} and {}", x.len())));
    }
    check_rank(d)?;
    if group == CompactGroup::SU {
        for (name, v) in [("parameter", a), ("point", x)] {
            let trace: f64 = v.iter().sum();
            if trace.abs() > TRACE_TOL {
                return Err(Error::Invalid(format!("SU orbit {name} must have trace 0, got {trace:e}")));
            }
        }
    }
    Ok(d)
}

/// Draws `n` values of `⟨a, k.x⟩` for Haar-random `k`.
fn pairings(group: CompactGroup, a: &[f64], x: &[f64], n: usize, seed: u64) -> Result<Vec<f64>> {
    let d = check_inputs(group, a, x)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..n)
        .map(|_| match group {
            CompactGroup::SO => {
                let k = haar_orthogonal(d, &mut rng);
                (0..d).map(|i| a[i] * (0..d).map(|j| k[(i, j)] * x[j]).sum::<f64>()).sum()
            }
            CompactGroup::SU => {
                // trace(A k X k*) for diagonal A, X
                let k = haar_unitary(d, &mut rng);
                (0..d).map(|i| a[i] * (0..d).map(|j| k[(i, j)].norm_sqr() * x[j]).sum::<f64>()).sum()
            }
        })
        .collect())
}

fn mean_stderr(values: impl Iterator<Item = f64> + Clone, n: usize) -> (f64, f64) {
    let mean = values.clone().sum::<f64>() / n as f64;
    let var = if n > 1 { values.map(|v| (v - mean).powi(2)).sum::<f64>() / (n as f64 - 1.0) } else { 0.0 };
    (mean, (var / n as f64).sqrt())
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Invalid("need at least one sample".into()));
    }
    Ok(())
}

/// `∫_K e^{i⟨λ, k.x⟩} dk`; the standard error is that of the complex mean.
pub fn orbit_character_mc(group: CompactGroup, lambda: &[f64], x: &[f64], n: usize, seed: u64) -> Result<McEstimate<Complex64>> {
    check_n(n)?;
    let p = pairings(group, lambda, x, n, seed)?;
    let (re, se_re) = mean_stderr(p.iter().map(|t| t.cos()), n);
    let (im, se_im) = mean_stderr(p.iter().map(|t| t.sin()), n);
    Ok(McEstimate { estimate: Complex64::new(re, im), stderr: se_re.hypot(se_im), n, seed })
}

/// `∫_K e^{-⟨ρ, k.x⟩} dk`.
pub fn positive_orbit_semicharacter_mc(group: CompactGroup, rho: &[f64], x: &[f64], n: usize, seed: u64) -> Result<McEstimate<f64>> {
    check_n(n)?;
    let p = pairings(group, rho, x, n, seed)?;
    let (mean, stderr) = mean_stderr(p.iter().map(|t| (-t).exp()), n);
    Ok(McEstimate { estimate: mean, stderr, n, seed })
}

/// Worst pair of the bound `α(x) ≤ α(y) e^{‖ρ‖}` for `‖x - y‖ ≤ 1`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundCheck {
    /// `max α(x) / (α(y) e^{‖ρ‖})` over the pairs.
    pub max_ratio: f64,
    /// Standard error of the maximizing ratio.
    pub stderr: f64,
    pub pair_index: usize,
    pub ratios: Vec<f64>,
    pub stderrs: Vec<f64>,
}

/// Both orbit integrals of a pair share their group samples, and the ratio's
/// error comes from the delta method.
pub fn exponentiality_bound_check(
    group: CompactGroup,
    rho: &[f64],
    pairs: &[(Vec<f64>, Vec<f64>)],
    n: usize,
    seed: u64,
) -> Result<BoundCheck> {
    check_n(n)?;
    if pairs.is_empty() {
        return Err(Error::Invalid("need at least one pair".into()));
    }
    for (index, (x, y)) in pairs.iter().enumerate() {
        if x.len() != y.len() {
            return Err(Error::DimensionError(format!("pair {index} has lengths {} and {}", x.len(), y.len())));
        }
        let distance = x.iter().zip(y).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
        if distance > 1.0 + 1e-12 {
            return Err(Error::BadPair { index, distance });
        }
    }
    let growth = rho.iter().map(|r| r * r).sum::<f64>().sqrt().exp();
    let mut ratios = Vec::with_capacity(pairs.len());
    let mut stderrs = Vec::with_capacity(pairs.len());
    for (x, y) in pairs {
        let a: Vec<f64> = pairings(group, rho, x, n, seed)?.into_iter().map(|t| (-t).exp()).collect();
        let b: Vec<f64> = pairings(group, rho, y, n, seed)?.into_iter().map(|t| (-t).exp()).collect();
        let (ma, _) = mean_stderr(a.iter().copied(), n);
        let (mb, _) = mean_stderr(b.iter().copied(), n);
        let r = ma / mb;
        let (_, se) = mean_stderr(a.iter().zip(&b).map(|(p, q)| p - r * q), n);
        ratios.push(r / growth);
        stderrs.push(se / mb / growth);
    }
    let pair_index = (0..ratios.len()).max_by(|&i, &j| ratios[i].total_cmp(&ratios[j])).expect("nonempty");
    Ok(BoundCheck { max_ratio: ratios[pair_index], stderr: stderrs[pair_index], pair_index, ratios, stderrs })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_parameter_gives_one() {
        let c = orbit_character_mc(CompactGroup::SO, &[0.0; 3], &[1.0, 2.0, 3.0], 100, 1).unwrap();
        assert_eq!(c.estimate, Complex64::new(1.0, 0.0));
        assert_eq!(c.stderr, 0.0);
        let p = positive_orbit_semicharacter_mc(CompactGroup::SU, &[0.0; 3], &[1.0, -0.5, -0.5], 100, 1).unwrap();
        assert_eq!(p.estimate, 1.0);
    }

    #[test]
    fn so2_character_is_bessel_j0() {
        // J₀(r) = Σ (-1)^m (r/2)^{2m} / (m!)²
        let r: f64 = 1.7;
        let mut term = 1.0;
        let mut j0 = 1.0;
        for m in 1..30 {
            term *= -(r / 2.0).powi(2) / (m * m) as f64;
            j0 += term;
        }
        let c = orbit_character_mc(CompactGroup::SO, &[1.0, 0.0], &[r, 0.0], 50_000, 4).unwrap();
        assert!((c.estimate.re - j0).abs() <= 3.0 * c.stderr, "{} vs {j0}", c.estimate.re);
    }

    #[test]
    fn so3_positive_semicharacter_is_sinhc() {
        let t: f64 = 1.5;
        let p = positive_orbit_semicharacter_mc(CompactGroup::SO, &[1.0, 0.0, 0.0], &[t, 0.0, 0.0], 50_000, 9).unwrap();
        assert!((p.estimate - t.sinh() / t).abs() <= 3.0 * p.stderr);
    }

    #[test]
    fn so3_character_is_symmetric() {
        let l = [0.3, -1.2, 0.5];
        let x = [1.1, 0.4, -0.7];
        let a = orbit_character_mc(CompactGroup::SO, &l, &x, 40_000, 2).unwrap();
        let b = orbit_character_mc(CompactGroup::SO, &x, &l, 40_000, 3).unwrap();
        assert!((a.estimate - b.estimate).norm() <= 3.0 * a.stderr.hypot(b.stderr));
    }

    #[test]
    fn input_validation() {
        assert!(matches!(orbit_character_mc(CompactGroup::SO, &[1.0, 0.0], &[1.0], 10, 0), Err(Error::DimensionError(_))));
        assert!(orbit_character_mc(CompactGroup::SU, &[1.0, 0.0], &[1.0, -1.0], 10, 0).is_err());
        let far = vec![(vec![0.0, 0.0, 0.0], vec![2.0, 0.0, 0.0])];
        assert!(matches!(
            exponentiality_bound_check(CompactGroup::SO, &[1.0, 0.0, 0.0], &far, 10, 0),
            Err(Error::BadPair { index: 0, .. })
        ));
    }

    #[test]
    fn bound_check_examples() {
        let e1 = vec![1.0, 0.0, 0.0];
        let same = vec![(e1.clone(), e1.clone())];
        let c = exponentiality_bound_check(CompactGroup::SO, &e1, &same, 1000, 0).unwrap();
        assert!((c.max_ratio - (-1.0f64).exp()).abs() < 1e-15);
        let pair = vec![(vec![2.0, 0.0, 0.0], e1.clone())];
        let c = exponentiality_bound_check(CompactGroup::SO, &e1, &pair, 100_000, 5).unwrap();
        let want = (2.0f64.sinh() / 2.0) / (1.0f64.sinh() * 1.0f64.exp());
        assert!((c.max_ratio - want).abs() <= 3.0 * c.stderr, "{} vs {want}", c.max_ratio);
    }
}
