//! Haar-distributed samples of `SO(d)` and `SU(d)`.

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CompactGroup {
    /// `SO(d)` acting on `ℝ^d`.
    SO,
    /// `SU(d)` acting by conjugation on traceless Hermitian matrices.
    SU,
}

impl FromStr for CompactGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "SO" => Ok(CompactGroup::SO),
            "SU" => Ok(CompactGroup::SU),
            other => Err(Error::Parse(format!("unknown compact group `{other}`"))),
        }
    }
}

impl fmt::Display for CompactGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// QR of a Gaussian matrix with `R` given a positive diagonal, then one
/// column rotated so the determinant is 1.
pub fn haar_orthogonal<R: Rng + ?Sized>(d: usize, rng: &mut R) -> DMatrix<f64> {
    let g = DMatrix::from_fn(d, d, |_, _| rng.sample::<f64, _>(StandardNormal));
    let qr = g.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..d {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    if q.determinant() < 0.0 {
        q.column_mut(0).neg_mut();
    }
    q
}

pub fn haar_unitary<R: Rng + ?Sized>(d: usize, rng: &mut R) -> DMatrix<Complex64> {
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    let g =
        DMatrix::from_fn(d, d, |_, _| Complex64::new(rng.sample::<f64, _>(StandardNormal), rng.sample::<f64, _>(StandardNormal)) * scale);
    let qr = g.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..d {
        let rjj = r[(j, j)];
        if rjj.norm() > 0.0 {
            let phase = rjj / rjj.norm();
            q.column_mut(j).iter_mut().for_each(|v| *v *= phase);
        }
    }
    let det = q.determinant();
    let fix = (det / det.norm()).conj();
    q.column_mut(0).iter_mut().for_each(|v| *v *= fix);
    q
}

/// Checks `d >= 2`.
pub(crate) fn check_rank(d: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::DimensionError(format!("compact groups need d >= 2, got {d}")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;

    #[test]
    fn orthogonal_samples_are_special_orthogonal() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for d in 2..6 {
            let q = haar_orthogonal(d, &mut rng);
            let gram = q.transpose() * &q;
            assert!((gram - DMatrix::identity(d, d)).amax() < 1e-12);
            assert!((q.determinant() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn unitary_samples_are_special_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for d in 2..5 {
            let u = haar_unitary(d, &mut rng);
            let gram = u.adjoint() * &u;
            let err = (gram - DMatrix::<Complex64>::identity(d, d)).iter().map(|z| z.norm()).fold(0.0, f64::max);
            assert!(err < 1e-12);
            assert!((u.determinant() - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn first_entry_has_zero_mean() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let n = 100_000;
        let xs: Vec<f64> = (0..n).map(|_| haar_orthogonal(3, &mut rng)[(0, 0)]).collect();
        let mean = xs.iter().sum::<f64>() / n as f64;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n as f64 - 1.0);
        assert!(mean.abs() <= 3.0 * (var / n as f64).sqrt(), "{mean}");
    }

    #[test]
    fn circle_angles_are_uniform() {
        // Kolmogorov–Smirnov against the uniform law on [0, 2π), 1% level
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let n = 2000;
        let mut u: Vec<f64> = (0..n)
            .map(|_| {
                let q = haar_orthogonal(2, &mut rng);
                q[(1, 0)].atan2(q[(0, 0)]).rem_euclid(std::f64::consts::TAU) / std::f64::consts::TAU
            })
            .collect();
        u.sort_by(f64::total_cmp);
        let ks = u
            .iter()
            .enumerate()
            .map(|(i, &v)| (v - i as f64 / n as f64).abs().max(((i + 1) as f64 / n as f64 - v).abs()))
            .fold(0.0, f64::max);
        assert!(ks < 1.628 / (n as f64).sqrt(), "{ks}");
    }
}
