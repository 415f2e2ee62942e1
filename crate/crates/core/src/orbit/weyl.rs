//! Chamber data for the root systems `A`, `B`, `C`, `D`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WeylFamily {
    A,
    B,
    C,
    D,
}

impl FromStr for WeylFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(WeylFamily::A),
            "B" | "b" => Ok(WeylFamily::B),
            "C" | "c" => Ok(WeylFamily::C),
            "D" | "d" => Ok(WeylFamily::D),
            other => Err(Error::Parse(format!("unknown Weyl family `{other}`"))),
        }
    }
}

impl fmt::Display for WeylFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl WeylFamily {
    pub fn min_rank(self) -> usize {
        match self {
            WeylFamily::A | WeylFamily::B => 2,
            WeylFamily::C => 3,
            WeylFamily::D => 4,
        }
    }
}

/// The closed Weyl chamber and the vector `ρ` (sum of positive roots) of one
/// family in rank `d`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WeylChamberData {
    pub family: WeylFamily,
    pub d: usize,
    pub rho: Vec<f64>,
}

pub fn weyl_data(family: WeylFamily, d: usize) -> Result<WeylChamberData> {
    if d < family.min_rank() {
        return Err(Error::BadRank { family: family.to_string(), d });
    }
    let n = d as f64;
    let rho = (0..d)
        .map(|i| {
            let i = i as f64;
            match family {
                WeylFamily::A => n - 1.0 - 2.0 * i,
                WeylFamily::B => 2.0 * n - 1.0 - 2.0 * i,
                WeylFamily::C => 2.0 * n - 2.0 * i,
                WeylFamily::D => 2.0 * n - 2.0 - 2.0 * i,
            }
        })
        .collect();
    Ok(WeylChamberData { family, d, rho })
}

fn sorted_desc(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

impl WeylChamberData {
    /// Whether `x` lies in the closed chamber (to `1e-12`).
    pub fn chamber_contains(&self, x: &[f64]) -> bool {
        if x.len() != self.d {
            return false;
        }
        let descending = x.windows(2).all(|w| w[0] >= w[1] - TOL);
        match self.family {
            WeylFamily::A => descending && x.iter().sum::<f64>().abs() <= TOL,
            WeylFamily::B | WeylFamily::C => descending && x[self.d - 1] >= -TOL,
            WeylFamily::D => x[..self.d - 1].windows(2).all(|w| w[0] >= w[1] - TOL) && x[self.d - 2] >= x[self.d - 1].abs() - TOL,
        }
    }

    /// The representative of the Weyl orbit of `x` in the chamber.
    pub fn dominant(&self, x: &[f64]) -> Vec<f64> {
        match self.family {
            WeylFamily::A => sorted_desc(x.to_vec()),
            WeylFamily::B | WeylFamily::C => sorted_desc(x.iter().map(|v| v.abs()).collect()),
            WeylFamily::D => {
                // even sign changes only: an odd number of negatives survives on
                // the smallest entry unless some entry is zero
                let negatives = x.iter().filter(|v| **v < 0.0).count();
                let has_zero = x.contains(&0.0);
                let mut out = sorted_desc(x.iter().map(|v| v.abs()).collect());
                if negatives % 2 == 1 && !has_zero {
                    let last = out.len() - 1;
                    out[last] = -out[last];
                }
                out
            }
        }
    }

    /// `-ρ` lies in the Weyl orbit of `ρ`.
    pub fn neg_rho_in_orbit(&self) -> bool {
        let neg: Vec<f64> = self.rho.iter().map(|v| -v).collect();
        let dom = self.dominant(&neg);
        dom.iter().zip(&self.rho).all(|(a, b)| (a - b).abs() <= TOL)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rho_vectors() {
        assert_eq!(weyl_data(WeylFamily::A, 4).unwrap().rho, vec![3.0, 1.0, -1.0, -3.0]);
        assert_eq!(weyl_data(WeylFamily::B, 2).unwrap().rho, vec![3.0, 1.0]);
        assert_eq!(weyl_data(WeylFamily::B, 3).unwrap().rho, vec![5.0, 3.0, 1.0]);
        assert_eq!(weyl_data(WeylFamily::C, 3).unwrap().rho, vec![6.0, 4.0, 2.0]);
        assert_eq!(weyl_data(WeylFamily::D, 4).unwrap().rho, vec![6.0, 4.0, 2.0, 0.0]);
    }

    #[test]
    fn ranks_are_checked() {
        assert!(matches!(weyl_data(WeylFamily::A, 1), Err(Error::BadRank { .. })));
        assert!(matches!(weyl_data(WeylFamily::C, 2), Err(Error::BadRank { .. })));
        assert!(matches!(weyl_data(WeylFamily::D, 3), Err(Error::BadRank { .. })));
    }

    #[test]
    fn rho_is_dominant_and_symmetric() {
        for family in [WeylFamily::A, WeylFamily::B, WeylFamily::C, WeylFamily::D] {
            for d in family.min_rank()..9 {
                let w = weyl_data(family, d).unwrap();
                assert!(w.chamber_contains(&w.rho), "{family} {d}");
                assert!(w.neg_rho_in_orbit(), "{family} {d}");
            }
        }
    }

    #[test]
    fn d_family_keeps_sign_parity() {
        let w = weyl_data(WeylFamily::D, 4).unwrap();
        assert_eq!(w.dominant(&[1.0, -2.0, 3.0, 4.0]), vec![4.0, 3.0, 2.0, -1.0]);
        assert_eq!(w.dominant(&[1.0, -2.0, -3.0, 4.0]), vec![4.0, 3.0, 2.0, 1.0]);
        assert!(w.chamber_contains(&[4.0, 3.0, 2.0, -1.0]));
        assert!(!weyl_data(WeylFamily::B, 4).unwrap().chamber_contains(&[4.0, 3.0, 2.0, -1.0]));
    }
}
