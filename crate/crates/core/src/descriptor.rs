//! Serializable model descriptors and their construction.

use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::deformation::{deform, DeformedDescriptor};
use crate::error::{Error, Result};
use crate::hypergroup::{bessel_kingman, chebyshev_hypergroup, finite_double_coset, hyperbolic, GroupTable, SharedHypergroup};
use crate::scalar::Real;
use crate::semichar::Semicharacter;
use crate::space::{DEFAULT_STEP, DEFAULT_X_MAX};

fn default_step() -> f64 {
    DEFAULT_STEP
}

fn default_x_max() -> f64 {
    DEFAULT_X_MAX
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum BaseModel {
    Chebyshev {},
    BesselKingman {
        #[serde(default = "default_step")]
        h: f64,
        #[serde(default = "default_x_max")]
        x_max: f64,
    },
    Hyperbolic {
        #[serde(default = "default_step")]
        h: f64,
        #[serde(default = "default_x_max")]
        x_max: f64,
    },
    DoubleCoset {
        table: Vec<Vec<usize>>,
        subgroup: Vec<usize>,
    },
}

/// `{"kind": ...}` for a shipped model or `{"base": ..., "alpha0": ...}` for a
/// deformation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ModelDescriptor {
    Base(BaseModel),
    Deformed(DeformedDescriptor),
}

impl ModelDescriptor {
    /// Builds the model. Deformations certify their semicharacter with the
    /// default sampling settings.
    pub fn build<S: Real>(&self) -> Result<SharedHypergroup<S>> {
        Ok(match self {
            ModelDescriptor::Base(BaseModel::Chebyshev {}) => Arc::new(chebyshev_hypergroup::<S>()),
            ModelDescriptor::Base(BaseModel::BesselKingman { h, x_max }) => Arc::new(bessel_kingman::<S>(*h, *x_max)?),
            ModelDescriptor::Base(BaseModel::Hyperbolic { h, x_max }) => Arc::new(hyperbolic::<S>(*h, *x_max)?),
            ModelDescriptor::Base(BaseModel::DoubleCoset { table, subgroup }) => {
                Arc::new(finite_double_coset::<S>(GroupTable::new(table.clone())?, subgroup)?)
            }
            ModelDescriptor::Deformed(d) => {
                let base = d.base.build::<S>()?;
                let alpha0 = Semicharacter::certified(base.as_ref(), d.alpha0.clone())?;
                Arc::new(deform(base, alpha0)?)
            }
        })
    }
}

impl FromStr for ModelDescriptor {
    type Err = Error;

    /// Shorthand names (`chebyshev`, `bessel_kingman`, `hyperbolic`, `s3`),
    /// optionally with `:h=...,x_max=...` for grid models, or inline JSON.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.starts_with('{') {
            return serde_json::from_str(s).map_err(|e| Error::Parse(format!("model descriptor: {e}")));
        }
        let (name, rest) = s.split_once(':').unwrap_or((s, ""));
        let mut h = DEFAULT_STEP;
        let mut x_max = DEFAULT_X_MAX;
        for p in rest.split(',').filter(|p| !p.is_empty()) {
            let (k, v) = p.split_once('=').ok_or_else(|| Error::Parse(format!("expected key=value, got `{p}`")))?;
            let v: f64 = v.parse().map_err(|_| Error::Parse(format!("`{k}` is not a number: {v}")))?;
            match k {
                "h" => h = v,
                "x_max" => x_max = v,
                _ => return Err(Error::Parse(format!("unknown model parameter `{k}`"))),
            }
        }
        let checked = |m: BaseModel| {
            if rest.is_empty() || matches!(m, BaseModel::BesselKingman { .. } | BaseModel::Hyperbolic { .. }) {
                Ok(ModelDescriptor::Base(m))
            } else {
                Err(Error::Parse(format!("`{name}` takes no parameters")))
            }
        };
        match name {
            "chebyshev" => checked(BaseModel::Chebyshev {}),
            "bessel_kingman" => checked(BaseModel::BesselKingman { h, x_max }),
            "hyperbolic" => checked(BaseModel::Hyperbolic { h, x_max }),
            "s3" => {
                let g = GroupTable::symmetric(3);
                let subgroup = g.generated(&[2]);
                checked(BaseModel::DoubleCoset { table: g.table().to_vec(), subgroup })
            }
            other => Err(Error::Parse(format!("unknown model `{other}`"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semichar::SemicharDescriptor;

    #[test]
    fn shorthand_and_json_agree() {
        let a: ModelDescriptor = "bessel_kingman".parse().unwrap();
        let b: ModelDescriptor = r#"{"kind":"bessel_kingman"}"#.parse().unwrap();
        assert_eq!(a, b);
        let c: ModelDescriptor = "hyperbolic:h=0.125,x_max=4".parse().unwrap();
        assert_eq!(c, ModelDescriptor::Base(BaseModel::Hyperbolic { h: 0.125, x_max: 4.0 }));
        assert!("chebyshev:h=1".parse::<ModelDescriptor>().is_err());
        assert!(r#"{"kind":"chebyshev","extra":1}"#.parse::<ModelDescriptor>().is_err());
    }

    #[test]
    fn deformed_descriptor_round_trip() {
        let d = ModelDescriptor::Deformed(DeformedDescriptor {
            base: Box::new(ModelDescriptor::Base(BaseModel::Chebyshev {})),
            alpha0: SemicharDescriptor::Cosh { s: 0.5 },
        });
        let json = serde_json::to_string(&d).unwrap();
        assert_eq!(json, r#"{"base":{"kind":"chebyshev"},"alpha0":{"family":"cosh","s":0.5}}"#);
        let back: ModelDescriptor = json.parse().unwrap();
        assert_eq!(back, d);
        let hg = back.build::<f64>().unwrap();
        assert_eq!(hg.descriptor(), d);
    }

    #[test]
    fn s3_builds() {
        let d: ModelDescriptor = "s3".parse().unwrap();
        let hg = d.build::<f64>().unwrap();
        assert_eq!(hg.ground(), crate::space::Ground::Finite { size: 2 });
    }
}
