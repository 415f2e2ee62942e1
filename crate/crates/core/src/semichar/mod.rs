//! Semicharacters: evaluation, certification of multiplicativity, the dual
//! map `α ↦ α/α₀` and exponentiality estimates.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergroup::Hypergroup;
use crate::scalar::{Real, Weight};
use crate::space::{Coord, Ground, SpaceId};

pub mod sturm_liouville;

pub use sturm_liouville::{default_probes, renormalized_profile, rho_of, sl_solve, ProfileDescriptor, RhoEstimate, SlProfile, SlSolution};

/// Samples used when a semicharacter is certified without explicit settings.
pub const DEFAULT_CERT_SAMPLES: usize = 64;
pub const DEFAULT_CERT_SEED: u64 = 0;

/// Serializable description of a semicharacter as a function of position.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum SemicharDescriptor {
    /// `α ≡ 1`.
    Constant {},
    /// `cosh(s x)`.
    Cosh {
        s: f64,
    },
    /// `T_x(c) = cosh(x arccosh c)`; integer points use the three-term
    /// recurrence, which is exact for integer `c`.
    Chebyshev {
        c: f64,
    },
    /// `sin(λx) / (λx)`.
    BesselSin {
        lambda: f64,
    },
    /// `sinh(ρx) / (ρx)`.
    BesselSinh {
        rho: f64,
    },
    /// `sin(λx) / (λ sinh x)`.
    HyperbolicSin {
        lambda: f64,
    },
    /// `sinh(λx) / (λ sinh x)`.
    HyperbolicSinh {
        lambda: f64,
    },
    /// `φ_{iλ}` of a Sturm–Liouville profile, solved on the model's grid.
    SlNumeric {
        profile: ProfileDescriptor,
        lambda: f64,
    },
    Product {
        factors: Vec<SemicharDescriptor>,
    },
    Quotient {
        num: Box<SemicharDescriptor>,
        den: Box<SemicharDescriptor>,
    },
}

impl SemicharDescriptor {
    /// The family is positive whenever its parameters are admissible.
    fn positive_family(&self) -> bool {
        match self {
            SemicharDescriptor::Constant {}
            | SemicharDescriptor::Cosh { .. }
            | SemicharDescriptor::BesselSinh { .. }
            | SemicharDescriptor::HyperbolicSinh { .. }
            | SemicharDescriptor::SlNumeric { .. } => true,
            SemicharDescriptor::Chebyshev { c } => *c >= 1.0,
            SemicharDescriptor::BesselSin { .. } | SemicharDescriptor::HyperbolicSin { .. } => false,
            SemicharDescriptor::Product { factors } => factors.iter().all(Self::positive_family),
            SemicharDescriptor::Quotient { num, den } => num.positive_family() && den.positive_family(),
        }
    }
}

fn parse_params(s: &str) -> Result<Vec<(String, String)>> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            let (k, v) = p.split_once('=').ok_or_else(|| Error::Parse(format!("expected key=value, got `{p}`")))?;
            Ok((k.trim().to_string(), v.trim().to_string()))
        })
        .collect()
}

fn take(params: &mut Vec<(String, String)>, key: &str) -> Result<f64> {
    let i = params.iter().position(|(k, _)| k == key).ok_or_else(|| Error::Parse(format!("missing parameter `{key}`")))?;
    let (_, v) = params.remove(i);
    v.parse().map_err(|_| Error::Parse(format!("`{key}` is not a number: {v}")))
}

fn profile_from_params(kind: &str, params: &mut Vec<(String, String)>) -> Result<ProfileDescriptor> {
    Ok(match kind {
        "power" => ProfileDescriptor::Power { k: take(params, "k")? },
        "sinh2" => ProfileDescriptor::Sinh2 {},
        "sinh_power" => ProfileDescriptor::SinhPower { k: take(params, "k")? },
        "exp_power" => ProfileDescriptor::ExpPower { k: take(params, "k")?, a: take(params, "a")? },
        other => return Err(Error::Parse(format!("unknown profile `{other}`"))),
    })
}

fn no_leftovers(params: &[(String, String)], name: &str) -> Result<()> {
    match params.first() {
        Some((k, _)) => Err(Error::Parse(format!("unexpected parameter `{k}` for `{name}`"))),
        None => Ok(()),
    }
}

impl FromStr for ProfileDescriptor {
    type Err = Error;

    /// Shorthand `kind:key=value,...` (`power:k=2`, `sinh2`, `sinh_power:k=3`,
    /// `exp_power:k=2,a=1`) or inline JSON.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.starts_with('{') {
            return serde_json::from_str(s).map_err(|e| Error::Parse(format!("profile descriptor: {e}")));
        }
        let (kind, rest) = s.split_once(':').unwrap_or((s, ""));
        let mut params = parse_params(rest)?;
        let d = profile_from_params(kind.trim(), &mut params)?;
        no_leftovers(&params, kind)?;
        Ok(d)
    }
}

impl FromStr for SemicharDescriptor {
    type Err = Error;

    /// Shorthand `family:key=value,...`, e.g. `cosh:s=1.3169579` or
    /// `sl_numeric:profile=power,k=2,lambda=1`, combined with `*` and `/`
    /// (`/` binds loosest, left to right), or inline JSON.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.starts_with('{') {
            return serde_json::from_str(s).map_err(|e| Error::Parse(format!("semicharacter descriptor: {e}")));
        }
        if let Some((num, den)) = s.rsplit_once('/') {
            return Ok(SemicharDescriptor::Quotient { num: Box::new(num.parse()?), den: Box::new(den.parse()?) });
        }
        if s.contains('*') {
            let factors = s.split('*').map(str::parse).collect::<Result<Vec<_>>>()?;
            return Ok(SemicharDescriptor::Product { factors });
        }
        let (family, rest) = s.split_once(':').unwrap_or((s, ""));
        let mut params = parse_params(rest)?;
        let profile = params.iter().position(|(k, _)| k == "profile").map(|i| params.remove(i).1);
        let d = match family.trim() {
            "constant" | "one" => SemicharDescriptor::Constant {},
            "cosh" => SemicharDescriptor::Cosh { s: take(&mut params, "s")? },
            "chebyshev" => SemicharDescriptor::Chebyshev { c: take(&mut params, "c")? },
            "bessel_sin" => SemicharDescriptor::BesselSin { lambda: take(&mut params, "lambda")? },
            "bessel_sinh" => SemicharDescriptor::BesselSinh { rho: take(&mut params, "rho")? },
            "hyperbolic_sin" => SemicharDescriptor::HyperbolicSin { lambda: take(&mut params, "lambda")? },
            "hyperbolic_sinh" => SemicharDescriptor::HyperbolicSinh { lambda: take(&mut params, "lambda")? },
            "sl_numeric" => {
                let lambda = take(&mut params, "lambda")?;
                let kind = profile.ok_or_else(|| Error::Parse("sl_numeric needs `profile=...`".into()))?;
                SemicharDescriptor::SlNumeric { profile: profile_from_params(&kind, &mut params)?, lambda }
            }
            other => return Err(Error::Parse(format!("unknown semicharacter family `{other}`"))),
        };
        no_leftovers(&params, family)?;
        Ok(d)
    }
}

/// Where and how well a semicharacter was checked.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Certificate {
    pub hypergroup: String,
    pub mult_defect: f64,
    pub samples: usize,
    pub seed: u64,
}

type Eval<S> = Arc<dyn Fn(&Coord) -> S + Send + Sync>;

/// A real function on a ground space, optionally certified multiplicative on
/// one hypergroup.
#[derive(Clone)]
pub struct Semicharacter<S> {
    space: SpaceId,
    ground: Ground,
    descriptor: SemicharDescriptor,
    eval: Eval<S>,
    positive: bool,
    certificate: Option<Certificate>,
}

impl<S> fmt::Debug for Semicharacter<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Semicharacter")
            .field("space", &self.space)
            .field("descriptor", &self.descriptor)
            .field("positive", &self.positive)
            .field("certificate", &self.certificate)
            .finish()
    }
}

/// `sin(u)/u`.
fn sinc<S: Real>(u: S) -> S {
    if u.abs() < S::of(1e-3) {
        let u2 = u * u;
        S::one() - u2 / S::of(6.0) + u2 * u2 / S::of(120.0)
    } else {
        u.sin() / u
    }
}

/// `sinh(u)/u`.
fn sinhc<S: Real>(u: S) -> S {
    if u.abs() < S::of(1e-3) {
        let u2 = u * u;
        S::one() + u2 / S::of(6.0) + u2 * u2 / S::of(120.0)
    } else {
        u.sinh() / u
    }
}

fn chebyshev_t<S: Real>(c: S, n: u32) -> S {
    let (mut prev, mut cur) = (c, S::one());
    for _ in 0..n {
        (prev, cur) = (cur, S::of(2.0) * c * cur - prev);
    }
    cur
}

fn compile<S: Real>(ground: Ground, d: &SemicharDescriptor) -> Result<Eval<S>> {
    let pos = move |c: &Coord| S::of(ground.position(c));
    let finite = |name: &str, v: f64| {
        if v.is_finite() {
            Ok(S::of(v))
        } else {
            Err(Error::Invalid(format!("{name} must be finite, got {v}")))
        }
    };
    Ok(match d {
        SemicharDescriptor::Constant {} => Arc::new(|_| S::one()),
        SemicharDescriptor::Cosh { s } => {
            let s = finite("s", *s)?;
            Arc::new(move |c| (s * pos(c)).cosh())
        }
        SemicharDescriptor::Chebyshev { c } => {
            let c = finite("c", *c)?;
            Arc::new(move |x| match x {
                Coord::Index(n) => chebyshev_t(c, *n),
                _ => {
                    let x = pos(x);
                    if c >= S::one() {
                        (x * c.acosh()).cosh()
                    } else if c.abs() <= S::one() {
                        (x * c.acos()).cos()
                    } else {
                        S::nan()
                    }
                }
            })
        }
        SemicharDescriptor::BesselSin { lambda } => {
            let l = finite("lambda", *lambda)?;
            Arc::new(move |c| sinc(l * pos(c)))
        }
        SemicharDescriptor::BesselSinh { rho } => {
            let r = finite("rho", *rho)?;
            Arc::new(move |c| sinhc(r * pos(c)))
        }
        SemicharDescriptor::HyperbolicSin { lambda } => {
            let l = finite("lambda", *lambda)?;
            Arc::new(move |c| {
                let x = pos(c);
                sinc(l * x) / sinhc(x)
            })
        }
        SemicharDescriptor::HyperbolicSinh { lambda } => {
            let l = finite("lambda", *lambda)?;
            Arc::new(move |c| {
                let x = pos(c);
                sinhc(l * x) / sinhc(x)
            })
        }
        SemicharDescriptor::SlNumeric { profile, lambda } => {
            let Ground::Grid(grid) = ground else {
                return Err(Error::Invalid("sl_numeric semicharacters need a grid model".into()));
            };
            let sol = sl_solve(&SlProfile::from_descriptor(profile)?, *lambda, grid)?;
            let values: Vec<S> = sol.values().iter().map(|v| S::of(*v)).collect();
            Arc::new(move |c| match c {
                Coord::Node(k) => values.get(*k as usize).copied().unwrap_or_else(S::nan),
                _ => S::nan(),
            })
        }
        SemicharDescriptor::Product { factors } => {
            let parts = factors.iter().map(|f| compile::<S>(ground, f)).collect::<Result<Vec<_>>>()?;
            Arc::new(move |c| parts.iter().fold(S::one(), |acc, p| acc * p(c)))
        }
        SemicharDescriptor::Quotient { num, den } => {
            let (n, d) = (compile::<S>(ground, num)?, compile::<S>(ground, den)?);
            Arc::new(move |c| n(c) / d(c))
        }
    })
}

impl<S: Real> Semicharacter<S> {
    /// Builds the function on the ground space of `hg` (uncertified).
    pub fn new(hg: &dyn Hypergroup<S>, descriptor: SemicharDescriptor) -> Result<Self> {
        Self::on_ground(hg.space().clone(), hg.ground(), descriptor)
    }

    pub fn on_ground(space: SpaceId, ground: Ground, descriptor: SemicharDescriptor) -> Result<Self> {
        let eval = compile::<S>(ground, &descriptor)?;
        let mut positive = descriptor.positive_family();
        if positive {
            let points = ground.points_up_to(ground.max_position());
            positive = points.iter().all(|c| {
                let v = eval(c);
                v > S::zero() && v.is_finite()
            });
        }
        Ok(Semicharacter { space, ground, descriptor, eval, positive, certificate: None })
    }

    /// Builds and certifies on `hg` with the default sampling settings.
    pub fn certified(hg: &dyn Hypergroup<S>, descriptor: SemicharDescriptor) -> Result<Self> {
        Ok(Self::new(hg, descriptor)?.certify(hg, DEFAULT_CERT_SAMPLES, DEFAULT_CERT_SEED))
    }

    /// Attaches a multiplicativity certificate for `hg`.
    pub fn certify(mut self, hg: &dyn Hypergroup<S>, n_samples: usize, seed: u64) -> Self {
        let mult_defect = is_multiplicative(hg, |c| self.eval(c), n_samples, seed);
        self.certificate = Some(Certificate { hypergroup: hg.label(), mult_defect, samples: n_samples, seed });
        self
    }

    pub fn eval(&self, c: &Coord) -> S {
        (self.eval)(c)
    }

    pub fn space(&self) -> &SpaceId {
        &self.space
    }

    pub fn ground(&self) -> Ground {
        self.ground
    }

    pub fn descriptor(&self) -> &SemicharDescriptor {
        &self.descriptor
    }

    pub fn is_positive(&self) -> bool {
        self.positive
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        self.certificate.as_ref()
    }

    /// Certified multiplicativity defect, infinite when uncertified.
    pub fn mult_defect(&self) -> f64 {
        self.certificate.as_ref().map_or(f64::INFINITY, |c| c.mult_defect)
    }

    fn combine(&self, other: &Self, descriptor: SemicharDescriptor, positive: bool, f: fn(S, S) -> S) -> Result<Self> {
        if self.space != other.space {
            return Err(Error::space_mismatch(&self.space, &other.space));
        }
        let (a, b) = (self.eval.clone(), other.eval.clone());
        let eval: Eval<S> = Arc::new(move |c| f(a(c), b(c)));
        Ok(Semicharacter { space: self.space.clone(), ground: self.ground, descriptor, eval, positive, certificate: None })
    }

    /// Pointwise product (uncertified).
    pub fn product(&self, other: &Self) -> Result<Self> {
        let d = SemicharDescriptor::Product { factors: vec![self.descriptor.clone(), other.descriptor.clone()] };
        self.combine(other, d, self.positive && other.positive, |a, b| a * b)
    }

    /// Pointwise quotient (uncertified).
    pub fn quotient(&self, other: &Self) -> Result<Self> {
        if !other.positive {
            return Err(Error::NotPositive(format!("{:?}", other.descriptor)));
        }
        let d = SemicharDescriptor::Quotient { num: Box::new(self.descriptor.clone()), den: Box::new(other.descriptor.clone()) };
        self.combine(other, d, self.positive, |a, b| a / b)
    }

    /// `1/α` (uncertified).
    pub fn reciprocal(&self) -> Result<Self> {
        let one = Semicharacter::on_ground(self.space.clone(), self.ground, SemicharDescriptor::Constant {})?;
        one.quotient(self)
    }
}

/// Largest `|∫α d(δx * δy) - α(x)α(y)| / (1 + |α(x)α(y)|)` over sampled pairs.
/// Pairs whose kernel cannot be evaluated count as infinite defects.
pub fn is_multiplicative<S: Weight>(hg: &dyn Hypergroup<S>, alpha: impl Fn(&Coord) -> S, n_samples: usize, seed: u64) -> f64 {
    let ground = hg.ground();
    let range = match ground {
        Ground::Grid(g) => g.x_max() / 2.0,
        _ => ground.max_position(),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..n_samples.max(1) {
        let x = ground.sample(&mut rng, range);
        let y = ground.sample(&mut rng, range);
        let defect = match hg.kernel(&x, &y) {
            Ok(k) => {
                let prod = alpha(&x) * alpha(&y);
                let lhs = k.integrate(&alpha);
                ((lhs - prod.clone()).abs() / (S::one() + prod.abs())).lossy_f64()
            }
            Err(_) => f64::INFINITY,
        };
        worst = worst.max(if defect.is_nan() { f64::INFINITY } else { defect });
    }
    worst
}

/// `M_{α₀}: α ↦ α/α₀`, uncertified.
pub fn dual_map<S: Real>(alpha: &Semicharacter<S>, alpha0: &Semicharacter<S>) -> Result<Semicharacter<S>> {
    alpha.quotient(alpha0)
}

/// Points within `radius` of the identity.
fn neighborhood(ground: &Ground, identity: &Coord, radius: f64) -> Vec<Coord> {
    match ground {
        Ground::Finite { .. } if radius < 1.0 => vec![identity.clone()],
        _ => ground.points_up_to(radius),
    }
}

/// Empirical `max α₀(y)/α₀(x)` over sampled `x` and `y ∈ supp(δx * δu)` with
/// `u` in the ball of radius `radius` around the identity. This bounds the
/// best exponentiality constant from below.
pub fn exponentiality_estimate<S: Real>(
    hg: &dyn Hypergroup<S>,
    alpha0: &Semicharacter<S>,
    radius: f64,
    n_samples: usize,
    seed: u64,
) -> Result<f64> {
    if !alpha0.is_positive() {
        return Err(Error::NotPositive(format!("{:?}", alpha0.descriptor())));
    }
    if alpha0.space() != hg.space() {
        return Err(Error::space_mismatch(hg.space(), alpha0.space()));
    }
    let ground = hg.ground();
    let u = neighborhood(&ground, &hg.identity(), radius);
    let range = match ground {
        Ground::Grid(g) => g.x_max() - radius,
        _ => ground.max_position(),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = S::one();
    for _ in 0..n_samples.max(1) {
        let x = ground.sample(&mut rng, range);
        let ax = alpha0.eval(&x);
        for v in &u {
            for (y, _) in hg.kernel(&x, v)?.iter() {
                worst = worst.max(alpha0.eval(y) / ax);
            }
        }
    }
    Ok(worst.lossy_f64())
}
