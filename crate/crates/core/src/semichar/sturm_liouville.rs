//! Eigenfunctions of `L_A f = -f'' - (A'/A) f'` with `f(0) = 1`, `f'(0) = 0`.
//!
//! Profiles are written as `A'/A = k₀/x + q(x)` with `q` smooth at the origin.
//! The solver starts from a Frobenius series at `x₀ = 2h`, then integrates
//! `φ'' = -(A'/A)φ' - (ρ² - λ²)φ` with classical RK4. All arithmetic is `f64`.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::space::Grid;

/// RK4 substeps per grid cell.
const SUBSTEPS: usize = 128;
/// Frobenius terms at the start point.
const SERIES_TERMS: usize = 40;

/// Serializable description of a profile.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ProfileDescriptor {
    /// `A(x) = x^k`.
    Power { k: f64 },
    /// `A(x) = sinh² x`.
    Sinh2 {},
    /// `A(x) = sinh^k x`.
    SinhPower { k: f64 },
    /// `A(x) = x^k e^{2ax}`.
    ExpPower { k: f64, a: f64 },
    /// `A` tabulated at `x = i·h`, `i = 0, 1, ...`; `a[0]` is ignored.
    Table { h: f64, k0: f64, a: Vec<f64> },
    /// `φ_{iλ}² · A` for a base profile, solved on the grid `(h, x_max)`.
    Renormalized { base: Box<ProfileDescriptor>, lambda: f64, h: f64, x_max: f64 },
}

#[derive(Clone, Debug)]
enum Shape {
    Power { k: f64 },
    SinhPower { k: f64 },
    ExpPower { k: f64, a: f64 },
    Table(Table),
}

/// Values on the nodes `i·h` together with `q` and its Taylor coefficients.
#[derive(Clone, Debug)]
struct Table {
    h: f64,
    a: Vec<f64>,
    q: Vec<f64>,
    q_taylor: Vec<f64>,
}

impl Table {
    fn last(&self) -> usize {
        self.a.len() - 1
    }

    /// Four-point Lagrange interpolation of node values.
    fn interpolate(&self, values: &[f64], x: f64, first: usize) -> f64 {
        let n = self.last();
        let t = x / self.h;
        let k = (t.floor().max(0.0) as usize).min(n - 1);
        let start = k.saturating_sub(1).max(first).min(n - 3);
        let nodes = [start, start + 1, start + 2, start + 3];
        let mut out = 0.0;
        for (i, &ni) in nodes.iter().enumerate() {
            let mut w = 1.0;
            for (j, &nj) in nodes.iter().enumerate() {
                if i != j {
                    w *= (t - nj as f64) / (ni as f64 - nj as f64);
                }
            }
            out += w * values[ni];
        }
        out
    }
}

/// A Sturm–Liouville coefficient `A > 0` on `(0, x_max]`.
#[derive(Clone, Debug)]
pub struct SlProfile {
    shape: Shape,
    k0: f64,
    rho: f64,
    descriptor: ProfileDescriptor,
}

/// Taylor coefficients of `coth x - 1/x = x/3 - x³/45 + 2x⁵/945 - ...`.
const COTH_MINUS_INV: [f64; 12] =
    [0.0, 1.0 / 3.0, 0.0, -1.0 / 45.0, 0.0, 2.0 / 945.0, 0.0, -1.0 / 4725.0, 0.0, 2.0 / 93555.0, 0.0, -1382.0 / 638512875.0];

fn coth_minus_inv(x: f64) -> f64 {
    if x.abs() < 0.1 {
        COTH_MINUS_INV.iter().rev().fold(0.0, |acc, c| acc * x + c)
    } else {
        1.0 / x.tanh() - 1.0 / x
    }
}

impl SlProfile {
    pub fn power(k: f64) -> Result<Self> {
        if !(k >= 0.0 && k.is_finite()) {
            return Err(Error::BadProfile(format!("power exponent must be nonnegative, got {k}")));
        }
        Ok(SlProfile { shape: Shape::Power { k }, k0: k, rho: 0.0, descriptor: ProfileDescriptor::Power { k } })
    }

    pub fn sinh_power(k: f64) -> Result<Self> {
        if !(k >= 0.0 && k.is_finite()) {
            return Err(Error::BadProfile(format!("sinh exponent must be nonnegative, got {k}")));
        }
        let descriptor = if k == 2.0 { ProfileDescriptor::Sinh2 {} } else { ProfileDescriptor::SinhPower { k } };
        Ok(SlProfile { shape: Shape::SinhPower { k }, k0: k, rho: k / 2.0, descriptor })
    }

    pub fn exp_power(k: f64, a: f64) -> Result<Self> {
        if !(k >= 0.0 && k.is_finite() && a >= 0.0 && a.is_finite()) {
            return Err(Error::BadProfile(format!("need k >= 0 and a >= 0, got k = {k}, a = {a}")));
        }
        Ok(SlProfile { shape: Shape::ExpPower { k, a }, k0: k, rho: a, descriptor: ProfileDescriptor::ExpPower { k, a } })
    }

    /// A tabulated profile; `A'/A` is recovered by differencing `ln A - k₀ ln x`.
    pub fn table(h: f64, k0: f64, a: Vec<f64>) -> Result<Self> {
        if !(h > 0.0 && h.is_finite()) || !(k0 >= 0.0 && k0.is_finite()) {
            return Err(Error::BadProfile(format!("need h > 0 and k0 >= 0, got h = {h}, k0 = {k0}")));
        }
        if a.len() < 10 {
            return Err(Error::BadProfile("table needs at least 10 nodes".into()));
        }
        if let Some(i) = (1..a.len()).find(|&i| !(a[i] > 0.0 && a[i].is_finite())) {
            return Err(Error::BadProfile(format!("A({}) = {} is not positive", i as f64 * h, a[i])));
        }
        let n = a.len() - 1;
        let g: Vec<f64> = (0..=n).map(|i| if i == 0 { f64::NAN } else { a[i].ln() - k0 * (i as f64 * h).ln() }).collect();
        let mut q = vec![0.0; n + 1];
        for i in 1..=n {
            q[i] = if i >= 3 && i + 2 <= n {
                (g[i - 2] - 8.0 * g[i - 1] + 8.0 * g[i + 1] - g[i + 2]) / (12.0 * h)
            } else if i + 4 <= n {
                (-25.0 * g[i] + 48.0 * g[i + 1] - 36.0 * g[i + 2] + 16.0 * g[i + 3] - 3.0 * g[i + 4]) / (12.0 * h)
            } else {
                (25.0 * g[i] - 48.0 * g[i - 1] + 36.0 * g[i - 2] - 16.0 * g[i - 3] + 3.0 * g[i - 4]) / (12.0 * h)
            };
        }
        let q_taylor = fit_taylor(h, &q[1..=8.min(n)], 3);
        q[0] = q_taylor[0];
        let descriptor = ProfileDescriptor::Table { h, k0, a: a.clone() };
        let mut profile = SlProfile { shape: Shape::Table(Table { h, a, q, q_taylor }), k0, rho: 0.0, descriptor };
        profile.rho = rho_of(&profile, &default_probes(n as f64 * h))?.value;
        if profile.rho < -1e-6 {
            return Err(Error::BadProfile(format!("A'/A tends to a negative limit ({})", 2.0 * profile.rho)));
        }
        profile.rho = profile.rho.max(0.0);
        Ok(profile)
    }

    pub fn from_descriptor(d: &ProfileDescriptor) -> Result<Self> {
        match d {
            ProfileDescriptor::Power { k } => Self::power(*k),
            ProfileDescriptor::Sinh2 {} => Self::sinh_power(2.0),
            ProfileDescriptor::SinhPower { k } => Self::sinh_power(*k),
            ProfileDescriptor::ExpPower { k, a } => Self::exp_power(*k, *a),
            ProfileDescriptor::Table { h, k0, a } => Self::table(*h, *k0, a.clone()),
            ProfileDescriptor::Renormalized { base, lambda, h, x_max } => {
                renormalized_profile(&Self::from_descriptor(base)?, *lambda, Grid::new(*h, *x_max)?)
            }
        }
    }

    pub fn descriptor(&self) -> &ProfileDescriptor {
        &self.descriptor
    }

    /// Exponent `k₀` with `A(x) ~ c·x^{k₀}` at the origin.
    pub fn singularity_exponent(&self) -> f64 {
        self.k0
    }

    /// `ρ = ½ lim A'/A`.
    pub fn rho_limit(&self) -> f64 {
        self.rho
    }

    /// Largest `x` where the profile is defined (infinite for closed forms).
    pub fn x_max(&self) -> f64 {
        match &self.shape {
            Shape::Table(t) => t.last() as f64 * t.h,
            _ => f64::INFINITY,
        }
    }

    pub fn a(&self, x: f64) -> f64 {
        match &self.shape {
            Shape::Power { k } => x.powf(*k),
            Shape::SinhPower { k } => x.sinh().powf(*k),
            Shape::ExpPower { k, a } => x.powf(*k) * (2.0 * a * x).exp(),
            Shape::Table(t) => {
                let node = x / t.h;
                if (node - node.round()).abs() < 1e-9 && node.round() >= 1.0 && node.round() as usize <= t.last() {
                    return t.a[node.round() as usize];
                }
                let g: Vec<f64> =
                    (0..=t.last()).map(|i| if i == 0 { 0.0 } else { t.a[i].ln() - self.k0 * (i as f64 * t.h).ln() }).collect();
                (t.interpolate(&g, x, 1) + self.k0 * x.ln()).exp()
            }
        }
    }

    /// The smooth part `q = A'/A - k₀/x`.
    pub fn q(&self, x: f64) -> f64 {
        match &self.shape {
            Shape::Power { .. } => 0.0,
            Shape::SinhPower { k } => k * coth_minus_inv(x),
            Shape::ExpPower { a, .. } => 2.0 * a,
            Shape::Table(t) => t.interpolate(&t.q, x, 0),
        }
    }

    pub fn log_derivative(&self, x: f64) -> f64 {
        self.k0 / x + self.q(x)
    }

    fn q_taylor(&self) -> Vec<f64> {
        match &self.shape {
            Shape::Power { .. } => vec![],
            Shape::SinhPower { k } => COTH_MINUS_INV.iter().map(|c| k * c).collect(),
            Shape::ExpPower { a, .. } => vec![2.0 * a],
            Shape::Table(t) => t.q_taylor.clone(),
        }
    }
}

/// Least-squares polynomial of degree `deg` through `(i·h, values[i-1])`.
fn fit_taylor(h: f64, values: &[f64], deg: usize) -> Vec<f64> {
    let m = values.len();
    let design = DMatrix::from_fn(m, deg + 1, |i, j| ((i + 1) as f64 * h).powi(j as i32));
    let rhs = DVector::from_column_slice(values);
    let normal = design.transpose() * &design;
    let b = design.transpose() * rhs;
    normal.lu().solve(&b).map(|c| c.iter().copied().collect()).unwrap_or_else(|| vec![values[0]])
}

/// Frobenius coefficients `a_m` of `φ = Σ a_m x^m`, `a₀ = 1`, `a₁ = 0`.
fn frobenius(k0: f64, q: &[f64], energy: f64) -> Vec<f64> {
    let mut a = vec![0.0; SERIES_TERMS];
    a[0] = 1.0;
    for m in 2..SERIES_TERMS {
        let mut s = energy * a[m - 2];
        for (j, qj) in q.iter().enumerate().take(m - 1) {
            s += qj * (m - 1 - j) as f64 * a[m - 1 - j];
        }
        a[m] = -s / (m as f64 * (m as f64 - 1.0 + k0));
    }
    a
}

fn series_at(a: &[f64], x: f64) -> (f64, f64) {
    let v = a.iter().rev().fold(0.0, |acc, c| acc * x + c);
    let d = a.iter().enumerate().skip(1).rev().fold(0.0, |acc, (m, c)| acc * x + m as f64 * c);
    (v, d)
}

/// Grid values of `φ_{iλ}` and `φ'_{iλ}`.
#[derive(Clone, Debug)]
pub struct SlSolution {
    grid: Grid,
    lambda: f64,
    values: Vec<f64>,
    derivatives: Vec<f64>,
    error_estimate: f64,
}

impl SlSolution {
    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn derivatives(&self) -> &[f64] {
        &self.derivatives
    }

    pub fn value_at(&self, node: u32) -> f64 {
        self.values[node as usize]
    }

    /// Step-doubling estimate of the max-abs error.
    pub fn error_estimate(&self) -> f64 {
        self.error_estimate
    }
}

fn compensated_add(sum: f64, carry: f64, inc: f64) -> (f64, f64) {
    let y = inc - carry;
    let t = sum + y;
    (t, (t - sum) - y)
}

fn integrate(profile: &SlProfile, energy: f64, grid: Grid, substeps: usize) -> (Vec<f64>, Vec<f64>) {
    let h = grid.step();
    let n = grid.last_node() as usize;
    let series = frobenius(profile.k0, &profile.q_taylor(), energy);
    let mut values = vec![0.0; n + 1];
    let mut derivs = vec![0.0; n + 1];
    for i in 0..=2.min(n) {
        (values[i], derivs[i]) = series_at(&series, i as f64 * h);
    }
    let rhs = |x: f64, p: f64, d: f64| (d, -profile.log_derivative(x) * d - energy * p);
    let dt = h / substeps as f64;
    for i in 2..n {
        let (mut p, mut d) = (values[i], derivs[i]);
        // Kahan compensation of the many small increments
        let (mut cp, mut cd) = (0.0, 0.0);
        let x0 = i as f64 * h;
        for s in 0..substeps {
            let x = x0 + s as f64 * dt;
            let k1 = rhs(x, p, d);
            let k2 = rhs(x + dt / 2.0, p + dt / 2.0 * k1.0, d + dt / 2.0 * k1.1);
            let k3 = rhs(x + dt / 2.0, p + dt / 2.0 * k2.0, d + dt / 2.0 * k2.1);
            let k4 = rhs(x + dt, p + dt * k3.0, d + dt * k3.1);
            (p, cp) = compensated_add(p, cp, dt / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0));
            (d, cd) = compensated_add(d, cd, dt / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1));
        }
        values[i + 1] = p;
        derivs[i + 1] = d;
    }
    (values, derivs)
}

/// Solves `L_A φ = (ρ² - λ²) φ`, `φ(0) = 1`, `φ'(0) = 0` on the grid.
pub fn sl_solve(profile: &SlProfile, lambda: f64, grid: Grid) -> Result<SlSolution> {
    if !(lambda >= 0.0 && lambda.is_finite()) {
        return Err(Error::Invalid(format!("lambda must be a nonnegative number, got {lambda}")));
    }
    if grid.x_max() > profile.x_max() + 1e-12 {
        return Err(Error::BadProfile(format!("profile defined up to {} but the grid reaches {}", profile.x_max(), grid.x_max())));
    }
    if let Some(k) = (1..=grid.last_node()).find(|&k| !(profile.a(grid.position(k)) > 0.0)) {
        return Err(Error::BadProfile(format!("A({}) is not positive", grid.position(k))));
    }
    let energy = profile.rho * profile.rho - lambda * lambda;
    let (values, derivatives) = integrate(profile, energy, grid, SUBSTEPS);
    let (coarse, _) = integrate(profile, energy, grid, SUBSTEPS / 2);
    if let Some(k) = values.iter().position(|v| !(*v > 0.0)) {
        return Err(Error::SolverDefect { x: grid.position(k as u32) });
    }
    let error_estimate = values.iter().zip(&coarse).map(|(a, b)| (a - b).abs() / 15.0).fold(0.0, f64::max);
    Ok(SlSolution { grid, lambda, values, derivatives, error_estimate })
}

/// Estimate of `ρ` with the difference of the last two extrapolants.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RhoEstimate {
    pub value: f64,
    pub error: f64,
}

/// Probes at `{1/2, 5/8, 3/4, 7/8, 1}·x_max`.
pub fn default_probes(x_max: f64) -> Vec<f64> {
    [0.5, 0.625, 0.75, 0.875, 1.0].iter().map(|f| f * x_max).collect()
}

/// `½ A'/A` at the probes, extrapolated to `x = ∞` by Neville's scheme in
/// `u = 1/x`. The estimate is the entry of the tableau with the smallest
/// difference to its predecessor.
pub fn rho_of(profile: &SlProfile, probes: &[f64]) -> Result<RhoEstimate> {
    if probes.len() < 3 {
        return Err(Error::Invalid("need at least three probes".into()));
    }
    if probes.windows(2).any(|w| !(w[1] > w[0])) || !(probes[0] > 0.0) || probes.iter().any(|p| !p.is_finite()) {
        return Err(Error::Invalid("probes must be positive and strictly increasing".into()));
    }
    if *probes.last().expect("nonempty") > profile.x_max() + 1e-12 {
        return Err(Error::Invalid(format!("probes exceed the profile range {}", profile.x_max())));
    }
    let u: Vec<f64> = probes.iter().map(|p| 1.0 / p).collect();
    let v: Vec<f64> = probes.iter().map(|&p| 0.5 * profile.log_derivative(p)).collect();

    let n = v.len();
    let d: Vec<f64> = v.windows(2).map(|w| w[1] - w[0]).collect();
    let floor = 1e-12 * (1.0 + v[n - 1].abs());
    let last = d[d.len() - 1].abs();
    if last > 10.0 * d[d.len() - 2].abs() + floor {
        return Err(Error::NoLimit(format!("last increment {last:e} jumps over the previous {:e}", d[d.len() - 2].abs())));
    }
    let big: Vec<f64> = d.iter().copied().filter(|x| x.abs() > floor).collect();
    let sign_changes = big.windows(2).filter(|w| w[0].signum() != w[1].signum()).count();
    let largest = d.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if sign_changes >= 2 && last > 0.1 * largest {
        return Err(Error::NoLimit(format!("increments oscillate without settling (last {last:e})")));
    }

    // t[i][j]: extrapolant through probes i-j..=i
    let mut t = vec![vec![0.0; n]; n];
    let mut best = RhoEstimate { value: v[n - 1], error: last };
    for i in 0..n {
        t[i][0] = v[i];
        for j in 1..=i {
            let (ua, ub) = (u[i - j], u[i]);
            t[i][j] = (ua * t[i][j - 1] - ub * t[i - 1][j - 1]) / (ua - ub);
            let err = (t[i][j] - t[i][j - 1]).abs();
            if err < best.error {
                best = RhoEstimate { value: t[i][j], error: err };
            }
        }
    }
    Ok(best)
}

/// The profile `A_λ = φ_{iλ}² · A` on the grid.
pub fn renormalized_profile(profile: &SlProfile, lambda: f64, grid: Grid) -> Result<SlProfile> {
    let sol = sl_solve(profile, lambda, grid)?;
    let h = grid.step();
    let n = grid.last_node() as usize;
    let a: Vec<f64> = (0..=n).map(|i| if i == 0 { 0.0 } else { sol.values[i].powi(2) * profile.a(i as f64 * h) }).collect();
    let q: Vec<f64> = (0..=n)
        .map(|i| {
            let x = i as f64 * h;
            2.0 * sol.derivatives[i] / sol.values[i] + profile.q(x)
        })
        .collect();

    // Taylor coefficients of 2φ'/φ + q from the Frobenius series.
    let energy = profile.rho * profile.rho - lambda * lambda;
    let series = frobenius(profile.k0, &profile.q_taylor(), energy);
    let deriv: Vec<f64> = (1..series.len()).map(|m| m as f64 * series[m]).collect();
    let terms = 16;
    let mut ratio = vec![0.0; terms];
    for m in 0..terms {
        let mut s = deriv.get(m).copied().unwrap_or(0.0);
        for j in 1..=m {
            s -= series[j] * ratio[m - j];
        }
        ratio[m] = s;
    }
    let mut q_taylor: Vec<f64> = ratio.iter().map(|r| 2.0 * r).collect();
    for (i, c) in profile.q_taylor().into_iter().enumerate() {
        if i < q_taylor.len() {
            q_taylor[i] += c;
        }
    }

    let descriptor = ProfileDescriptor::Renormalized { base: Box::new(profile.descriptor.clone()), lambda, h, x_max: grid.x_max() };
    let mut out = SlProfile { shape: Shape::Table(Table { h, a, q, q_taylor }), k0: profile.k0, rho: 0.0, descriptor };
    out.rho = rho_of(&out, &default_probes(grid.x_max()))?.value.max(0.0);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{DEFAULT_STEP, DEFAULT_X_MAX};

    fn grid8() -> Grid {
        Grid::new(DEFAULT_STEP, 8.0).unwrap()
    }

    #[test]
    fn coth_series_matches_direct_evaluation() {
        for &x in &[0.01, 0.05, 0.099] {
            let direct = 1.0 / f64::tanh(x) - 1.0 / x;
            assert!((coth_minus_inv(x) - direct).abs() < 1e-12, "{x}");
        }
    }

    #[test]
    fn frobenius_series_of_power_profile_is_sinhc() {
        // A = x², ρ = 0: φ = sinh(λx)/(λx) = Σ (λx)^{2n}/(2n+1)!
        let a = frobenius(2.0, &[], -4.0);
        assert!((a[2] - 4.0 / 6.0).abs() < 1e-15);
        assert!((a[4] - 16.0 / 120.0).abs() < 1e-15);
        assert_eq!(a[3], 0.0);
    }

    #[test]
    fn power_profile_closed_form() {
        let p = SlProfile::power(2.0).unwrap();
        let sol = sl_solve(&p, 1.0, grid8()).unwrap();
        assert!((sol.value_at(64) - 1.0f64.sinh()).abs() < 1e-10);
        assert_eq!(sol.value_at(0), 1.0);
        assert!(sol.error_estimate() < 1e-8);
    }

    #[test]
    fn hyperbolic_profile_closed_form() {
        let p = SlProfile::sinh_power(2.0).unwrap();
        let sol = sl_solve(&p, 2.0, grid8()).unwrap();
        let want = 2.0f64.sinh() / (2.0 * 1.0f64.sinh());
        assert!((sol.value_at(64) - want).abs() < 1e-9, "{}", sol.value_at(64));
        // λ = 0 gives the ground state x / sinh x
        let ground = sl_solve(&p, 0.0, grid8()).unwrap();
        assert!((ground.value_at(128) - 2.0 / 2.0f64.sinh()).abs() < 1e-9);
    }

    #[test]
    fn exp_power_solution_satisfies_the_equation() {
        // A = x² e^{2x}, ρ = 1: φ'' + (2/x + 2)φ' + (1 − λ²)φ = 0
        let p = SlProfile::exp_power(2.0, 1.0).unwrap();
        let lambda = 1.5;
        let sol = sl_solve(&p, lambda, grid8()).unwrap();
        let h = DEFAULT_STEP;
        let (phi, dphi) = (sol.values(), sol.derivatives());
        for i in [16, 100, 300, 500] {
            let x = i as f64 * h;
            let d2 = (dphi[i + 1] - dphi[i - 1]) / (2.0 * h);
            let residual = d2 + (2.0 / x + 2.0) * dphi[i] + (1.0 - lambda * lambda) * phi[i];
            assert!(residual.abs() < 1e-4 * (1.0 + phi[i].abs()), "{x}: {residual}");
        }
        assert_eq!(sol.values()[0], 1.0);
    }

    #[test]
    fn rho_limits() {
        let probes = default_probes(DEFAULT_X_MAX);
        assert!(rho_of(&SlProfile::power(2.0).unwrap(), &probes).unwrap().value.abs() < 1e-12);
        assert!((rho_of(&SlProfile::sinh_power(2.0).unwrap(), &probes).unwrap().value - 1.0).abs() < 1e-6);
        assert!((rho_of(&SlProfile::exp_power(2.0, 1.0).unwrap(), &probes).unwrap().value - 1.0).abs() < 1e-9);
    }

    #[test]
    fn oscillating_profile_has_no_limit() {
        // A = x² (2 + sin x) tabulated: A'/A oscillates forever
        let h = 1.0 / 16.0;
        let a: Vec<f64> = (0..=256)
            .map(|i| {
                let x = i as f64 * h;
                x * x * (2.0 + x.sin())
            })
            .collect();
        let p = SlProfile::table(h, 2.0, a);
        assert!(matches!(p, Err(Error::NoLimit(_))), "{p:?}");
    }

    #[test]
    fn bad_profiles() {
        assert!(matches!(SlProfile::power(-1.0), Err(Error::BadProfile(_))));
        let mut a = vec![1.0; 20];
        a[5] = -1.0;
        assert!(matches!(SlProfile::table(0.1, 0.0, a), Err(Error::BadProfile(_))));
        assert!(sl_solve(&SlProfile::power(2.0).unwrap(), -1.0, grid8()).is_err());
    }

    #[test]
    fn tabulated_sinh_profile_solves() {
        let h = DEFAULT_STEP;
        let a: Vec<f64> = (0..=512).map(|i| (i as f64 * h).sinh().powi(2)).collect();
        let p = SlProfile::table(h, 2.0, a).unwrap();
        assert!((p.rho_limit() - 1.0).abs() < 1e-5);
        let sol = sl_solve(&p, 2.0, grid8()).unwrap();
        let want = 2.0f64.sinh() / (2.0 * 1.0f64.sinh());
        assert!((sol.value_at(64) - want).abs() < 1e-6, "{}", sol.value_at(64));
    }

    #[test]
    fn renormalization_of_zero_lambda_is_trivial() {
        let p = SlProfile::power(2.0).unwrap();
        let r = renormalized_profile(&p, 0.0, grid8()).unwrap();
        for k in [1u32, 100, 512] {
            let x = grid8().position(k);
            assert!((r.a(x) - x * x).abs() <= 1e-12 * x * x);
        }
        assert!(r.rho_limit().abs() < 1e-9);
    }
}
