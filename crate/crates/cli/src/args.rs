use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "hgdeform", version, about = "Deformations of commutative hypergroups, Poisson semigroups and orbit characters")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// JSON file holding `command` and flag values; flags on the command line
    /// override it.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Cmd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Sampled defects of the hypergroup axioms.
    Axioms(AxiomsArgs),
    /// Convolve two measures, or check the deformation identities on random measures.
    Convolve(ConvolveArgs),
    /// Kernels of a deformed model, and comparisons against other models.
    DeformKernel(DeformKernelArgs),
    /// The normalized transform α₀μ / ∫α₀ dμ.
    RTransform(RTransformArgs),
    /// Evaluate a Poisson semigroup, optionally against its deformation.
    SemigroupEvolve(EvolveArgs),
    /// Small-time estimates (1/t)∫f dμ_t of the Lévy measure.
    Levy(LevyArgs),
    /// Generator matrix on a finite basis, or the deformed generator identity.
    GeneratorCheck(GeneratorArgs),
    /// Sturm-Liouville eigenfunctions, renormalized profiles and ρ.
    SlSolve(SlArgs),
    /// Weyl chamber data of a root system.
    Weyl(WeylArgs),
    /// Monte Carlo orbit characters of SO(d) or SU(d).
    OrbitChar(OrbitArgs),
    /// Exponentiality estimates for hypergroups, or the orbit growth bound.
    ExpoCheck(ExpoArgs),
    /// Measures converging to the identity whose transforms do not.
    #[command(name = "demo-remark33")]
    DemoRemark33(DemoArgs),
}

#[derive(Args, Debug)]
pub struct AxiomsArgs {
    /// Model: shorthand (`chebyshev`, `s3`, `bessel_kingman[:h=..,x_max=..]`,
    /// `hyperbolic[...]`), inline JSON or `@file.json`.
    #[arg(long)]
    pub model: String,
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    #[arg(long)]
    pub seed: u64,
    /// Pass threshold for the largest defect (default: the model's mass
    /// tolerance times the condition factor).
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Args, Debug)]
pub struct ConvolveArgs {
    #[arg(long)]
    pub model: String,
    /// Measure: `pos:weight,...`, inline JSON or `@file.{json,csv}`.
    #[arg(long, requires = "nu", conflicts_with = "alpha0")]
    pub mu: Option<String>,
    #[arg(long, requires = "mu")]
    pub nu: Option<String>,
    /// Check α₀(μ*ν) = (α₀μ)•(α₀ν) and the transform identity on random pairs.
    #[arg(long)]
    pub alpha0: Option<String>,
    #[arg(long, default_value_t = 50)]
    pub pairs: usize,
    /// Atoms per random measure.
    #[arg(long, default_value_t = 3)]
    pub atoms: usize,
    /// Largest atom position of the random measures.
    #[arg(long)]
    pub range: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Args, Debug)]
pub struct DeformKernelArgs {
    #[arg(long)]
    pub model: String,
    /// Semicharacter: shorthand (`cosh:s=..`, `chebyshev:c=..`,
    /// `bessel_sinh:rho=..`, ..., combined with `*` and `/`) or JSON.
    #[arg(long)]
    pub alpha0: String,
    #[arg(long, requires = "y", allow_hyphen_values = true)]
    pub x: Option<f64>,
    #[arg(long, requires = "x", allow_hyphen_values = true)]
    pub y: Option<f64>,
    /// Compare kernels with this model on random pairs.
    #[arg(long, conflicts_with_all = ["x", "dual", "beta0"])]
    pub compare: Option<String>,
    #[arg(long, default_value_t = 25)]
    pub pairs: usize,
    /// Pairs are drawn with x + y at most this.
    #[arg(long, default_value_t = 8.0)]
    pub max_sum: f64,
    /// Map a semicharacter of the base model to the deformed model.
    #[arg(long, conflicts_with_all = ["x", "beta0"])]
    pub dual: Option<String>,
    /// Closed form the dual image is compared with pointwise.
    #[arg(long, requires = "dual")]
    pub expect: Option<String>,
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    /// Deform the deformed model again and compare with one deformation by α₀β₀.
    #[arg(long, conflicts_with = "x")]
    pub beta0: Option<String>,
    /// Largest position of the kernel pairs in the transitivity check.
    #[arg(long)]
    pub range: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Args, Debug)]
pub struct RTransformArgs {
    #[arg(long)]
    pub model: String,
    #[arg(long)]
    pub alpha0: String,
    #[arg(long)]
    pub mu: String,
}

#[derive(Args, Debug)]
pub struct EvolveArgs {
    #[arg(long)]
    pub model: String,
    /// Jump measure, same syntax as measures.
    #[arg(long)]
    pub jump: String,
    /// Times, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub t: Vec<f64>,
    /// Truncation tolerance of the exponential series.
    #[arg(long, default_value_t = 1e-12)]
    pub eps: f64,
    /// Compare the transported semigroup with the deformed one.
    #[arg(long)]
    pub alpha0: Option<String>,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
}

#[derive(Args, Debug)]
pub struct LevyArgs {
    #[arg(long)]
    pub model: String,
    #[arg(long)]
    pub jump: String,
    /// Positions where the test function is 1; it vanishes elsewhere.
    #[arg(long, value_delimiter = ',', required = true)]
    pub f_support: Vec<f64>,
    /// Times `t = 2^-k` for `k` from `k-min` to `k-max`.
    #[arg(long, default_value_t = 4)]
    pub k_min: i32,
    #[arg(long, default_value_t = 12)]
    pub k_max: i32,
    /// Explicit times instead of powers of two.
    #[arg(long, value_delimiter = ',')]
    pub t: Vec<f64>,
    #[arg(long, default_value_t = 1e-15)]
    pub eps: f64,
}

#[derive(Args, Debug)]
pub struct GeneratorArgs {
    #[arg(long)]
    pub model: String,
    #[arg(long)]
    pub jump: String,
    #[arg(long)]
    pub alpha0: Option<String>,
    /// The basis is every point with position at most this.
    #[arg(long, default_value_t = 128.0)]
    pub basis_max: f64,
    /// Rows leaking more mass than this out of the basis are boundary rows.
    #[arg(long, default_value_t = 1e-12)]
    pub leak_tol: f64,
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
}

#[derive(Args, Debug)]
pub struct SlArgs {
    /// Profile: `power:k=..`, `sinh2`, `sinh_power:k=..`, `exp_power:k=..,a=..`,
    /// inline JSON or `@file.json`.
    #[arg(long)]
    pub profile: String,
    #[arg(long, value_delimiter = ',', required = true)]
    pub lambda: Vec<f64>,
    #[arg(long, default_value_t = 1.0 / 64.0)]
    pub h: f64,
    #[arg(long, default_value_t = 8.0)]
    pub x_max: f64,
    /// Output the renormalized profiles φ² A instead of φ.
    #[arg(long)]
    pub renormalize: bool,
    /// Probe points for ρ.
    #[arg(long, value_delimiter = ',')]
    pub probes: Vec<f64>,
}

#[derive(Args, Debug)]
pub struct WeylArgs {
    #[arg(long)]
    pub family: String,
    #[arg(long)]
    pub d: usize,
    /// Also report the chamber representative of this point.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub point: Vec<f64>,
}

#[derive(Args, Debug)]
pub struct OrbitArgs {
    #[arg(long, default_value = "SO")]
    pub group: String,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    pub lambda: Vec<f64>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    pub x: Vec<f64>,
    #[arg(long, default_value_t = 100_000)]
    pub samples: usize,
    #[arg(long)]
    pub seed: u64,
    /// Estimate the positive semicharacter ∫ e^{-⟨λ, k.x⟩} dk instead.
    #[arg(long)]
    pub positive: bool,
}

#[derive(Args, Debug)]
pub struct ExpoArgs {
    /// Hypergroup mode: model and semicharacter.
    #[arg(long, requires = "alpha0", conflicts_with = "rho")]
    pub model: Option<String>,
    #[arg(long, requires = "model")]
    pub alpha0: Option<String>,
    #[arg(long, default_value_t = 1.0)]
    pub radius: f64,
    /// Orbit mode: compact group and exponent ρ.
    #[arg(long, default_value = "SO")]
    pub group: String,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub rho: Vec<f64>,
    /// Random pairs with x in the ball of radius `spread` and |x - y| ≤ 1.
    #[arg(long, default_value_t = 20)]
    pub pairs: usize,
    #[arg(long, default_value_t = 3.0)]
    pub spread: f64,
    #[arg(long, default_value_t = 20_000)]
    pub samples: usize,
    #[arg(long)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct DemoArgs {
    /// α₀ = cosh(s·) with cosh s = c on ℕ₀.
    #[arg(long, default_value_t = 2.0)]
    pub c: f64,
    #[arg(long, default_value_t = 40)]
    pub n_max: u32,
}
