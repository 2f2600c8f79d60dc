use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

const MODELS_HELP: &str = "\
MODELS
  family       V_m = (1/4 - m^2) F' + 2 m G' + G^2 for one solved (F, G) pair,
               xi = x - c - i gamma, b = b_R + i b_I:
                 --kind I    F = tanh xi,  G = b sech xi
                 --kind II   F = coth xi,  G = b cosech xi   (gamma = 0: half-line x > c)
                 --kind III  F = +-1,      G = b e^(-+x)     (--sign upper|lower)
               needs --m; -pi/4 <= gamma < pi/4 unless --allow-any-gamma.
               Levels E_n = -(m - n - 1/2)^2, n < m - 1/2. Family III upper
               needs b_R > 0, lower needs b_R < 0.
  scarf        -[B^2 + A(A+1)] sech^2 x + i B (2A+1) sech x tanh x,
               A + 1/2 > 0, B > 0. Two series:
                 series_A  E = -(A - n)^2,        n < A
                 series_B  E = -(B - n - 1/2)^2,  n < B - 1/2
  gpt          [B^2 + A(A+1)] cosech^2 xi - B(2A+1) cosech xi coth xi,
               A + 1/2 > 0, B > 0, gamma != k pi (gamma = 0: half-line x > c).
  ptII         (B-A)(B-A-1)/sinh^2(t - i gamma/2) - (A+B)(A+B+1)/cosh^2(t - i gamma/2),
               the gpt potential in t = x/2; energies are 4x the gpt ones.
  transparent  reduced well -(1/2) sech^2((x - c - i gamma)/2) of
               2 eps_R / cosh^2[sqrt(-eps_R)(y + b_shift) + i rho], with
               c = -2 sqrt(-eps_R) b_shift, gamma = -2 rho; eps_R < 0,
               sin(2 rho) != 0. One level: -1/4 reduced, eps_R physical.
  morse        (B_R + i B_I)^2 e^(-2x) - (B_R + i B_I)(2A+1) e^(-x),
               A > 0, B_R > 0. E = -(A - n)^2, n < A, independent of B_I.

EXIT STATUS
  0 all checks passed, 1 usage or parameter error, 2 a check failed,
  3 an eigenvalue iteration did not converge.

ENVIRONMENT
  SL2C_OUT_DIR  default directory for <command>.json / <command>.csv when
                --output is not given (otherwise output goes to stdout).";

#[derive(Debug, Parser)]
#[command(
    name = "sl2c",
    version,
    about = "Complex potentials with real spectra from an sl(2,C) potential algebra",
    after_help = MODELS_HELP
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample the potential. CSV columns: x,re_V,im_V
    #[command(allow_negative_numbers = true, after_help = MODELS_HELP)]
    Potential(RunArgs),
    /// Analytic bound-state energies. CSV columns: label,n,energy
    #[command(allow_negative_numbers = true, after_help = MODELS_HELP)]
    Spectrum(RunArgs),
    /// One bound state, normalized, with its Schrodinger residual.
    /// CSV columns: x,re_psi,im_psi,abs2
    #[command(allow_negative_numbers = true, after_help = MODELS_HELP)]
    Wavefunction(RunArgs),
    /// Finite-difference spectrum matched against the analytic levels, plus
    /// residual and PT checks. CSV columns: kind,label,n,analytic,re,im,gap
    #[command(allow_negative_numbers = true, after_help = MODELS_HELP)]
    Verify(RunArgs),
    /// Sweep B for Scarf II at fixed A and report the closest inter-series
    /// pair. CSV columns: B,gap,n_A,n_B,E_A,E_B,defect
    #[command(allow_negative_numbers = true, after_help = MODELS_HELP)]
    CrossingScan(RunArgs),
    /// Commutator, Casimir and ODE identities of the algebra behind the model.
    /// CSV columns: name,pass,detail
    #[command(allow_negative_numbers = true, after_help = MODELS_HELP)]
    AlgebraCheck(RunArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Potential(_) => "potential",
            Command::Spectrum(_) => "spectrum",
            Command::Wavefunction(_) => "wavefunction",
            Command::Verify(_) => "verify",
            Command::CrossingScan(_) => "crossing-scan",
            Command::AlgebraCheck(_) => "algebra-check",
        }
    }

    pub fn args(&self) -> &RunArgs {
        match self {
            Command::Potential(a)
            | Command::Spectrum(a)
            | Command::Wavefunction(a)
            | Command::Verify(a)
            | Command::CrossingScan(a)
            | Command::AlgebraCheck(a) => a,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub tol: TolArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelKind {
    Family,
    Scarf,
    Gpt,
    #[value(name = "ptII")]
    PtII,
    Transparent,
    Morse,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    #[value(name = "I")]
    I,
    #[value(name = "II")]
    II,
    #[value(name = "III")]
    III,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SignArg {
    Upper,
    Lower,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeriesArg {
    #[value(name = "A")]
    A,
    #[value(name = "B")]
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    #[arg(long, value_enum, default_value = "scarf")]
    pub model: ModelKind,
    /// Family kind (model family)
    #[arg(long, value_enum)]
    pub kind: Option<KindArg>,
    /// Family III branch
    #[arg(long, value_enum, default_value = "upper")]
    pub sign: SignArg,
    #[arg(long = "A")]
    pub a: Option<f64>,
    #[arg(long = "B")]
    pub b: Option<f64>,
    #[arg(long = "b_R")]
    pub b_r: Option<f64>,
    #[arg(long = "b_I")]
    pub b_i: Option<f64>,
    #[arg(long = "c")]
    pub c: Option<f64>,
    #[arg(long = "gamma")]
    pub gamma: Option<f64>,
    /// Weight m (model family)
    #[arg(long = "m")]
    pub m: Option<f64>,
    /// Level index (wavefunction)
    #[arg(long = "n")]
    pub n: Option<usize>,
    /// Series of the level (scarf, gpt, ptII, family)
    #[arg(long, value_enum)]
    pub series: Option<SeriesArg>,
    #[arg(long = "eps_R")]
    pub eps_r: Option<f64>,
    #[arg(long = "b_shift")]
    pub b_shift: Option<f64>,
    #[arg(long = "rho")]
    pub rho: Option<f64>,
    #[arg(long = "B_R")]
    pub big_b_r: Option<f64>,
    #[arg(long = "B_I")]
    pub big_b_i: Option<f64>,
    #[arg(long = "B_from")]
    pub b_from: Option<f64>,
    #[arg(long = "B_to")]
    pub b_to: Option<f64>,
    #[arg(long = "steps", default_value_t = 61)]
    pub steps: usize,
    /// Lift the -pi/4 <= gamma < pi/4 restriction on family shifts
    #[arg(long)]
    pub allow_any_gamma: bool,
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    #[arg(long = "x-min")]
    pub x_min: Option<f64>,
    #[arg(long = "x-max")]
    pub x_max: Option<f64>,
    #[arg(long = "n-points")]
    pub n_points: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct TolArgs {
    /// Energy window for matching numeric to analytic levels
    #[arg(long = "e-tol", default_value_t = crate::verify::DEFAULT_E_TOL)]
    pub e_tol: f64,
    /// Largest |Im E| accepted as a real level
    #[arg(long = "im-tol", default_value_t = crate::verify::DEFAULT_IM_TOL)]
    pub im_tol: f64,
    /// Use the raw 3-point spectrum instead of the Richardson combination
    #[arg(long)]
    pub no_richardson: bool,
    /// Iteration cap per eigenvalue
    #[arg(long = "max-sweeps", default_value_t = crate::verify::eigen::DEFAULT_MAX_ITERATIONS)]
    pub max_sweeps: usize,
    /// Energy gap below which two Scarf II levels count as crossing
    #[arg(long = "crossing-tol", default_value_t = crate::models::DEFAULT_CROSSING_TOL)]
    pub crossing_tol: f64,
    /// Random test functions per family (algebra-check)
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    /// Seed for the random test functions (algebra-check)
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}
