//! Operator identities of the reduced algebra checked on sampled functions:
//! the commutator `A+(m-1)A-(m) - A-(m+1)A+(m) = -2m`, agreement of the two
//! factorized Casimir forms with the direct one, and the Casimir eigenvalue
//! `k(k-1)` on bound states.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{self, FamilyKind, FamilySolution, Ladder};
use crate::error::Result;
use crate::grid::{Grid, GridFunction};

/// Points dropped at each end, where nested one-sided stencils are less
/// accurate.
pub const EDGE_SKIP: usize = 6;

/// Spacing of identity-check grids.
pub const CHECK_DX: f64 = 2.5e-3;

/// A smooth, localized function whose spectrum is confined to `|k| <= 3`
/// up to the Gaussian envelope.
pub fn random_test_function(rng: &mut impl Rng, grid: &Grid) -> GridFunction {
    let (lo, hi) = (grid.x0, grid.x_max());
    let width = hi - lo;
    let center = lo + width * rng.gen_range(0.35..0.65);
    let sigma = rng.gen_range(0.6..1.2) * (width / 12.0).min(2.0);
    let terms: Vec<(Complex64, f64)> = (0..4)
        .map(|_| {
            (
                Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                rng.gen_range(-3.0..3.0),
            )
        })
        .collect();
    GridFunction::from_fn(grid, |x| {
        let u = (x - center) / sigma;
        let env = (-0.5 * u * u).exp();
        let wave: Complex64 = terms
            .iter()
            .map(|(a, w)| a * Complex64::new(0.0, w * x).exp())
            .sum();
        env * wave
    })
}

fn interior_sup(values: &[Complex64]) -> f64 {
    let n = values.len();
    if n <= 2 * EDGE_SKIP {
        return 0.0;
    }
    values[EDGE_SKIP..n - EDGE_SKIP]
        .iter()
        .map(|v| v.norm())
        .fold(0.0, f64::max)
}

fn relative(diff: &[Complex64], psi: &GridFunction) -> f64 {
    let scale = psi.sup_norm();
    let d = interior_sup(diff);
    if scale > 0.0 {
        d / scale
    } else {
        d
    }
}

/// `max |[A+(m-1)A-(m) - A-(m+1)A+(m)] psi + 2m psi| / ||psi||_inf`.
pub fn commutator_defect(fam: &FamilySolution, m: f64, psi: &GridFunction) -> Result<f64> {
    let down_up = fam.apply_ladder(
        m - 1.0,
        Ladder::Raise,
        &fam.apply_ladder(m, Ladder::Lower, psi)?,
    )?;
    let up_down = fam.apply_ladder(
        m + 1.0,
        Ladder::Lower,
        &fam.apply_ladder(m, Ladder::Raise, psi)?,
    )?;
    let diff: Vec<Complex64> = (0..psi.len())
        .map(|j| down_up.values[j] - up_down.values[j] + 2.0 * m * psi.values[j])
        .collect();
    Ok(relative(&diff, psi))
}

/// Largest pairwise discrepancy between `m^2 - m - A+(m-1)A-(m)`,
/// `m^2 + m - A-(m+1)A+(m)` and the direct second-order Casimir.
pub fn casimir_forms_defect(fam: &FamilySolution, m: f64, psi: &GridFunction) -> Result<f64> {
    let a = fam.apply_ladder(
        m - 1.0,
        Ladder::Raise,
        &fam.apply_ladder(m, Ladder::Lower, psi)?,
    )?;
    let b = fam.apply_ladder(
        m + 1.0,
        Ladder::Lower,
        &fam.apply_ladder(m, Ladder::Raise, psi)?,
    )?;
    let direct = fam.casimir_apply(m, psi)?;
    let n = psi.len();
    let c1: Vec<Complex64> = (0..n)
        .map(|j| (m * m - m) * psi.values[j] - a.values[j])
        .collect();
    let c2: Vec<Complex64> = (0..n)
        .map(|j| (m * m + m) * psi.values[j] - b.values[j])
        .collect();
    let d12: Vec<Complex64> = (0..n).map(|j| c1[j] - c2[j]).collect();
    let d1d: Vec<Complex64> = (0..n).map(|j| c1[j] - direct.values[j]).collect();
    let d2d: Vec<Complex64> = (0..n).map(|j| c2[j] - direct.values[j]).collect();
    Ok(relative(&d12, psi)
        .max(relative(&d1d, psi))
        .max(relative(&d2d, psi)))
}

/// `max |C psi - k(k-1) psi| / ||psi||_inf` with the direct Casimir at weight `m`.
pub fn casimir_eigen_defect(
    fam: &FamilySolution,
    m: f64,
    k: f64,
    psi: &GridFunction,
) -> Result<f64> {
    let cpsi = fam.casimir_apply(m, psi)?;
    let kk = k * (k - 1.0);
    let diff: Vec<Complex64> = (0..psi.len())
        .map(|j| cpsi.values[j] - kk * psi.values[j])
        .collect();
    Ok(relative(&diff, psi))
}

/// A grid on which the family is regular and its bound states have decayed
/// at both ends.
pub fn natural_domain(fam: &FamilySolution) -> (f64, f64) {
    match fam.kind() {
        FamilyKind::I => (fam.c() - 15.0, fam.c() + 15.0),
        FamilyKind::II if fam.has_real_pole() => (fam.c() + algebra::HALF_LINE_EPS, fam.c() + 30.0),
        FamilyKind::II => (fam.c() - 20.0, fam.c() + 20.0),
        FamilyKind::III => match fam.branch() {
            algebra::Branch::Upper => (-4.0, 30.0),
            algebra::Branch::Lower => (-30.0, 4.0),
        },
    }
}

/// Test-function grid: a narrower window inside the natural domain, away
/// from the wall of a half-line problem.
pub fn test_function_grid(fam: &FamilySolution) -> Result<Grid> {
    let (lo, hi) = match fam.kind() {
        FamilyKind::II if fam.has_real_pole() => (fam.c() + 0.5, fam.c() + 10.5),
        FamilyKind::III => (-5.0, 5.0),
        _ => (fam.c() - 6.0, fam.c() + 6.0),
    };
    Grid::spanning(lo, hi, ((hi - lo) / CHECK_DX).round() as usize + 1)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateCheck {
    pub n: usize,
    pub k: f64,
    pub energy: f64,
    pub casimir_defect: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub kind: FamilyKind,
    pub m: f64,
    pub trials: usize,
    pub ode_residual: (f64, f64),
    pub max_commutator_defect: f64,
    pub max_casimir_forms_defect: f64,
    pub states: Vec<StateCheck>,
}

impl IdentityReport {
    pub fn max_state_defect(&self) -> f64 {
        self.states
            .iter()
            .map(|s| s.casimir_defect)
            .fold(0.0, f64::max)
    }
}

/// Runs all identities for `(fam, m)`: `trials` seeded random test functions
/// plus every bound state of `V_m` that is normalizable for this family.
pub fn run_identity_suite(
    fam: &FamilySolution,
    m: f64,
    trials: usize,
    seed: u64,
) -> Result<IdentityReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tgrid = test_function_grid(fam)?;
    let ode_residual = fam.ode_residual(&tgrid.points())?;
    let mut max_comm = 0.0f64;
    let mut max_forms = 0.0f64;
    for _ in 0..trials {
        let psi = random_test_function(&mut rng, &tgrid);
        max_comm = max_comm.max(commutator_defect(fam, m, &psi)?);
        max_forms = max_forms.max(casimir_forms_defect(fam, m, &psi)?);
    }
    let (lo, hi) = match natural_domain(fam) {
        (lo, hi) if fam.has_real_pole() => (lo + 0.5, hi),
        d => d,
    };
    let sgrid = Grid::spanning(lo, hi, ((hi - lo) / CHECK_DX).round() as usize + 1)?;
    let mut states = Vec::new();
    for n in 0..algebra::bound_state_count(m) {
        let k = m - n as f64;
        let psi = match fam.analytic_bound_state(m, n, &sgrid) {
            Ok(p) => p,
            Err(crate::Error::NotNormalizable { .. }) => continue,
            Err(e) => return Err(e),
        };
        states.push(StateCheck {
            n,
            k,
            energy: algebra::energy(m, n)?,
            casimir_defect: casimir_eigen_defect(fam, m, k, &psi)?,
        });
    }
    Ok(IdentityReport {
        kind: fam.kind(),
        m,
        trials,
        ode_residual,
        max_commutator_defect: max_comm,
        max_casimir_forms_defect: max_forms,
        states,
    })
}
