//! Worked models built on the algebra: complexified Scarf II with its two
//! algebras, the complexified generalized Pöschl-Teller potential and its
//! Pöschl-Teller II and transparent relatives, and the complexified Morse
//! potential.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{self, Branch, FamilyKind, FamilySolution, DEFAULT_POLE_GUARD};
use crate::error::{Error, Result};
use crate::grid::{proportionality_defect, Grid, GridFunction};
use crate::special::{c, gudermannian, jacobi_poly, ln_cosh, safe_cosech_coth, sech};

/// Default energy window for calling two levels quasi-degenerate.
pub const DEFAULT_CROSSING_TOL: f64 = 1e-3;

/// Symmetric domain on which closed-form Scarf II states are compared.
pub const SCARF_DOMAIN: (f64, f64) = (-15.0, 15.0);

/// Asymmetric domain for Morse numerics: the wall at negative `x` grows
/// double-exponentially, the tail at positive `x` only exponentially.
pub const MORSE_DOMAIN: (f64, f64) = (-4.0, 30.0);

/// Default modulus cap applied by [`ComplexMorse::potential_clamped`].
pub const DEFAULT_MORSE_CAP: f64 = 1e12;

/// Which of the two Scarf II algebras a level belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Series {
    /// Weight `m = A + 1/2`.
    A,
    /// Weight `m = B`.
    B,
}

impl Series {
    pub fn label(self) -> &'static str {
        match self {
            Series::A => "series_A",
            Series::B => "series_B",
        }
    }
}

/// Parameters `(A, B)` of the complexified Scarf II potential
/// `-[B^2 + A(A+1)] sech^2 x + i B (2A+1) sech x tanh x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScarfParams {
    a: f64,
    b: f64,
}

impl ScarfParams {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !a.is_finite() || !(a + 0.5 > 0.0) {
            return Err(Error::invalid(
                "A",
                format!("need A + 1/2 > 0, got A = {a}"),
            ));
        }
        if !b.is_finite() || !(b > 0.0) {
            return Err(Error::invalid("B", format!("need B > 0, got B = {b}")));
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> f64 {
        self.a
    }
    pub fn b(&self) -> f64 {
        self.b
    }

    /// Parameters obtained by exchanging `A + 1/2` and `B`.
    pub fn exchanged(&self) -> Result<Self> {
        Self::new(self.b - 0.5, self.a + 0.5)
    }

    pub fn potential(&self, x: f64) -> Complex64 {
        scarf_potential(self, x)
    }
}

/// One solution `(m, b_I)` of the matching conditions between the Scarf II
/// potential and the family-I potential with `b = i b_I`, `c = gamma = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlgebraMap {
    pub m: f64,
    pub b_i: f64,
    pub series: Series,
}

impl AlgebraMap {
    /// The family-I realization carrying this algebra.
    pub fn family(&self) -> FamilySolution {
        FamilySolution::family_i(c(0.0, self.b_i), 0.0, 0.0)
            .expect("finite coupling with gamma = 0 is always valid")
    }

    /// Residuals of `b_I^2 + m^2 - 1/4 = B^2 + A(A+1)` and `-2 m b_I = B(2A+1)`.
    pub fn constraint_residuals(&self, p: &ScarfParams) -> (f64, f64) {
        let (a, b) = (p.a, p.b);
        let r1 = self.b_i * self.b_i + self.m * self.m - 0.25 - (b * b + a * (a + 1.0));
        let r2 = -2.0 * self.m * self.b_i - b * (2.0 * a + 1.0);
        (r1.abs(), r2.abs())
    }

    pub fn level_count(&self) -> usize {
        algebra::bound_state_count(self.m)
    }

    pub fn energy(&self, n: usize) -> Result<f64> {
        algebra::energy(self.m, n)
    }

    pub fn energies(&self) -> Vec<f64> {
        algebra::spectrum(self.m)
    }
}

/// The two algebras `(A + 1/2, -B)` and `(B, -A - 1/2)`.
pub fn scarf_algebra_maps(p: &ScarfParams) -> (AlgebraMap, AlgebraMap) {
    (
        AlgebraMap {
            m: p.a + 0.5,
            b_i: -p.b,
            series: Series::A,
        },
        AlgebraMap {
            m: p.b,
            b_i: -p.a - 0.5,
            series: Series::B,
        },
    )
}

pub fn scarf_map(p: &ScarfParams, series: Series) -> AlgebraMap {
    let (a, b) = scarf_algebra_maps(p);
    match series {
        Series::A => a,
        Series::B => b,
    }
}

pub fn scarf_potential(p: &ScarfParams, x: f64) -> Complex64 {
    let (a, b) = (p.a, p.b);
    let s = sech(c(x, 0.0)).re;
    let t = x.tanh();
    c(
        -(b * b + a * (a + 1.0)) * s * s,
        b * (2.0 * a + 1.0) * s * t,
    )
}

/// Closed-form level `n` of `map`, without normalization:
/// `(sech x)^(m - 1/2) exp(i b_I gd x) P_n^(-b_I - m, b_I - m)(i sinh x)`.
pub fn scarf_wavefunction(map: &AlgebraMap, n: usize, x: f64) -> Result<Complex64> {
    map.energy(n)?;
    scarf_wavefunction_unchecked(map, n, x)
}

/// [`scarf_wavefunction`] without the bound-state guard, for probing the first
/// non-normalizable index.
pub fn scarf_wavefunction_unchecked(map: &AlgebraMap, n: usize, x: f64) -> Result<Complex64> {
    let m = map.m;
    let envelope = ((0.5 - m) * ln_cosh(c(x, 0.0)).re).exp();
    let phase = (c(0.0, map.b_i) * gudermannian(c(x, 0.0))).exp();
    let p = jacobi_poly(
        n,
        c(-map.b_i - m, 0.0),
        c(map.b_i - m, 0.0),
        c(0.0, x.sinh()),
    )?;
    let v = envelope * phase * p;
    if !v.is_finite() {
        return Err(Error::NonFinite {
            context: "scarf_wavefunction",
            x,
        });
    }
    Ok(v)
}

/// Closed-form level sampled on `grid` and normalized.
pub fn scarf_wavefunction_on(map: &AlgebraMap, n: usize, grid: &Grid) -> Result<GridFunction> {
    map.energy(n)?;
    GridFunction::try_from_fn(grid, |x| scarf_wavefunction_unchecked(map, n, x))?.normalized()
}

/// One analytic level labeled by its series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Level {
    pub series: Series,
    pub n: usize,
    pub energy: f64,
}

/// The two Scarf II series.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScarfSpectrum {
    pub series_a: Vec<f64>,
    pub series_b: Vec<f64>,
}

impl ScarfSpectrum {
    /// All levels sorted by energy, coincident levels listed once per series.
    pub fn levels(&self) -> Vec<Level> {
        let mut out: Vec<Level> = self
            .series_a
            .iter()
            .enumerate()
            .map(|(n, &energy)| Level {
                series: Series::A,
                n,
                energy,
            })
            .chain(self.series_b.iter().enumerate().map(|(n, &energy)| Level {
                series: Series::B,
                n,
                energy,
            }))
            .collect();
        out.sort_by(|x, y| {
            x.energy
                .total_cmp(&y.energy)
                .then(x.series.cmp(&y.series))
                .then(x.n.cmp(&y.n))
        });
        out
    }

    pub fn energies(&self) -> Vec<f64> {
        self.levels().iter().map(|l| l.energy).collect()
    }
}

pub fn scarf_spectrum(p: &ScarfParams) -> ScarfSpectrum {
    let (ma, mb) = scarf_algebra_maps(p);
    ScarfSpectrum {
        series_a: ma.energies(),
        series_b: mb.energies(),
    }
}

/// A quasi-degenerate pair of levels from the two series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Crossing {
    pub n_a: usize,
    pub n_b: usize,
    pub gap: f64,
    pub defect: f64,
}

fn default_scarf_grid() -> Grid {
    Grid::spanning(SCARF_DOMAIN.0, SCARF_DOMAIN.1, 3001).expect("static grid")
}

fn crossing_pair(p: &ScarfParams, n_a: usize, n_b: usize, grid: &Grid) -> Result<Crossing> {
    let (ma, mb) = scarf_algebra_maps(p);
    let ea = ma.energy(n_a)?;
    let eb = mb.energy(n_b)?;
    let pa = scarf_wavefunction_on(&ma, n_a, grid)?;
    let pb = scarf_wavefunction_on(&mb, n_b, grid)?;
    Ok(Crossing {
        n_a,
        n_b,
        gap: (ea - eb).abs(),
        defect: proportionality_defect(&pa.values, &pb.values)?,
    })
}

/// Pairs of levels from the two series closer than `tol`, with the
/// collinearity defect of their closed-form wavefunctions.
pub fn detect_crossing(p: &ScarfParams, tol: f64) -> Result<Vec<Crossing>> {
    detect_crossing_on(p, tol, &default_scarf_grid())
}

pub fn detect_crossing_on(p: &ScarfParams, tol: f64, grid: &Grid) -> Result<Vec<Crossing>> {
    if !(tol > 0.0) {
        return Err(Error::invalid(
            "tol",
            format!("must be positive, got {tol}"),
        ));
    }
    let s = scarf_spectrum(p);
    let mut out = Vec::new();
    for (na, ea) in s.series_a.iter().enumerate() {
        for (nb, eb) in s.series_b.iter().enumerate() {
            if (ea - eb).abs() < tol {
                out.push(crossing_pair(p, na, nb, grid)?);
            }
        }
    }
    Ok(out)
}

/// The inter-series pair with the smallest energy gap, if both series are
/// nonempty.
pub fn closest_pair(p: &ScarfParams, grid: &Grid) -> Result<Option<Crossing>> {
    let s = scarf_spectrum(p);
    let mut best: Option<(usize, usize, f64)> = None;
    for (na, ea) in s.series_a.iter().enumerate() {
        for (nb, eb) in s.series_b.iter().enumerate() {
            let gap = (ea - eb).abs();
            if best.is_none_or(|(_, _, g)| gap < g) {
                best = Some((na, nb, gap));
            }
        }
    }
    best.map(|(na, nb, _)| crossing_pair(p, na, nb, grid))
        .transpose()
}

/// `[B^2 + A(A+1)] cosech^2 xi - B(2A+1) cosech xi coth xi` with
/// `xi = x - c - i gamma`.
pub fn gpt_potential(a: f64, b: f64, c0: f64, gamma: f64, x: f64) -> Result<Complex64> {
    let u = x - c0;
    if gamma == 0.0 && u.abs() < DEFAULT_POLE_GUARD {
        return Err(Error::Pole {
            function: "generalized Poschl-Teller",
            re: u,
            im: 0.0,
        });
    }
    let (cs, ct) = safe_cosech_coth(c(u, -gamma))?;
    Ok((b * b + a * (a + 1.0)) * cs * cs - b * (2.0 * a + 1.0) * cs * ct)
}

/// Complexified generalized Pöschl-Teller potential.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GptParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub gamma: f64,
}

/// The two GPT series; on the half-line only one survives.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GptSpectrum {
    pub series_a: Vec<f64>,
    pub series_b: Vec<f64>,
    pub half_line: bool,
}

impl GptSpectrum {
    pub fn energies(&self) -> Vec<f64> {
        let mut e: Vec<f64> = self
            .series_a
            .iter()
            .chain(&self.series_b)
            .copied()
            .collect();
        e.sort_by(f64::total_cmp);
        e
    }
}

impl GptParams {
    pub fn new(a: f64, b: f64, c0: f64, gamma: f64) -> Result<Self> {
        if !a.is_finite() || !(a + 0.5 > 0.0) {
            return Err(Error::invalid(
                "A",
                format!("need A + 1/2 > 0, got A = {a}"),
            ));
        }
        if !b.is_finite() || !(b > 0.0) {
            return Err(Error::invalid("B", format!("need B > 0, got B = {b}")));
        }
        if !c0.is_finite() || !gamma.is_finite() {
            return Err(Error::invalid("c/gamma", "shifts must be finite"));
        }
        if (gamma / PI - (gamma / PI).round()).abs() < 1e-12 && gamma != 0.0 {
            return Err(Error::invalid(
                "gamma",
                "gamma = k pi puts the pole back on the real axis",
            ));
        }
        Ok(Self { a, b, c: c0, gamma })
    }

    pub fn full_line(&self) -> bool {
        self.gamma != 0.0
    }

    pub fn potential(&self, x: f64) -> Result<Complex64> {
        gpt_potential(self.a, self.b, self.c, self.gamma, x)
    }

    /// Weight and (real) coupling of the family-II algebra behind `series`.
    pub fn map(&self, series: Series) -> (f64, f64) {
        match series {
            Series::A => (self.a + 0.5, self.b),
            Series::B => (self.b, self.a + 0.5),
        }
    }

    pub fn family(&self, series: Series) -> FamilySolution {
        let (_, b) = self.map(series);
        FamilySolution::with_any_gamma(FamilyKind::II, c(b, 0.0), self.c, self.gamma, Branch::Upper)
            .expect("validated parameters")
    }

    /// Analytic levels. With `gamma != 0` both algebras contribute on the whole
    /// line. With `gamma = 0` the problem lives on `x > c` and only the series
    /// whose states vanish fastest at the wall is kept: series A when
    /// `B >= A + 1/2`, series B otherwise.
    pub fn spectrum(&self) -> GptSpectrum {
        let sa = algebra::spectrum(self.a + 0.5);
        let sb = algebra::spectrum(self.b);
        if self.full_line() {
            GptSpectrum {
                series_a: sa,
                series_b: sb,
                half_line: false,
            }
        } else if self.b >= self.a + 0.5 {
            GptSpectrum {
                series_a: sa,
                series_b: vec![],
                half_line: true,
            }
        } else {
            GptSpectrum {
                series_a: vec![],
                series_b: sb,
                half_line: true,
            }
        }
    }

    /// Level `n` of `series` from the ladder of the family-II realization.
    pub fn bound_state(&self, series: Series, n: usize, grid: &Grid) -> Result<GridFunction> {
        let (m, _) = self.map(series);
        self.family(series).bound_state(m, n, grid)
    }
}

/// `(B-A)(B-A-1)/sinh^2(t - i eps) - (A+B)(A+B+1)/cosh^2(t - i eps)`, the image
/// of the GPT potential under `t = (x - c)/2`, `eps = gamma/2`. Energies in the
/// `t` frame are four times those in the `x` frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PoschlTellerII {
    pub a: f64,
    pub b: f64,
    pub eps: f64,
}

impl PoschlTellerII {
    pub const ENERGY_SCALE: f64 = 4.0;

    pub fn potential(&self, t: f64) -> Result<Complex64> {
        if self.eps == 0.0 && t.abs() < DEFAULT_POLE_GUARD {
            return Err(Error::Pole {
                function: "Poschl-Teller II",
                re: t,
                im: 0.0,
            });
        }
        let z = c(t, -self.eps);
        let (cs, _) = safe_cosech_coth(z)?;
        let s = sech(z);
        let (a, b) = (self.a, self.b);
        Ok((b - a) * (b - a - 1.0) * cs * cs - (a + b) * (a + b + 1.0) * s * s)
    }

    /// GPT energies carried into the `t` frame.
    pub fn spectrum(&self) -> Vec<f64> {
        let gpt = GptParams {
            a: self.a,
            b: self.b,
            c: 0.0,
            gamma: 2.0 * self.eps,
        };
        gpt.spectrum()
            .energies()
            .iter()
            .map(|e| Self::ENERGY_SCALE * e)
            .collect()
    }
}

#[allow(non_snake_case)]
pub fn map_to_ptII(a: f64, b: f64, gamma: f64) -> PoschlTellerII {
    PoschlTellerII {
        a,
        b,
        eps: 0.5 * gamma,
    }
}

/// Parameters of the transparent well `2 eps_R / cosh^2[sqrt(-eps_R)(y + b) + i rho]`,
/// with `tan(2 rho) = 2 sqrt(-eps_R) / a`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransparentParams {
    pub eps_r: f64,
    pub b_shift: f64,
    pub rho: f64,
    pub a: f64,
}

/// The rescaled form of the transparent Hamiltonian,
/// `scale * [-d^2/dx^2 - (1/2) sech^2((x - c - i gamma)/2)]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransparentReduction {
    pub c: f64,
    pub gamma: f64,
    pub scale: f64,
    pub reduced_energy: f64,
    pub bound_state_energy: f64,
}

impl TransparentParams {
    /// From `a != 0`; `sign` picks the `+-` in front of `rho`.
    pub fn from_a(eps_r: f64, b_shift: f64, a: f64, sign: f64) -> Result<Self> {
        Self::check_common(eps_r, b_shift)?;
        if !a.is_finite() || a == 0.0 {
            return Err(Error::invalid(
                "a",
                format!("must be a nonzero real, got {a}"),
            ));
        }
        let rho = sign.signum() * 0.5 * (2.0 * (-eps_r).sqrt() / a).atan();
        Self::from_rho(eps_r, b_shift, rho)
    }

    /// From `rho`; `a` is recovered from `tan(2 rho)`.
    pub fn from_rho(eps_r: f64, b_shift: f64, rho: f64) -> Result<Self> {
        Self::check_common(eps_r, b_shift)?;
        if !rho.is_finite() {
            return Err(Error::invalid("rho", "must be finite"));
        }
        let s2 = (2.0 * rho).sin();
        let half_turns = rho / (0.5 * PI);
        if s2.abs() < 1e-12 || (half_turns - half_turns.round()).abs() < 1e-12 {
            return Err(Error::invalid(
                "rho",
                format!("rho = {rho} is a multiple of pi/2: either a pole or a = infinity"),
            ));
        }
        let a = 2.0 * (-eps_r).sqrt() * (2.0 * rho).cos() / s2;
        Ok(Self {
            eps_r,
            b_shift,
            rho,
            a,
        })
    }

    fn check_common(eps_r: f64, b_shift: f64) -> Result<()> {
        if !eps_r.is_finite() || !(eps_r < 0.0) {
            return Err(Error::invalid(
                "eps_R",
                format!("bound energy must be negative, got {eps_r}"),
            ));
        }
        if !b_shift.is_finite() {
            return Err(Error::invalid("b_shift", "must be finite"));
        }
        Ok(())
    }

    pub fn kappa(&self) -> f64 {
        (-self.eps_r).sqrt()
    }

    /// The potential in its original variable `y`.
    pub fn potential_y(&self, y: f64) -> Complex64 {
        let s = sech(c(self.kappa() * (y + self.b_shift), self.rho));
        2.0 * self.eps_r * s * s
    }

    pub fn reduction(&self) -> TransparentReduction {
        transparent_hamiltonian(self)
    }

    /// The reduced well `-(1/2) sech^2((x - c - i gamma)/2)`.
    pub fn reduced_potential(&self, x: f64) -> Complex64 {
        let r = self.reduction();
        reduced_transparent_well(r.c, r.gamma, x)
    }

    /// Family-II realization `(m, b) = (1, 1/2)` whose lowest-weight state is
    /// the single bound state of the reduced well.
    pub fn family(&self) -> FamilySolution {
        let r = self.reduction();
        FamilySolution::with_any_gamma(FamilyKind::II, c(0.5, 0.0), r.c, r.gamma, Branch::Upper)
            .expect("validated parameters")
    }
}

pub fn reduced_transparent_well(c0: f64, gamma: f64, x: f64) -> Complex64 {
    let s = sech(0.5 * c(x - c0, -gamma));
    -0.5 * s * s
}

pub fn transparent_hamiltonian(tp: &TransparentParams) -> TransparentReduction {
    TransparentReduction {
        c: -2.0 * tp.kappa() * tp.b_shift,
        gamma: -2.0 * tp.rho,
        scale: -4.0 * tp.eps_r,
        reduced_energy: -0.25,
        bound_state_energy: tp.eps_r,
    }
}

/// `(B_R + i B_I)^2 e^{-2x} - (B_R + i B_I)(2A + 1) e^{-x}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexMorse {
    pub a: f64,
    pub b_r: f64,
    pub b_i: f64,
}

impl ComplexMorse {
    pub fn new(a: f64, b_r: f64, b_i: f64) -> Result<Self> {
        if !a.is_finite() || !(a > 0.0) {
            return Err(Error::invalid("A", format!("need A > 0, got {a}")));
        }
        if !b_r.is_finite() || !(b_r > 0.0) {
            return Err(Error::invalid("B_R", format!("need B_R > 0, got {b_r}")));
        }
        if !b_i.is_finite() {
            return Err(Error::invalid("B_I", "must be finite"));
        }
        Ok(Self { a, b_r, b_i })
    }

    pub fn coupling(&self) -> Complex64 {
        c(self.b_r, self.b_i)
    }

    pub fn m(&self) -> f64 {
        self.a + 0.5
    }

    pub fn family(&self) -> FamilySolution {
        FamilySolution::family_iii(self.coupling(), Branch::Upper).expect("validated parameters")
    }

    pub fn potential(&self, x: f64) -> Complex64 {
        let bb = self.coupling();
        let e = (-x).exp();
        bb * bb * e * e - bb * (2.0 * self.a + 1.0) * e
    }

    /// [`ComplexMorse::potential`] with its modulus limited to `cap`, phase kept.
    pub fn potential_clamped(&self, x: f64, cap: f64) -> Complex64 {
        let v = self.potential(x);
        let r = v.norm();
        if r > cap || !r.is_finite() {
            let v = if v.is_finite() {
                v
            } else {
                bb_direction(self.coupling())
            };
            v / v.norm() * cap
        } else {
            v
        }
    }

    /// `-(A - n)^2` for `n < A`, independent of `B_I`.
    pub fn spectrum(&self) -> Vec<f64> {
        algebra::spectrum(self.m())
    }

    pub fn pt_violation(&self, xs: &[f64]) -> f64 {
        xs.iter()
            .map(|&x| (self.potential(-x).conj() - self.potential(x)).norm())
            .fold(0.0, f64::max)
    }

    /// Whether `conj(V(-x)) = V(x)` holds on a probe grid over `[-2, 2]`.
    pub fn is_pt_symmetric(&self) -> bool {
        let xs: Vec<f64> = (0..=40).map(|j| -2.0 + 0.1 * j as f64).collect();
        self.pt_violation(&xs) <= 1e-12
    }

    pub fn bound_state(&self, n: usize, grid: &Grid) -> Result<GridFunction> {
        self.family().bound_state(self.m(), n, grid)
    }
}

fn bb_direction(b: Complex64) -> Complex64 {
    let s = b * b;
    if s.norm() > 0.0 {
        s
    } else {
        c(1.0, 0.0)
    }
}

pub fn morse_complexified(a: f64, b_r: f64, b_i: f64) -> Result<(ComplexMorse, Vec<f64>)> {
    let m = ComplexMorse::new(a, b_r, b_i)?;
    let s = m.spectrum();
    Ok((m, s))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn maps_for_reference_point() {
        let p = ScarfParams::new(2.0, 1.8).unwrap();
        let (a, b) = scarf_algebra_maps(&p);
        assert_eq!((a.m, a.b_i), (2.5, -1.8));
        assert_eq!((b.m, b.b_i), (1.8, -2.5));
        for map in [a, b] {
            let (r1, r2) = map.constraint_residuals(&p);
            assert!(r1 < 1e-12 && r2 < 1e-12);
        }
    }

    #[test]
    fn spectrum_examples() {
        let s = scarf_spectrum(&ScarfParams::new(2.0, 1.8).unwrap());
        assert_eq!(s.series_a, vec![-4.0, -1.0]);
        assert!((s.series_b[0] + 1.69).abs() < 1e-14 && (s.series_b[1] + 0.09).abs() < 1e-14);
        let s = scarf_spectrum(&ScarfParams::new(2.0, 1.5).unwrap());
        assert_eq!(s.series_b, vec![-1.0]);
        assert_eq!(s.levels().len(), 3);
        let s = scarf_spectrum(&ScarfParams::new(3.0, 1.0).unwrap());
        assert_eq!(s.series_b, vec![-0.25]);
    }

    #[test]
    fn potential_at_origin_and_family_agreement() {
        let p = ScarfParams::new(2.0, 1.8).unwrap();
        assert_eq!(scarf_potential(&p, 0.0), c(-(1.8 * 1.8 + 6.0), 0.0));
        for map in [scarf_algebra_maps(&p).0, scarf_algebra_maps(&p).1] {
            let v = map.family().potential(map.m, 0.9).unwrap();
            assert!((v - scarf_potential(&p, 0.9)).norm() < 1e-12);
        }
    }

    #[test]
    fn crossing_at_integer_offset() {
        let p = ScarfParams::new(2.0, 1.5).unwrap();
        let found = detect_crossing(&p, DEFAULT_CROSSING_TOL).unwrap();
        assert_eq!(found.len(), 1);
        assert_eq!((found[0].n_a, found[0].n_b), (1, 0));
        assert_eq!(found[0].gap, 0.0);
        assert!(found[0].defect < 1e-6);
        assert!(detect_crossing(&ScarfParams::new(2.0, 1.8).unwrap(), 0.1)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn gpt_reduces_to_sech_well_when_b_is_a_plus_one() {
        for &(a, gamma) in &[(0.0, 0.3), (1.0, -0.4), (0.5, 1.4)] {
            for &x in &[-3.0, -0.2, 0.0, 1.1, 4.0] {
                let v = gpt_potential(a, a + 1.0, 0.3, gamma, x).unwrap();
                let s = sech(0.5 * c(x - 0.3, -gamma));
                let want = -0.5 * (a + 1.0) * (2.0 * a + 1.0) * s * s;
                assert!((v - want).norm() < 1e-10 * want.norm().max(1.0));
            }
        }
    }

    #[test]
    fn ptii_is_quarter_scaled_image() {
        let pt = map_to_ptII(0.5, 2.0, 0.4);
        for &x in &[-5.0, -1.0, 0.3, 2.0, 6.0] {
            let v = gpt_potential(0.5, 2.0, 0.0, 0.4, x).unwrap();
            let w = pt.potential(0.5 * x).unwrap() / PoschlTellerII::ENERGY_SCALE;
            assert!((v - w).norm() < 1e-12 * v.norm().max(1.0));
        }
        assert!(map_to_ptII(1.0, 2.0, 0.0).potential(0.0).is_err());
    }

    #[test]
    fn transparent_reduction() {
        let tp = TransparentParams::from_rho(-1.0, 0.0, 0.2).unwrap();
        let r = tp.reduction();
        assert_eq!((r.c, r.gamma), (0.0, -0.4));
        assert_eq!(r.scale * r.reduced_energy, -1.0);
        let back = TransparentParams::from_a(-1.0, 0.0, tp.a, 1.0).unwrap();
        assert!((back.rho - 0.2).abs() < 1e-14);
        for &x in &[-2.0, 0.0, 0.7] {
            // scale * reduced well(x) == original potential at y = x / (2 kappa)
            let y = x / (2.0 * tp.kappa());
            assert!((r.scale * tp.reduced_potential(x) - tp.potential_y(y)).norm() < 1e-12);
            let g = gpt_potential(0.0, 1.0, r.c, r.gamma, x).unwrap();
            assert!((g - tp.reduced_potential(x)).norm() < 1e-12);
        }
        assert!(TransparentParams::from_rho(-1.0, 0.0, 0.5 * PI).is_err());
        assert!(TransparentParams::from_rho(0.5, 0.0, 0.2).is_err());
    }

    #[test]
    fn morse_spectrum_and_pt_flag() {
        let (m, s) = morse_complexified(2.5, 2.0, 1.0).unwrap();
        assert_eq!(s, vec![-6.25, -2.25, -0.25]);
        assert!(!m.is_pt_symmetric());
        assert!(ComplexMorse::new(2.5, 0.0, 1.0).is_err());
        assert_eq!(m.potential_clamped(-40.0, 1e6).norm(), 1e6);
    }
}
