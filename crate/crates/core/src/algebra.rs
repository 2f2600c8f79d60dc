//! sl(2,C) potential algebra in reduced form.
//!
//! The realization acts on functions `psi(x) e^{i m phi}`. The auxiliary angle
//! is never sampled: on such a sector `i d/dphi` is just `-m`, so every generator
//! becomes a first-order operator in `x` that also shifts the weight `m`:
//!
//! ```text
//! A+(m) = +d/dx + (-m - 1/2) F + G      weight m -> m + 1
//! A-(m) = -d/dx + (-m + 1/2) F + G      weight m -> m - 1
//! ```
//!
//! The pair `(F, G)` must solve `F' = 1 - F^2`, `G' = -F G`. The three solved
//! families with complex coupling `b` and complex shift `x - c - i gamma` live in
//! [`FamilySolution`].

use std::collections::BTreeMap;
use std::f64::consts::FRAC_PI_4;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{Grid, GridFunction};
use crate::special::{self, c, ln_cosh, ln_sinh, safe_cosech_coth, sech, tanh};

/// Distance from the real pole of family II (at `gamma = 0`) inside which
/// evaluation is refused.
pub const DEFAULT_POLE_GUARD: f64 = 1e-8;

/// Offset from `x = c` at which half-line grids start for family II with
/// `gamma = 0`.
pub const HALF_LINE_EPS: f64 = 1e-2;

/// Tolerance on `m - k` being a nonnegative integer.
pub const WEIGHT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FamilyKind {
    /// `F = tanh(xi)`, `G = b sech(xi)`.
    I,
    /// `F = coth(xi)`, `G = b cosech(xi)`.
    II,
    /// `F = +-1`, `G = b e^{-+x}`.
    III,
}

/// Choice of sign for family III: `Upper` is `F = 1`, `G = b e^{-x}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub enum Branch {
    #[default]
    Upper,
    Lower,
}

impl Branch {
    /// `+1` for the upper sign, `-1` for the lower one.
    pub fn sign(self) -> f64 {
        match self {
            Branch::Upper => 1.0,
            Branch::Lower => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Ladder {
    Raise,
    Lower,
}

/// One solved `(F, G)` pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FamilySolution {
    kind: FamilyKind,
    b: Complex64,
    c: f64,
    gamma: f64,
    branch: Branch,
    pole_guard: f64,
}

/// `F`, `G` and their analytic derivatives at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FgValues {
    pub f: Complex64,
    pub g: Complex64,
    pub df: Complex64,
    pub dg: Complex64,
}

impl FamilySolution {
    /// Builds a family with `-pi/4 <= gamma < pi/4` enforced.
    ///
    /// Family III has no shifts; `c` and `gamma` are reset to zero for it.
    pub fn new(kind: FamilyKind, b: Complex64, c: f64, gamma: f64, branch: Branch) -> Result<Self> {
        if kind != FamilyKind::III && !(-FRAC_PI_4..FRAC_PI_4).contains(&gamma) {
            return Err(Error::invalid(
                "gamma",
                format!("must lie in [-pi/4, pi/4), got {gamma}"),
            ));
        }
        Self::with_any_gamma(kind, b, c, gamma, branch)
    }

    /// Same as [`FamilySolution::new`] without the range restriction on `gamma`.
    /// The closed forms stay valid beyond it; only the classification changes.
    pub fn with_any_gamma(
        kind: FamilyKind,
        b: Complex64,
        c: f64,
        gamma: f64,
        branch: Branch,
    ) -> Result<Self> {
        if !b.is_finite() {
            return Err(Error::invalid("b", "coupling must be finite"));
        }
        if !c.is_finite() || !gamma.is_finite() {
            return Err(Error::invalid("c/gamma", "shifts must be finite"));
        }
        let (c, gamma) = if kind == FamilyKind::III {
            (0.0, 0.0)
        } else {
            (c, gamma)
        };
        Ok(Self {
            kind,
            b,
            c,
            gamma,
            branch,
            pole_guard: DEFAULT_POLE_GUARD,
        })
    }

    pub fn family_i(b: Complex64, c: f64, gamma: f64) -> Result<Self> {
        Self::new(FamilyKind::I, b, c, gamma, Branch::Upper)
    }

    pub fn family_ii(b: Complex64, c: f64, gamma: f64) -> Result<Self> {
        Self::new(FamilyKind::II, b, c, gamma, Branch::Upper)
    }

    pub fn family_iii(b: Complex64, branch: Branch) -> Result<Self> {
        Self::new(FamilyKind::III, b, 0.0, 0.0, branch)
    }

    pub fn with_pole_guard(mut self, guard: f64) -> Self {
        self.pole_guard = guard;
        self
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }
    pub fn b(&self) -> Complex64 {
        self.b
    }
    pub fn c(&self) -> f64 {
        self.c
    }
    pub fn gamma(&self) -> f64 {
        self.gamma
    }
    pub fn branch(&self) -> Branch {
        self.branch
    }

    /// Whether the potential has a real pole (family II at `gamma = 0`).
    pub fn has_real_pole(&self) -> bool {
        self.kind == FamilyKind::II && self.gamma == 0.0
    }

    /// Shifted argument `x - c - i gamma`.
    #[inline]
    pub fn xi(&self, x: f64) -> Complex64 {
        c(x - self.c, -self.gamma)
    }

    fn check_pole(&self, x: f64) -> Result<()> {
        if self.has_real_pole() && (x - self.c).abs() < self.pole_guard {
            return Err(Error::Pole {
                function: "family II",
                re: x - self.c,
                im: 0.0,
            });
        }
        Ok(())
    }

    /// `(F(x), G(x))`.
    pub fn eval_fg(&self, x: f64) -> Result<(Complex64, Complex64)> {
        let v = self.eval(x)?;
        Ok((v.f, v.g))
    }

    /// `F`, `G`, `F'`, `G'` with analytic derivatives.
    pub fn eval(&self, x: f64) -> Result<FgValues> {
        self.check_pole(x)?;
        let b = self.b;
        let out = match self.kind {
            FamilyKind::I => {
                let z = self.xi(x);
                let (t, s) = (tanh(z), sech(z));
                FgValues {
                    f: t,
                    g: b * s,
                    df: s * s,
                    dg: -b * s * t,
                }
            }
            FamilyKind::II => {
                let z = self.xi(x);
                let (cs, ct) = safe_cosech_coth(z)?;
                FgValues {
                    f: ct,
                    g: b * cs,
                    df: -cs * cs,
                    dg: -b * cs * ct,
                }
            }
            FamilyKind::III => {
                let s = self.branch.sign();
                let e = (-s * x).exp();
                FgValues {
                    f: c(s, 0.0),
                    g: b * e,
                    df: c(0.0, 0.0),
                    dg: -s * b * e,
                }
            }
        };
        if !(out.f.is_finite() && out.g.is_finite() && out.df.is_finite() && out.dg.is_finite()) {
            return Err(Error::NonFinite {
                context: "eval_fg",
                x,
            });
        }
        Ok(out)
    }

    /// Residuals of `F' = 1 - F^2` and `G' = -F G` over `xs`, using the
    /// analytic derivatives.
    ///
    /// Each residual is divided by the size of the terms that cancel in it,
    /// `max(1, |F|^2)` and `max(1, |F| |G|)`, so that the result measures
    /// rounding rather than the magnitude of `F` next to a pole.
    pub fn ode_residual(&self, xs: &[f64]) -> Result<(f64, f64)> {
        let mut rf = 0.0f64;
        let mut rg = 0.0f64;
        for &x in xs {
            let v = self.eval(x)?;
            let sf = v.f.norm_sqr().max(1.0);
            let sg = (v.f.norm() * v.g.norm()).max(1.0);
            rf = rf.max((v.df - 1.0 + v.f * v.f).norm() / sf);
            rg = rg.max((v.dg + v.f * v.g).norm() / sg);
        }
        Ok((rf, rg))
    }

    /// Same residuals with `F'`, `G'` from 5-point central differences of
    /// step `h`, without the scaling used by [`FamilySolution::ode_residual`].
    pub fn ode_residual_fd(&self, xs: &[f64], h: f64) -> Result<(f64, f64)> {
        let mut rf = 0.0f64;
        let mut rg = 0.0f64;
        for &x in xs {
            let (f0, g0) = self.eval_fg(x)?;
            let mut fs = [c(0.0, 0.0); 4];
            let mut gs = [c(0.0, 0.0); 4];
            for (i, off) in [-2.0, -1.0, 1.0, 2.0].iter().enumerate() {
                let (f, g) = self.eval_fg(x + off * h)?;
                fs[i] = f;
                gs[i] = g;
            }
            let df = (fs[0] - 8.0 * fs[1] + 8.0 * fs[2] - fs[3]) / (12.0 * h);
            let dg = (gs[0] - 8.0 * gs[1] + 8.0 * gs[2] - gs[3]) / (12.0 * h);
            rf = rf.max((df - 1.0 + f0 * f0).norm());
            rg = rg.max((dg + f0 * g0).norm());
        }
        Ok((rf, rg))
    }

    /// `V_m(x) = (1/4 - m^2) F' + 2 m G' + G^2`.
    pub fn potential(&self, m: f64, x: f64) -> Result<Complex64> {
        let v = self.eval(x)?;
        let out = (0.25 - m * m) * v.df + 2.0 * m * v.dg + v.g * v.g;
        if !out.is_finite() {
            return Err(Error::NonFinite {
                context: "potential",
                x,
            });
        }
        Ok(out)
    }

    /// `(Re V_m, Im V_m)` from the explicit real/imaginary decomposition.
    ///
    /// Families I and II are evaluated with every hyperbolic function scaled
    /// by `e^{-|x-c|}` so that large `|x - c|` does not overflow; the
    /// expressions are otherwise term-for-term the textbook ones.
    pub fn potential_cartesian(&self, m: f64, x: f64) -> Result<(f64, f64)> {
        self.check_pole(x)?;
        let (br, bi) = (self.b.re, self.b.im);
        let out = match self.kind {
            FamilyKind::III => {
                let s = self.branch.sign();
                let e1 = (-s * x).exp();
                let e2 = (-2.0 * s * x).exp();
                let re = (br * br - bi * bi) * e2 - s * 2.0 * m * br * e1;
                let im = bi * (2.0 * br * e2 - s * 2.0 * m * e1);
                (re, im)
            }
            FamilyKind::I | FamilyKind::II => {
                let u = x - self.c;
                let a = u.abs();
                let sgn = if u < 0.0 { -1.0 } else { 1.0 };
                let t = (-a).exp();
                let t2 = t * t;
                let t4 = t2 * t2;
                // cosh 2u, sinh 2u scaled by e^{-2a}; cosh u, sinh u scaled by e^{-a}
                let ch2 = 0.5 * (1.0 + t4);
                let sh2 = sgn * 0.5 * (1.0 - t4);
                let ch = 0.5 * (1.0 + t2);
                let sh = sgn * 0.5 * (1.0 - t2);
                let (g, g2) = (self.gamma, 2.0 * self.gamma);
                let (cg, sg) = (g.cos(), g.sin());
                let (c2g, s2g) = (g2.cos(), g2.sin());
                // constants scaled by e^{-2a} where they sit next to cosh 2u
                let c2g_s = c2g * t2;
                let one_s = t2;
                let two_s = 2.0 * t2;
                match self.kind {
                    FamilyKind::I => {
                        let d = ch2 + c2g_s;
                        if d == 0.0 {
                            return Err(Error::Pole {
                                function: "family I",
                                re: u,
                                im: -g,
                            });
                        }
                        let pref = 2.0 / (d * d);
                        let k = br * br - bi * bi - m * m + 0.25;
                        let re = pref
                            * (t2 * (k * (one_s + ch2 * c2g) - 2.0 * br * bi * sh2 * s2g)
                                - t * 2.0
                                    * m
                                    * (br * sh * cg * (ch2 - c2g_s + two_s)
                                        - bi * ch * sg * (ch2 - c2g_s - two_s)));
                        let im = pref
                            * (t2 * (k * sh2 * s2g + 2.0 * br * bi * (one_s + ch2 * c2g))
                                - t * 2.0
                                    * m
                                    * (br * ch * sg * (ch2 - c2g_s - two_s)
                                        + bi * sh * cg * (ch2 - c2g_s + two_s)));
                        (re, im)
                    }
                    _ => {
                        let d = ch2 - c2g_s;
                        if d.abs() < 1e-300 {
                            return Err(Error::Pole {
                                function: "family II",
                                re: u,
                                im: -g,
                            });
                        }
                        let pref = 2.0 / (d * d);
                        let k = br * br - bi * bi + m * m - 0.25;
                        let re = pref
                            * (t2 * (k * (-one_s + ch2 * c2g) - 2.0 * br * bi * sh2 * s2g)
                                - t * 2.0
                                    * m
                                    * (br * ch * cg * (ch2 + c2g_s - two_s)
                                        - bi * sh * sg * (ch2 + c2g_s + two_s)));
                        let im = pref
                            * (t2 * (k * sh2 * s2g + 2.0 * br * bi * (-one_s + ch2 * c2g))
                                - t * 2.0
                                    * m
                                    * (br * sh * sg * (ch2 + c2g_s + two_s)
                                        + bi * ch * cg * (ch2 + c2g_s - two_s)));
                        (re, im)
                    }
                }
            }
        };
        if !(out.0.is_finite() && out.1.is_finite()) {
            return Err(Error::NonFinite {
                context: "potential_cartesian",
                x,
            });
        }
        Ok(out)
    }

    /// `max_x |conj(V_m(-x)) - V_m(x)|` over `xs`; zero for a PT-symmetric
    /// potential.
    pub fn pt_violation(&self, m: f64, xs: &[f64]) -> Result<f64> {
        let mut worst = 0.0f64;
        for &x in xs {
            let d = self.potential(m, -x)?.conj() - self.potential(m, x)?;
            worst = worst.max(d.norm());
        }
        Ok(worst)
    }

    /// Checks that a `D+_k` lowest-weight state of this family decays on `grid`.
    fn check_normalizable(&self, k: f64, grid: &Grid) -> Result<()> {
        if !(k > 0.5) {
            return Err(Error::NotNormalizable {
                condition: format!("decay exponent k - 1/2 = {} must be positive", k - 0.5),
            });
        }
        match self.kind {
            FamilyKind::I => Ok(()),
            FamilyKind::II => {
                if !self.has_real_pole() {
                    return Ok(());
                }
                let (lo, hi) = (grid.x0 - self.c, grid.x_max() - self.c);
                if lo < 0.0 && hi > 0.0 {
                    return Err(Error::NotNormalizable {
                        condition:
                            "family II with gamma = 0 lives on a half-line; grid straddles x = c"
                                .into(),
                    });
                }
                if !(self.b.re > k - 0.5) {
                    return Err(Error::NotNormalizable {
                        condition: format!(
                            "wall behaviour |x-c|^(Re b + 1/2 - k) must vanish: Re b = {} <= k - 1/2 = {}",
                            self.b.re,
                            k - 0.5
                        ),
                    });
                }
                Ok(())
            }
            FamilyKind::III => {
                let s = self.branch.sign();
                if !(s * self.b.re > 0.0) {
                    return Err(Error::NotNormalizable {
                        condition: format!(
                            "exp(-+b e^(-+x)) must decay: need {}Re b > 0, got Re b = {}",
                            if s > 0.0 { "" } else { "-" },
                            self.b.re
                        ),
                    });
                }
                Ok(())
            }
        }
    }

    /// Lowest-weight state `psi_kk`, the solution of `A-(k) psi = 0`,
    /// normalized to unit discrete norm with the phase convention of
    /// [`GridFunction::normalized`].
    pub fn ground_state(&self, k: f64, grid: &Grid) -> Result<GridFunction> {
        self.check_normalizable(k, grid)?;
        let xs = grid.points();
        for &x in &xs {
            self.check_pole(x)?;
        }
        let p = 0.5 - k;
        let b = self.b;
        let log_psi: Vec<Complex64> = match self.kind {
            FamilyKind::I => {
                let z: Vec<_> = xs.iter().map(|&x| self.xi(x)).collect();
                let mut lc: Vec<_> = z.iter().map(|&z| ln_cosh(z)).collect();
                special::unwrap_im(&mut lc, 2.0 * std::f64::consts::PI);
                let gd = special::gudermannian_path(&z);
                lc.iter().zip(&gd).map(|(l, g)| p * l + b * g).collect()
            }
            FamilyKind::II => {
                // int cosech = ln tanh(xi/2)
                let z: Vec<_> = xs.iter().map(|&x| self.xi(x)).collect();
                let mut ls: Vec<_> = z.iter().map(|&z| ln_sinh(z)).collect();
                let mut lt: Vec<_> = z
                    .iter()
                    .map(|&z| ln_sinh(0.5 * z) - ln_cosh(0.5 * z))
                    .collect();
                special::unwrap_im(&mut ls, 2.0 * std::f64::consts::PI);
                special::unwrap_im(&mut lt, 2.0 * std::f64::consts::PI);
                ls.iter().zip(&lt).map(|(s, t)| p * s + b * t).collect()
            }
            FamilyKind::III => {
                let s = self.branch.sign();
                xs.iter()
                    .map(|&x| c(s * p * x, 0.0) - s * b * (-s * x).exp())
                    .collect()
            }
        };
        let peak = log_psi
            .iter()
            .map(|l| l.re)
            .fold(f64::NEG_INFINITY, f64::max);
        let values: Vec<_> = log_psi.iter().map(|l| (l - peak).exp()).collect();
        if let Some(j) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                context: "ground_state",
                x: xs[j],
            });
        }
        GridFunction::new(grid.x0, grid.dx, values)?.normalized()
    }

    /// Applies `A+(m)` or `A-(m)` to `psi` with 4th-order differences.
    pub fn apply_ladder(&self, m: f64, dir: Ladder, psi: &GridFunction) -> Result<GridFunction> {
        let d = psi.derivative()?;
        let (sign, shift) = match dir {
            Ladder::Raise => (1.0, -m - 0.5),
            Ladder::Lower => (-1.0, -m + 0.5),
        };
        let mut out = Vec::with_capacity(psi.len());
        for j in 0..psi.len() {
            let (f, g) = self.eval_fg(psi.x(j))?;
            out.push(sign * d.values[j] + (shift * f + g) * psi.values[j]);
        }
        Ok(psi.with_values(out))
    }

    /// Reduced Casimir `psi'' + (m^2 - 1/4) F' psi - 2 m G' psi - G^2 psi - psi/4`.
    pub fn casimir_apply(&self, m: f64, psi: &GridFunction) -> Result<GridFunction> {
        let d2 = psi.second_derivative()?;
        let mut out = Vec::with_capacity(psi.len());
        for j in 0..psi.len() {
            let v = self.eval(psi.x(j))?;
            let p = psi.values[j];
            out.push(
                d2.values[j] + ((m * m - 0.25) * v.df - 2.0 * m * v.dg - v.g * v.g - 0.25) * p,
            );
        }
        Ok(psi.with_values(out))
    }

    /// `psi_{k, k+n}`: the lowest-weight state raised `n` times, normalized.
    /// It is the `n`-th bound state of `V_{k+n}` at energy `-(k - 1/2)^2`.
    pub fn ladder_state(&self, k: f64, n: usize, grid: &Grid) -> Result<GridFunction> {
        let mut psi = self.ground_state(k, grid)?;
        for step in 0..n {
            psi = self.apply_ladder(k + step as f64, Ladder::Raise, &psi)?;
        }
        psi.normalized()
    }

    /// `n`-th bound state of `V_m`, built by the ladder from weight `m - n`.
    pub fn bound_state(&self, m: f64, n: usize, grid: &Grid) -> Result<GridFunction> {
        energy(m, n)?;
        self.ladder_state(m - n as f64, n, grid)
    }

    /// `psi_{k, k+n}` from the exact raising polynomial instead of finite
    /// differences, normalized.
    pub fn analytic_state(&self, k: f64, n: usize, grid: &Grid) -> Result<GridFunction> {
        let psi0 = self.ground_state(k, grid)?;
        if n == 0 {
            return Ok(psi0);
        }
        let poly = raising_polynomial(k, n);
        let mut values = Vec::with_capacity(psi0.len());
        for j in 0..psi0.len() {
            let (f, g) = self.eval_fg(psi0.x(j))?;
            values.push(poly.eval(f, g) * psi0.values[j]);
        }
        psi0.with_values(values).normalized()
    }

    /// `n`-th bound state of `V_m` from the exact raising polynomial.
    pub fn analytic_bound_state(&self, m: f64, n: usize, grid: &Grid) -> Result<GridFunction> {
        energy(m, n)?;
        self.analytic_state(m - n as f64, n, grid)
    }

    /// `V_m` sampled on a grid.
    pub fn potential_on(&self, m: f64, grid: &Grid) -> Result<Vec<Complex64>> {
        (0..grid.len)
            .map(|j| self.potential(m, grid.x(j)))
            .collect()
    }
}

/// Polynomial `sum c_ij F^i G^j` in the pair `(F, G)`, differentiated with
/// `F' = 1 - F^2`, `G' = -F G`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FgPolynomial {
    terms: BTreeMap<(u32, u32), Complex64>,
}

impl FgPolynomial {
    pub fn one() -> Self {
        let mut terms = BTreeMap::new();
        terms.insert((0, 0), c(1.0, 0.0));
        Self { terms }
    }

    fn add_term(&mut self, key: (u32, u32), v: Complex64) {
        let e = self.terms.entry(key).or_insert(c(0.0, 0.0));
        *e += v;
    }

    pub fn derivative(&self) -> Self {
        let mut out = Self::default();
        for (&(i, j), &v) in &self.terms {
            if i > 0 {
                out.add_term((i - 1, j), v * i as f64);
            }
            if i + j > 0 {
                out.add_term((i + 1, j), -v * (i + j) as f64);
            }
        }
        out
    }

    /// `self * (a F + b G)`.
    pub fn mul_linear(&self, a: Complex64, b: Complex64) -> Self {
        let mut out = Self::default();
        for (&(i, j), &v) in &self.terms {
            out.add_term((i + 1, j), v * a);
            out.add_term((i, j + 1), v * b);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&k, &v) in &other.terms {
            out.add_term(k, v);
        }
        out
    }

    pub fn eval(&self, f: Complex64, g: Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|(&(i, j), &v)| v * f.powu(i) * g.powu(j))
            .sum()
    }
}

/// `P_n` with `A+(k+n-1) ... A+(k) psi_kk = P_n(F, G) psi_kk`.
///
/// Uses `A+(m) [P psi_kk] = [P' + ((-k - m) F + 2 G) P] psi_kk`.
pub fn raising_polynomial(k: f64, n: usize) -> FgPolynomial {
    let mut p = FgPolynomial::one();
    for step in 0..n {
        let m = k + step as f64;
        p = p
            .derivative()
            .add(&p.mul_linear(c(-k - m, 0.0), c(2.0, 0.0)));
    }
    p
}

/// Basis label `|k m>` of a lowest-weight representation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlgebraState {
    k: f64,
    m: f64,
}

impl AlgebraState {
    pub fn new(k: f64, m: f64) -> Result<Self> {
        if !(k > 0.0) || !k.is_finite() {
            return Err(Error::invalid(
                "k",
                format!("lowest weight must be positive, got {k}"),
            ));
        }
        let n = m - k;
        if !(n > -WEIGHT_TOL) || (n - n.round()).abs() > WEIGHT_TOL {
            return Err(Error::invalid(
                "m",
                format!("m - k must be a nonnegative integer, got {n}"),
            ));
        }
        Ok(Self { k, m })
    }

    pub fn k(&self) -> f64 {
        self.k
    }
    pub fn m(&self) -> f64 {
        self.m
    }
    pub fn n(&self) -> usize {
        (self.m - self.k).round() as usize
    }

    /// Casimir eigenvalue `k (k - 1)`.
    pub fn casimir(&self) -> f64 {
        self.k * (self.k - 1.0)
    }

    /// Common energy `-(k - 1/2)^2` shared along the ladder.
    pub fn energy(&self) -> f64 {
        -(self.k - 0.5).powi(2)
    }
}

/// `E = -(m - n - 1/2)^2`, defined when `n < m - 1/2`.
pub fn energy(m: f64, n: usize) -> Result<f64> {
    let kappa = m - n as f64 - 0.5;
    if !(kappa > 0.0) {
        return Err(Error::NotBoundState { m, n });
    }
    Ok(-kappa * kappa)
}

/// Number of integers `n >= 0` with `m - n - 1/2 > 0`.
pub fn bound_state_count(m: f64) -> usize {
    let top = m - 0.5;
    if !(top > 0.0) || !top.is_finite() {
        0
    } else {
        top.ceil() as usize
    }
}

/// All bound energies of `V_m` in increasing order.
pub fn spectrum(m: f64) -> Vec<f64> {
    (0..bound_state_count(m))
        .filter_map(|n| energy(m, n).ok())
        .collect()
}
