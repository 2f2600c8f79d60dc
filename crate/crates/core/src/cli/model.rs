use std::collections::BTreeMap;

use num_complex::Complex64;
use serde_json::{json, Value};

use super::args::{KindArg, ModelArgs, ModelKind, SeriesArg, SignArg};
use super::CliError;
use crate::algebra::{self, Branch, FamilyKind, FamilySolution};
use crate::grid::{Grid, GridFunction};
use crate::identities;
use crate::models::{
    scarf_algebra_maps, scarf_potential, scarf_wavefunction_on, ComplexMorse, GptParams,
    PoschlTellerII, ScarfParams, Series, TransparentParams, DEFAULT_MORSE_CAP, MORSE_DOMAIN,
    SCARF_DOMAIN,
};
use crate::special::c;

/// A validated model instance.
#[derive(Debug, Clone)]
pub enum Model {
    Family { fam: FamilySolution, m: f64 },
    Scarf(ScarfParams),
    Gpt(GptParams),
    PtII { gpt: GptParams, pt: PoschlTellerII },
    Transparent(TransparentParams),
    Morse(ComplexMorse),
}

/// Where the analytic state of a level comes from.
#[derive(Debug, Clone, Copy)]
pub enum StateSource {
    Ladder {
        fam: FamilySolution,
        m: f64,
    },
    Scarf(crate::models::AlgebraMap),
    /// Ladder state of the `x`-frame family, read in `t = (x - c)/2`.
    HalfScaled {
        fam: FamilySolution,
        m: f64,
    },
}

#[derive(Debug, Clone)]
pub struct LabeledLevel {
    pub label: String,
    pub n: usize,
    pub energy: f64,
    pub source: StateSource,
}

fn req(v: Option<f64>, name: &str, model: &str) -> Result<f64, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("model {model} needs --{name}")))
}

fn series_label(s: Series) -> String {
    s.label().to_string()
}

impl Model {
    pub fn from_args(a: &ModelArgs) -> Result<Self, CliError> {
        Ok(match a.model {
            ModelKind::Family => {
                let kind = match a.kind {
                    Some(KindArg::I) => FamilyKind::I,
                    Some(KindArg::II) => FamilyKind::II,
                    Some(KindArg::III) => FamilyKind::III,
                    None => {
                        return Err(CliError::Usage("model family needs --kind I|II|III".into()))
                    }
                };
                let m = req(a.m, "m", "family")?;
                if !m.is_finite() {
                    return Err(CliError::Usage("--m must be finite".into()));
                }
                let b = c(a.b_r.unwrap_or(0.0), a.b_i.unwrap_or(0.0));
                let branch = match a.sign {
                    SignArg::Upper => Branch::Upper,
                    SignArg::Lower => Branch::Lower,
                };
                let (cc, g) = (a.c.unwrap_or(0.0), a.gamma.unwrap_or(0.0));
                let fam = if a.allow_any_gamma {
                    FamilySolution::with_any_gamma(kind, b, cc, g, branch)?
                } else {
                    FamilySolution::new(kind, b, cc, g, branch)?
                };
                Model::Family { fam, m }
            }
            ModelKind::Scarf => Model::Scarf(ScarfParams::new(
                req(a.a, "A", "scarf")?,
                req(a.b, "B", "scarf")?,
            )?),
            ModelKind::Gpt => Model::Gpt(GptParams::new(
                req(a.a, "A", "gpt")?,
                req(a.b, "B", "gpt")?,
                a.c.unwrap_or(0.0),
                req(a.gamma, "gamma", "gpt")?,
            )?),
            ModelKind::PtII => {
                let gpt = GptParams::new(
                    req(a.a, "A", "ptII")?,
                    req(a.b, "B", "ptII")?,
                    0.0,
                    req(a.gamma, "gamma", "ptII")?,
                )?;
                Model::PtII {
                    gpt,
                    pt: crate::models::map_to_ptII(gpt.a, gpt.b, gpt.gamma),
                }
            }
            ModelKind::Transparent => Model::Transparent(TransparentParams::from_rho(
                req(a.eps_r, "eps_R", "transparent")?,
                a.b_shift.unwrap_or(0.0),
                req(a.rho, "rho", "transparent")?,
            )?),
            ModelKind::Morse => Model::Morse(ComplexMorse::new(
                req(a.a, "A", "morse")?,
                req(a.big_b_r, "B_R", "morse")?,
                a.big_b_i.unwrap_or(0.0),
            )?),
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Model::Family { .. } => "family",
            Model::Scarf(_) => "scarf",
            Model::Gpt(_) => "gpt",
            Model::PtII { .. } => "ptII",
            Model::Transparent(_) => "transparent",
            Model::Morse(_) => "morse",
        }
    }

    pub fn params(&self) -> BTreeMap<String, Value> {
        let mut p = BTreeMap::new();
        p.insert("model".to_string(), json!(self.name()));
        match self {
            Model::Family { fam, m } => {
                p.insert("kind".into(), json!(format!("{:?}", fam.kind())));
                p.insert("m".into(), json!(m));
                p.insert("b_R".into(), json!(fam.b().re));
                p.insert("b_I".into(), json!(fam.b().im));
                p.insert("c".into(), json!(fam.c()));
                p.insert("gamma".into(), json!(fam.gamma()));
                if fam.kind() == FamilyKind::III {
                    p.insert(
                        "sign".into(),
                        json!(format!("{:?}", fam.branch()).to_lowercase()),
                    );
                }
            }
            Model::Scarf(s) => {
                p.insert("A".into(), json!(s.a()));
                p.insert("B".into(), json!(s.b()));
            }
            Model::Gpt(g) | Model::PtII { gpt: g, .. } => {
                p.insert("A".into(), json!(g.a));
                p.insert("B".into(), json!(g.b));
                p.insert("c".into(), json!(g.c));
                p.insert("gamma".into(), json!(g.gamma));
            }
            Model::Transparent(t) => {
                p.insert("eps_R".into(), json!(t.eps_r));
                p.insert("b_shift".into(), json!(t.b_shift));
                p.insert("rho".into(), json!(t.rho));
                p.insert("a".into(), json!(t.a));
            }
            Model::Morse(mo) => {
                p.insert("A".into(), json!(mo.a));
                p.insert("B_R".into(), json!(mo.b_r));
                p.insert("B_I".into(), json!(mo.b_i));
            }
        }
        p
    }

    /// The potential in the variable used by every command (`t` for ptII,
    /// the reduced `x` for transparent).
    pub fn potential(&self, x: f64) -> crate::Result<Complex64> {
        match self {
            Model::Family { fam, m } => fam.potential(*m, x),
            Model::Scarf(s) => Ok(scarf_potential(s, x)),
            Model::Gpt(g) => g.potential(x),
            Model::PtII { pt, .. } => pt.potential(x),
            Model::Transparent(t) => Ok(t.reduced_potential(x)),
            Model::Morse(mo) => Ok(mo.potential(x)),
        }
    }

    /// Potential fed to the finite-difference operator.
    pub fn fd_potential(&self, x: f64) -> crate::Result<Complex64> {
        match self {
            Model::Morse(mo) => Ok(mo.potential_clamped(x, DEFAULT_MORSE_CAP)),
            Model::Family { fam, m } if fam.kind() == FamilyKind::III => {
                let v = fam.potential(*m, x)?;
                Ok(if v.norm() > DEFAULT_MORSE_CAP {
                    v / v.norm() * DEFAULT_MORSE_CAP
                } else {
                    v
                })
            }
            _ => self.potential(x),
        }
    }

    /// Default interval for finite differences and sampling.
    pub fn domain(&self) -> (f64, f64) {
        match self {
            Model::Family { fam, .. } if fam.has_real_pole() => (fam.c(), fam.c() + 30.0),
            Model::Family { fam, .. } => identities::natural_domain(fam),
            Model::Scarf(_) => SCARF_DOMAIN,
            Model::Gpt(g) if !g.full_line() => (g.c, g.c + 30.0),
            Model::Gpt(g) => (g.c - 24.0, g.c + 24.0),
            Model::PtII { gpt, .. } if !gpt.full_line() => (0.0, 15.0),
            Model::PtII { .. } => (-12.0, 12.0),
            Model::Transparent(t) => {
                let c0 = t.reduction().c;
                (c0 - 30.0, c0 + 30.0)
            }
            Model::Morse(_) => MORSE_DOMAIN,
        }
    }

    /// Default interior node count for finite differences.
    pub fn default_fd_points(&self) -> usize {
        match self {
            Model::Gpt(_) | Model::PtII { .. } => 2400,
            Model::Transparent(_) => 3000,
            _ => 1500,
        }
    }

    /// Whether sampling must stay off the left endpoint (a wall pole).
    pub fn open_left(&self) -> bool {
        match self {
            Model::Family { fam, .. } => fam.has_real_pole(),
            Model::Gpt(g) | Model::PtII { gpt: g, .. } => !g.full_line(),
            _ => false,
        }
    }

    /// Analytic levels in the frame of [`Model::potential`], sorted by energy.
    pub fn levels(&self) -> Vec<LabeledLevel> {
        let mut out = Vec::new();
        let push_ladder = |out: &mut Vec<LabeledLevel>,
                           label: &str,
                           fam: FamilySolution,
                           m: f64,
                           keep: &dyn Fn(usize) -> bool| {
            for (n, e) in algebra::spectrum(m).into_iter().enumerate() {
                if keep(n) {
                    out.push(LabeledLevel {
                        label: label.to_string(),
                        n,
                        energy: e,
                        source: StateSource::Ladder { fam, m },
                    });
                }
            }
        };
        match self {
            Model::Family { fam, m } => match fam.kind() {
                FamilyKind::I => {
                    push_ladder(&mut out, "series_m", *fam, *m, &|_| true);
                    if fam.b().re == 0.0 {
                        let m2 = -fam.b().im;
                        if let Ok(f2) = FamilySolution::with_any_gamma(
                            FamilyKind::I,
                            c(0.0, -m),
                            fam.c(),
                            fam.gamma(),
                            Branch::Upper,
                        ) {
                            push_ladder(&mut out, "series_exchange", f2, m2, &|_| true);
                        }
                    }
                }
                FamilyKind::II if fam.has_real_pole() => {
                    let b = fam.b();
                    if b.im == 0.0 && b.re > 0.0 && *m > 0.0 {
                        let g = GptParams {
                            a: m - 0.5,
                            b: b.re,
                            c: fam.c(),
                            gamma: 0.0,
                        };
                        let s = g.spectrum();
                        if !s.series_a.is_empty() {
                            push_ladder(&mut out, "series_m", *fam, *m, &|_| true);
                        }
                        if !s.series_b.is_empty() {
                            let f2 = FamilySolution::with_any_gamma(
                                FamilyKind::II,
                                c(*m, 0.0),
                                fam.c(),
                                0.0,
                                Branch::Upper,
                            )
                            .expect("finite");
                            push_ladder(&mut out, "series_exchange", f2, b.re, &|_| true);
                        }
                    } else {
                        let (bre, mm) = (b.re, *m);
                        push_ladder(&mut out, "series_m", *fam, *m, &|n| {
                            bre > mm - n as f64 - 0.5
                        });
                    }
                }
                FamilyKind::II => {
                    push_ladder(&mut out, "series_m", *fam, *m, &|_| true);
                    let b = fam.b();
                    if b.im == 0.0 && b.re > 0.0 {
                        let f2 = FamilySolution::with_any_gamma(
                            FamilyKind::II,
                            c(*m, 0.0),
                            fam.c(),
                            fam.gamma(),
                            Branch::Upper,
                        )
                        .expect("finite");
                        push_ladder(&mut out, "series_exchange", f2, b.re, &|_| true);
                    }
                }
                FamilyKind::III => {
                    if fam.branch().sign() * fam.b().re > 0.0 {
                        push_ladder(&mut out, "series_m", *fam, *m, &|_| true);
                    }
                }
            },
            Model::Scarf(s) => {
                let (ma, mb) = scarf_algebra_maps(s);
                for map in [ma, mb] {
                    for (n, e) in map.energies().into_iter().enumerate() {
                        out.push(LabeledLevel {
                            label: series_label(map.series),
                            n,
                            energy: e,
                            source: StateSource::Scarf(map),
                        });
                    }
                }
            }
            Model::Gpt(g) => {
                let s = g.spectrum();
                for (series, list) in [(Series::A, &s.series_a), (Series::B, &s.series_b)] {
                    if !list.is_empty() {
                        push_ladder(
                            &mut out,
                            series.label(),
                            g.family(series),
                            g.map(series).0,
                            &|_| true,
                        );
                    }
                }
            }
            Model::PtII { gpt, .. } => {
                let s = gpt.spectrum();
                for (series, list) in [(Series::A, &s.series_a), (Series::B, &s.series_b)] {
                    let (m, _) = gpt.map(series);
                    let fam = gpt.family(series);
                    for (n, e) in list.iter().enumerate() {
                        out.push(LabeledLevel {
                            label: series.label().to_string(),
                            n,
                            energy: PoschlTellerII::ENERGY_SCALE * e,
                            source: StateSource::HalfScaled { fam, m },
                        });
                    }
                }
            }
            Model::Transparent(t) => out.push(LabeledLevel {
                label: "reduced".into(),
                n: 0,
                energy: -0.25,
                source: StateSource::Ladder {
                    fam: t.family(),
                    m: 1.0,
                },
            }),
            Model::Morse(mo) => push_ladder(&mut out, "series_m", mo.family(), mo.m(), &|_| true),
        }
        out.sort_by(|x, y| {
            x.energy
                .total_cmp(&y.energy)
                .then(x.label.cmp(&y.label))
                .then(x.n.cmp(&y.n))
        });
        out
    }

    /// Picks the level asked for by `--series` / `--n`.
    pub fn select_level(
        &self,
        series: Option<SeriesArg>,
        n: usize,
    ) -> Result<LabeledLevel, CliError> {
        let want = match (self, series) {
            (Model::Scarf(_) | Model::Gpt(_) | Model::PtII { .. }, Some(SeriesArg::B)) => {
                Some("series_B")
            }
            (Model::Scarf(_) | Model::Gpt(_) | Model::PtII { .. }, _) => Some("series_A"),
            (Model::Family { .. }, Some(SeriesArg::B)) => Some("series_exchange"),
            (Model::Family { .. } | Model::Morse(_), _) => Some("series_m"),
            (Model::Transparent(_), _) => None,
        };
        self.levels()
            .into_iter()
            .find(|l| l.n == n && want.is_none_or(|w| l.label == w))
            .ok_or_else(|| {
                CliError::Usage(format!(
                    "no bound state n = {n} in the requested series of model {}",
                    self.name()
                ))
            })
    }

    /// Normalized analytic state of `level` on `grid`.
    pub fn state(&self, level: &LabeledLevel, grid: &Grid) -> crate::Result<GridFunction> {
        match level.source {
            StateSource::Scarf(map) => scarf_wavefunction_on(&map, level.n, grid),
            StateSource::Ladder { fam, m } => fam.analytic_bound_state(m, level.n, grid),
            StateSource::HalfScaled { fam, m } => {
                let xg = Grid::new(fam.c() + 2.0 * grid.x0, 2.0 * grid.dx, grid.len)?;
                let psi = fam.analytic_bound_state(m, level.n, &xg)?;
                GridFunction::new(grid.x0, grid.dx, psi.values)?.normalized()
            }
        }
    }

    /// Expected outcome of the `conj(V(-x)) = V(x)` test, when the model has one.
    pub fn pt_expectation(&self) -> Option<bool> {
        match self {
            Model::Scarf(_) => Some(true),
            Model::Morse(_) => Some(false),
            Model::Family { fam, .. }
                if fam.kind() == FamilyKind::I
                    && fam.c() == 0.0
                    && fam.gamma() == 0.0
                    && fam.b().re == 0.0 =>
            {
                Some(true)
            }
            _ => None,
        }
    }

    /// `(label, family, m)` for every algebra realizing the model.
    pub fn families(&self) -> Vec<(String, FamilySolution, f64)> {
        match self {
            Model::Family { fam, m } => vec![("series_m".into(), *fam, *m)],
            Model::Scarf(s) => {
                let (ma, mb) = scarf_algebra_maps(s);
                [ma, mb]
                    .iter()
                    .map(|mp| (series_label(mp.series), mp.family(), mp.m))
                    .collect()
            }
            Model::Gpt(g) | Model::PtII { gpt: g, .. } => [Series::A, Series::B]
                .iter()
                .map(|&s| (series_label(s), g.family(s), g.map(s).0))
                .collect(),
            Model::Transparent(t) => vec![("reduced".into(), t.family(), 1.0)],
            Model::Morse(mo) => vec![("series_m".into(), mo.family(), mo.m())],
        }
    }
}
