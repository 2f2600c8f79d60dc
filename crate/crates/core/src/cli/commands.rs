use num_complex::Complex64;
use serde_json::{json, Value};

use super::args::{ModelKind, RunArgs};
use super::model::{LabeledLevel, Model};
use super::{Check, CliError, Outcome, Table};
use crate::algebra::HALF_LINE_EPS;
use crate::grid::{Grid, GridFunction};
use crate::identities::run_identity_suite;
use crate::models::{closest_pair, ScarfParams, Series, SCARF_DOMAIN};
use crate::verify::{schrodinger_residual, verify_spectrum, Discretization, VerifyOptions};

/// Grid spacing of wavefunction samples and residual checks.
pub const STATE_DX: f64 = 5e-3;
pub const RESIDUAL_TOL: f64 = 1e-5;
pub const CLOSED_FORM_TOL: f64 = 1e-6;
pub const IDENTITY_TOL: f64 = 1e-6;
pub const ODE_TOL: f64 = 1e-12;
pub const REALIZATION_TOL: f64 = 1e-10;
/// Distance from a wall pole below which residuals are not evaluated.
pub const WALL_MARGIN: f64 = 0.5;

/// Shortest round-trip text, in exponent form for very small or large values.
fn fmt(x: f64) -> String {
    let a = x.abs();
    if a == 0.0 || !a.is_finite() || (1e-4..1e16).contains(&a) {
        x.to_string()
    } else {
        format!("{x:e}")
    }
}

fn outcome(model: &Model, results: Value, checks: Vec<Check>, table: Table) -> Outcome {
    Outcome {
        command: String::new(),
        params: model.params(),
        results,
        checks,
        table,
    }
}

fn interval(model: &Model, a: &RunArgs, wall_offset: f64) -> Result<(f64, f64), CliError> {
    let (dlo, dhi) = model.domain();
    let lo = match a.grid.x_min {
        Some(v) => v,
        None if model.open_left() => dlo + wall_offset,
        None => dlo,
    };
    let hi = a.grid.x_max.unwrap_or(dhi);
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(CliError::Usage(format!(
            "need finite --x-min < --x-max, got [{lo}, {hi}]"
        )));
    }
    Ok((lo, hi))
}

fn sample_grid(model: &Model, a: &RunArgs, dx: f64, wall_offset: f64) -> Result<Grid, CliError> {
    let (lo, hi) = interval(model, a, wall_offset)?;
    let n = a
        .grid
        .n_points
        .unwrap_or(((hi - lo) / dx).round() as usize + 1);
    Ok(Grid::spanning(lo, hi, n)?)
}

/// The `t` frame of ptII compresses states by two, so it is sampled twice as
/// finely.
fn state_dx(model: &Model) -> f64 {
    match model {
        Model::PtII { .. } => 0.5 * STATE_DX,
        _ => STATE_DX,
    }
}

fn level_json(l: &LabeledLevel) -> Value {
    json!({ "label": l.label, "n": l.n, "energy": l.energy })
}

/// State and its residual, the latter measured away from a wall pole.
fn state_with_residual(
    model: &Model,
    level: &LabeledLevel,
    grid: &Grid,
) -> Result<(GridFunction, f64), CliError> {
    let psi = model.state(level, grid)?;
    let skip = if model.open_left() && grid.x0 < model.domain().0 + WALL_MARGIN {
        (((model.domain().0 + WALL_MARGIN - grid.x0) / grid.dx).ceil() as usize)
            .min(grid.len.saturating_sub(5))
    } else {
        0
    };
    let trimmed = GridFunction::new(psi.x(skip), psi.dx, psi.values[skip..].to_vec())?;
    let r = schrodinger_residual(|x| model.potential(x), &trimmed, level.energy)?;
    Ok((psi, r))
}

pub fn potential(model: &Model, a: &RunArgs) -> Result<Outcome, CliError> {
    let grid = sample_grid(model, a, 0.05, HALF_LINE_EPS)?;
    let mut table = Table::new(&["x", "re_V", "im_V"]);
    let (mut xs, mut re, mut im) = (Vec::new(), Vec::new(), Vec::new());
    for x in grid.points() {
        let v = model.potential(x)?;
        table.push(vec![fmt(x), fmt(v.re), fmt(v.im)]);
        xs.push(x);
        re.push(v.re);
        im.push(v.im);
    }
    let results = json!({ "x": xs, "re_V": re, "im_V": im });
    Ok(outcome(model, results, Vec::new(), table))
}

pub fn spectrum(model: &Model, _a: &RunArgs) -> Result<Outcome, CliError> {
    let levels = model.levels();
    let mut table = Table::new(&["label", "n", "energy"]);
    for l in &levels {
        table.push(vec![l.label.clone(), l.n.to_string(), fmt(l.energy)]);
    }
    let by_label = |label: &str| -> Vec<f64> {
        let mut v: Vec<(usize, f64)> = levels
            .iter()
            .filter(|l| l.label == label)
            .map(|l| (l.n, l.energy))
            .collect();
        v.sort_by_key(|p| p.0);
        v.into_iter().map(|p| p.1).collect()
    };
    let mut results = json!({
        "count": levels.len(),
        "energies": levels.iter().map(|l| l.energy).collect::<Vec<_>>(),
        "levels": levels.iter().map(level_json).collect::<Vec<_>>(),
    });
    let obj = results.as_object_mut().expect("object");
    match model {
        Model::Scarf(_) | Model::Gpt(_) | Model::PtII { .. } => {
            obj.insert("series_A".into(), json!(by_label(Series::A.label())));
            obj.insert("series_B".into(), json!(by_label(Series::B.label())));
        }
        _ => {}
    }
    match model {
        Model::Gpt(g) | Model::PtII { gpt: g, .. } => {
            obj.insert("half_line".into(), json!(!g.full_line()));
        }
        Model::Transparent(t) => {
            let r = t.reduction();
            obj.insert("physical_energy".into(), json!(r.bound_state_energy));
            obj.insert(
                "reduction".into(),
                json!({ "c": r.c, "gamma": r.gamma, "scale": r.scale }),
            );
        }
        _ => {}
    }
    if let Model::PtII { .. } = model {
        obj.insert("frame".into(), json!("t"));
    }
    Ok(outcome(model, results, Vec::new(), table))
}

pub fn wavefunction(model: &Model, a: &RunArgs) -> Result<Outcome, CliError> {
    let level = model.select_level(a.model.series, a.model.n.unwrap_or(0))?;
    let grid = sample_grid(model, a, state_dx(model), HALF_LINE_EPS)?;
    let (psi, residual) = state_with_residual(model, &level, &grid)?;
    let mut table = Table::new(&["x", "re_psi", "im_psi", "abs2"]);
    for (j, v) in psi.values.iter().enumerate() {
        table.push(vec![fmt(psi.x(j)), fmt(v.re), fmt(v.im), fmt(v.norm_sqr())]);
    }
    let results = json!({
        "level": level_json(&level),
        "norm": psi.norm_sq(),
        "residual": residual,
        "dx": psi.dx,
        "x": (0..psi.len()).map(|j| psi.x(j)).collect::<Vec<_>>(),
        "re_psi": psi.values.iter().map(|v| v.re).collect::<Vec<_>>(),
        "im_psi": psi.values.iter().map(|v| v.im).collect::<Vec<_>>(),
    });
    let checks = vec![Check::new(
        "schrodinger_residual",
        residual < RESIDUAL_TOL,
        format!("max |-psi'' + (V - E) psi| / max|psi| = {residual:e} (tol {RESIDUAL_TOL:e})"),
    )];
    Ok(outcome(model, results, checks, table))
}

fn pt_violation(model: &Model) -> Result<(f64, f64), CliError> {
    let (lo, hi) = model.domain();
    let half = lo.abs().min(hi.abs()).max(1.0);
    let mut worst = 0.0f64;
    let mut scale = 1.0f64;
    for j in 0..=400 {
        let x = -half + 2.0 * half * j as f64 / 400.0;
        let (vp, vm) = match (model.potential(x), model.potential(-x)) {
            (Ok(p), Ok(m)) => (p, m),
            _ => continue,
        };
        worst = worst.max((vm.conj() - vp).norm());
        scale = scale.max(vp.norm());
    }
    Ok((worst, scale))
}

pub fn verify(model: &Model, a: &RunArgs) -> Result<Outcome, CliError> {
    let (lo, hi) = interval(model, a, 0.0)?;
    let disc = Discretization::new(lo, hi, a.grid.n_points.unwrap_or(model.default_fd_points()))?;
    let opts = VerifyOptions {
        e_tol: a.tol.e_tol,
        im_tol: a.tol.im_tol,
        richardson: !a.tol.no_richardson,
        max_iterations: a.tol.max_sweeps,
    };
    let levels = model.levels();
    let analytic: Vec<f64> = levels.iter().map(|l| l.energy).collect();
    let v = verify_spectrum(|x| model.fd_potential(x), &analytic, &disc, &opts)?;
    let rep = &v.report;

    let mut taken = vec![false; levels.len()];
    let mut label_of = |e: f64| -> (String, usize) {
        match levels
            .iter()
            .enumerate()
            .find(|(i, l)| !taken[*i] && l.energy == e)
        {
            Some((i, l)) => {
                taken[i] = true;
                (l.label.clone(), l.n)
            }
            None => (String::new(), 0),
        }
    };
    let mut table = Table::new(&["kind", "label", "n", "analytic", "re", "im", "gap"]);
    let mut matches = Vec::new();
    for m in &rep.matches {
        let (label, n) = label_of(m.analytic);
        table.push(vec![
            "match".into(),
            label.clone(),
            n.to_string(),
            fmt(m.analytic),
            fmt(m.numeric.re),
            fmt(m.numeric.im),
            fmt(m.gap),
        ]);
        matches.push(json!({ "label": label, "n": n, "analytic": m.analytic, "numeric": [m.numeric.re, m.numeric.im], "gap": m.gap }));
    }
    let mut unmatched = Vec::new();
    for u in &rep.unmatched_analytic {
        let (label, n) = label_of(u.analytic);
        table.push(vec![
            "unmatched".into(),
            label.clone(),
            n.to_string(),
            fmt(u.analytic),
            String::new(),
            String::new(),
            String::new(),
        ]);
        unmatched.push(json!({ "label": label, "n": n, "analytic": u.analytic, "crossing_collapse": u.crossing_collapse }));
    }
    let mut clusters = Vec::new();
    for cl in &rep.split_clusters {
        let mut labels = Vec::new();
        for z in &cl.numeric {
            let (label, n) = label_of(cl.analytic);
            table.push(vec![
                "split".into(),
                label.clone(),
                n.to_string(),
                fmt(cl.analytic),
                fmt(z.re),
                fmt(z.im),
                fmt((z - cl.analytic).norm()),
            ]);
            labels.push(json!({ "label": label, "n": n }));
        }
        clusters.push(json!({
            "analytic": cl.analytic,
            "levels": labels,
            "numeric": cl.numeric.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(),
            "centroid_gap": cl.centroid_gap,
            "radius": cl.radius,
        }));
    }
    for z in &rep.spurious_numeric {
        table.push(vec![
            "spurious".into(),
            String::new(),
            String::new(),
            String::new(),
            fmt(z.re),
            fmt(z.im),
            String::new(),
        ]);
    }

    let mut checks = vec![
        Check::new(
            "levels_matched",
            rep.all_accounted(),
            format!(
                "{} of {} analytic levels matched within {:e}, {} coincident levels in split clusters, {} absorbed by a coincident level, max gap {:e}",
                rep.matches.len(),
                analytic.len(),
                opts.e_tol,
                rep.split_clusters.iter().map(|c| c.numeric.len()).sum::<usize>(),
                rep.unmatched_analytic.iter().filter(|u| u.crossing_collapse).count(),
                rep.max_gap()
            ),
        ),
        Check::new(
            "spectral_reality",
            rep.max_imag <= opts.im_tol,
            format!("max |Im E| over matched levels {:e} (tol {:e})", rep.max_imag, opts.im_tol),
        ),
        Check::new(
            "no_spurious",
            rep.spurious_numeric.is_empty(),
            format!("{} unmatched near-real eigenvalues below -{:e}", rep.spurious_numeric.len(), opts.e_tol),
        ),
    ];

    // --n-points sizes the eigenvalue grid, not the state grid
    let (lo, hi) = interval(model, a, HALF_LINE_EPS)?;
    let sgrid = Grid::spanning(lo, hi, ((hi - lo) / state_dx(model)).round() as usize + 1)?;
    let mut worst = 0.0f64;
    let mut residuals = Vec::new();
    for l in &levels {
        let (_, r) = state_with_residual(model, l, &sgrid)?;
        worst = worst.max(r);
        residuals.push(json!({ "label": l.label, "n": l.n, "residual": r }));
    }
    checks.push(Check::new(
        "schrodinger_residual",
        worst < RESIDUAL_TOL,
        format!("max residual of analytic states {worst:e} (tol {RESIDUAL_TOL:e})"),
    ));

    let (violation, scale) = pt_violation(model)?;
    let is_pt = violation <= REALIZATION_TOL * scale;
    if let Some(expected) = model.pt_expectation() {
        checks.push(Check::new(
            "pt_classification",
            is_pt == expected,
            format!("max |conj V(-x) - V(x)| = {violation:e}, PT-symmetric: {is_pt}, expected {expected}"),
        ));
    }

    let bound: Vec<[f64; 2]> = v
        .numeric
        .values
        .iter()
        .filter(|z| z.re < 0.0)
        .map(|z| [z.re, z.im])
        .collect();
    let mut results = json!({
        "domain": [lo, hi],
        "n_points": disc.n_points,
        "dx": disc.dx(),
        "richardson": opts.richardson,
        "hermitian_defect": v.hermitian_defect(),
        "max_gap": rep.max_gap(),
        "max_imag": rep.max_imag,
        "matches": matches,
        "split_clusters": clusters,
        "unmatched": unmatched,
        "spurious": rep.spurious_numeric.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(),
        "numeric_negative": bound,
        "residuals": residuals,
        "pt_violation": violation,
        "pt_symmetric": is_pt,
    });
    if let Model::Transparent(t) = model {
        results.as_object_mut().expect("object").insert(
            "physical_energy".into(),
            json!(t.reduction().bound_state_energy),
        );
    }
    Ok(outcome(model, results, checks, table))
}

pub fn crossing_scan(a: &RunArgs) -> Result<Outcome, CliError> {
    if a.model.model != ModelKind::Scarf {
        return Err(CliError::Usage("crossing-scan needs --model scarf".into()));
    }
    let need = |v: Option<f64>, name: &str| {
        v.ok_or_else(|| CliError::Usage(format!("crossing-scan needs --{name}")))
    };
    let aa = need(a.model.a, "A")?;
    let (from, to) = (need(a.model.b_from, "B_from")?, need(a.model.b_to, "B_to")?);
    let steps = a.model.steps;
    if steps == 0 || !(from > 0.0) || !(to >= from) {
        return Err(CliError::Usage(format!(
            "need 0 < --B_from <= --B_to and --steps >= 1, got [{from}, {to}] in {steps}"
        )));
    }
    let tol = a.tol.crossing_tol;
    if !(tol > 0.0) {
        return Err(CliError::Usage(format!(
            "--crossing-tol must be positive, got {tol}"
        )));
    }
    let lo = a.grid.x_min.unwrap_or(SCARF_DOMAIN.0);
    let hi = a.grid.x_max.unwrap_or(SCARF_DOMAIN.1);
    let grid = Grid::spanning(lo, hi, a.grid.n_points.unwrap_or(3001))?;

    let mut table = Table::new(&["B", "gap", "n_A", "n_B", "E_A", "E_B", "defect"]);
    let mut rows = Vec::new();
    let mut crossings = Vec::new();
    for i in 0..steps {
        let b = if steps == 1 {
            from
        } else {
            from + (to - from) * i as f64 / (steps - 1) as f64
        };
        let p = ScarfParams::new(aa, b)?;
        let Some(cr) = closest_pair(&p, &grid)? else {
            rows.push(json!({ "B": b, "pair": Value::Null }));
            continue;
        };
        let (ma, mb) = crate::models::scarf_algebra_maps(&p);
        let (ea, eb) = (ma.energy(cr.n_a)?, mb.energy(cr.n_b)?);
        table.push(vec![
            fmt(b),
            fmt(cr.gap),
            cr.n_a.to_string(),
            cr.n_b.to_string(),
            fmt(ea),
            fmt(eb),
            fmt(cr.defect),
        ]);
        let row = json!({ "B": b, "gap": cr.gap, "n_A": cr.n_a, "n_B": cr.n_b, "E_A": ea, "E_B": eb, "defect": cr.defect });
        if cr.gap < tol {
            crossings.push(row.clone());
        }
        rows.push(row);
    }
    let bad = crossings
        .iter()
        .filter(|r| {
            r["defect"]
                .as_f64()
                .is_none_or(|d| !(d < CLOSED_FORM_TOL))
        })
        .count();
    let checks = vec![Check::new(
        "crossing_collinear",
        bad == 0,
        format!(
            "{} pairs within {tol:e}, {bad} with proportionality defect >= {CLOSED_FORM_TOL:e}",
            crossings.len()
        ),
    )];
    let mut params = std::collections::BTreeMap::new();
    params.insert("model".to_string(), json!("scarf"));
    params.insert("A".to_string(), json!(aa));
    params.insert("B_from".to_string(), json!(from));
    params.insert("B_to".to_string(), json!(to));
    params.insert("steps".to_string(), json!(steps));
    Ok(Outcome {
        command: String::new(),
        params,
        results: json!({ "rows": rows, "crossings": crossings }),
        checks,
        table,
    })
}

/// Largest relative difference between the model potential and `V_m` of one
/// of its algebras, skipping poles.
fn realization_defect(model: &Model, fam: &crate::FamilySolution, m: f64) -> Result<f64, CliError> {
    let (lo, hi) = model.domain();
    let lo = if model.open_left() {
        lo + HALF_LINE_EPS
    } else {
        lo
    };
    let mut worst = 0.0f64;
    for j in 0..=400 {
        let x = lo + (hi - lo) * j as f64 / 400.0;
        let Ok(v) = model.potential(x) else { continue };
        let w: Complex64 = match model {
            Model::PtII { .. } => match fam.potential(m, fam.c() + 2.0 * x) {
                Ok(w) => 4.0 * w,
                Err(_) => continue,
            },
            _ => match fam.potential(m, x) {
                Ok(w) => w,
                Err(_) => continue,
            },
        };
        worst = worst.max((v - w).norm() / v.norm().max(1.0));
    }
    Ok(worst)
}

pub fn algebra_check(model: &Model, a: &RunArgs) -> Result<Outcome, CliError> {
    let mut checks = Vec::new();
    let mut reports = Vec::new();
    let mut table = Table::new(&["name", "pass", "detail"]);
    for (label, fam, m) in model.families() {
        let r = run_identity_suite(&fam, m, a.tol.trials, a.tol.seed)?;
        let ode = r.ode_residual.0.max(r.ode_residual.1);
        checks.push(Check::new(
            format!("{label}/ode"),
            ode < ODE_TOL,
            format!("max ODE residual {ode:e} (tol {ODE_TOL:e})"),
        ));
        checks.push(Check::new(
            format!("{label}/commutator"),
            r.max_commutator_defect < IDENTITY_TOL,
            format!(
                "max defect {:e} over {} test functions",
                r.max_commutator_defect, r.trials
            ),
        ));
        checks.push(Check::new(
            format!("{label}/casimir_forms"),
            r.max_casimir_forms_defect < IDENTITY_TOL,
            format!(
                "max defect {:e} over {} test functions",
                r.max_casimir_forms_defect, r.trials
            ),
        ));
        checks.push(Check::new(
            format!("{label}/casimir_eigen"),
            r.max_state_defect() < IDENTITY_TOL,
            format!(
                "max defect {:e} over {} bound states",
                r.max_state_defect(),
                r.states.len()
            ),
        ));
        let real = realization_defect(model, &fam, m)?;
        checks.push(Check::new(
            format!("{label}/realization"),
            real < REALIZATION_TOL,
            format!("model potential vs algebra potential, max relative difference {real:e}"),
        ));
        reports.push(json!({ "label": label, "m": m, "b": [fam.b().re, fam.b().im], "identities": r, "realization_defect": real }));
    }
    if let Model::Scarf(p) = model {
        let (ma, mb) = crate::models::scarf_algebra_maps(p);
        for map in [ma, mb] {
            let (r1, r2) = map.constraint_residuals(p);
            checks.push(Check::new(
                format!("{}/constraints", map.series.label()),
                r1.max(r2) < ODE_TOL,
                format!("parameter constraint residuals {r1:e}, {r2:e}"),
            ));
        }
    }
    for c in &checks {
        table.push(vec![c.name.clone(), c.pass.to_string(), c.detail.clone()]);
    }
    Ok(outcome(
        model,
        json!({ "algebras": reports }),
        checks,
        table,
    ))
}
