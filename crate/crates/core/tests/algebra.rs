use std::f64::consts::FRAC_PI_4;

use num_complex::Complex64;
use proptest::prelude::*;
use sl2c::algebra::{self, raising_polynomial, Branch, FamilyKind, FamilySolution, Ladder};
use sl2c::grid::{proportionality_defect, relative_sup_diff, Grid};
use sl2c::identities::{
    casimir_eigen_defect, commutator_defect, random_test_function, test_function_grid, EDGE_SKIP,
};
use sl2c::AlgebraState;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Direct evaluation of `(1/4 - m^2) F' + 2 m G' + G^2` from textbook
/// hyperbolic functions, used as an oracle.
fn oracle_potential(
    kind: FamilyKind,
    b: Complex64,
    c0: f64,
    gamma: f64,
    branch: Branch,
    m: f64,
    x: f64,
) -> Complex64 {
    let xi = c(x - c0, -gamma);
    let (df, g, dg) = match kind {
        FamilyKind::I => {
            let s = 1.0 / xi.cosh();
            (s * s, b * s, -b * s * xi.tanh())
        }
        FamilyKind::II => {
            let cs = 1.0 / xi.sinh();
            (-cs * cs, b * cs, -b * cs * xi.cosh() / xi.sinh())
        }
        FamilyKind::III => {
            let s = branch.sign();
            let e = b * (-s * x).exp();
            (c(0.0, 0.0), e, -s * e)
        }
    };
    (0.25 - m * m) * df + 2.0 * m * dg + g * g
}

fn kind_strategy() -> impl Strategy<Value = FamilyKind> {
    prop_oneof![
        Just(FamilyKind::I),
        Just(FamilyKind::II),
        Just(FamilyKind::III)
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn potential_matches_textbook_formula(
        kind in kind_strategy(),
        br in -2.0..2.0f64, bi in -2.0..2.0f64,
        c0 in -1.0..1.0f64, gamma in 0.05..0.7f64,
        upper in any::<bool>(),
        m in -3.0..3.0f64, x in -6.0..6.0f64,
    ) {
        let branch = if upper { Branch::Upper } else { Branch::Lower };
        let fam = FamilySolution::new(kind, c(br, bi), c0, gamma, branch).unwrap();
        let v = fam.potential(m, x).unwrap();
        let w = oracle_potential(kind, c(br, bi), fam.c(), fam.gamma(), branch, m, x);
        prop_assert!((v - w).norm() <= 1e-10 * w.norm().max(1.0), "{v} vs {w}");
        let (re, im) = fam.potential_cartesian(m, x).unwrap();
        prop_assert!((c(re, im) - v).norm() <= 1e-10 * v.norm().max(1.0));
    }

    #[test]
    fn fg_solve_their_odes(
        kind in kind_strategy(),
        br in -3.0..3.0f64, bi in -3.0..3.0f64,
        c0 in -2.0..2.0f64, gamma in -FRAC_PI_4..FRAC_PI_4,
    ) {
        prop_assume!(gamma.abs() > 1e-3 || kind != FamilyKind::II);
        let fam = FamilySolution::new(kind, c(br, bi), c0, gamma, Branch::Upper).unwrap();
        let xs: Vec<f64> = (0..101).map(|j| -8.0 + 0.16 * j as f64).collect();
        let (rf, rg) = fam.ode_residual(&xs).unwrap();
        prop_assert!(rf < 1e-12 && rg < 1e-12, "{rf} {rg}");
    }

    #[test]
    fn energy_law_and_count(m in -3.0..8.0f64) {
        let count = algebra::bound_state_count(m);
        let spec = algebra::spectrum(m);
        prop_assert_eq!(spec.len(), count);
        for (n, e) in spec.iter().enumerate() {
            prop_assert_eq!(*e, -(m - n as f64 - 0.5).powi(2));
            prop_assert!(m - n as f64 - 0.5 > 0.0);
        }
        prop_assert!(algebra::energy(m, count).is_err());
        prop_assert!(spec.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn casimir_and_energy_are_tied(k in 0.6..5.0f64, n in 0usize..5) {
        let s = AlgebraState::new(k, k + n as f64).unwrap();
        prop_assert_eq!(s.n(), n);
        prop_assert!((-s.energy() - 0.25 - s.casimir()).abs() < 1e-12);
        prop_assert!((s.energy() - algebra::energy(k + n as f64, n).unwrap()).abs() < 1e-12);
    }
}

#[test]
fn algebra_state_rejects_bad_labels() {
    assert!(AlgebraState::new(0.0, 1.0).is_err());
    assert!(AlgebraState::new(1.5, 1.0).is_err());
    assert!(AlgebraState::new(1.5, 2.7).is_err());
}

#[test]
fn commutator_holds_off_weight_grid() {
    let fam = FamilySolution::family_ii(c(0.7, -0.4), 0.5, -0.6).unwrap();
    let grid = test_function_grid(&fam).unwrap();
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(3);
    for m in [-1.3, 0.2, 2.9] {
        let psi = random_test_function(&mut rng, &grid);
        let d = commutator_defect(&fam, m, &psi).unwrap();
        assert!(d < 1e-6, "m={m}: {d}");
    }
}

fn lowest_weight_annihilated(fam: &FamilySolution, k: f64, grid: &Grid) {
    let psi = fam.ground_state(k, grid).unwrap();
    let low = fam.apply_ladder(k, Ladder::Lower, &psi).unwrap();
    let scale = psi.sup_norm();
    let n = psi.len();
    let worst = low.values[EDGE_SKIP..n - EDGE_SKIP]
        .iter()
        .map(|v| v.norm())
        .fold(0.0, f64::max);
    assert!(worst / scale < 1e-7, "{:?}: {}", fam.kind(), worst / scale);
}

#[test]
fn ground_states_are_annihilated_by_lowering() {
    let g = Grid::spanning(-12.0, 12.0, 4801).unwrap();
    lowest_weight_annihilated(
        &FamilySolution::family_i(c(0.3, 1.1), 0.2, -0.4).unwrap(),
        2.2,
        &g,
    );
    lowest_weight_annihilated(
        &FamilySolution::family_ii(c(1.5, 0.3), -0.2, 0.5).unwrap(),
        1.7,
        &g,
    );
    let up = Grid::spanning(-3.0, 20.0, 4601).unwrap();
    lowest_weight_annihilated(
        &FamilySolution::family_iii(c(2.0, -0.7), Branch::Upper).unwrap(),
        2.5,
        &up,
    );
    let low = Grid::spanning(-20.0, 3.0, 4601).unwrap();
    lowest_weight_annihilated(
        &FamilySolution::family_iii(c(-1.5, 0.5), Branch::Lower).unwrap(),
        2.0,
        &low,
    );
}

#[test]
fn lower_branch_mirrors_upper() {
    let up = FamilySolution::family_iii(c(1.5, 0.5), Branch::Upper).unwrap();
    let lo = FamilySolution::family_iii(c(-1.5, -0.5), Branch::Lower).unwrap();
    for x in [-2.0, -0.3, 0.0, 1.1, 3.0] {
        let a = up.potential(2.0, x).unwrap();
        let b = lo.potential(2.0, -x).unwrap();
        assert!((a - b).norm() < 1e-12 * a.norm().max(1.0));
    }
    let g = Grid::spanning(-5.0, 5.0, 101).unwrap();
    assert!(lo.ground_state(1.5, &g).is_ok());
    let wrong = FamilySolution::family_iii(c(1.5, 0.5), Branch::Lower).unwrap();
    assert!(matches!(
        wrong.ground_state(1.5, &g),
        Err(sl2c::Error::NotNormalizable { .. })
    ));
}

#[test]
fn exact_ladder_matches_finite_differences() {
    let cases = [
        (
            FamilySolution::family_i(c(0.4, -1.3), 0.3, 0.2).unwrap(),
            1.5,
            Grid::spanning(-15.0, 15.0, 6001).unwrap(),
        ),
        (
            FamilySolution::family_ii(c(1.2, 0.0), 0.0, 0.6).unwrap(),
            1.5,
            Grid::spanning(-15.0, 15.0, 6001).unwrap(),
        ),
        (
            FamilySolution::family_iii(c(2.0, 1.0), Branch::Upper).unwrap(),
            1.5,
            Grid::spanning(-4.0, 30.0, 6801).unwrap(),
        ),
        (
            FamilySolution::family_iii(c(-1.5, 0.5), Branch::Lower).unwrap(),
            1.5,
            Grid::spanning(-30.0, 4.0, 6801).unwrap(),
        ),
    ];
    for (fam, k, grid) in cases {
        for n in 0..3 {
            let exact = fam.analytic_state(k, n, &grid).unwrap();
            let fd = fam.ladder_state(k, n, &grid).unwrap();
            let d = proportionality_defect(&exact.values, &fd.values).unwrap();
            assert!(d < 1e-10, "{:?} n={n}: {d}", fam.kind());
            let r = relative_sup_diff(&exact.values, &fd.values, EDGE_SKIP);
            assert!(r < 1e-5, "{:?} n={n}: {r}", fam.kind());
            let defect = casimir_eigen_defect(&fam, k + n as f64, k, &exact).unwrap();
            assert!(defect < 1e-6, "{:?} n={n}: {defect}", fam.kind());
        }
    }
}

#[test]
fn raising_polynomial_first_steps() {
    // A+(k) psi_kk = (-2k F + 2G) psi_kk
    let p1 = raising_polynomial(1.5, 1);
    for (f, g) in [(c(0.3, 0.1), c(-0.2, 0.5)), (c(1.0, 0.0), c(0.0, 0.0))] {
        let want = -3.0 * f + 2.0 * g;
        assert!((p1.eval(f, g) - want).norm() < 1e-14);
    }
    // Second step: P' + ((-k - (k+1)) F + 2G) P with P' = -2k(1 - F^2) - 2 F G
    let k = 1.5;
    let p2 = raising_polynomial(k, 2);
    let (f, g) = (c(0.4, -0.2), c(0.9, 0.3));
    let p = -2.0 * k * f + 2.0 * g;
    let dp = -2.0 * k * (1.0 - f * f) + 2.0 * (-f * g);
    let want = dp + ((-2.0 * k - 1.0) * f + 2.0 * g) * p;
    assert!((p2.eval(f, g) - want).norm() < 1e-13);
}

#[test]
fn half_line_family_refuses_straddling_grid() {
    let fam = FamilySolution::family_ii(c(3.0, 0.0), 0.0, 0.0).unwrap();
    assert!(fam.has_real_pole());
    let g = Grid::spanning(-1.0, 1.0, 101).unwrap();
    assert!(fam.ground_state(1.5, &g).is_err());
    assert!(matches!(
        fam.potential(1.5, 0.0),
        Err(sl2c::Error::Pole { .. })
    ));
}

#[test]
fn gamma_range_is_enforced() {
    assert!(FamilySolution::family_i(c(1.0, 0.0), 0.0, FRAC_PI_4).is_err());
    assert!(FamilySolution::family_i(c(1.0, 0.0), 0.0, -FRAC_PI_4).is_ok());
    assert!(
        FamilySolution::with_any_gamma(FamilyKind::I, c(1.0, 0.0), 0.0, 1.4, Branch::Upper).is_ok()
    );
    assert!(FamilySolution::family_i(c(f64::NAN, 0.0), 0.0, 0.0).is_err());
}
