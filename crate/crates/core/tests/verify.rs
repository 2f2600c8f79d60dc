use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;
use sl2c::models::{scarf_spectrum, ScarfParams};
use sl2c::verify::eigen::tridiagonal_eigenvalues;
use sl2c::verify::{
    build_hamiltonian, eigen_nonhermitian, match_spectrum, numeric_spectrum, verify_spectrum,
    CMatrix, Discretization, EigenOptions, VerifyOptions,
};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Spectrum of the tridiagonal Toeplitz matrix with diagonal `a`, super-diagonal
/// `b`, sub-diagonal `s`.
fn toeplitz_eigenvalues(n: usize, a: Complex64, b: Complex64, s: Complex64) -> Vec<Complex64> {
    (1..=n)
        .map(|k| a + 2.0 * (b * s).sqrt() * (k as f64 * PI / (n + 1) as f64).cos())
        .collect()
}

/// Every element of `want` has a distinct partner in `got` within `tol`.
fn same_multiset(got: &[Complex64], want: &[Complex64], tol: f64) -> bool {
    if got.len() != want.len() {
        return false;
    }
    let mut used = vec![false; got.len()];
    want.iter().all(|w| {
        let best = (0..got.len())
            .filter(|&j| !used[j])
            .min_by(|&i, &j| (got[i] - w).norm().total_cmp(&(got[j] - w).norm()));
        match best {
            Some(j) if (got[j] - w).norm() <= tol => {
                used[j] = true;
                true
            }
            _ => false,
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn dense_solver_matches_toeplitz_formula(
        n in 2usize..30,
        ar in -2.0..2.0f64, ai in -2.0..2.0f64,
        br in 0.2..2.0f64, bi in -1.0..1.0f64,
        sr in 0.2..2.0f64, si in -1.0..1.0f64,
    ) {
        let (a, b, s) = (c(ar, ai), c(br, bi), c(sr, si));
        let m = CMatrix::from_fn(n, n, |i, j| {
            if i == j { a } else if j == i + 1 { b } else if i == j + 1 { s } else { c(0.0, 0.0) }
        });
        let dec = eigen_nonhermitian(&m, EigenOptions { vectors: true, ..Default::default() }).unwrap();
        prop_assert!(same_multiset(&dec.values, &toeplitz_eigenvalues(n, a, b, s), 1e-8));
        for k in 0..n {
            prop_assert!(dec.backward_error(&m, k).unwrap() < 1e-10);
        }
    }

    #[test]
    fn tridiagonal_solver_agrees_with_dense(
        diag in prop::collection::vec((-3.0..3.0f64, -1.0..1.0f64), 2..25),
        seed in prop::collection::vec((-1.5..1.5f64, -0.5..0.5f64), 24),
    ) {
        let n = diag.len();
        let d: Vec<Complex64> = diag.iter().map(|&(r, i)| c(r, i)).collect();
        let o: Vec<Complex64> = seed[..n - 1].iter().map(|&(r, i)| c(r, i)).collect();
        let m = CMatrix::from_fn(n, n, |i, j| {
            if i == j { d[i] } else if j == i + 1 { o[i] } else if i == j + 1 { o[j] } else { c(0.0, 0.0) }
        });
        let dense = eigen_nonhermitian(&m, EigenOptions::default()).unwrap().values;
        let tri = tridiagonal_eigenvalues(&d, &o, 60).unwrap();
        let scale = m.norm_frobenius();
        prop_assert!(same_multiset(&tri, &dense, 1e-6 * scale.max(1.0)));
        let trace: Complex64 = d.iter().sum();
        let sum: Complex64 = tri.iter().sum();
        prop_assert!((trace - sum).norm() < 1e-9 * scale.max(1.0));
    }

    #[test]
    fn exact_spectrum_matches_itself(levels in prop::collection::vec(-50.0..-0.01f64, 0..12)) {
        let numeric: Vec<Complex64> = levels.iter().map(|&e| c(e, 0.0)).rev().collect();
        let r = match_spectrum(&numeric, &levels, 1e-3, 1e-6);
        prop_assert!(r.all_matched());
        prop_assert!(r.spurious_numeric.is_empty());
        prop_assert_eq!(r.max_gap(), 0.0);
        prop_assert_eq!(r.matches.len(), levels.len());
    }

    #[test]
    fn shifted_or_complex_eigenvalues_do_not_match(e in -20.0..-1.0f64, shift in 2e-3..0.5f64, im in 2e-6..1e-2f64) {
        let r = match_spectrum(&[c(e + shift, 0.0)], &[e], 1e-3, 1e-6);
        prop_assert!(r.matches.is_empty() && !r.all_accounted());
        prop_assert_eq!(r.spurious_numeric.len(), 1);
        let r = match_spectrum(&[c(e, im)], &[e], 1e-3, 1e-6);
        prop_assert!(r.matches.is_empty() && !r.all_accounted());
        prop_assert!(r.spurious_numeric.is_empty());
    }

    #[test]
    fn continuum_is_not_spurious(pos in prop::collection::vec(0.0..100.0f64, 0..20)) {
        let mut numeric: Vec<Complex64> = pos.iter().map(|&e| c(e, 0.0)).collect();
        numeric.push(c(-1.0, 0.0));
        let r = match_spectrum(&numeric, &[-1.0], 1e-3, 1e-6);
        prop_assert!(r.all_matched() && r.spurious_numeric.is_empty());
    }
}

#[test]
fn hermitian_sech_well_reproduces_textbook_levels() {
    // -l(l+1) sech^2 x has levels -(l - n)^2, n < l
    let l = 3.0;
    let d = Discretization::new(-15.0, 15.0, 1500).unwrap();
    let want = [-9.0, -4.0, -1.0];
    let v = verify_spectrum(
        |x: f64| Ok(c(-l * (l + 1.0) / x.cosh().powi(2), 0.0)),
        &want,
        &d,
        &VerifyOptions::default(),
    )
    .unwrap();
    assert_eq!(v.hermitian_defect(), 0.0);
    assert!(v.report.all_matched(), "{:?}", v.report);
    assert!(v.report.max_gap() < 1e-4, "{}", v.report.max_gap());
    assert!(v.report.max_imag < 1e-10);
    assert!(v.report.spurious_numeric.is_empty());
}

#[test]
fn harmonic_oscillator_levels() {
    let d = Discretization::new(-10.0, 10.0, 800).unwrap();
    let s = numeric_spectrum(|x: f64| Ok(c(x * x - 20.0, 0.0)), &d, true, 60).unwrap();
    for n in 0..5 {
        assert!(
            (s.values[n].re - (2 * n + 1) as f64 + 20.0).abs() < 1e-5,
            "{n}: {}",
            s.values[n]
        );
    }
}

#[test]
fn richardson_improves_the_gap() {
    let p = ScarfParams::new(2.0, 1.8).unwrap();
    let want = scarf_spectrum(&p).energies();
    let d = Discretization::new(-15.0, 15.0, 600).unwrap();
    let raw = VerifyOptions {
        richardson: false,
        ..Default::default()
    };
    let plain = verify_spectrum(|x| Ok(p.potential(x)), &want, &d, &raw).unwrap();
    let rich =
        verify_spectrum(|x| Ok(p.potential(x)), &want, &d, &VerifyOptions::default()).unwrap();
    assert!(plain.report.all_matched() && rich.report.all_matched());
    assert!(rich.report.max_gap() < 0.1 * plain.report.max_gap());
    assert!(rich.hermitian_defect() > 1.0);
}

#[test]
fn refinement_keeps_old_nodes() {
    let d = Discretization::new(-1.0, 2.0, 60).unwrap();
    let f = d.refined();
    for j in 0..d.n_points {
        assert!((d.node(j) - f.node(2 * j + 1)).abs() < 1e-14);
    }
    assert!((f.dx() - 0.5 * d.dx()).abs() < 1e-15);
}

#[test]
fn hamiltonian_is_complex_symmetric() {
    let d = Discretization::new(-5.0, 5.0, 60).unwrap();
    let h = build_hamiltonian(|x| c(x.sin(), x.cos()), &d).unwrap();
    let m = h.to_dense();
    assert_eq!(m.sub(&m.transpose()).norm_frobenius(), 0.0);
    assert!((h.trace() - m.trace()).norm() < 1e-9);
    assert!((h.hermitian_defect() - 2.0).abs() < 1e-2);
}

#[test]
fn iteration_cap_reports_no_convergence() {
    let d = Discretization::new(-15.0, 15.0, 200).unwrap();
    let p = ScarfParams::new(2.0, 1.8).unwrap();
    let r = numeric_spectrum(|x| Ok(p.potential(x)), &d, false, 1);
    assert!(matches!(r, Err(sl2c::Error::NoConvergence { .. })));
    assert!(Discretization::new(0.0, 1.0, 10).is_err());
    assert!(Discretization::new(1.0, 0.0, 100).is_err());
}
