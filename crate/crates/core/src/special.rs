//! Complex special functions used by the closed-form solutions.
//!
//! All hyperbolic helpers are written in terms of `exp(-2|Re z|)` so they stay
//! finite for arguments far out on the real line, where the textbook
//! `sinh`/`cosh` quotients overflow to `inf / inf`.
//!
//! Jacobi polynomials use the standard hypergeometric normalization
//! `P_n^(a,b)(1) = (a+1)_n / n!`, which also fixes the convention for complex
//! parameters and complex argument.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Complex scalar used throughout the crate.
pub type ComplexScalar = Complex64;

const POLE_GUARD: f64 = 1e-300;

#[inline]
pub(crate) fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `exp(z) - 1` without cancellation for small `z`.
pub fn expm1(z: Complex64) -> Complex64 {
    let (x, y) = (z.re, z.im);
    let em1 = x.exp_m1();
    let s = (0.5 * y).sin();
    // e^x cos y - 1 = (e^x - 1) cos y - 2 sin^2(y/2)
    let re = em1 * y.cos() - 2.0 * s * s;
    let im = x.exp() * y.sin();
    c(re, im)
}

/// Hyperbolic tangent, finite for any finite input off its poles.
pub fn tanh(z: Complex64) -> Complex64 {
    if z.re < 0.0 {
        return -tanh(-z);
    }
    let e = (-2.0 * z).exp();
    (1.0 - e) / (1.0 + e)
}

/// Hyperbolic secant, finite for any finite input off its poles.
pub fn sech(z: Complex64) -> Complex64 {
    let z = if z.re < 0.0 { -z } else { z };
    let e1 = (-z).exp();
    2.0 * e1 / (1.0 + e1 * e1)
}

/// `(cosech z, coth z)`.
///
/// Fails with [`Error::Pole`] when `|sinh z|` falls under `1e-300`, i.e. at
/// the true poles `z = i pi l`.
pub fn safe_cosech_coth(z: Complex64) -> Result<(Complex64, Complex64)> {
    let flip = z.re < 0.0;
    let w = if flip { -z } else { z };
    let e2 = (-2.0 * w).exp();
    // 1 - e^{-2w}
    let denom = -expm1(-2.0 * w);
    // |sinh w| = |e^w| |1 - e^{-2w}| / 2
    let sinh_mag = 0.5 * w.re.exp() * denom.norm();
    if !(sinh_mag >= POLE_GUARD) {
        return Err(Error::Pole {
            function: "cosech",
            re: z.re,
            im: z.im,
        });
    }
    let cosech = 2.0 * (-w).exp() / denom;
    let coth = (1.0 + e2) / denom;
    if flip {
        Ok((-cosech, -coth))
    } else {
        Ok((cosech, coth))
    }
}

/// Principal-branch `ln cosh z`, evaluated without overflow.
pub fn ln_cosh(z: Complex64) -> Complex64 {
    let w = if z.re < 0.0 { -z } else { z };
    // cosh w = e^w (1 + e^{-2w}) / 2
    let v = w + (1.0 + (-2.0 * w).exp()).ln() - std::f64::consts::LN_2;
    fold_imag(v)
}

/// Principal-branch `ln sinh z`, evaluated without overflow.
pub fn ln_sinh(z: Complex64) -> Complex64 {
    let (w, extra) = if z.re < 0.0 { (-z, PI) } else { (z, 0.0) };
    // sinh w = e^w (1 - e^{-2w}) / 2
    let v = w + (-expm1(-2.0 * w)).ln() - std::f64::consts::LN_2 + c(0.0, extra);
    fold_imag(v)
}

fn fold_imag(v: Complex64) -> Complex64 {
    let mut im = v.im % (2.0 * PI);
    if im > PI {
        im -= 2.0 * PI;
    } else if im <= -PI {
        im += 2.0 * PI;
    }
    c(v.re, im)
}

/// Gudermannian `gd(z) = arctan(sinh z)` on the principal branch.
///
/// Inside the strip `|Im z| < pi/2` the principal value is analytic, and it is
/// computed there as `2 arctan(tanh(z/2))`, which never overflows. Outside the
/// strip the principal value may jump by `pi`; use [`gudermannian_path`] to get
/// a continuous branch along a path.
pub fn gudermannian(z: Complex64) -> Complex64 {
    if z.im.abs() < FRAC_PI_2 {
        2.0 * tanh(0.5 * z).atan()
    } else {
        z.sinh().atan()
    }
}

/// Gudermannian along a path of points, unwrapped so that consecutive values
/// never jump by a multiple of `pi`.
pub fn gudermannian_path(points: &[Complex64]) -> Vec<Complex64> {
    let mut out: Vec<Complex64> = points.iter().map(|&z| gudermannian(z)).collect();
    unwrap_re(&mut out, PI);
    out
}

/// Removes jumps by multiples of `period` from the real parts of a sequence.
pub fn unwrap_re(values: &mut [Complex64], period: f64) {
    let mut offset = 0.0;
    for i in 1..values.len() {
        let prev = values[i - 1].re;
        let mut cur = values[i].re + offset;
        let jump = ((cur - prev) / period).round();
        if jump != 0.0 {
            offset -= jump * period;
            cur -= jump * period;
        }
        values[i].re = cur;
    }
}

/// Removes jumps by multiples of `period` from the imaginary parts of a sequence.
pub fn unwrap_im(values: &mut [Complex64], period: f64) {
    let mut offset = 0.0;
    for i in 1..values.len() {
        let prev = values[i - 1].im;
        let mut cur = values[i].im + offset;
        let jump = ((cur - prev) / period).round();
        if jump != 0.0 {
            offset -= jump * period;
            cur -= jump * period;
        }
        values[i].im = cur;
    }
}

/// Jacobi polynomial `P_n^(alpha, beta)(z)` by the forward three-term
/// recurrence.
pub fn jacobi_poly(n: usize, alpha: Complex64, beta: Complex64, z: Complex64) -> Result<Complex64> {
    let one = c(1.0, 0.0);
    if n == 0 {
        return Ok(one);
    }
    let ab = alpha + beta;
    let p1 = 0.5 * ((ab + 2.0) * z + (alpha - beta));
    if n == 1 {
        return Ok(p1);
    }
    let scale = 1.0 + ab.norm();
    let (mut prev, mut cur) = (one, p1);
    for k in 2..n + 1 {
        let kf = k as f64;
        let s = 2.0 * kf + ab;
        let denom = 2.0 * kf * (kf + ab) * (s - 2.0);
        if denom.norm() <= 1e-12 * scale * kf {
            return Err(Error::DegenerateRecurrence {
                degree: k,
                alpha_plus_beta_re: ab.re,
                alpha_plus_beta_im: ab.im,
            });
        }
        let a1 = (s - 1.0) * (s * (s - 2.0) * z + alpha * alpha - beta * beta);
        let a2 = 2.0 * (kf + alpha - 1.0) * (kf + beta - 1.0) * s;
        let next = (a1 * cur - a2 * prev) / denom;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Explicit finite sum
    /// `sum_s C(n+a, n-s) C(n+b, s) ((z-1)/2)^s ((z+1)/2)^(n-s)`
    /// with generalized binomials written as rising factorials.
    fn jacobi_series(n: usize, a: Complex64, b: Complex64, z: Complex64) -> Complex64 {
        let mut total = c(0.0, 0.0);
        for s in 0..=n {
            // C(n+a, n-s) = (a+s+1)_{n-s} / (n-s)!
            let mut c1 = c(1.0, 0.0);
            for j in 0..(n - s) {
                c1 *= (a + (s + 1 + j) as f64) / (j + 1) as f64;
            }
            // C(n+b, s) = (b+n-s+1)_s / s!
            let mut c2 = c(1.0, 0.0);
            for j in 0..s {
                c2 *= (b + (n - s + 1 + j) as f64) / (j + 1) as f64;
            }
            total +=
                c1 * c2 * ((z - 1.0) / 2.0).powu(s as u32) * ((z + 1.0) / 2.0).powu((n - s) as u32);
        }
        total
    }

    /// Composite Gauss-Legendre quadrature of `sech` along the straight segment
    /// from 0 to `z`.
    fn sech_path_integral(z: Complex64) -> Complex64 {
        let nodes = [
            (-0.906_179_845_938_664, 0.236_926_885_056_189_1),
            (-0.538_469_310_105_683_1, 0.478_628_670_499_366_5),
            (0.0, 0.568_888_888_888_888_9),
            (0.538_469_310_105_683_1, 0.478_628_670_499_366_5),
            (0.906_179_845_938_664, 0.236_926_885_056_189_1),
        ];
        let panels = 400;
        let mut acc = c(0.0, 0.0);
        for p in 0..panels {
            let t0 = p as f64 / panels as f64;
            let h = 1.0 / panels as f64;
            for &(u, w) in &nodes {
                let t = t0 + 0.5 * h * (u + 1.0);
                let zt = z * t;
                acc += 0.5 * h * w * (1.0 / zt.cosh());
            }
        }
        acc * z
    }

    #[test]
    fn jacobi_low_degrees() {
        let z = c(0.3, -0.7);
        assert_eq!(
            jacobi_poly(0, c(2.0, 1.0), c(-3.0, 0.5), z).unwrap(),
            c(1.0, 0.0)
        );
        let p1 = jacobi_poly(1, c(1.0, 0.0), c(0.0, 0.0), c(0.5, 0.0)).unwrap();
        assert!((p1 - c(1.25, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn jacobi_degree_two_complex_case() {
        let (a, b, z) = (c(-1.5, -2.0), c(1.5, -2.0), c(0.0, 0.3));
        let got = jacobi_poly(2, a, b, z).unwrap();
        let want = jacobi_series(2, a, b, z);
        assert!(
            (got - want).norm() < 1e-12 * want.norm().max(1.0),
            "{got} vs {want}"
        );
    }

    #[test]
    fn jacobi_matches_series_on_random_inputs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let draw = |rng: &mut ChaCha8Rng| c(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
        let mut checked = 0;
        while checked < 100 {
            let (a, b, z) = (draw(&mut rng), draw(&mut rng), draw(&mut rng));
            let n = rng.gen_range(0..=6);
            let Ok(got) = jacobi_poly(n, a, b, z) else {
                continue;
            };
            let want = jacobi_series(n, a, b, z);
            let err = (got - want).norm() / want.norm().max(1.0);
            assert!(err < 1e-10, "n={n} a={a} b={b} z={z}: {got} vs {want}");
            checked += 1;
        }
    }

    #[test]
    fn jacobi_rejects_degenerate_denominator() {
        // alpha + beta = -2 zeroes (2k + a + b - 2) at k = 2
        let err = jacobi_poly(3, c(-1.0, 0.0), c(-1.0, 0.0), c(0.2, 0.0)).unwrap_err();
        assert!(matches!(err, Error::DegenerateRecurrence { degree: 2, .. }));
    }

    #[test]
    fn gudermannian_basics() {
        assert_eq!(gudermannian(c(0.0, 0.0)), c(0.0, 0.0));
        assert!((gudermannian(c(10.0, 0.0)).re - FRAC_PI_2).abs() < 1e-4);
        assert!(gudermannian(c(800.0, 0.1)).is_finite());
        for &z in &[c(0.3, 0.1), c(-2.0, 0.7), c(5.0, -1.2), c(0.01, 0.0)] {
            assert!((gudermannian(-z) + gudermannian(z)).norm() < 1e-12);
        }
    }

    #[test]
    fn gudermannian_equals_principal_arctan_sinh_in_strip() {
        for &z in &[c(0.4, 0.3), c(-1.7, -1.1), c(3.0, 1.5)] {
            assert!((gudermannian(z) - z.sinh().atan()).norm() < 1e-12);
        }
    }

    #[test]
    fn gudermannian_matches_quadrature() {
        let z = c(1.0, -0.2);
        let want = sech_path_integral(z);
        assert!(
            (gudermannian(z) - want).norm() < 1e-12,
            "{} vs {want}",
            gudermannian(z)
        );
    }

    #[test]
    fn gudermannian_derivative_is_sech() {
        let h = 1e-4;
        for &gamma in &[0.0, 0.2, -0.2, 0.7, -0.7] {
            for i in 0..41 {
                let x = -4.0 + 0.2 * i as f64;
                let z = c(x, gamma);
                let d = (gudermannian(z + h) - gudermannian(z - h)) / (2.0 * h);
                assert!((d - sech(z)).norm() < 1e-6, "gamma={gamma} x={x}");
            }
        }
    }

    #[test]
    fn gudermannian_path_is_continuous_beyond_strip() {
        let pts: Vec<_> = (0..400).map(|i| c(-6.0 + 0.03 * i as f64, 2.0)).collect();
        let g = gudermannian_path(&pts);
        for w in g.windows(2) {
            assert!((w[1] - w[0]).norm() < 0.5);
        }
    }

    #[test]
    fn cosech_coth_reference_values() {
        let (cs, ct) = safe_cosech_coth(c(1.0, 0.0)).unwrap();
        assert!((cs.re - 1.0 / 1f64.sinh()).abs() < 1e-15 && cs.im == 0.0);
        assert!((ct.re - 1f64.cosh() / 1f64.sinh()).abs() < 1e-15);

        let z = c(0.0, -PI / 8.0);
        let (cs, _) = safe_cosech_coth(z).unwrap();
        // sinh(-i pi/8) = -i sin(pi/8)  =>  cosech = i / sin(pi/8)
        assert!(cs.re.abs() < 1e-15);
        assert!((cs.im - 1.0 / (PI / 8.0).sin()).abs() < 1e-12);

        let z = c(2.0, -0.3);
        let (cs, ct) = safe_cosech_coth(z).unwrap();
        let (rs, rc) = (1.0 / z.sinh(), z.cosh() / z.sinh());
        assert!((cs - rs).norm() < 1e-14 * rs.norm());
        assert!((ct - rc).norm() < 1e-14 * rc.norm());
    }

    #[test]
    fn cosech_small_argument_relative_accuracy() {
        let z = c(1e-7, 2e-8);
        let (cs, ct) = safe_cosech_coth(z).unwrap();
        // Laurent series: 1/z - z/6, 1/z + z/3
        let rs = 1.0 / z - z / 6.0;
        let rc = 1.0 / z + z / 3.0;
        assert!((cs - rs).norm() < 1e-12 * rs.norm());
        assert!((ct - rc).norm() < 1e-12 * rc.norm());
    }

    #[test]
    fn cosech_poles_are_rejected() {
        assert!(matches!(
            safe_cosech_coth(c(0.0, 0.0)),
            Err(Error::Pole { .. })
        ));
    }

    #[test]
    fn hyperbolics_far_out() {
        let z = c(900.0, 0.3);
        assert!((tanh(z) - 1.0).norm() < 1e-15);
        assert_eq!(sech(z).norm(), 0.0);
        assert!((ln_cosh(z) - (z - std::f64::consts::LN_2)).norm() < 1e-9);
        assert!((ln_sinh(c(-900.0, 0.0)).re - (900.0 - std::f64::consts::LN_2)).abs() < 1e-9);
    }

    #[test]
    fn log_helpers_match_direct_evaluation() {
        for &z in &[c(0.4, 0.2), c(-1.3, -0.5), c(2.0, 0.7)] {
            let a = ln_cosh(z).exp();
            let b = ln_sinh(z).exp();
            assert!((a - z.cosh()).norm() < 1e-13 * z.cosh().norm());
            assert!((b - z.sinh()).norm() < 1e-13 * z.sinh().norm());
        }
    }
}
