//! End-to-end numeric verification and wavefunction diagnostics.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::eigen::DEFAULT_MAX_ITERATIONS;
use super::hamiltonian::{sort_eigenvalues, try_build_hamiltonian, Discretization};
use super::report::{match_spectrum, SpectrumReport, DEFAULT_E_TOL, DEFAULT_IM_TOL};
use crate::error::Result;
use crate::grid::GridFunction;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerifyOptions {
    pub e_tol: f64,
    pub im_tol: f64,
    /// Combine the grid with its refinement to cancel the `dx^2` error.
    pub richardson: bool,
    pub max_iterations: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            e_tol: DEFAULT_E_TOL,
            im_tol: DEFAULT_IM_TOL,
            richardson: true,
            max_iterations: DEFAULT_MAX_ITERATIONS,
        }
    }
}

/// Eigenvalues on a grid, optionally on its refinement, and the values used
/// for matching.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NumericSpectrum {
    pub disc: Discretization,
    pub coarse: Vec<Complex64>,
    pub fine: Option<Vec<Complex64>>,
    pub values: Vec<Complex64>,
    pub hermitian_defect: f64,
}

/// Eigenvalues of the discretized operator. With `richardson`, every coarse
/// eigenvalue with negative real part is paired with the nearest unused
/// eigenvalue on the refined grid and replaced by `(4 fine - coarse)/3`.
pub fn numeric_spectrum<F>(
    potential: F,
    disc: &Discretization,
    richardson: bool,
    max_iterations: usize,
) -> Result<NumericSpectrum>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let h = try_build_hamiltonian(&potential, disc)?;
    let hermitian_defect = h.hermitian_defect();
    let coarse = h.eigenvalues_capped(max_iterations)?;
    if !richardson {
        return Ok(NumericSpectrum {
            disc: *disc,
            values: coarse.clone(),
            coarse,
            fine: None,
            hermitian_defect,
        });
    }
    let fine =
        try_build_hamiltonian(&potential, &disc.refined())?.eigenvalues_capped(max_iterations)?;
    let mut used = vec![false; fine.len()];
    let mut values = Vec::with_capacity(coarse.len());
    for &z in &coarse {
        if z.re >= 0.0 {
            values.push(z);
            continue;
        }
        let best = fine
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .min_by(|a, b| (a.1 - z).norm().total_cmp(&(b.1 - z).norm()));
        match best {
            Some((j, &f)) => {
                used[j] = true;
                values.push((4.0 * f - z) / 3.0);
            }
            None => values.push(z),
        }
    }
    sort_eigenvalues(&mut values);
    Ok(NumericSpectrum {
        disc: *disc,
        coarse,
        fine: Some(fine),
        values,
        hermitian_defect,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verification {
    pub report: SpectrumReport,
    pub numeric: NumericSpectrum,
}

impl Verification {
    pub fn hermitian_defect(&self) -> f64 {
        self.numeric.hermitian_defect
    }
}

pub fn verify_spectrum<F>(
    potential: F,
    analytic: &[f64],
    disc: &Discretization,
    opts: &VerifyOptions,
) -> Result<Verification>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let numeric = numeric_spectrum(potential, disc, opts.richardson, opts.max_iterations)?;
    let report = match_spectrum(&numeric.values, analytic, opts.e_tol, opts.im_tol);
    Ok(Verification { report, numeric })
}

/// Trapezoid-rule `\int |psi|^2 dx`.
pub fn norm_integral(psi: &GridFunction) -> f64 {
    psi.norm_sq()
}

/// `max |-psi'' + V psi - E psi| / ||psi||_inf` over interior points, with the
/// 4th-order second difference.
pub fn schrodinger_residual<F>(potential: F, psi: &GridFunction, energy: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let d2 = psi.second_derivative()?;
    let n = psi.len();
    let mut worst = 0.0f64;
    for j in 2..n - 2 {
        let x = psi.x(j);
        let r = -d2.values[j] + (potential(x)? - energy) * psi.values[j];
        worst = worst.max(r.norm());
    }
    let scale = psi.sup_norm();
    Ok(if scale > 0.0 { worst / scale } else { worst })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Grid;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sech2_well(x: f64) -> Result<Complex64> {
        Ok(c(-2.0 / x.cosh().powi(2), 0.0))
    }

    #[test]
    fn norm_integral_examples() {
        let g = Grid::spanning(0.0, 1.0, 101).unwrap();
        assert!((norm_integral(&GridFunction::from_fn(&g, |_| c(1.0, 0.0))) - 1.0).abs() < 1e-14);
        let g = Grid::spanning(-20.0, 20.0, 8001).unwrap();
        assert!(
            (norm_integral(&GridFunction::from_fn(&g, |x| c(1.0 / x.cosh(), 0.0))) - 2.0).abs()
                < 1e-8
        );
    }

    #[test]
    fn residual_of_textbook_pair() {
        let g = Grid::spanning(-10.0, 10.0, 2001).unwrap();
        let psi = GridFunction::from_fn(&g, |x| c(1.0 / x.cosh(), 0.0));
        assert!(schrodinger_residual(sech2_well, &psi, -1.0).unwrap() < 1e-6);
        assert!(schrodinger_residual(sech2_well, &psi, -0.9).unwrap() > 1e-2);
    }

    #[test]
    fn richardson_improves_sech_well() {
        let d = Discretization::new(-15.0, 15.0, 600).unwrap();
        let raw = numeric_spectrum(sech2_well, &d, false, 60).unwrap();
        let ext = numeric_spectrum(sech2_well, &d, true, 60).unwrap();
        let raw_gap = (raw.values[0] - c(-1.0, 0.0)).norm();
        let ext_gap = (ext.values[0] - c(-1.0, 0.0)).norm();
        assert!(ext_gap < raw_gap / 20.0, "{raw_gap} vs {ext_gap}");
        assert_eq!(raw.hermitian_defect, 0.0);
    }
}
