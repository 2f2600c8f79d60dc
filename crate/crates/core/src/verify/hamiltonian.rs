//! 3-point finite-difference discretization of `-d^2/dx^2 + V(x)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::eigen::{self, CMatrix, DEFAULT_MAX_ITERATIONS};
use crate::error::{Error, Result};

pub const MIN_INTERIOR_POINTS: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
pub enum Boundary {
    #[default]
    Dirichlet,
}

/// `n_points` interior nodes `x_min + j dx`, `j = 1..=n_points`, with
/// `dx = (x_max - x_min)/(n_points + 1)`; the wavefunction vanishes at both
/// endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Discretization {
    pub x_min: f64,
    pub x_max: f64,
    pub n_points: usize,
    pub boundary: Boundary,
}

impl Discretization {
    pub fn new(x_min: f64, x_max: f64, n_points: usize) -> Result<Self> {
        if !x_min.is_finite() || !x_max.is_finite() || !(x_min < x_max) {
            return Err(Error::invalid(
                "x_max",
                format!("need finite x_min < x_max, got [{x_min}, {x_max}]"),
            ));
        }
        if n_points < MIN_INTERIOR_POINTS {
            return Err(Error::GridTooShort {
                len: n_points,
                required: MIN_INTERIOR_POINTS,
            });
        }
        Ok(Self {
            x_min,
            x_max,
            n_points,
            boundary: Boundary::Dirichlet,
        })
    }

    pub fn dx(&self) -> f64 {
        (self.x_max - self.x_min) / (self.n_points + 1) as f64
    }

    /// Interior node `j` (zero-based).
    #[inline]
    pub fn node(&self, j: usize) -> f64 {
        self.x_min + (j + 1) as f64 * self.dx()
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.n_points).map(|j| self.node(j)).collect()
    }

    /// Same interval with `dx` halved: every old node is also a new node.
    pub fn refined(&self) -> Self {
        Self {
            n_points: 2 * self.n_points + 1,
            ..*self
        }
    }
}

/// Complex symmetric tridiagonal Hamiltonian: diagonal `2/dx^2 + V(x_j)`, all
/// off-diagonal entries `-1/dx^2`.
#[derive(Debug, Clone, PartialEq)]
pub struct Hamiltonian {
    pub disc: Discretization,
    pub diag: Vec<Complex64>,
    pub off: f64,
}

pub fn build_hamiltonian(
    potential: impl Fn(f64) -> Complex64,
    d: &Discretization,
) -> Result<Hamiltonian> {
    try_build_hamiltonian(|x| Ok(potential(x)), d)
}

/// As [`build_hamiltonian`] for potentials that can fail (poles).
pub fn try_build_hamiltonian(
    potential: impl Fn(f64) -> Result<Complex64>,
    d: &Discretization,
) -> Result<Hamiltonian> {
    let h2 = 1.0 / (d.dx() * d.dx());
    let mut diag = Vec::with_capacity(d.n_points);
    for j in 0..d.n_points {
        let x = d.node(j);
        let v = potential(x)?;
        if !v.is_finite() {
            return Err(Error::NonFinite {
                context: "potential",
                x,
            });
        }
        diag.push(v + 2.0 * h2);
    }
    Ok(Hamiltonian {
        disc: *d,
        diag,
        off: -h2,
    })
}

impl Hamiltonian {
    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn to_dense(&self) -> CMatrix {
        let n = self.dim();
        let off = Complex64::new(self.off, 0.0);
        CMatrix::from_fn(n, n, |i, j| {
            if i == j {
                self.diag[i]
            } else if i + 1 == j || j + 1 == i {
                off
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    pub fn off_diagonal(&self) -> Vec<Complex64> {
        vec![Complex64::new(self.off, 0.0); self.dim().saturating_sub(1)]
    }

    pub fn trace(&self) -> Complex64 {
        self.diag.iter().sum()
    }

    /// `||M - M^H||_inf`; only the diagonal contributes.
    pub fn hermitian_defect(&self) -> f64 {
        self.diag
            .iter()
            .map(|v| 2.0 * v.im.abs())
            .fold(0.0, f64::max)
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        let n = self.dim();
        (0..n)
            .map(|j| {
                let mut s = self.diag[j] * v[j];
                if j > 0 {
                    s += self.off * v[j - 1];
                }
                if j + 1 < n {
                    s += self.off * v[j + 1];
                }
                s
            })
            .collect()
    }

    pub fn eigenvalues(&self) -> Result<Vec<Complex64>> {
        self.eigenvalues_capped(DEFAULT_MAX_ITERATIONS)
    }

    pub fn eigenvalues_capped(&self, max_iterations: usize) -> Result<Vec<Complex64>> {
        let mut ev =
            eigen::tridiagonal_eigenvalues(&self.diag, &self.off_diagonal(), max_iterations)?;
        sort_eigenvalues(&mut ev);
        Ok(ev)
    }

    /// Unit-norm eigenvector for the eigenvalue estimate `lambda`.
    pub fn eigenvector(&self, lambda: Complex64) -> Result<Vec<Complex64>> {
        eigen::tridiagonal_eigenvector(&self.diag, &self.off_diagonal(), lambda)
    }
}

/// Orders by real part, then imaginary part.
pub fn sort_eigenvalues(ev: &mut [Complex64]) {
    ev.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
}
