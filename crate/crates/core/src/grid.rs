//! Uniform real grids and complex samples on them.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Minimum number of samples carried by a [`GridFunction`].
pub const MIN_GRID_LEN: usize = 5;

/// Uniform grid `x_j = x0 + j dx`, `j = 0..len`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub x0: f64,
    pub dx: f64,
    pub len: usize,
}

impl Grid {
    pub fn new(x0: f64, dx: f64, len: usize) -> Result<Self> {
        if !(dx > 0.0) || !dx.is_finite() || !x0.is_finite() {
            return Err(Error::invalid(
                "dx",
                format!("spacing must be positive and finite, got {dx}"),
            ));
        }
        if len < MIN_GRID_LEN {
            return Err(Error::GridTooShort {
                len,
                required: MIN_GRID_LEN,
            });
        }
        Ok(Self { x0, dx, len })
    }

    /// `len` equally spaced points covering `[x_min, x_max]` inclusive.
    pub fn spanning(x_min: f64, x_max: f64, len: usize) -> Result<Self> {
        if !(x_max > x_min) {
            return Err(Error::invalid(
                "x_max",
                format!("need x_min < x_max, got [{x_min}, {x_max}]"),
            ));
        }
        if len < MIN_GRID_LEN {
            return Err(Error::GridTooShort {
                len,
                required: MIN_GRID_LEN,
            });
        }
        Self::new(x_min, (x_max - x_min) / (len - 1) as f64, len)
    }

    #[inline]
    pub fn x(&self, j: usize) -> f64 {
        self.x0 + j as f64 * self.dx
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.len).map(|j| self.x(j)).collect()
    }

    pub fn x_max(&self) -> f64 {
        self.x(self.len - 1)
    }
}

/// Complex samples of a function on a uniform grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    pub x0: f64,
    pub dx: f64,
    pub values: Vec<Complex64>,
}

impl GridFunction {
    pub fn new(x0: f64, dx: f64, values: Vec<Complex64>) -> Result<Self> {
        Grid::new(x0, dx, values.len())?;
        Ok(Self { x0, dx, values })
    }

    pub fn from_fn(grid: &Grid, mut f: impl FnMut(f64) -> Complex64) -> Self {
        let values = (0..grid.len).map(|j| f(grid.x(j))).collect();
        Self {
            x0: grid.x0,
            dx: grid.dx,
            values,
        }
    }

    pub fn try_from_fn(grid: &Grid, mut f: impl FnMut(f64) -> Result<Complex64>) -> Result<Self> {
        let values = (0..grid.len)
            .map(|j| f(grid.x(j)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            x0: grid.x0,
            dx: grid.dx,
            values,
        })
    }

    pub fn grid(&self) -> Grid {
        Grid {
            x0: self.x0,
            dx: self.dx,
            len: self.values.len(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    #[inline]
    pub fn x(&self, j: usize) -> f64 {
        self.x0 + j as f64 * self.dx
    }

    pub fn with_values(&self, values: Vec<Complex64>) -> Self {
        debug_assert_eq!(values.len(), self.values.len());
        Self {
            x0: self.x0,
            dx: self.dx,
            values,
        }
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Trapezoid-rule `\int |psi|^2 dx`.
    pub fn norm_sq(&self) -> f64 {
        let n = self.values.len();
        if n < 2 {
            return 0.0;
        }
        let inner: f64 = self.values.iter().map(|v| v.norm_sqr()).sum();
        let ends = 0.5 * (self.values[0].norm_sqr() + self.values[n - 1].norm_sqr());
        (inner - ends) * self.dx
    }

    /// Scales to unit trapezoid norm and rotates the global phase so the
    /// sample of largest modulus is real and positive. Near-ties (within a
    /// relative 1e-9) go to the leftmost sample, so the result is idempotent.
    pub fn normalized(&self) -> Result<Self> {
        let norm = self.norm_sq().sqrt();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::NotNormalizable {
                condition: format!("discrete L2 norm is {norm}"),
            });
        }
        let top = self.values.iter().map(|v| v.norm()).fold(0.0, f64::max);
        let pivot = self
            .values
            .iter()
            .copied()
            .find(|v| v.norm() >= top * (1.0 - 1e-9))
            .unwrap_or(Complex64::new(1.0, 0.0));
        let phase = pivot.conj() / pivot.norm();
        let scale = phase / norm;
        Ok(self.with_values(self.values.iter().map(|v| v * scale).collect()))
    }

    /// First derivative with 4th-order central differences; the two points at
    /// each end use one-sided 4th-order stencils.
    pub fn derivative(&self) -> Result<Self> {
        let f = &self.values;
        let n = f.len();
        if n < MIN_GRID_LEN {
            return Err(Error::GridTooShort {
                len: n,
                required: MIN_GRID_LEN,
            });
        }
        let h12 = 12.0 * self.dx;
        let mut d = vec![Complex64::new(0.0, 0.0); n];
        d[0] = (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) / h12;
        d[1] = (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) / h12;
        for j in 2..n - 2 {
            d[j] = (f[j - 2] - 8.0 * f[j - 1] + 8.0 * f[j + 1] - f[j + 2]) / h12;
        }
        d[n - 2] =
            (3.0 * f[n - 1] + 10.0 * f[n - 2] - 18.0 * f[n - 3] + 6.0 * f[n - 4] - f[n - 5]) / h12;
        d[n - 1] = (25.0 * f[n - 1] - 48.0 * f[n - 2] + 36.0 * f[n - 3] - 16.0 * f[n - 4]
            + 3.0 * f[n - 5])
            / h12;
        Ok(self.with_values(d))
    }

    /// Second derivative with the 5-point 4th-order central stencil; the two
    /// points at each end use lower-order one-sided stencils.
    pub fn second_derivative(&self) -> Result<Self> {
        let f = &self.values;
        let n = f.len();
        if n < MIN_GRID_LEN {
            return Err(Error::GridTooShort {
                len: n,
                required: MIN_GRID_LEN,
            });
        }
        let h2 = 12.0 * self.dx * self.dx;
        let mut d = vec![Complex64::new(0.0, 0.0); n];
        d[0] = (35.0 * f[0] - 104.0 * f[1] + 114.0 * f[2] - 56.0 * f[3] + 11.0 * f[4]) / h2;
        d[1] = (11.0 * f[0] - 20.0 * f[1] + 6.0 * f[2] + 4.0 * f[3] - f[4]) / h2;
        for j in 2..n - 2 {
            d[j] = (-f[j - 2] + 16.0 * f[j - 1] - 30.0 * f[j] + 16.0 * f[j + 1] - f[j + 2]) / h2;
        }
        d[n - 2] =
            (11.0 * f[n - 1] - 20.0 * f[n - 2] + 6.0 * f[n - 3] + 4.0 * f[n - 4] - f[n - 5]) / h2;
        d[n - 1] = (35.0 * f[n - 1] - 104.0 * f[n - 2] + 114.0 * f[n - 3] - 56.0 * f[n - 4]
            + 11.0 * f[n - 5])
            / h2;
        Ok(self.with_values(d))
    }
}

/// `1 - |<a, b>| / (|a| |b|)` with the unweighted discrete inner product,
/// conjugate-linear in the first slot. Zero iff the samples are complex
/// multiples of each other.
pub fn proportionality_defect(a: &[Complex64], b: &[Complex64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::Dimension(format!(
            "{} vs {} samples",
            a.len(),
            b.len()
        )));
    }
    let inner: Complex64 = a.iter().zip(b).map(|(x, y)| x.conj() * y).sum();
    let na: f64 = a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    let nb: f64 = b.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    if na == 0.0 || nb == 0.0 {
        return Err(Error::invalid("psi", "zero vector has no direction"));
    }
    Ok((1.0 - inner.norm() / (na * nb)).max(0.0))
}

/// Largest pointwise difference relative to the larger of the two sup norms,
/// restricted to `[skip, len - skip)`.
pub fn relative_sup_diff(a: &[Complex64], b: &[Complex64], skip: usize) -> f64 {
    let n = a.len().min(b.len());
    if n <= 2 * skip {
        return 0.0;
    }
    let range = skip..n - skip;
    let mut diff = 0.0f64;
    let mut scale = 0.0f64;
    for j in range {
        diff = diff.max((a[j] - b[j]).norm());
        scale = scale.max(a[j].norm()).max(b[j].norm());
    }
    if scale == 0.0 {
        diff
    } else {
        diff / scale
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn rejects_short_or_bad_grids() {
        assert!(matches!(
            Grid::new(0.0, 0.1, 4),
            Err(Error::GridTooShort { .. })
        ));
        assert!(Grid::new(0.0, 0.0, 10).is_err());
        assert!(Grid::spanning(1.0, 1.0, 10).is_err());
    }

    #[test]
    fn stencils_are_fourth_order() {
        let grid = Grid::spanning(-1.0, 1.0, 201).unwrap();
        let f = GridFunction::from_fn(&grid, |x| c(x.sin(), (2.0 * x).cos()));
        let d1 = f.derivative().unwrap();
        let d2 = f.second_derivative().unwrap();
        for j in 0..grid.len {
            let x = grid.x(j);
            assert!((d1.values[j] - c(x.cos(), -2.0 * (2.0 * x).sin())).norm() < 1e-7);
            let tol = if j < 2 || j + 2 >= grid.len {
                1e-4
            } else {
                1e-7
            };
            assert!(
                (d2.values[j] - c(-x.sin(), -4.0 * (2.0 * x).cos())).norm() < tol,
                "j={j}"
            );
        }
    }

    #[test]
    fn normalization_fixes_norm_and_phase() {
        let grid = Grid::spanning(-10.0, 10.0, 801).unwrap();
        let f = GridFunction::from_fn(&grid, |x| c(0.0, 3.0) / x.cosh());
        let g = f.normalized().unwrap();
        assert!((g.norm_sq() - 1.0).abs() < 1e-14);
        let peak = g.values[400];
        assert!(peak.im.abs() < 1e-15 && peak.re > 0.0);
    }

    #[test]
    fn defect_is_zero_for_collinear_samples() {
        let a: Vec<_> = (0..20).map(|j| c(j as f64, 1.0)).collect();
        let b: Vec<_> = a.iter().map(|v| v * c(0.3, -2.0)).collect();
        assert!(proportionality_defect(&a, &b).unwrap() < 1e-15);
        let d: Vec<_> = (0..20).map(|j| c((j as f64).sin(), 0.5)).collect();
        assert!(proportionality_defect(&a, &d).unwrap() > 1e-2);
    }
}
