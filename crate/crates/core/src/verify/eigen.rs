//! Eigenvalues of non-Hermitian complex matrices.
//!
//! Two independent routes:
//!
//! * [`eigen_nonhermitian`]: general dense matrices. Diagonal balancing,
//!   Householder reduction to upper Hessenberg form, then single-shift complex
//!   QR with Wilkinson shifts and deflation. Eigenvectors come from the
//!   triangular Schur factor by back substitution. `O(n^3)`.
//! * [`tridiagonal_eigenvalues`]: complex *symmetric* tridiagonal matrices,
//!   which is what a 3-point discretization of `-d^2/dx^2 + V` with complex `V`
//!   produces. Implicit QL with complex orthogonal (not unitary) plane
//!   rotations keeps the matrix tridiagonal and symmetric, so all eigenvalues
//!   cost `O(n^2)`.

use num_complex::Complex64;

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Default per-eigenvalue iteration cap.
pub const DEFAULT_MAX_ITERATIONS: usize = 60;

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn conj(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)].conj())
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn norm_frobenius(&self) -> f64 {
        self.data.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)] - other[(i, j)])
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Eigenvalues and, when requested, unit-norm right eigenvectors.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub values: Vec<Complex64>,
    pub vectors: Option<Vec<Vec<Complex64>>>,
}

impl EigenDecomposition {
    /// `|M v - lambda v| / (|M| |v|)` for eigenpair `index`, in Frobenius norm.
    pub fn backward_error(&self, m: &CMatrix, index: usize) -> Option<f64> {
        let v = self.vectors.as_ref()?.get(index)?;
        let lambda = self.values[index];
        let mv = m.mul_vec(v);
        let r: f64 = mv
            .iter()
            .zip(v)
            .map(|(a, b)| (a - lambda * b).norm_sqr())
            .sum::<f64>()
            .sqrt();
        let vn: f64 = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        Some(r / (m.norm_frobenius() * vn))
    }
}

/// Options for [`eigen_nonhermitian`].
#[derive(Debug, Clone, Copy)]
pub struct EigenOptions {
    pub vectors: bool,
    pub balance: bool,
    pub max_iterations: usize,
}

impl Default for EigenOptions {
    fn default() -> Self {
        Self {
            vectors: false,
            balance: true,
            max_iterations: DEFAULT_MAX_ITERATIONS,
        }
    }
}

/// All eigenvalues (and optionally eigenvectors) of a general complex matrix.
pub fn eigen_nonhermitian(m: &CMatrix, opts: EigenOptions) -> Result<EigenDecomposition> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "{}x{} matrix is not square",
            m.nrows(),
            m.ncols()
        )));
    }
    if !m.is_finite() {
        return Err(Error::invalid("matrix", "entries must be finite"));
    }
    let n = m.nrows();
    if n == 0 {
        return Ok(EigenDecomposition {
            values: vec![],
            vectors: opts.vectors.then(Vec::new),
        });
    }
    let mut h = m.clone();
    let scale = if opts.balance {
        balance(&mut h)
    } else {
        vec![1.0; n]
    };
    let mut q = opts.vectors.then(|| CMatrix::identity(n));
    hessenberg(&mut h, q.as_mut());
    let values = hessenberg_qr(&mut h, q.as_mut(), opts.max_iterations)?;
    let vectors = q.map(|q| schur_vectors_to_eigenvectors(&h, &q, &scale));
    Ok(EigenDecomposition { values, vectors })
}

/// Scales rows/columns by powers of two so that each row and column have
/// comparable norms. Returns the diagonal similarity `D` with `A <- D^-1 A D`.
fn balance(a: &mut CMatrix) -> Vec<f64> {
    const RADIX: f64 = 2.0;
    let n = a.nrows();
    let mut d = vec![1.0; n];
    let mut converged = false;
    while !converged {
        converged = true;
        for i in 0..n {
            let mut col = 0.0;
            let mut row = 0.0;
            for j in 0..n {
                if j != i {
                    col += a[(j, i)].l1_norm();
                    row += a[(i, j)].l1_norm();
                }
            }
            if col == 0.0 || row == 0.0 {
                continue;
            }
            let total = col + row;
            let mut f = 1.0;
            let mut g = row / RADIX;
            while col < g {
                f *= RADIX;
                col *= RADIX * RADIX;
            }
            g = row * RADIX;
            while col > g {
                f /= RADIX;
                col /= RADIX * RADIX;
            }
            if (col + row) / f < 0.95 * total {
                converged = false;
                d[i] *= f;
                for j in 0..n {
                    a[(i, j)] /= f;
                    a[(j, i)] *= f;
                }
            }
        }
    }
    d
}

/// Householder reduction to upper Hessenberg form, accumulating `Q` if given.
fn hessenberg(a: &mut CMatrix, mut q: Option<&mut CMatrix>) {
    let n = a.nrows();
    if n < 3 {
        return;
    }
    let mut v = vec![ZERO; n];
    for k in 0..n - 2 {
        let alpha_norm: f64 = (k + 1..n).map(|i| a[(i, k)].norm_sqr()).sum::<f64>().sqrt();
        if alpha_norm == 0.0 {
            continue;
        }
        let x0 = a[(k + 1, k)];
        let phase = if x0.norm() == 0.0 {
            ONE
        } else {
            x0 / x0.norm()
        };
        let alpha = -phase * alpha_norm;
        v.fill(ZERO);
        for i in k + 1..n {
            v[i] = a[(i, k)];
        }
        v[k + 1] -= alpha;
        let vnorm: f64 = (k + 1..n).map(|i| v[i].norm_sqr()).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            continue;
        }
        for vi in &mut v[k + 1..n] {
            *vi /= vnorm;
        }
        // A <- (I - 2 v v^H) A
        for j in 0..n {
            let s: Complex64 = (k + 1..n).map(|i| v[i].conj() * a[(i, j)]).sum();
            for i in k + 1..n {
                a[(i, j)] -= 2.0 * v[i] * s;
            }
        }
        // A <- A (I - 2 v v^H)
        for i in 0..n {
            let s: Complex64 = (k + 1..n).map(|j| a[(i, j)] * v[j]).sum();
            for j in k + 1..n {
                a[(i, j)] -= 2.0 * s * v[j].conj();
            }
        }
        if let Some(q) = q.as_deref_mut() {
            for i in 0..n {
                let s: Complex64 = (k + 1..n).map(|j| q[(i, j)] * v[j]).sum();
                for j in k + 1..n {
                    q[(i, j)] -= 2.0 * s * v[j].conj();
                }
            }
        }
        for i in k + 2..n {
            a[(i, k)] = ZERO;
        }
    }
}

/// Rotation `[[c, s], [-conj(s), c]]` with real `c` mapping `(a, b)` to `(r, 0)`.
#[inline]
fn givens(a: Complex64, b: Complex64) -> (f64, Complex64) {
    let an = a.norm();
    let bn = b.norm();
    if bn == 0.0 {
        return (1.0, ZERO);
    }
    if an == 0.0 {
        return (0.0, ONE);
    }
    let r = an.hypot(bn);
    let c = an / r;
    let s = (a / an) * b.conj() / r;
    (c, s)
}

/// Complex Schur form of an upper Hessenberg matrix by shifted QR.
///
/// With `z` present the whole matrix is kept triangular and the rotations are
/// accumulated; otherwise only the active window is updated.
fn hessenberg_qr(
    h: &mut CMatrix,
    mut z: Option<&mut CMatrix>,
    max_iterations: usize,
) -> Result<Vec<Complex64>> {
    let n = h.nrows();
    let full = z.is_some();
    let mut values = vec![ZERO; n];
    let eps = f64::EPSILON;
    let norm = h.norm_inf().max(f64::MIN_POSITIVE);
    let mut hi = n as isize - 1;
    let mut iter = 0usize;
    let mut rot: Vec<(f64, Complex64)> = Vec::with_capacity(n);
    while hi >= 0 {
        let hiu = hi as usize;
        // locate the active block [lo, hi]
        let mut lo = hiu;
        while lo > 0 {
            let s = h[(lo - 1, lo - 1)].l1_norm() + h[(lo, lo)].l1_norm();
            let s = if s == 0.0 { norm } else { s };
            if h[(lo, lo - 1)].l1_norm() <= eps * s {
                h[(lo, lo - 1)] = ZERO;
                break;
            }
            lo -= 1;
        }
        if lo == hiu {
            values[hiu] = h[(hiu, hiu)];
            hi -= 1;
            iter = 0;
            continue;
        }
        iter += 1;
        if iter > max_iterations {
            return Err(Error::NoConvergence {
                index: hiu,
                iterations: max_iterations,
            });
        }
        let mu = if iter.is_multiple_of(11) {
            // exceptional shift
            h[(hiu, hiu)] + Complex64::new(h[(hiu, hiu - 1)].l1_norm(), 0.0)
        } else {
            let a = h[(hiu - 1, hiu - 1)];
            let b = h[(hiu - 1, hiu)];
            let c = h[(hiu, hiu - 1)];
            let d = h[(hiu, hiu)];
            let half = 0.5 * (a - d);
            let disc = (half * half + b * c).sqrt();
            let m1 = 0.5 * (a + d) + disc;
            let m2 = 0.5 * (a + d) - disc;
            if (m1 - d).norm() < (m2 - d).norm() {
                m1
            } else {
                m2
            }
        };
        let col_end = if full { n } else { hiu + 1 };
        let row_start = if full { 0 } else { lo };
        for k in lo..=hiu {
            h[(k, k)] -= mu;
        }
        rot.clear();
        for k in lo..hiu {
            let (c, s) = givens(h[(k, k)], h[(k + 1, k)]);
            rot.push((c, s));
            for j in k..col_end {
                let x = h[(k, j)];
                let y = h[(k + 1, j)];
                h[(k, j)] = c * x + s * y;
                h[(k + 1, j)] = -s.conj() * x + c * y;
            }
            h[(k + 1, k)] = ZERO;
        }
        for (idx, &(c, s)) in rot.iter().enumerate() {
            let k = lo + idx;
            let row_end = (k + 2).min(hiu + 1);
            for i in row_start..row_end {
                let x = h[(i, k)];
                let y = h[(i, k + 1)];
                h[(i, k)] = c * x + s.conj() * y;
                h[(i, k + 1)] = -s * x + c * y;
            }
            if let Some(z) = z.as_deref_mut() {
                for i in 0..n {
                    let x = z[(i, k)];
                    let y = z[(i, k + 1)];
                    z[(i, k)] = c * x + s.conj() * y;
                    z[(i, k + 1)] = -s * x + c * y;
                }
            }
        }
        for k in lo..=hiu {
            h[(k, k)] += mu;
        }
    }
    Ok(values)
}

fn schur_vectors_to_eigenvectors(t: &CMatrix, q: &CMatrix, scale: &[f64]) -> Vec<Vec<Complex64>> {
    let n = t.nrows();
    let small = f64::EPSILON * t.norm_inf().max(f64::MIN_POSITIVE);
    let mut out = Vec::with_capacity(n);
    let mut y = vec![ZERO; n];
    for k in 0..n {
        let lambda = t[(k, k)];
        for v in y.iter_mut() {
            *v = ZERO;
        }
        y[k] = ONE;
        for j in (0..k).rev() {
            let s: Complex64 = (j + 1..=k).map(|i| t[(j, i)] * y[i]).sum();
            let mut d = t[(j, j)] - lambda;
            if d.norm() < small {
                d = Complex64::new(small, 0.0);
            }
            y[j] = -s / d;
        }
        let mut v: Vec<Complex64> = (0..n)
            .map(|i| (0..=k).map(|j| q[(i, j)] * y[j]).sum::<Complex64>() * scale[i])
            .collect();
        let nv: f64 = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if nv > 0.0 {
            for x in v.iter_mut() {
                *x /= nv;
            }
        }
        out.push(v);
    }
    out
}

/// All eigenvalues of the complex symmetric tridiagonal matrix with diagonal
/// `diag` and off-diagonal `off` (`off.len() == diag.len() - 1`).
pub fn tridiagonal_eigenvalues(
    diag: &[Complex64],
    off: &[Complex64],
    max_iterations: usize,
) -> Result<Vec<Complex64>> {
    let n = diag.len();
    if n == 0 {
        return Ok(vec![]);
    }
    if off.len() + 1 != n {
        return Err(Error::Dimension(format!(
            "diag {} vs off-diagonal {}",
            n,
            off.len()
        )));
    }
    if diag.iter().chain(off).any(|v| !v.is_finite()) {
        return Err(Error::invalid("matrix", "entries must be finite"));
    }
    let mut d = diag.to_vec();
    let mut e: Vec<Complex64> = off.to_vec();
    e.push(ZERO);
    let eps = f64::EPSILON;
    for l in 0..n {
        let mut iter = 0usize;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].l1_norm() + d[m + 1].l1_norm();
                if e[m].l1_norm() <= eps * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > max_iterations {
                return Err(Error::NoConvergence {
                    index: l,
                    iterations: max_iterations,
                });
            }
            // Wilkinson-type shift from the leading 2x2 block
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = (g * g + ONE).sqrt();
            let gr = if (g + r).norm() >= (g - r).norm() {
                g + r
            } else {
                g - r
            };
            g = if iter.is_multiple_of(13) {
                // exceptional shift
                d[m] - d[l] + Complex64::new(e[l].norm(), 0.0)
            } else {
                d[m] - d[l] + e[l] / gr
            };
            let mut s = ONE;
            let mut c = ONE;
            let mut p = ZERO;
            let mut i = m;
            let mut broke = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = (f * f + g * g).sqrt();
                e[i + 1] = r;
                if r.l1_norm() <= f64::MIN_POSITIVE * (f.l1_norm() + g.l1_norm()).max(1.0) {
                    d[i + 1] -= p;
                    e[m] = ZERO;
                    broke = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if broke {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = ZERO;
        }
    }
    Ok(d)
}

/// Eigenvector of a complex symmetric tridiagonal matrix for an eigenvalue
/// estimate `lambda`, by inverse iteration. Returned with unit 2-norm.
pub fn tridiagonal_eigenvector(
    diag: &[Complex64],
    off: &[Complex64],
    lambda: Complex64,
) -> Result<Vec<Complex64>> {
    let n = diag.len();
    if off.len() + 1 != n {
        return Err(Error::Dimension(format!(
            "diag {} vs off-diagonal {}",
            n,
            off.len()
        )));
    }
    let scale = diag.iter().map(|v| v.norm()).fold(0.0, f64::max)
        + 2.0 * off.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let sigma = lambda + Complex64::new(scale * 1e-13, scale * 1e-13);
    let shifted: Vec<Complex64> = diag.iter().map(|d| d - sigma).collect();
    let lu = TridiagonalLu::factor(off, &shifted, off);
    let mut x: Vec<Complex64> = (0..n)
        .map(|i| Complex64::new(1.0, 0.1 * ((i % 7) as f64)))
        .collect();
    for _ in 0..3 {
        x = lu.solve(&x);
        let nx: f64 = x.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
        if !(nx > 0.0) || !nx.is_finite() {
            return Err(Error::NonFinite {
                context: "inverse iteration",
                x: lambda.re,
            });
        }
        for v in x.iter_mut() {
            *v /= nx;
        }
    }
    Ok(x)
}

/// LU with partial pivoting of a general tridiagonal matrix.
struct TridiagonalLu {
    dl: Vec<Complex64>,
    d: Vec<Complex64>,
    du: Vec<Complex64>,
    du2: Vec<Complex64>,
    swapped: Vec<bool>,
}

impl TridiagonalLu {
    fn factor(sub: &[Complex64], diag: &[Complex64], sup: &[Complex64]) -> Self {
        let n = diag.len();
        let mut dl = sub.to_vec();
        let mut d = diag.to_vec();
        let mut du = sup.to_vec();
        let mut du2 = vec![ZERO; n.saturating_sub(2)];
        let mut swapped = vec![false; n.saturating_sub(1)];
        let tiny = f64::MIN_POSITIVE.sqrt();
        for i in 0..n.saturating_sub(1) {
            if d[i].l1_norm() >= dl[i].l1_norm() {
                if d[i].l1_norm() < tiny {
                    d[i] = Complex64::new(tiny, 0.0);
                }
                let fact = dl[i] / d[i];
                dl[i] = fact;
                d[i + 1] -= fact * du[i];
            } else {
                let fact = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = fact;
                let temp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = temp - fact * d[i + 1];
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] = -fact * du[i + 1];
                }
                swapped[i] = true;
            }
        }
        if n > 0 && d[n - 1].l1_norm() < tiny {
            d[n - 1] = Complex64::new(tiny, 0.0);
        }
        Self {
            dl,
            d,
            du,
            du2,
            swapped,
        }
    }

    fn solve(&self, b: &[Complex64]) -> Vec<Complex64> {
        let n = self.d.len();
        let mut x = b.to_vec();
        for i in 0..n.saturating_sub(1) {
            if self.swapped[i] {
                x.swap(i, i + 1);
            }
            x[i + 1] = x[i + 1] - self.dl[i] * x[i];
        }
        for i in (0..n).rev() {
            let mut s = x[i];
            if i + 1 < n {
                s -= self.du[i] * x[i + 1];
            }
            if i + 2 < n {
                s -= self.du2[i] * x[i + 2];
            }
            x[i] = s / self.d[i];
        }
        x
    }
}
