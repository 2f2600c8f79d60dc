//! C ABI over the `sl2c` library.
//!
//! Every entry point returns an [`Sl2cStatus`]. Results are written through
//! out-pointers, objects live behind opaque handles that the caller frees
//! with the matching `*_free`, and the message of the last failure on the
//! calling thread is available from [`sl2c_last_error_message`]. Panics
//! never cross the boundary; they are reported as [`Sl2cStatus::Panic`].

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, c_int};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_complex::Complex64;
use sl2c::algebra::{self, Branch, FamilyKind, FamilySolution};
use sl2c::models::{
    scarf_map, scarf_spectrum, scarf_wavefunction, ScarfParams, Series, SCARF_DOMAIN,
};
use sl2c::verify::{verify_spectrum, Discretization, SpectrumReport, VerifyOptions};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sl2cComplex {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for Sl2cComplex {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sl2cStatus {
    Ok = 0,
    InvalidArgument = 1,
    Pole = 2,
    NotBound = 3,
    NonConvergence = 4,
    NullPointer = 5,
    BufferTooSmall = 6,
    Numeric = 7,
    Panic = 8,
}

pub const SL2C_FAMILY_I: c_int = 1;
pub const SL2C_FAMILY_II: c_int = 2;
pub const SL2C_FAMILY_III: c_int = 3;
pub const SL2C_BRANCH_UPPER: c_int = 1;
pub const SL2C_BRANCH_LOWER: c_int = -1;
pub const SL2C_SERIES_A: c_int = 0;
pub const SL2C_SERIES_B: c_int = 1;

/// A solved `(F, G)` pair.
pub struct Sl2cFamily {
    inner: FamilySolution,
}

/// Scarf II parameters `(A, B)`.
pub struct Sl2cScarf {
    inner: ScarfParams,
}

/// Outcome of a finite-difference spectrum check.
pub struct Sl2cSpectrumReport {
    inner: SpectrumReport,
    hermitian_defect: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: impl Into<String>) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg.into());
}

struct Failure(Sl2cStatus, String);

impl From<sl2c::Error> for Failure {
    fn from(e: sl2c::Error) -> Self {
        use sl2c::Error as E;
        let status = match &e {
            E::InvalidParameter { .. }
            | E::GridTooShort { .. }
            | E::Dimension(_)
            | E::NotNormalizable { .. } => Sl2cStatus::InvalidArgument,
            E::Pole { .. } => Sl2cStatus::Pole,
            E::NotBoundState { .. } => Sl2cStatus::NotBound,
            E::NoConvergence { .. } => Sl2cStatus::NonConvergence,
            E::NonFinite { .. } | E::DegenerateRecurrence { .. } => Sl2cStatus::Numeric,
        };
        Failure(status, e.to_string())
    }
}

fn fail<T>(status: Sl2cStatus, msg: &str) -> Result<T, Failure> {
    Err(Failure(status, msg.to_string()))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> Sl2cStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => Sl2cStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".to_string());
            set_error(format!("panic: {msg}"));
            Sl2cStatus::Panic
        }
    }
}

unsafe fn out<'a, T>(p: *mut T, name: &str) -> Result<&'a mut T, Failure> {
    p.as_mut()
        .ok_or_else(|| Failure(Sl2cStatus::NullPointer, format!("`{name}` is null")))
}

unsafe fn handle<'a, T>(p: *const T, name: &str) -> Result<&'a T, Failure> {
    p.as_ref()
        .ok_or_else(|| Failure(Sl2cStatus::NullPointer, format!("`{name}` is null")))
}

unsafe fn slice<'a, T>(p: *const T, len: usize, name: &str) -> Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return fail(Sl2cStatus::NullPointer, &format!("`{name}` is null"));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn slice_mut<'a, T>(p: *mut T, len: usize, name: &str) -> Result<&'a mut [T], Failure> {
    if len == 0 {
        return Ok(&mut []);
    }
    if p.is_null() {
        return fail(Sl2cStatus::NullPointer, &format!("`{name}` is null"));
    }
    Ok(std::slice::from_raw_parts_mut(p, len))
}

/// Copies `src` into `(dst, cap)` and stores its length in `len_out`.
/// Fails with `BufferTooSmall` (after storing the length) if it does not fit.
unsafe fn fill<T: Copy>(
    src: &[T],
    dst: *mut T,
    cap: usize,
    len_out: *mut usize,
) -> Result<(), Failure> {
    *out(len_out, "len_out")? = src.len();
    if src.len() > cap {
        return fail(
            Sl2cStatus::BufferTooSmall,
            &format!("buffer holds {cap} values, {} needed", src.len()),
        );
    }
    slice_mut(dst, src.len(), "buffer")?.copy_from_slice(src);
    Ok(())
}

fn series_of(series: c_int) -> Result<Series, Failure> {
    match series {
        SL2C_SERIES_A => Ok(Series::A),
        SL2C_SERIES_B => Ok(Series::B),
        _ => fail(
            Sl2cStatus::InvalidArgument,
            &format!("unknown series {series}"),
        ),
    }
}

/// Copies the last error message of this thread, NUL-terminated and
/// truncated to `cap` bytes, into `buf`. Returns the size needed for the
/// full message including the terminator. `buf` may be null when `cap` is 0.
#[no_mangle]
pub unsafe extern "C" fn sl2c_last_error_message(buf: *mut c_char, cap: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        let bytes = msg.as_bytes();
        if !buf.is_null() && cap > 0 {
            let n = bytes.len().min(cap - 1);
            ptr::copy_nonoverlapping(bytes.as_ptr(), buf.cast::<u8>(), n);
            *buf.add(n) = 0;
        }
        bytes.len() + 1
    })
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn sl2c_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// `E_n = -(m - n - 1/2)^2`. Fails with `NotBound` unless `n < m - 1/2`.
#[no_mangle]
pub unsafe extern "C" fn sl2c_energy(m: f64, n: usize, energy_out: *mut f64) -> Sl2cStatus {
    guard(|| {
        let dst = out(energy_out, "energy_out")?;
        *dst = algebra::energy(m, n)?;
        Ok(())
    })
}

/// Number of bound states of `V_m`.
#[no_mangle]
pub extern "C" fn sl2c_bound_state_count(m: f64) -> usize {
    algebra::bound_state_count(m)
}

/// Creates a family handle. `kind` is one of `SL2C_FAMILY_*`, `branch` one
/// of `SL2C_BRANCH_*` (only used by family III).
#[no_mangle]
pub unsafe extern "C" fn sl2c_family_new(
    kind: c_int,
    b: Sl2cComplex,
    c: f64,
    gamma: f64,
    branch: c_int,
    family_out: *mut *mut Sl2cFamily,
) -> Sl2cStatus {
    guard(|| {
        let dst = out(family_out, "family_out")?;
        *dst = ptr::null_mut();
        let kind = match kind {
            SL2C_FAMILY_I => FamilyKind::I,
            SL2C_FAMILY_II => FamilyKind::II,
            SL2C_FAMILY_III => FamilyKind::III,
            _ => {
                return fail(
                    Sl2cStatus::InvalidArgument,
                    &format!("unknown family kind {kind}"),
                )
            }
        };
        let branch = match branch {
            SL2C_BRANCH_UPPER => Branch::Upper,
            SL2C_BRANCH_LOWER => Branch::Lower,
            _ => {
                return fail(
                    Sl2cStatus::InvalidArgument,
                    &format!("unknown branch {branch}"),
                )
            }
        };
        let fam = FamilySolution::new(kind, Complex64::new(b.re, b.im), c, gamma, branch)?;
        *dst = Box::into_raw(Box::new(Sl2cFamily { inner: fam }));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn sl2c_family_free(family: *mut Sl2cFamily) {
    if !family.is_null() {
        drop(Box::from_raw(family));
    }
}

/// `V_m(x)` of the family.
#[no_mangle]
pub unsafe extern "C" fn sl2c_family_potential(
    family: *const Sl2cFamily,
    m: f64,
    x: f64,
    v_out: *mut Sl2cComplex,
) -> Sl2cStatus {
    guard(|| {
        let fam = handle(family, "family")?;
        let dst = out(v_out, "v_out")?;
        *dst = fam.inner.potential(m, x)?.into();
        Ok(())
    })
}

/// Largest residuals of `F' = 1 - F^2` and `G' = -F G` over `xs`.
#[no_mangle]
pub unsafe extern "C" fn sl2c_family_ode_residual(
    family: *const Sl2cFamily,
    xs: *const f64,
    len: usize,
    f_residual_out: *mut f64,
    g_residual_out: *mut f64,
) -> Sl2cStatus {
    guard(|| {
        let fam = handle(family, "family")?;
        let xs = slice(xs, len, "xs")?;
        let (rf, rg) = fam.inner.ode_residual(xs)?;
        *out(f_residual_out, "f_residual_out")? = rf;
        *out(g_residual_out, "g_residual_out")? = rg;
        Ok(())
    })
}

/// Creates a Scarf II handle. Requires `A + 1/2 > 0` and `B > 0`.
#[no_mangle]
pub unsafe extern "C" fn sl2c_scarf_new(
    a: f64,
    b: f64,
    scarf_out: *mut *mut Sl2cScarf,
) -> Sl2cStatus {
    guard(|| {
        let dst = out(scarf_out, "scarf_out")?;
        *dst = ptr::null_mut();
        let p = ScarfParams::new(a, b)?;
        *dst = Box::into_raw(Box::new(Sl2cScarf { inner: p }));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn sl2c_scarf_free(scarf: *mut Sl2cScarf) {
    if !scarf.is_null() {
        drop(Box::from_raw(scarf));
    }
}

#[no_mangle]
pub unsafe extern "C" fn sl2c_scarf_potential(
    scarf: *const Sl2cScarf,
    x: f64,
    v_out: *mut Sl2cComplex,
) -> Sl2cStatus {
    guard(|| {
        let s = handle(scarf, "scarf")?;
        *out(v_out, "v_out")? = s.inner.potential(x).into();
        Ok(())
    })
}

/// Energies of one series (`SL2C_SERIES_A` or `SL2C_SERIES_B`) in
/// increasing `n`. `len_out` always receives the level count; pass
/// `cap = 0` to query it.
#[no_mangle]
pub unsafe extern "C" fn sl2c_scarf_spectrum(
    scarf: *const Sl2cScarf,
    series: c_int,
    energies: *mut f64,
    cap: usize,
    len_out: *mut usize,
) -> Sl2cStatus {
    guard(|| {
        let s = handle(scarf, "scarf")?;
        let spec = scarf_spectrum(&s.inner);
        let list = match series_of(series)? {
            Series::A => spec.series_a,
            Series::B => spec.series_b,
        };
        fill(&list, energies, cap, len_out)
    })
}

/// Closed-form, unnormalized wavefunction of level `n` of `series` at the
/// `len` points `xs`, written to `psi`.
#[no_mangle]
pub unsafe extern "C" fn sl2c_scarf_wavefunction(
    scarf: *const Sl2cScarf,
    series: c_int,
    n: usize,
    xs: *const f64,
    len: usize,
    psi: *mut Sl2cComplex,
) -> Sl2cStatus {
    guard(|| {
        let s = handle(scarf, "scarf")?;
        let map = scarf_map(&s.inner, series_of(series)?);
        let xs = slice(xs, len, "xs")?;
        let dst = slice_mut(psi, len, "psi")?;
        for (d, &x) in dst.iter_mut().zip(xs) {
            *d = scarf_wavefunction(&map, n, x)?.into();
        }
        Ok(())
    })
}

/// Finite-difference check of the Scarf II spectrum on `[x_min, x_max]` with
/// `n_points` interior nodes. Passing `x_min >= x_max` selects `[-15, 15]`;
/// `richardson != 0` combines the grid with its refinement.
#[no_mangle]
pub unsafe extern "C" fn sl2c_verify_scarf(
    scarf: *const Sl2cScarf,
    x_min: f64,
    x_max: f64,
    n_points: usize,
    richardson: c_int,
    report_out: *mut *mut Sl2cSpectrumReport,
) -> Sl2cStatus {
    guard(|| {
        let s = handle(scarf, "scarf")?;
        let dst = out(report_out, "report_out")?;
        *dst = ptr::null_mut();
        let (lo, hi) = if x_min < x_max {
            (x_min, x_max)
        } else {
            SCARF_DOMAIN
        };
        let disc = Discretization::new(lo, hi, n_points)?;
        let opts = VerifyOptions {
            richardson: richardson != 0,
            ..VerifyOptions::default()
        };
        let analytic = scarf_spectrum(&s.inner).energies();
        let v = verify_spectrum(|x| Ok(s.inner.potential(x)), &analytic, &disc, &opts)?;
        *dst = Box::into_raw(Box::new(Sl2cSpectrumReport {
            hermitian_defect: v.hermitian_defect(),
            inner: v.report,
        }));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn sl2c_report_free(report: *mut Sl2cSpectrumReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Summary of a report. `unmatched` excludes levels absorbed by a coincident
/// level or a split cluster. All out-pointers are optional.
#[no_mangle]
pub unsafe extern "C" fn sl2c_report_summary(
    report: *const Sl2cSpectrumReport,
    matched_out: *mut usize,
    unmatched_out: *mut usize,
    spurious_out: *mut usize,
    max_gap_out: *mut f64,
    max_imag_out: *mut f64,
    hermitian_defect_out: *mut f64,
) -> Sl2cStatus {
    guard(|| {
        let r = handle(report, "report")?;
        let unmatched = r
            .inner
            .unmatched_analytic
            .iter()
            .filter(|u| !u.crossing_collapse)
            .count();
        if let Some(p) = matched_out.as_mut() {
            *p = r.inner.matches.len();
        }
        if let Some(p) = unmatched_out.as_mut() {
            *p = unmatched;
        }
        if let Some(p) = spurious_out.as_mut() {
            *p = r.inner.spurious_numeric.len();
        }
        if let Some(p) = max_gap_out.as_mut() {
            *p = r.inner.max_gap();
        }
        if let Some(p) = max_imag_out.as_mut() {
            *p = r.inner.max_imag;
        }
        if let Some(p) = hermitian_defect_out.as_mut() {
            *p = r.hermitian_defect;
        }
        Ok(())
    })
}

/// 1 if every analytic level was accounted for and no spurious eigenvalue
/// was found, 0 otherwise or when `report` is null.
#[no_mangle]
pub unsafe extern "C" fn sl2c_report_passed(report: *const Sl2cSpectrumReport) -> c_int {
    match report.as_ref() {
        Some(r) => c_int::from(r.inner.all_accounted() && r.inner.spurious_numeric.is_empty()),
        None => 0,
    }
}

/// Matched pairs: analytic energies into `analytic`, eigenvalues into
/// `numeric`, both of capacity `cap`.
#[no_mangle]
pub unsafe extern "C" fn sl2c_report_matches(
    report: *const Sl2cSpectrumReport,
    analytic: *mut f64,
    numeric: *mut Sl2cComplex,
    cap: usize,
    len_out: *mut usize,
) -> Sl2cStatus {
    guard(|| {
        let r = handle(report, "report")?;
        let a: Vec<f64> = r.inner.matches.iter().map(|m| m.analytic).collect();
        let z: Vec<Sl2cComplex> = r.inner.matches.iter().map(|m| m.numeric.into()).collect();
        fill(&a, analytic, cap, len_out)?;
        fill(&z, numeric, cap, len_out)
    })
}
