//! C ABI over `monopole_dirac`.
//!
//! Every entry point returns an [`MdStatus`]; results go through out
//! pointers. On failure `md_last_error_message` describes the error for the
//! calling thread. Objects behind opaque handles are released with the
//! matching `*_free` function.

// NaN must fail these range checks.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use monopole_dirac::analytic::{
    hmw_phase, nonrel_energy_variant, relativistic_energy, settings_table, NonRelVariant,
    SpectrumResult, SpinorField,
};
use monopole_dirac::laguerre::laguerre;
use monopole_dirac::oracle::{channel_agreement, AgreementRow};
use monopole_dirac::sweep::{figure_spec, run_sweep, SweepTable};
use monopole_dirac::{Error, HalfInteger, PhysicalParameters, QuantumState, Sign};

/// Result code of every call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MdStatus {
    Ok = 0,
    InvalidParameter = 1,
    DegenerateChannel = 2,
    NotBound = 3,
    ContinuumEdge = 4,
    SpectrumDivergence = 5,
    QuadratureUnderresolved = 6,
    MeshTooCoarse = 7,
    DomainTooSmall = 8,
    Io = 9,
    Format = 10,
    NullPointer = 11,
    IndexOutOfRange = 12,
    Panic = 13,
}

impl MdStatus {
    fn of(e: &Error) -> Self {
        match e {
            Error::InvalidParameter(_) => MdStatus::InvalidParameter,
            Error::DegenerateChannel { .. } => MdStatus::DegenerateChannel,
            Error::NotBound { .. } => MdStatus::NotBound,
            Error::ContinuumEdge => MdStatus::ContinuumEdge,
            Error::SpectrumDivergence => MdStatus::SpectrumDivergence,
            Error::QuadratureUnderresolved { .. } => MdStatus::QuadratureUnderresolved,
            Error::MeshTooCoarse { .. } => MdStatus::MeshTooCoarse,
            Error::DomainTooSmall { .. } => MdStatus::DomainTooSmall,
            Error::Io { .. } => MdStatus::Io,
            Error::Format { .. } => MdStatus::Format,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct MdParams {
    pub m0: f64,
    pub c: f64,
    pub hbar: f64,
    /// Signed dipole moment.
    pub d: f64,
    pub lambda_m: f64,
    pub kappa: f64,
}

/// `mj_numerator` is 2m_j (odd); `s` and `branch` are +1 or −1.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct MdState {
    pub n: u32,
    pub mj_numerator: i32,
    pub s: i32,
    pub branch: i32,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct MdSpectrum {
    pub energy: f64,
    pub binding_energy: f64,
    pub eta: f64,
    /// NaN at the continuum edge.
    pub z0: f64,
    pub xi: f64,
    pub m_s: f64,
    pub rho0: f64,
    pub continuum_edge: bool,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct MdSettingRow {
    pub setting: u8,
    pub mj_numerator: i32,
    pub s: i32,
    pub sigma: i32,
    pub spectrum: MdSpectrum,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MdNonRelVariant {
    Printed = 0,
    Absolute = 1,
    Exact = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct MdNonRel {
    pub epsilon: f64,
    pub l: f64,
    pub eta_bar: f64,
    pub denominator: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct MdSpinorValue {
    pub upper_re: f64,
    pub upper_im: f64,
    pub lower_re: f64,
    pub lower_im: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct MdOracleRow {
    pub n: u32,
    pub eta2_analytic: f64,
    pub lambda: f64,
    pub extrapolated: f64,
    pub relative_error: f64,
    pub mesh_estimate: f64,
    pub sign_changes: u32,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct MdSweepRow {
    pub axis_value: f64,
    pub n: u32,
    pub energy: f64,
}

/// A normalized bound-state spinor.
pub struct MdSpinor {
    field: SpinorField,
}

/// Oracle eigenvalues for one channel.
pub struct MdOracleResult {
    rows: Vec<AgreementRow>,
}

/// A finished energy sweep.
pub struct MdSweep {
    table: SweepTable,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Fail(MdStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(MdStatus::of(&e), e.to_string())
    }
}

fn invalid(msg: &str) -> Fail {
    Fail(MdStatus::InvalidParameter, msg.to_string())
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> MdStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error(String::new());
            MdStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal panic: {msg}"));
            MdStatus::Panic
        }
    }
}

unsafe fn arg<'a, T>(p: *const T, name: &str) -> Result<&'a T, Fail> {
    p.as_ref()
        .ok_or_else(|| Fail(MdStatus::NullPointer, format!("{name} is null")))
}

unsafe fn out<'a, T>(p: *mut T, name: &str) -> Result<&'a mut T, Fail> {
    p.as_mut()
        .ok_or_else(|| Fail(MdStatus::NullPointer, format!("{name} is null")))
}

fn sign(v: i32, name: &str) -> Result<Sign, Fail> {
    match v {
        1 => Ok(Sign::Plus),
        -1 => Ok(Sign::Minus),
        _ => Err(invalid(&format!("{name} must be +1 or -1, got {v}"))),
    }
}

fn params(p: &MdParams) -> Result<PhysicalParameters, Fail> {
    Ok(PhysicalParameters::new(p.m0, p.c, p.hbar, p.d, p.lambda_m, p.kappa)?)
}

fn state(q: &MdState) -> Result<QuantumState, Fail> {
    Ok(QuantumState::new(
        q.n,
        HalfInteger::from_numerator(q.mj_numerator)?,
        sign(q.s, "s")?,
        sign(q.branch, "branch")?,
    ))
}

fn spectrum(r: &SpectrumResult) -> MdSpectrum {
    MdSpectrum {
        energy: r.energy,
        binding_energy: r.binding_energy,
        eta: r.eta,
        z0: r.z0.unwrap_or(f64::NAN),
        xi: r.derived.xi,
        m_s: r.derived.m_s,
        rho0: r.derived.rho0,
        continuum_edge: r.continuum_edge,
    }
}

/// Message for the last failed call on this thread; empty after a success.
/// Valid until the next call from the same thread.
#[no_mangle]
pub extern "C" fn md_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Static name of an `MdStatus` value.
#[no_mangle]
pub extern "C" fn md_status_name(status: i32) -> *const c_char {
    let s: &'static CStr = match status {
        0 => c"ok",
        1 => c"invalid parameter",
        2 => c"degenerate channel",
        3 => c"not bound",
        4 => c"continuum edge",
        5 => c"spectrum divergence",
        6 => c"quadrature underresolved",
        7 => c"mesh too coarse",
        8 => c"domain too small",
        9 => c"io error",
        10 => c"format error",
        11 => c"null pointer",
        12 => c"index out of range",
        13 => c"internal panic",
        _ => c"unknown status",
    };
    s.as_ptr()
}

/// E±, η and the derived channel quantities for one state.
///
/// # Safety
/// Pointers must be null or valid for the pointee type.
#[no_mangle]
pub unsafe extern "C" fn md_relativistic_energy(
    params_in: *const MdParams,
    state_in: *const MdState,
    result: *mut MdSpectrum,
) -> MdStatus {
    guard(|| {
        let p = params(arg(params_in, "params")?)?;
        let q = state(arg(state_in, "state")?)?;
        let out = out(result, "result")?;
        *out = spectrum(&relativistic_energy(&p, &q)?);
        Ok(())
    })
}

/// −4π dλ_m/(ħc).
///
/// # Safety
/// Pointers must be null or valid for the pointee type.
#[no_mangle]
pub unsafe extern "C" fn md_hmw_phase(params_in: *const MdParams, phase: *mut f64) -> MdStatus {
    guard(|| {
        let p = params(arg(params_in, "params")?)?;
        *out(phase, "phase")? = hmw_phase(&p);
        Ok(())
    })
}

/// The eight (m_j sign, s, σ) settings; `rows` must hold 8 entries.
///
/// # Safety
/// `rows` must be null or point to 8 writable `MdSettingRow`s.
#[no_mangle]
pub unsafe extern "C" fn md_settings_table(
    params_in: *const MdParams,
    n: u32,
    mj_abs_numerator: i32,
    rows: *mut MdSettingRow,
) -> MdStatus {
    guard(|| {
        let p = params(arg(params_in, "params")?)?;
        if rows.is_null() {
            return Err(Fail(MdStatus::NullPointer, "rows is null".into()));
        }
        let table = settings_table(&p, n, HalfInteger::from_numerator(mj_abs_numerator)?)?;
        let out = std::slice::from_raw_parts_mut(rows, 8);
        for (dst, src) in out.iter_mut().zip(table.iter()) {
            *dst = MdSettingRow {
                setting: src.setting,
                mj_numerator: src.mj.numerator(),
                s: src.s.value() as i32,
                sigma: src.sigma.value() as i32,
                spectrum: spectrum(&src.spectrum),
            };
        }
        Ok(())
    })
}

/// ε_{n,m} with the denominator chosen by an `MdNonRelVariant` value.
///
/// # Safety
/// Pointers must be null or valid for the pointee type.
#[no_mangle]
pub unsafe extern "C" fn md_nonrel_energy(
    params_in: *const MdParams,
    n: u32,
    m: i64,
    variant: i32,
    result: *mut MdNonRel,
) -> MdStatus {
    guard(|| {
        let p = params(arg(params_in, "params")?)?;
        let v = match variant {
            x if x == MdNonRelVariant::Printed as i32 => NonRelVariant::Printed,
            x if x == MdNonRelVariant::Absolute as i32 => NonRelVariant::Absolute,
            x if x == MdNonRelVariant::Exact as i32 => NonRelVariant::Exact,
            other => return Err(invalid(&format!("unknown variant {other}"))),
        };
        let r = nonrel_energy_variant(&p, n, m, v)?;
        *out(result, "result")? = MdNonRel {
            epsilon: r.epsilon,
            l: r.l,
            eta_bar: r.eta_bar,
            denominator: r.denominator,
        };
        Ok(())
    })
}

/// L_n^α(x); zero for n < 0.
///
/// # Safety
/// `value` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn md_laguerre(n: i64, alpha: f64, x: f64, value: *mut f64) -> MdStatus {
    guard(|| {
        if !(alpha > -1.0) || !x.is_finite() {
            return Err(invalid("need alpha > -1 and finite x"));
        }
        *out(value, "value")? = laguerre(n, alpha, x);
        Ok(())
    })
}

/// Builds the normalized spinor of a bound state.
///
/// # Safety
/// Pointers must be null or valid for the pointee type.
#[no_mangle]
pub unsafe extern "C" fn md_spinor_new(
    params_in: *const MdParams,
    state_in: *const MdState,
    handle: *mut *mut MdSpinor,
) -> MdStatus {
    guard(|| {
        let slot = out(handle, "handle")?;
        *slot = ptr::null_mut();
        let p = params(arg(params_in, "params")?)?;
        let q = state(arg(state_in, "state")?)?;
        let spec = relativistic_energy(&p, &q)?;
        let field = SpinorField::new(&p, &q, &spec)?;
        *slot = Box::into_raw(Box::new(MdSpinor { field }));
        Ok(())
    })
}

/// Ψ_D(t, ρ, θ).
///
/// # Safety
/// `handle` must come from `md_spinor_new` and not be freed.
#[no_mangle]
pub unsafe extern "C" fn md_spinor_eval(
    handle: *const MdSpinor,
    t: f64,
    rho: f64,
    theta: f64,
    value: *mut MdSpinorValue,
) -> MdStatus {
    guard(|| {
        let h = arg(handle, "handle")?;
        if !(rho >= 0.0) {
            return Err(invalid("rho must be non-negative"));
        }
        let v = h.field.eval(t, rho, theta);
        *out(value, "value")? = MdSpinorValue {
            upper_re: v.upper.re,
            upper_im: v.upper.im,
            lower_re: v.lower.re,
            lower_im: v.lower.im,
        };
        Ok(())
    })
}

/// Normalized radial function R_s(ρ), `s` = +1 or −1.
///
/// # Safety
/// `handle` must come from `md_spinor_new` and not be freed.
#[no_mangle]
pub unsafe extern "C" fn md_spinor_radial(
    handle: *const MdSpinor,
    s: i32,
    rho: f64,
    value: *mut f64,
) -> MdStatus {
    guard(|| {
        let h = arg(handle, "handle")?;
        let s = sign(s, "s")?;
        if !(rho >= 0.0) {
            return Err(invalid("rho must be non-negative"));
        }
        *out(value, "value")? = h.field.radial(s).eval(rho);
        Ok(())
    })
}

/// # Safety
/// `handle` must be null or come from `md_spinor_new`, and is freed once.
#[no_mangle]
pub unsafe extern "C" fn md_spinor_free(handle: *mut MdSpinor) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Solves the lowest `levels` states of the (m_j, s) channel with the
/// finite-difference oracle on `mesh` points.
///
/// # Safety
/// Pointers must be null or valid for the pointee type.
#[no_mangle]
pub unsafe extern "C" fn md_oracle_solve(
    params_in: *const MdParams,
    mj_numerator: i32,
    s: i32,
    levels: usize,
    mesh: usize,
    handle: *mut *mut MdOracleResult,
) -> MdStatus {
    guard(|| {
        let slot = out(handle, "handle")?;
        *slot = ptr::null_mut();
        let p = params(arg(params_in, "params")?)?;
        let q = QuantumState::new(0, HalfInteger::from_numerator(mj_numerator)?, sign(s, "s")?, Sign::Plus);
        let rows = channel_agreement(&p, &q, levels, mesh, None)?;
        *slot = Box::into_raw(Box::new(MdOracleResult { rows }));
        Ok(())
    })
}

/// Number of rows in an oracle result; 0 for a null handle.
///
/// # Safety
/// `handle` must be null or come from `md_oracle_solve`.
#[no_mangle]
pub unsafe extern "C" fn md_oracle_len(handle: *const MdOracleResult) -> usize {
    handle.as_ref().map_or(0, |h| h.rows.len())
}

/// # Safety
/// `handle` must come from `md_oracle_solve` and not be freed.
#[no_mangle]
pub unsafe extern "C" fn md_oracle_row(
    handle: *const MdOracleResult,
    index: usize,
    row: *mut MdOracleRow,
) -> MdStatus {
    guard(|| {
        let h = arg(handle, "handle")?;
        let r = h
            .rows
            .get(index)
            .ok_or_else(|| Fail(MdStatus::IndexOutOfRange, format!("row {index} of {}", h.rows.len())))?;
        *out(row, "row")? = MdOracleRow {
            n: r.n,
            eta2_analytic: r.eta2_analytic,
            lambda: r.oracle.lambda,
            extrapolated: r.oracle.extrapolated,
            relative_error: r.relative_error,
            mesh_estimate: r.oracle.relative_error_estimate(),
            sign_changes: r.oracle.sign_changes as u32,
        };
        Ok(())
    })
}

/// # Safety
/// `handle` must be null or come from `md_oracle_solve`, and is freed once.
#[no_mangle]
pub unsafe extern "C" fn md_oracle_free(handle: *mut MdOracleResult) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Runs the default sweep of figure 1–4.
///
/// # Safety
/// `handle` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn md_sweep_figure(figure: u8, handle: *mut *mut MdSweep) -> MdStatus {
    guard(|| {
        let slot = out(handle, "handle")?;
        *slot = ptr::null_mut();
        let table = run_sweep(&figure_spec(figure)?)?;
        *slot = Box::into_raw(Box::new(MdSweep { table }));
        Ok(())
    })
}

/// # Safety
/// `handle` must be null or come from `md_sweep_figure`.
#[no_mangle]
pub unsafe extern "C" fn md_sweep_len(handle: *const MdSweep) -> usize {
    handle.as_ref().map_or(0, |h| h.table.rows.len())
}

/// # Safety
/// `handle` must come from `md_sweep_figure` and not be freed.
#[no_mangle]
pub unsafe extern "C" fn md_sweep_row(handle: *const MdSweep, index: usize, row: *mut MdSweepRow) -> MdStatus {
    guard(|| {
        let h = arg(handle, "handle")?;
        let rows = &h.table.rows;
        let r = rows
            .get(index)
            .ok_or_else(|| Fail(MdStatus::IndexOutOfRange, format!("row {index} of {}", rows.len())))?;
        *out(row, "row")? = MdSweepRow {
            axis_value: r.axis_value,
            n: r.n,
            energy: r.energy,
        };
        Ok(())
    })
}

/// # Safety
/// `handle` must be null or come from `md_sweep_figure`, and is freed once.
#[no_mangle]
pub unsafe extern "C" fn md_sweep_free(handle: *mut MdSweep) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}
