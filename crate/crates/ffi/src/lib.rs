//! C ABI over the mockhecke kernel.
//!
//! Callers create an opaque [`MhContext`] carrying the precision settings,
//! invoke computations against it, and free returned strings with
//! [`mh_string_free`]. Every fallible call returns an [`MhStatus`]; the
//! last error message is kept per context and read with [`mh_last_error`].

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use mockhecke::analytic::{a_delta, beta_delta, check_f_bound};
use mockhecke::faber::faber_psi;
use mockhecke::heckepoly::hecke_poly_f;
use mockhecke::qseries::{rat_from_decimal_str, rat_to_str, PrecisionContext};
use mockhecke::roots::roots_of_hecke_poly;
use mockhecke::verify::{run as run_suite, VerifyLevel};

/// Call status. Zero is success; everything else leaves a message in the
/// context retrievable with `mh_last_error`.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq)]
pub enum MhStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ComputationFailed = 3,
    Panic = 4,
}

/// Opaque computation context: precision settings plus the last error
/// message. Not thread-safe; use one per thread.
pub struct MhContext {
    ctx: PrecisionContext,
    last_error: Option<CString>,
}

fn set_error(ctx: &mut MhContext, message: String) {
    ctx.last_error = CString::new(message).ok();
}

unsafe fn ctx_mut<'a>(ptr: *mut MhContext) -> Option<&'a mut MhContext> {
    if ptr.is_null() {
        None
    } else {
        Some(unsafe { &mut *ptr })
    }
}

fn export_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// Create a context. `series_order` is the q-truncation (>= 2), `c_max` the
/// Kloosterman cutoff (>= 1), `precision_digits` the working precision
/// (>= 30), `root_tol_decimal` a tolerance like "1e-30" (NULL for the
/// default). Returns NULL when the parameters are rejected.
#[no_mangle]
pub extern "C" fn mh_context_new(
    series_order: i64,
    c_max: u32,
    precision_digits: u32,
    root_tol_decimal: *const c_char,
) -> *mut MhContext {
    let defaults = PrecisionContext::default();
    let tol = if root_tol_decimal.is_null() {
        defaults.root_tol.clone()
    } else {
        let text = unsafe { CStr::from_ptr(root_tol_decimal) };
        match text.to_str().ok().and_then(|s| rat_from_decimal_str(s).ok()) {
            Some(t) => t,
            None => return ptr::null_mut(),
        }
    };
    match PrecisionContext::new(series_order, c_max, precision_digits, tol) {
        Ok(ctx) => Box::into_raw(Box::new(MhContext {
            ctx,
            last_error: None,
        })),
        Err(_) => ptr::null_mut(),
    }
}

/// Context with the library defaults (N = 64, c_max = 10^4, 60 digits).
#[no_mangle]
pub extern "C" fn mh_context_default() -> *mut MhContext {
    Box::into_raw(Box::new(MhContext {
        ctx: PrecisionContext::default(),
        last_error: None,
    }))
}

/// Destroy a context created by `mh_context_new`/`mh_context_default`.
///
/// # Safety
/// `ctx` must be a pointer returned by a context constructor, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mh_context_free(ctx: *mut MhContext) {
    if !ctx.is_null() {
        drop(unsafe { Box::from_raw(ctx) });
    }
}

/// The last error message recorded on this context, or NULL. The pointer is
/// owned by the context and valid until the next failing call on it.
#[no_mangle]
pub extern "C" fn mh_last_error(ctx: *const MhContext) -> *const c_char {
    if ctx.is_null() {
        return ptr::null();
    }
    let ctx = unsafe { &*ctx };
    ctx.last_error
        .as_ref()
        .map_or(ptr::null(), |s| s.as_ptr())
}

/// Free a string returned by this library.
///
/// # Safety
/// `s` must be a pointer previously returned by a `mockhecke` call that
/// documents `mh_string_free` ownership, and not freed before.
#[no_mangle]
pub unsafe extern "C" fn mh_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

fn guarded<F>(ctx: *mut MhContext, out: *mut *mut c_char, f: F) -> MhStatus
where
    F: FnOnce(&PrecisionContext) -> Result<String, mockhecke::Error>,
{
    let Some(handle) = (unsafe { ctx_mut(ctx) }) else {
        return MhStatus::NullPointer;
    };
    if out.is_null() {
        set_error(handle, "output pointer is NULL".into());
        return MhStatus::NullPointer;
    }
    let result = catch_unwind(AssertUnwindSafe(|| f(&handle.ctx)));
    match result {
        Ok(Ok(text)) => {
            unsafe { *out = export_string(text) };
            MhStatus::Ok
        }
        Ok(Err(e)) => {
            let status = match e {
                mockhecke::Error::InvalidArgument(_) => MhStatus::InvalidArgument,
                _ => MhStatus::ComputationFailed,
            };
            set_error(handle, e.to_string());
            status
        }
        Err(_) => {
            set_error(handle, "internal panic".into());
            MhStatus::Panic
        }
    }
}

/// Coefficients of the Faber polynomial ψ_m as a JSON array of decimal
/// strings, ascending degree. Free with `mh_string_free`.
#[no_mangle]
pub extern "C" fn mh_psi_json(ctx: *mut MhContext, m: u32, out: *mut *mut c_char) -> MhStatus {
    guarded(ctx, out, |pc| {
        let local = with_order(pc, m as i64 + 3);
        let p = faber_psi(m, &local)?;
        Ok(coeff_json(p.coeffs().iter().map(|c| c.to_string())))
    })
}

/// Coefficients of the Hecke polynomial F_m as a JSON array of decimal
/// strings, ascending degree. Free with `mh_string_free`.
#[no_mangle]
pub extern "C" fn mh_hecke_poly_json(ctx: *mut MhContext, m: i64, out: *mut *mut c_char) -> MhStatus {
    guarded(ctx, out, |pc| {
        let local = with_order(pc, m + 2);
        let p = hecke_poly_f(m, &local)?;
        Ok(coeff_json(p.coeffs().iter().map(|c| c.to_string())))
    })
}

/// Root table of F_m as CSV with header `m,ell,x,theta,u` (40-digit
/// decimals). Free with `mh_string_free`.
#[no_mangle]
pub extern "C" fn mh_roots_csv(ctx: *mut MhContext, m: i64, out: *mut *mut c_char) -> MhStatus {
    guarded(ctx, out, |pc| {
        let local = with_order(pc, m + 2);
        let records = roots_of_hecke_poly(m, &local)?;
        let mut text = String::from("m,ell,x,theta,u\n");
        for r in &records {
            text.push_str(&format!(
                "{},{},{},{},{}\n",
                m,
                r.ell.map(|l| l.to_string()).unwrap_or_default(),
                r.x_real.to_decimal(40),
                r.theta.to_decimal(40),
                r.u.to_decimal(40)
            ));
        }
        Ok(text)
    })
}

/// Mock coefficient a(n) for n >= 1 as JSON
/// {"value": "...", "digits": d, "tail_estimate": "...", "c_max": c}.
/// For n = 0 the exact rational is returned as {"exact": "p/q"}.
/// Free with `mh_string_free`.
#[no_mangle]
pub extern "C" fn mh_mock_coefficient_json(
    ctx: *mut MhContext,
    n: i64,
    out: *mut *mut c_char,
) -> MhStatus {
    guarded(ctx, out, |pc| {
        if n == 0 {
            let exact = mockhecke::analytic::a_delta_exact_zero();
            return Ok(format!("{{\"exact\":\"{}\"}}", rat_to_str(&exact)));
        }
        let sum = a_delta(n, pc)?;
        Ok(series_json(pc, &sum))
    })
}

/// β as JSON {"value": ..., "digits": ..., "tail_estimate": ..., "c_max": ...}.
/// Free with `mh_string_free`.
#[no_mangle]
pub extern "C" fn mh_beta_json(ctx: *mut MhContext, out: *mut *mut c_char) -> MhStatus {
    guarded(ctx, out, |pc| {
        let sum = beta_delta(pc)?;
        Ok(series_json(pc, &sum))
    })
}

/// Run the arc budget check for index m on a θ-grid; writes 1 to
/// `all_pass` when every grid point passes.
#[no_mangle]
pub extern "C" fn mh_bound_check(
    ctx: *mut MhContext,
    m: i64,
    grid: usize,
    all_pass: *mut bool,
) -> MhStatus {
    let Some(handle) = (unsafe { ctx_mut(ctx) }) else {
        return MhStatus::NullPointer;
    };
    if all_pass.is_null() {
        set_error(handle, "output pointer is NULL".into());
        return MhStatus::NullPointer;
    }
    match catch_unwind(AssertUnwindSafe(|| check_f_bound(m, grid, &handle.ctx))) {
        Ok(Ok(reports)) => {
            unsafe { *all_pass = reports.iter().all(|r| r.pass) };
            MhStatus::Ok
        }
        Ok(Err(e)) => {
            let status = match e {
                mockhecke::Error::InvalidArgument(_) => MhStatus::InvalidArgument,
                _ => MhStatus::ComputationFailed,
            };
            set_error(handle, e.to_string());
            status
        }
        Err(_) => {
            set_error(handle, "internal panic".into());
            MhStatus::Panic
        }
    }
}

/// Run the certification suite: level 0 is quick, anything else full.
/// Returns the number of failing criteria, or -1 on invalid input.
#[no_mangle]
pub extern "C" fn mh_verify(level: u32) -> i32 {
    let level = if level == 0 {
        VerifyLevel::Quick
    } else {
        VerifyLevel::Full
    };
    match catch_unwind(|| run_suite(level)) {
        Ok(reports) => reports.iter().filter(|r| !r.pass).count() as i32,
        Err(_) => -1,
    }
}

fn with_order(pc: &PrecisionContext, needed: i64) -> PrecisionContext {
    if pc.series_order < needed {
        pc.clone().with_series_order(needed)
    } else {
        pc.clone()
    }
}

fn coeff_json(coeffs: impl Iterator<Item = String>) -> String {
    let quoted: Vec<String> = coeffs.map(|c| format!("\"{c}\"")).collect();
    format!("[{}]", quoted.join(","))
}

fn series_json(pc: &PrecisionContext, sum: &mockhecke::analytic::SeriesSum) -> String {
    let digits = pc.work_precision.min(40) as usize;
    serde_json::json!({
        "value": sum.value.to_decimal(digits),
        "digits": digits,
        "tail_estimate": sum.tail_estimate.to_decimal(6),
        "c_max": sum.c_max,
    })
    .to_string()
}
