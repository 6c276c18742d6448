//! C ABI for `rextosc`.
//!
//! Models are opaque handles created from a JSON model spec and released with
//! [`rext_model_free`]. Every fallible call returns a [`RextStatus`]; on
//! failure [`rext_last_error_message`] describes the error on the calling
//! thread. Strings returned through `char **` out-parameters are owned by the
//! caller and must be released with [`rext_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use rextosc::models::tables::table1;
use rextosc::models::{level_energies, ModelND, ModelSpec, StateSelection};
use rextosc::numeric::{verify_model, OracleConfig};
use rextosc::Error;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RextStatus {
    Ok = 0,
    /// Bad spec, bad arguments or an unsupported model.
    InvalidInput = 1,
    /// The numerical oracle could not finish.
    NumericFailure = 2,
    /// A required pointer was null.
    NullPointer = 3,
    /// The oracle ran but at least one level missed its tolerance.
    VerificationFailed = 4,
    /// Internal error; the library caught a panic.
    Internal = 5,
}

/// Opaque model handle.
pub struct RextModel {
    inner: ModelND,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(e: &Error) -> RextStatus {
    match e {
        Error::ConvergenceFailure { .. } | Error::PotentialPoleOnGrid { .. } => RextStatus::NumericFailure,
        _ => RextStatus::InvalidInput,
    }
}

fn guard<F: FnOnce() -> Result<RextStatus, Error>>(f: F) -> RextStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err(e)) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("internal error");
            RextStatus::Internal
        }
    }
}

macro_rules! non_null {
    ($($p:expr),+) => {
        $(if $p.is_null() {
            set_error(concat!(stringify!($p), " is null"));
            return RextStatus::NullPointer;
        })+
    };
}

fn export_string(s: String, out: *mut *mut c_char) -> Result<(), Error> {
    let c = CString::new(s).map_err(|e| Error::InvalidSpec(e.to_string()))?;
    // SAFETY: the caller checked `out` for null.
    unsafe { *out = c.into_raw() };
    Ok(())
}

/// Builds a model from a NUL-terminated JSON spec
/// `{kind, axes: [{domain, omega, m, alpha}], gamma?, omega_z?}`.
///
/// # Safety
/// `json` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rext_model_from_json(json: *const c_char, out: *mut *mut RextModel) -> RextStatus {
    non_null!(json, out);
    guard(|| {
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(|e| Error::InvalidSpec(e.to_string()))?;
        let inner = ModelSpec::from_json(text)?.build()?;
        *out = Box::into_raw(Box::new(RextModel { inner }));
        Ok(RextStatus::Ok)
    })
}

/// Releases a model; null is ignored.
///
/// # Safety
/// `model` must come from [`rext_model_from_json`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn rext_model_free(model: *mut RextModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// Number of axes (1 to 3).
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn rext_model_dim(model: *const RextModel, out: *mut usize) -> RextStatus {
    non_null!(model, out);
    *out = (*model).inner.dim();
    RextStatus::Ok
}

/// Energy of the state with quantum numbers `indices[0..len]`.
///
/// # Safety
/// `indices` must hold `len` values; other pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn rext_model_energy(
    model: *const RextModel,
    indices: *const usize,
    len: usize,
    out: *mut f64,
) -> RextStatus {
    non_null!(model, indices, out);
    guard(|| {
        let idx = std::slice::from_raw_parts(indices, len);
        let m = &(*model).inner;
        *out = m.energy(idx)?.value(&m.omegas());
        Ok(RextStatus::Ok)
    })
}

/// `V^-` summed over the axes at `point[0..len]`.
///
/// # Safety
/// `point` must hold `len` values; other pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn rext_model_potential(
    model: *const RextModel,
    point: *const f64,
    len: usize,
    out: *mut f64,
) -> RextStatus {
    non_null!(model, point, out);
    guard(|| {
        *out = (*model).inner.potential_at(std::slice::from_raw_parts(point, len))?;
        Ok(RextStatus::Ok)
    })
}

/// Normalized eigenfunction `indices` evaluated at `point`.
///
/// # Safety
/// `indices` and `point` must each hold `dim` values.
#[no_mangle]
pub unsafe extern "C" fn rext_model_state(
    model: *const RextModel,
    indices: *const usize,
    point: *const f64,
    dim: usize,
    out: *mut f64,
) -> RextStatus {
    non_null!(model, indices, point, out);
    guard(|| {
        let m = &(*model).inner;
        let s = m.state(std::slice::from_raw_parts(indices, dim))?;
        *out = s.eval(std::slice::from_raw_parts(point, dim))?;
        Ok(RextStatus::Ok)
    })
}

/// The `k` lowest distinct energy levels, ascending, written to `out[0..k]`.
///
/// # Safety
/// `out` must have room for `k` values.
#[no_mangle]
pub unsafe extern "C" fn rext_model_lowest_energies(model: *const RextModel, k: usize, out: *mut f64) -> RextStatus {
    non_null!(model, out);
    guard(|| {
        let m = &(*model).inner;
        let mut n_max = k.max(1);
        let mut levels = level_energies(m, n_max, StateSelection::Complete)?;
        while levels.len() < k {
            n_max = 2 * n_max + 1;
            levels = level_energies(m, n_max, StateSelection::Complete)?;
        }
        let dst = std::slice::from_raw_parts_mut(out, k);
        for (d, l) in dst.iter_mut().zip(&levels) {
            *d = l.value;
        }
        Ok(RextStatus::Ok)
    })
}

/// Runs the numerical oracle on every axis (Numerov, 4000 points) for the
/// lowest `k` levels and writes the JSON reports to `*out_json`. Returns
/// `VerificationFailed` (with the reports still written) when any level
/// misses `tol`.
///
/// # Safety
/// Pointers must be valid; free `*out_json` with [`rext_string_free`].
#[no_mangle]
pub unsafe extern "C" fn rext_model_verify(
    model: *const RextModel,
    k: usize,
    tol: f64,
    out_json: *mut *mut c_char,
) -> RextStatus {
    non_null!(model, out_json);
    *out_json = ptr::null_mut();
    guard(|| {
        let config = OracleConfig {
            tolerance: tol,
            ..OracleConfig::default()
        };
        let mut reports = verify_model(&(*model).inner, k, &config)?;
        for r in &mut reports {
            r.runtime_ms = None;
        }
        let pass = reports.iter().all(|r| r.pass);
        export_string(
            serde_json::to_string(&reports).map_err(|e| Error::InvalidSpec(e.to_string()))?,
            out_json,
        )?;
        if pass {
            Ok(RextStatus::Ok)
        } else {
            set_error("verification failed");
            Ok(RextStatus::VerificationFailed)
        }
    })
}

/// The half-line potential table as JSON.
///
/// # Safety
/// `out_json` must be valid; free the result with [`rext_string_free`].
#[no_mangle]
pub unsafe extern "C" fn rext_table1_json(out_json: *mut *mut c_char) -> RextStatus {
    non_null!(out_json);
    guard(|| {
        let rows = table1()?;
        export_string(
            serde_json::to_string(&rows).map_err(|e| Error::InvalidSpec(e.to_string()))?,
            out_json,
        )?;
        Ok(RextStatus::Ok)
    })
}

/// Releases a string returned by this library; null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn rext_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failed call on this thread; empty if none. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn rext_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}
