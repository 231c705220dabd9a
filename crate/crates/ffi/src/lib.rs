//! C ABI for the exact representation library.
//!
//! Conventions:
//! - Representations travel as opaque `UrlabRep` handles; free them with
//!   [`urlab_rep_free`].
//! - Structured data crosses the boundary as JSON strings in the `"v1"`
//!   schemas of the core crate; returned strings are NUL-terminated, owned
//!   by the caller, and must be released with [`urlab_string_free`].
//! - Every fallible call returns a [`UrlabStatus`]; on failure,
//!   [`urlab_last_error`] gives a thread-local message valid until the next
//!   failing call on the same thread.

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};

use urlab::analysis::kernel_and_flags;
use urlab::error::Error;
use urlab::rational::Rational;
use urlab::rep::{normalize, Representation};
use urlab::schema::{
    rep_from_file, rep_to_file, run_lidep, AnalysisReportDto, LidepPayload, RepFile,
};
use urlab::sweep::{crosscheck_sl2, faithful_sweep, length_bound_scan, SweepConfig};

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UrlabStatus {
    /// Success.
    Ok = 0,
    /// A mathematical check failed on structurally valid input.
    CheckFailed = 1,
    /// The input could not be parsed or violates a schema precondition.
    InvalidInput = 2,
    /// A required pointer argument was NULL.
    NullPointer = 3,
    /// An input string was not valid UTF-8.
    InvalidUtf8 = 4,
    /// Internal failure (a bug; details via `urlab_last_error`).
    Internal = 5,
}

/// Opaque handle to a verified representation.
pub struct UrlabRep {
    inner: Representation,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let sanitized = msg.replace('\0', " ");
    LAST_ERROR.with(|e| {
        *e.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

fn status_of(e: &Error) -> UrlabStatus {
    match e {
        Error::RepresentationCheckFailed { .. } | Error::FamilyHypothesis(_) => {
            UrlabStatus::CheckFailed
        }
        _ => UrlabStatus::InvalidInput,
    }
}

fn fail(e: Error) -> UrlabStatus {
    let status = status_of(&e);
    set_error(&e.to_string());
    status
}

/// Run a closure, translating errors and panics into status codes.
fn guarded(f: impl FnOnce() -> Result<UrlabStatus, Error>) -> UrlabStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => status,
        Ok(Err(e)) => fail(e),
        Err(_) => {
            set_error("internal panic");
            UrlabStatus::Internal
        }
    }
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, UrlabStatus> {
    if ptr.is_null() {
        set_error("NULL string argument");
        return Err(UrlabStatus::NullPointer);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error("string argument is not valid UTF-8");
        UrlabStatus::InvalidUtf8
    })
}

fn write_string(out: *mut *mut c_char, text: String) -> Result<UrlabStatus, Error> {
    let c = CString::new(text.replace('\0', " ")).expect("no interior NUL after replacement");
    unsafe { *out = c.into_raw() };
    Ok(UrlabStatus::Ok)
}

/// Message for the most recent failure on this thread. The pointer stays
/// valid until the next failing call on the same thread; never free it.
#[no_mangle]
pub extern "C" fn urlab_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Build a representation from a `"v1"` parameter/representation JSON
/// document. On success `*out` owns the new handle.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn urlab_rep_build(
    json: *const c_char,
    out: *mut *mut UrlabRep,
) -> UrlabStatus {
    if out.is_null() {
        set_error("NULL output pointer");
        return UrlabStatus::NullPointer;
    }
    let json = match read_str(json) {
        Ok(s) => s,
        Err(status) => return status,
    };
    guarded(|| {
        let file: RepFile = serde_json::from_str(json)?;
        let rep = rep_from_file(&file)?;
        unsafe { *out = Box::into_raw(Box::new(UrlabRep { inner: rep })) };
        Ok(UrlabStatus::Ok)
    })
}

/// Serialize a representation (parameters, images, certificate) to JSON.
///
/// # Safety
/// `rep` must be a live handle from this library; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn urlab_rep_to_json(
    rep: *const UrlabRep,
    out: *mut *mut c_char,
) -> UrlabStatus {
    if rep.is_null() || out.is_null() {
        set_error("NULL argument");
        return UrlabStatus::NullPointer;
    }
    let rep = unsafe { &*rep };
    guarded(|| {
        let text = serde_json::to_string_pretty(&rep_to_file(&rep.inner)?)?;
        write_string(out, text)
    })
}

/// Analyze a representation; `*out` receives the analysis report JSON.
///
/// # Safety
/// `rep` must be a live handle from this library; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn urlab_rep_analyze(
    rep: *const UrlabRep,
    out: *mut *mut c_char,
) -> UrlabStatus {
    if rep.is_null() || out.is_null() {
        set_error("NULL argument");
        return UrlabStatus::NullPointer;
    }
    let rep = unsafe { &*rep };
    guarded(|| {
        let report = kernel_and_flags(&rep.inner)?;
        let text = serde_json::to_string_pretty(&AnalysisReportDto::from_report(&report))?;
        write_string(out, text)
    })
}

/// Canonically normalize a representation into a fresh handle.
///
/// # Safety
/// `rep` must be a live handle from this library; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn urlab_rep_normalize(
    rep: *const UrlabRep,
    out: *mut *mut UrlabRep,
) -> UrlabStatus {
    if rep.is_null() || out.is_null() {
        set_error("NULL argument");
        return UrlabStatus::NullPointer;
    }
    let rep = unsafe { &*rep };
    guarded(|| {
        let (normalized, _conjugator) = normalize(&rep.inner)?;
        unsafe { *out = Box::into_raw(Box::new(UrlabRep { inner: normalized })) };
        Ok(UrlabStatus::Ok)
    })
}

/// Matrix dimension of the representation, 0 for a NULL handle.
///
/// # Safety
/// `rep` must be NULL or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn urlab_rep_dim(rep: *const UrlabRep) -> usize {
    if rep.is_null() {
        return 0;
    }
    unsafe { &*rep }.inner.dim
}

/// Evaluate the independence predicate and its brute-force oracle on a
/// `{"a","b","c","P","Q"}` payload; `*out` receives the result JSON.
///
/// # Safety
/// `payload_json` must be NUL-terminated; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn urlab_lidep(
    payload_json: *const c_char,
    out: *mut *mut c_char,
) -> UrlabStatus {
    if out.is_null() {
        set_error("NULL output pointer");
        return UrlabStatus::NullPointer;
    }
    let json = match read_str(payload_json) {
        Ok(s) => s,
        Err(status) => return status,
    };
    guarded(|| {
        let payload: LidepPayload = serde_json::from_str(json)?;
        let result = run_lidep(&payload)?;
        write_string(out, serde_json::to_string_pretty(&result)?)
    })
}

/// Faithfulness sweep over the seeded grid; `*out` receives the report JSON.
/// Returns `CheckFailed` when the sweep finds a counterexample.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn urlab_sweep_faithful(
    n_min: u32,
    n_max: u32,
    samples: u32,
    seed: u64,
    out: *mut *mut c_char,
) -> UrlabStatus {
    if out.is_null() {
        set_error("NULL output pointer");
        return UrlabStatus::NullPointer;
    }
    guarded(|| {
        let cfg = SweepConfig {
            n_min: n_min as usize,
            n_max: n_max as usize,
            alpha_set: vec![Rational::zero(), Rational::one(), Rational::new(-1, 2)],
            lambda_set: vec![Rational::one(), Rational::from_int(2), Rational::new(-1, 3)],
            seed,
            samples_per_cell: samples as usize,
        };
        let report = faithful_sweep(&cfg)?;
        let pass = report.pass;
        write_string(out, serde_json::to_string_pretty(&report)?)?;
        if pass {
            Ok(UrlabStatus::Ok)
        } else {
            set_error("faithfulness sweep found counterexamples");
            Ok(UrlabStatus::CheckFailed)
        }
    })
}

/// Four-block obstruction scan up to `dmax`; `*out` receives the report
/// JSON. Returns `CheckFailed` on obstruction mismatches.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn urlab_reduccion_scan(
    dmax: u32,
    samples: u32,
    seed: u64,
    out: *mut *mut c_char,
) -> UrlabStatus {
    if out.is_null() {
        set_error("NULL output pointer");
        return UrlabStatus::NullPointer;
    }
    guarded(|| {
        let lambdas = vec![Rational::one(), Rational::from_int(-2), Rational::new(1, 3)];
        let report = length_bound_scan(dmax as usize, &lambdas, seed, samples as usize)?;
        let pass = report.pass;
        write_string(out, serde_json::to_string_pretty(&report)?)?;
        if pass {
            Ok(UrlabStatus::Ok)
        } else {
            set_error("obstruction scan found mismatches");
            Ok(UrlabStatus::CheckFailed)
        }
    })
}

/// Tensor-module crosscheck; `*out` receives the report JSON.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn urlab_crosscheck_sl2(seed: u64, out: *mut *mut c_char) -> UrlabStatus {
    if out.is_null() {
        set_error("NULL output pointer");
        return UrlabStatus::NullPointer;
    }
    guarded(|| {
        let report = crosscheck_sl2(seed)?;
        let pass = report.pass;
        write_string(out, serde_json::to_string_pretty(&report)?)?;
        if pass {
            Ok(UrlabStatus::Ok)
        } else {
            set_error("tensor-module crosscheck failed");
            Ok(UrlabStatus::CheckFailed)
        }
    })
}

/// Release a representation handle. NULL is a no-op.
///
/// # Safety
/// `rep` must be NULL or a handle returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn urlab_rep_free(rep: *mut UrlabRep) {
    if !rep.is_null() {
        drop(unsafe { Box::from_raw(rep) });
    }
}

/// Release a string returned by this library. NULL is a no-op.
///
/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn urlab_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}
