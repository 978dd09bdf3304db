//! C ABI. Matrices are opaque handles parsed from the JSON input format;
//! every computation returns an opaque report handle holding the same JSON
//! document the command-line tool prints, together with its exit code.
//!
//! Handles are owned by the caller and released with the matching `_free`
//! function. Strings returned by the library stay valid until the owning
//! handle is freed. Status codes match the command-line exit codes.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use intsim::cli::{self, DecideParams, Level, Outcome};
use intsim::deciders::Kind;
use intsim::io::{parse_matrix_json, InputMatrix};

/// Status codes; 0 through 4 are the command-line exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntsimStatus {
    Ok = 0,
    Usage = 1,
    Unsupported = 2,
    Capacity = 3,
    Consistency = 4,
    NullPointer = 5,
    InvalidUtf8 = 6,
    InvalidArgument = 7,
    Panic = 8,
}

/// Values for the `kind` arguments.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntsimKind {
    Tri = 0,
    Diag = 1,
}

/// Values for the `level` argument of `intsim_decide`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntsimLevel {
    Ring = 0,
    Field = 1,
    Local = 2,
    ResidueField = 3,
    CompletedField = 4,
    Residue = 5,
}

/// A parsed input matrix.
pub struct IntsimMatrix {
    inner: InputMatrix,
}

/// A JSON report document and its exit code.
pub struct IntsimReport {
    exit_code: i32,
    json: CString,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(code: i32) -> IntsimStatus {
    match code {
        0 => IntsimStatus::Ok,
        1 => IntsimStatus::Usage,
        2 => IntsimStatus::Unsupported,
        3 => IntsimStatus::Capacity,
        _ => IntsimStatus::Consistency,
    }
}

fn guard(f: impl FnOnce() -> IntsimStatus) -> IntsimStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal panic");
            IntsimStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, IntsimStatus> {
    if s.is_null() {
        set_error("null string argument");
        return Err(IntsimStatus::NullPointer);
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("string argument is not UTF-8");
        IntsimStatus::InvalidUtf8
    })
}

fn kind_of(kind: u32) -> Result<Kind, IntsimStatus> {
    match kind {
        0 => Ok(Kind::Tri),
        1 => Ok(Kind::Diag),
        _ => {
            set_error(format!("unknown kind {kind}"));
            Err(IntsimStatus::InvalidArgument)
        }
    }
}

fn level_of(level: u32) -> Result<Level, IntsimStatus> {
    Ok(match level {
        0 => Level::Ring,
        1 => Level::Field,
        2 => Level::Local,
        3 => Level::ResidueField,
        4 => Level::CompletedField,
        5 => Level::Residue,
        _ => {
            set_error(format!("unknown level {level}"));
            return Err(IntsimStatus::InvalidArgument);
        }
    })
}

/// Store the outcome in `out` and report its status.
unsafe fn emit(outcome: Outcome, out: *mut *mut IntsimReport) -> IntsimStatus {
    if outcome.exit_code != 0 {
        if let Ok(doc) = serde_json::from_str::<serde_json::Value>(&outcome.body) {
            if let Some(msg) = doc["error"]["message"].as_str() {
                set_error(msg);
            }
        }
    }
    let status = status_of(outcome.exit_code);
    let json = CString::new(outcome.body.replace('\0', " ")).expect("no interior nul");
    *out = Box::into_raw(Box::new(IntsimReport { exit_code: outcome.exit_code, json }));
    status
}

macro_rules! try_status {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

unsafe fn matrix_ref<'a>(m: *const IntsimMatrix) -> Result<&'a IntsimMatrix, IntsimStatus> {
    m.as_ref().ok_or_else(|| {
        set_error("null matrix handle");
        IntsimStatus::NullPointer
    })
}

unsafe fn check_out(out: *mut *mut IntsimReport) -> Result<(), IntsimStatus> {
    if out.is_null() {
        set_error("null output pointer");
        return Err(IntsimStatus::NullPointer);
    }
    *out = ptr::null_mut();
    Ok(())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn intsim_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or NULL. Valid until the
/// next library call on the same thread.
#[no_mangle]
pub extern "C" fn intsim_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parse a matrix from the JSON input format into `*out`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn intsim_matrix_parse(json: *const c_char, out: *mut *mut IntsimMatrix) -> IntsimStatus {
    guard(|| {
        if out.is_null() {
            set_error("null output pointer");
            return IntsimStatus::NullPointer;
        }
        *out = ptr::null_mut();
        let text = try_status!(read_str(json));
        match parse_matrix_json(text) {
            Ok(m) => {
                *out = Box::into_raw(Box::new(IntsimMatrix { inner: m }));
                IntsimStatus::Ok
            }
            Err(e) => {
                set_error(e.to_string());
                status_of(e.exit_code())
            }
        }
    })
}

/// Number of rows, or 0 for NULL.
///
/// # Safety
/// `m` must be NULL or a live matrix handle.
#[no_mangle]
pub unsafe extern "C" fn intsim_matrix_rows(m: *const IntsimMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.inner.size().0)
}

/// Number of columns, or 0 for NULL.
///
/// # Safety
/// `m` must be NULL or a live matrix handle.
#[no_mangle]
pub unsafe extern "C" fn intsim_matrix_cols(m: *const IntsimMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.inner.size().1)
}

/// # Safety
/// `m` must be NULL or a handle from `intsim_matrix_parse`, freed once.
#[no_mangle]
pub unsafe extern "C" fn intsim_matrix_free(m: *mut IntsimMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Decide one condition. `prime` 0 means none; it is required for the
/// local levels. `k` is the exponent for the residue level. A `budget` of 0
/// selects the default.
///
/// # Safety
/// `m` must be a live matrix handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn intsim_decide(
    m: *const IntsimMatrix,
    kind: u32,
    level: u32,
    prime: u64,
    k: u32,
    budget: u64,
    out: *mut *mut IntsimReport,
) -> IntsimStatus {
    guard(|| {
        try_status!(check_out(out));
        let m = try_status!(matrix_ref(m));
        let params = DecideParams {
            problem: try_status!(kind_of(kind)),
            level: try_status!(level_of(level)),
            prime: (prime != 0).then_some(prime),
            k,
            budget: budget_or_default(budget),
        };
        emit(cli::decide_outcome(&m.inner, &params), out)
    })
}

fn budget_or_default(budget: u64) -> u64 {
    if budget == 0 {
        cli::DEFAULT_BUDGET
    } else {
        budget
    }
}

/// All six conditions at primes of norm up to `prime_bound`. A `budget` of 0
/// selects the default.
///
/// # Safety
/// `m` must be a live matrix handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn intsim_report(
    m: *const IntsimMatrix,
    kind: u32,
    prime_bound: u64,
    budget: u64,
    out: *mut *mut IntsimReport,
) -> IntsimStatus {
    guard(|| {
        try_status!(check_out(out));
        let m = try_status!(matrix_ref(m));
        emit(cli::report_outcome(&m.inner, try_status!(kind_of(kind)), prime_bound, budget_or_default(budget)), out)
    })
}

/// Three-leg certification of a matrix over an imaginary quadratic order.
///
/// # Safety
/// `m` must be a live matrix handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn intsim_certify(
    m: *const IntsimMatrix,
    kind: u32,
    prime_bound: u64,
    out: *mut *mut IntsimReport,
) -> IntsimStatus {
    guard(|| {
        try_status!(check_out(out));
        let m = try_status!(matrix_ref(m));
        emit(cli::certify_outcome(&m.inner, try_status!(kind_of(kind)), prime_bound), out)
    })
}

/// Counterexample recipe over the ring of integers of Q(sqrt(d)).
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn intsim_counterexample(
    kind: u32,
    d: i64,
    n: usize,
    certify: bool,
    prime_bound: u64,
    out: *mut *mut IntsimReport,
) -> IntsimStatus {
    guard(|| {
        try_status!(check_out(out));
        let kind = try_status!(kind_of(kind));
        emit(cli::counterexample_outcome(kind, d, n, certify, prime_bound), out)
    })
}

/// Stratification audit of diag(lambda I_m, J_n(lambda)) over F_q. A
/// `budget` of 0 selects the default.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn intsim_strata_audit(
    m: usize,
    n: usize,
    lambda: i64,
    q: u8,
    budget: u64,
    out: *mut *mut IntsimReport,
) -> IntsimStatus {
    guard(|| {
        try_status!(check_out(out));
        emit(cli::strata_audit_outcome(m, n, lambda, &[q], budget_or_default(budget)), out)
    })
}

/// Re-verify every witness embedded in a report document.
///
/// # Safety
/// `report_json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn intsim_verify(report_json: *const c_char, out: *mut *mut IntsimReport) -> IntsimStatus {
    guard(|| {
        try_status!(check_out(out));
        let text = try_status!(read_str(report_json));
        emit(cli::verify_outcome(text), out)
    })
}

/// The JSON document, or NULL for a NULL handle.
///
/// # Safety
/// `r` must be NULL or a live report handle.
#[no_mangle]
pub unsafe extern "C" fn intsim_report_json(r: *const IntsimReport) -> *const c_char {
    r.as_ref().map_or(ptr::null(), |r| r.json.as_ptr())
}

/// The exit code, or -1 for a NULL handle.
///
/// # Safety
/// `r` must be NULL or a live report handle.
#[no_mangle]
pub unsafe extern "C" fn intsim_report_exit_code(r: *const IntsimReport) -> i32 {
    r.as_ref().map_or(-1, |r| r.exit_code)
}

/// # Safety
/// `r` must be NULL or a handle returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn intsim_report_free(r: *mut IntsimReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}
