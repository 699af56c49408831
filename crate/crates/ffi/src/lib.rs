//! C ABI over `padic-spectral`.
//!
//! Contexts and matrices cross the boundary as opaque handles owned by the
//! caller and released with the matching `_free` function. Every fallible
//! call returns a [`PsStatus`]; the message of the last failure on the
//! calling thread is available from [`ps_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use padic_spectral::cli::{run_with_document, EXIT_OK, EXIT_REJECTED};
use padic_spectral::padic::teichmuller_lift;
use padic_spectral::spectral::{hermite_digits_matrix, jordan_decompose};
use padic_spectral::{PadicError, PadicScalar, PrecisionContext, UMatrix};

/// Status codes. `PS_OK` is zero; everything else is a failure.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PsStatus {
    PsOk = 0,
    PsNullPointer = 1,
    PsInvalidArgument = 2,
    PsNotPrime = 3,
    PsInvalidPrecision = 4,
    PsOutsideUnitBall = 5,
    PsDimensionMismatch = 6,
    PsNotInvertible = 7,
    PsNotHermite = 8,
    PsNotTeichmuller = 9,
    PsPeriodExceeded = 10,
    PsBudgetExhausted = 11,
    PsMathError = 12,
    /// A command ran and rejected its input; the document is still returned.
    PsRejected = 13,
    /// A command could not parse its arguments or document.
    PsMalformed = 14,
    PsPanic = 99,
}

/// Precision context: prime, precision and period cap.
pub struct PsContext(PrecisionContext);

/// Square matrix over the p-adic integers at the precision of its context.
pub struct PsMatrix(UMatrix<PadicScalar>);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
}

fn fail(status: PsStatus, msg: impl Into<String>) -> PsStatus {
    set_error(msg);
    status
}

fn status_of(e: &PadicError) -> PsStatus {
    match e {
        PadicError::NotPrime(_) => PsStatus::PsNotPrime,
        PadicError::InvalidPrecision(_) => PsStatus::PsInvalidPrecision,
        PadicError::OutsideUnitBall { .. } => PsStatus::PsOutsideUnitBall,
        PadicError::DimensionMismatch { .. } => PsStatus::PsDimensionMismatch,
        PadicError::NotInvertible => PsStatus::PsNotInvertible,
        PadicError::NotHermite { .. } => PsStatus::PsNotHermite,
        PadicError::NotTeichmuller { .. } => PsStatus::PsNotTeichmuller,
        PadicError::PeriodExceeded { .. } => PsStatus::PsPeriodExceeded,
        PadicError::BudgetExhausted(_) => PsStatus::PsBudgetExhausted,
        PadicError::ResidueOutOfRange { .. } => PsStatus::PsInvalidArgument,
        _ => PsStatus::PsMathError,
    }
}

fn from_padic(e: PadicError) -> PsStatus {
    fail(status_of(&e), e.to_string())
}

fn guard(f: impl FnOnce() -> PsStatus) -> PsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            fail(PsStatus::PsPanic, msg)
        }
    }
}

macro_rules! deref {
    ($ptr:expr, $name:literal) => {
        match unsafe { $ptr.as_ref() } {
            Some(v) => v,
            None => return fail(PsStatus::PsNullPointer, concat!("`", $name, "` is null")),
        }
    };
}

macro_rules! out {
    ($ptr:expr, $name:literal) => {
        if $ptr.is_null() {
            return fail(PsStatus::PsNullPointer, concat!("`", $name, "` is null"));
        }
    };
}

fn boxed<T>(v: T) -> *mut T {
    Box::into_raw(Box::new(v))
}

/// Message of the last failure on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ps_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Creates a context for `Z_p` modulo `p^m`, searching periods up to `n_max`
/// (0 selects the default cap).
///
/// # Safety
/// `out` must be a valid pointer to writable storage.
#[no_mangle]
pub unsafe extern "C" fn ps_context_new(p: u64, m: u32, n_max: u32, out: *mut *mut PsContext) -> PsStatus {
    guard(|| {
        out!(out, "out");
        let ctx = if n_max == 0 {
            PrecisionContext::new(p, m)
        } else {
            PrecisionContext::with_period_cap(p, m, n_max)
        };
        match ctx {
            Ok(c) => {
                *out = boxed(PsContext(c));
                PsStatus::PsOk
            }
            Err(e) => from_padic(e),
        }
    })
}

/// # Safety
/// `ctx` must come from [`ps_context_new`] and not have been freed; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn ps_context_free(ctx: *mut PsContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

/// Teichmüller lift of `residue` in `0..p`, written as its residue modulo `p^m`.
///
/// # Safety
/// `ctx` must be a live context and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ps_teichmuller_lift(ctx: *const PsContext, residue: u64, out: *mut u64) -> PsStatus {
    guard(|| {
        let ctx = deref!(ctx, "ctx");
        out!(out, "out");
        match teichmuller_lift(residue, ctx.0).and_then(|x| x.to_residue()) {
            Ok(r) => {
                *out = r;
                PsStatus::PsOk
            }
            Err(e) => from_padic(e),
        }
    })
}

/// Builds an `n x n` matrix from `n * n` signed integers in row-major order.
///
/// # Safety
/// `entries` must point to `n * n` readable values and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ps_matrix_from_integers(
    ctx: *const PsContext,
    n: usize,
    entries: *const i64,
    out: *mut *mut PsMatrix,
) -> PsStatus {
    guard(|| {
        let ctx = deref!(ctx, "ctx");
        out!(out, "out");
        if n == 0 {
            return fail(PsStatus::PsInvalidArgument, "dimension must be positive");
        }
        out!(entries, "entries");
        let Some(len) = n.checked_mul(n) else {
            return fail(PsStatus::PsInvalidArgument, "dimension too large");
        };
        let values = std::slice::from_raw_parts(entries, len);
        let scalars = values.iter().map(|&v| PadicScalar::from_integer(v as i128, ctx.0)).collect();
        match UMatrix::new(ctx.0, n, scalars) {
            Ok(a) => {
                *out = boxed(PsMatrix(a));
                PsStatus::PsOk
            }
            Err(e) => from_padic(e),
        }
    })
}

/// # Safety
/// `mat` must be a live matrix handle; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn ps_matrix_free(mat: *mut PsMatrix) {
    if !mat.is_null() {
        drop(Box::from_raw(mat));
    }
}

/// # Safety
/// `mat` must be a live matrix handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ps_matrix_dim(mat: *const PsMatrix, out: *mut usize) -> PsStatus {
    guard(|| {
        let mat = deref!(mat, "mat");
        out!(out, "out");
        *out = mat.0.dim();
        PsStatus::PsOk
    })
}

/// Entry `(i, j)` as a residue modulo `p^m`. Fails with `PS_OUTSIDE_UNIT_BALL`
/// for entries of negative valuation.
///
/// # Safety
/// `mat` must be a live matrix handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ps_matrix_entry(mat: *const PsMatrix, i: usize, j: usize, out: *mut u64) -> PsStatus {
    guard(|| {
        let mat = deref!(mat, "mat");
        out!(out, "out");
        let n = mat.0.dim();
        if i >= n || j >= n {
            return fail(PsStatus::PsInvalidArgument, format!("index ({i}, {j}) outside a {n} x {n} matrix"));
        }
        match mat.0.get(i, j).to_residue() {
            Ok(r) => {
                *out = r;
                PsStatus::PsOk
            }
            Err(e) => from_padic(e),
        }
    })
}

/// Writes 1 to `out` when the matrices agree at precision, 0 otherwise.
///
/// # Safety
/// Both handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ps_matrix_equal(a: *const PsMatrix, b: *const PsMatrix, out: *mut i32) -> PsStatus {
    guard(|| {
        let (a, b) = (deref!(a, "a"), deref!(b, "b"));
        out!(out, "out");
        *out = i32::from(a.0 == b.0);
        PsStatus::PsOk
    })
}

/// # Safety
/// Both handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ps_matrix_mul(a: *const PsMatrix, b: *const PsMatrix, out: *mut *mut PsMatrix) -> PsStatus {
    guard(|| {
        let (a, b) = (deref!(a, "a"), deref!(b, "b"));
        out!(out, "out");
        if a.0.ring() != b.0.ring() {
            return from_padic(PadicError::ContextMismatch);
        }
        if a.0.dim() != b.0.dim() {
            return from_padic(PadicError::DimensionMismatch {
                expected: a.0.dim(),
                found: b.0.dim(),
            });
        }
        *out = boxed(PsMatrix(a.0.mul(&b.0)));
        PsStatus::PsOk
    })
}

/// Splits `mat` into a semisimple part and a topologically nilpotent part,
/// searching Frobenius periods up to `n_max`.
///
/// # Safety
/// `mat` must be live; `semisimple` and `nilpotent` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ps_jordan(
    mat: *const PsMatrix,
    n_max: u32,
    semisimple: *mut *mut PsMatrix,
    nilpotent: *mut *mut PsMatrix,
) -> PsStatus {
    guard(|| {
        let mat = deref!(mat, "mat");
        out!(semisimple, "semisimple");
        out!(nilpotent, "nilpotent");
        match jordan_decompose(&mat.0, n_max) {
            Ok(pair) => {
                *semisimple = boxed(PsMatrix(pair.semisimple));
                *nilpotent = boxed(PsMatrix(pair.nilpotent));
                PsStatus::PsOk
            }
            Err(e) => from_padic(e),
        }
    })
}

/// Hermite digit expansion of `mat` with period 1. Digit `k` is written to
/// `digits[k]` for `k < capacity`; `count` receives the total number of digits.
///
/// # Safety
/// `mat` must be live, `digits` must have room for `capacity` handles (it may
/// be null when `capacity` is 0) and `count` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ps_hermite_digits(
    mat: *const PsMatrix,
    digits: *mut *mut PsMatrix,
    capacity: usize,
    count: *mut usize,
) -> PsStatus {
    guard(|| {
        let mat = deref!(mat, "mat");
        out!(count, "count");
        if capacity > 0 {
            out!(digits, "digits");
        }
        match hermite_digits_matrix(&mat.0, 1) {
            Ok(h) => {
                *count = h.digits.len();
                for (k, d) in h.digits.into_iter().take(capacity).enumerate() {
                    *digits.add(k) = boxed(PsMatrix(d));
                }
                PsStatus::PsOk
            }
            Err(e) => from_padic(e),
        }
    })
}

/// Runs a command of the command-line tool. `argv` holds `argc` arguments
/// after the program name, e.g. `{"measure", "--depth", "2"}`. `document`
/// is an optional JSON problem used in place of `--in`.
///
/// On `PS_OK` and `PS_REJECTED` the JSON document is written to `out` and must
/// be released with [`ps_string_free`]. On `PS_MALFORMED` nothing is written
/// and [`ps_last_error`] names the offending field.
///
/// # Safety
/// `argv` must hold `argc` NUL-terminated strings, `document` must be null or
/// NUL-terminated, and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ps_run(
    argv: *const *const c_char,
    argc: usize,
    document: *const c_char,
    out: *mut *mut c_char,
) -> PsStatus {
    guard(|| {
        out!(out, "out");
        *out = ptr::null_mut();
        if argc > 0 {
            out!(argv, "argv");
        }
        let mut args = vec!["padic-spectral".to_owned()];
        for k in 0..argc {
            let a = *argv.add(k);
            out!(a, "argv[k]");
            match CStr::from_ptr(a).to_str() {
                Ok(s) => args.push(s.to_owned()),
                Err(_) => return fail(PsStatus::PsInvalidArgument, format!("argument {k} is not UTF-8")),
            }
        }
        let document = if document.is_null() {
            None
        } else {
            match CStr::from_ptr(document).to_str() {
                Ok(s) => Some(s),
                Err(_) => return fail(PsStatus::PsInvalidArgument, "document is not UTF-8"),
            }
        };
        let outcome = run_with_document(args, document);
        let status = match outcome.code {
            EXIT_OK => PsStatus::PsOk,
            EXIT_REJECTED => PsStatus::PsRejected,
            _ => return fail(PsStatus::PsMalformed, outcome.stderr.trim_end()),
        };
        if status == PsStatus::PsRejected {
            set_error(outcome.stderr.trim_end());
        }
        match CString::new(outcome.stdout) {
            Ok(s) => {
                *out = s.into_raw();
                status
            }
            Err(_) => fail(PsStatus::PsMathError, "document contains a NUL byte"),
        }
    })
}

/// # Safety
/// `s` must come from this library; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn ps_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
