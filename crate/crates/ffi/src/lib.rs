//! C ABI over the `frolicher` library.
//!
//! Objects are opaque handles created by `*_parse`/`*_compute` style
//! functions and released with the matching `*_free`. Every fallible call
//! returns a [`FrolicherStatus`] and writes its result through an out
//! pointer; on failure a description is available from
//! [`frolicher_last_error_message`] on the same thread. Strings returned to
//! the caller must be released with [`frolicher_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use frolicher::model::{self, family_xn};
use frolicher::spectral::{self, DoubleComplex, ZigZagFailure};
use frolicher::structfile;
use frolicher::StructureEquations;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FrolicherStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidStructure = 4,
    OutOfRange = 5,
    NoZigzag = 6,
    Internal = 7,
}

/// Parsed structure equations.
pub struct FrolicherStructure(StructureEquations);

/// Page dimensions, Betti numbers and degeneration data.
pub struct FrolicherReport(spectral::FrolicherReport);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).expect("nul bytes removed"));
}

fn fail(status: FrolicherStatus, message: impl Into<String>) -> FrolicherStatus {
    set_error(message);
    status
}

fn guard(f: impl FnOnce() -> FrolicherStatus) -> FrolicherStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => {
            if status == FrolicherStatus::Ok {
                set_error("");
            }
            status
        }
        Err(_) => fail(FrolicherStatus::Internal, "internal error (panic)"),
    }
}

unsafe fn read_str<'a>(text: *const c_char) -> Result<&'a str, FrolicherStatus> {
    if text.is_null() {
        return Err(fail(FrolicherStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(text).to_str().map_err(|_| fail(FrolicherStatus::InvalidUtf8, "string is not UTF-8"))
}

fn to_c_string(text: String) -> *mut c_char {
    CString::new(text.replace('\0', " ")).expect("nul bytes removed").into_raw()
}

fn from_error(e: frolicher::Error) -> FrolicherStatus {
    let status = match e {
        frolicher::Error::Parse(_) => FrolicherStatus::ParseError,
        frolicher::Error::Invalid(_) | frolicher::Error::NotACocycle | frolicher::Error::NotHomogeneous => {
            FrolicherStatus::InvalidStructure
        }
        frolicher::Error::FamilyIndex(_)
        | frolicher::Error::GeneratorCount(_)
        | frolicher::Error::UnknownBuiltin(_) => FrolicherStatus::OutOfRange,
        _ => FrolicherStatus::Internal,
    };
    fail(status, e.to_string())
}

fn emit_structure(eq: StructureEquations, out: *mut *mut FrolicherStructure) -> FrolicherStatus {
    unsafe { *out = Box::into_raw(Box::new(FrolicherStructure(eq))) };
    FrolicherStatus::Ok
}

/// Parses a `.lie` structure-equation file.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn frolicher_structure_parse(
    text: *const c_char,
    out: *mut *mut FrolicherStructure,
) -> FrolicherStatus {
    guard(|| {
        if out.is_null() {
            return fail(FrolicherStatus::NullPointer, "null out pointer");
        }
        let text = match read_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match structfile::parse_structure_file(text) {
            Ok(eq) => emit_structure(eq, out),
            Err(e) => fail(FrolicherStatus::ParseError, e.to_string()),
        }
    })
}

/// A built-in example (`"torus"`, `"iwasawa"`); `dim = 0` selects the
/// default generator count.
///
/// # Safety
/// `name` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn frolicher_structure_builtin(
    name: *const c_char,
    dim: usize,
    out: *mut *mut FrolicherStructure,
) -> FrolicherStatus {
    guard(|| {
        if out.is_null() {
            return fail(FrolicherStatus::NullPointer, "null out pointer");
        }
        let name = match read_str(name) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match model::builtin(name, (dim > 0).then_some(dim)) {
            Ok(eq) => emit_structure(eq, out),
            Err(e) => from_error(e),
        }
    })
}

/// The algebra `X_n` with `2n` generators.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn frolicher_structure_family_xn(n: usize, out: *mut *mut FrolicherStructure) -> FrolicherStatus {
    guard(|| {
        if out.is_null() {
            return fail(FrolicherStatus::NullPointer, "null out pointer");
        }
        match family_xn(n) {
            Ok(eq) => emit_structure(eq, out),
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `s` must be null or a handle from this library, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn frolicher_structure_free(s: *mut FrolicherStructure) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Number of (1,0)-generators.
///
/// # Safety
/// `s` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn frolicher_structure_generators(
    s: *const FrolicherStructure,
    out: *mut usize,
) -> FrolicherStatus {
    guard(|| {
        if s.is_null() || out.is_null() {
            return fail(FrolicherStatus::NullPointer, "null pointer argument");
        }
        *out = (*s).0.m();
        FrolicherStatus::Ok
    })
}

/// Whether `d² = 0` and the structure is integrable.
///
/// # Safety
/// `s` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn frolicher_structure_is_valid(s: *const FrolicherStructure, out: *mut bool) -> FrolicherStatus {
    guard(|| {
        if s.is_null() || out.is_null() {
            return fail(FrolicherStatus::NullPointer, "null pointer argument");
        }
        *out = (*s).0.validate().is_valid();
        FrolicherStatus::Ok
    })
}

/// Canonical `.lie` text; release with [`frolicher_string_free`].
///
/// # Safety
/// `s` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn frolicher_structure_serialize(
    s: *const FrolicherStructure,
    out: *mut *mut c_char,
) -> FrolicherStatus {
    guard(|| {
        if s.is_null() || out.is_null() {
            return fail(FrolicherStatus::NullPointer, "null pointer argument");
        }
        *out = to_c_string(structfile::serialize_structure_file(&(*s).0));
        FrolicherStatus::Ok
    })
}

/// Computes pages `E_0..=E_R`, `R = max_page` or `m+1` when `max_page = 0`.
///
/// # Safety
/// `s` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn frolicher_report_compute(
    s: *const FrolicherStructure,
    max_page: usize,
    out: *mut *mut FrolicherReport,
) -> FrolicherStatus {
    guard(|| {
        if s.is_null() || out.is_null() {
            return fail(FrolicherStatus::NullPointer, "null pointer argument");
        }
        let dc = match DoubleComplex::build(&(*s).0) {
            Ok(dc) => dc,
            Err(e) => return from_error(e),
        };
        let report = spectral::pages_up_to(&dc, (max_page > 0).then_some(max_page));
        *out = Box::into_raw(Box::new(FrolicherReport(report)));
        FrolicherStatus::Ok
    })
}

/// # Safety
/// `r` must be null or a handle from this library, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn frolicher_report_free(r: *mut FrolicherReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Degeneration page, or `0` when the computed pages do not reach it.
///
/// # Safety
/// `r` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn frolicher_report_degeneration_page(
    r: *const FrolicherReport,
    out: *mut usize,
) -> FrolicherStatus {
    guard(|| {
        if r.is_null() || out.is_null() {
            return fail(FrolicherStatus::NullPointer, "null pointer argument");
        }
        *out = (*r).0.degeneration_page.unwrap_or(0);
        FrolicherStatus::Ok
    })
}

/// Number of computed pages (`R + 1`).
///
/// # Safety
/// `r` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn frolicher_report_page_count(r: *const FrolicherReport, out: *mut usize) -> FrolicherStatus {
    guard(|| {
        if r.is_null() || out.is_null() {
            return fail(FrolicherStatus::NullPointer, "null pointer argument");
        }
        *out = (*r).0.pages.len();
        FrolicherStatus::Ok
    })
}

/// `dim E_page^{p,q}`.
///
/// # Safety
/// `r` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn frolicher_report_page_dim(
    r: *const FrolicherReport,
    page: usize,
    p: usize,
    q: usize,
    out: *mut usize,
) -> FrolicherStatus {
    guard(|| {
        if r.is_null() || out.is_null() {
            return fail(FrolicherStatus::NullPointer, "null pointer argument");
        }
        let report = &(*r).0;
        match report.page(page) {
            Some(e) if p <= report.m && q <= report.m => {
                *out = e.dim(p, q);
                FrolicherStatus::Ok
            }
            _ => fail(FrolicherStatus::OutOfRange, format!("no E_{page}^{{{p},{q}}} in this report")),
        }
    })
}

/// Betti number `b_k`, `0 ≤ k ≤ 2m`.
///
/// # Safety
/// `r` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn frolicher_report_betti(
    r: *const FrolicherReport,
    k: usize,
    out: *mut usize,
) -> FrolicherStatus {
    guard(|| {
        if r.is_null() || out.is_null() {
            return fail(FrolicherStatus::NullPointer, "null pointer argument");
        }
        let report = &(*r).0;
        match report.betti.get(k) {
            Some(&b) => {
                *out = b;
                FrolicherStatus::Ok
            }
            None => fail(FrolicherStatus::OutOfRange, format!("no Betti number b_{k}")),
        }
    })
}

/// # Safety
/// `r` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn frolicher_report_euler(r: *const FrolicherReport, out: *mut i64) -> FrolicherStatus {
    guard(|| {
        if r.is_null() || out.is_null() {
            return fail(FrolicherStatus::NullPointer, "null pointer argument");
        }
        *out = (*r).0.euler;
        FrolicherStatus::Ok
    })
}

/// The JSON report; release with [`frolicher_string_free`].
///
/// # Safety
/// `r` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn frolicher_report_json(r: *const FrolicherReport, out: *mut *mut c_char) -> FrolicherStatus {
    guard(|| {
        if r.is_null() || out.is_null() {
            return fail(FrolicherStatus::NullPointer, "null pointer argument");
        }
        *out = to_c_string(structfile::emit_report_json(&(*r).0));
        FrolicherStatus::Ok
    })
}

/// Looks for a zig-zag of `length` from the form `start`. On success
/// `reached = length`; when none exists returns
/// [`FrolicherStatus::NoZigzag`] with `reached` set to the page the class
/// lives to.
///
/// # Safety
/// `s` must be a live handle, `start` a nul-terminated string and
/// `reached` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn frolicher_zigzag_reach(
    s: *const FrolicherStructure,
    start: *const c_char,
    length: usize,
    reached: *mut usize,
) -> FrolicherStatus {
    guard(|| {
        if s.is_null() || reached.is_null() {
            return fail(FrolicherStatus::NullPointer, "null pointer argument");
        }
        if length == 0 {
            return fail(FrolicherStatus::OutOfRange, "length must be at least 1");
        }
        let eq = &(*s).0;
        let start = match read_str(start) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let beta0 = match structfile::parse_form_expr(start, eq.m()) {
            Ok(f) => f,
            Err(e) => return fail(FrolicherStatus::ParseError, e.to_string()),
        };
        let dc = match DoubleComplex::build(eq) {
            Ok(dc) => dc,
            Err(e) => return from_error(e),
        };
        match spectral::find_zigzag(&dc, &beta0, length) {
            Ok(Ok(_)) => {
                *reached = length;
                FrolicherStatus::Ok
            }
            Ok(Err(ZigZagFailure::LivesOnlyTo { reached: i, .. })) => {
                *reached = i;
                fail(FrolicherStatus::NoZigzag, format!("lives only to E_{i}"))
            }
            Err(e) => from_error(e),
        }
    })
}

/// Releases a string returned by this library.
///
/// # Safety
/// `text` must be null or a string from this library, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn frolicher_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(CString::from_raw(text));
    }
}

/// Description of the last failure on this thread; empty after a
/// successful call. Valid until the next call into the library.
#[no_mangle]
pub extern "C" fn frolicher_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}
