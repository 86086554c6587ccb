//! C ABI over `selfsim-green`.
//!
//! Cells are opaque `SsgCell` handles. Results come back as JSON strings
//! owned by the caller and released with `ssg_string_free`. Every call
//! returns an `SsgStatus`; on failure `ssg_last_error` describes the cause
//! for the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use selfsim_green::blowup::{blowup, exact_return_probs, BlowupOptions};
use selfsim_green::cell::{builtin, parse_cell, validate_cell, CellGraph, ValidateOptions};
use selfsim_green::classify::classify;
use selfsim_green::green::cell_functions;
use selfsim_green::iteration::{green_series, invariants_with};
use selfsim_green::report::FunctionsReport;
use selfsim_green::verify::verify_cell;
use selfsim_green::Error;

/// Status codes shared by every entry point.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SsgStatus {
    Ok = 0,
    NullPointer = 1,
    Parse = 2,
    InvalidCell = 3,
    InvalidArgument = 4,
    BudgetExceeded = 5,
    Internal = 6,
}

/// Opaque cell handle.
pub struct SsgCell {
    graph: CellGraph,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn status_of(e: &Error) -> SsgStatus {
    match e {
        Error::Parse { .. } => SsgStatus::Parse,
        Error::InvalidCell(_) => SsgStatus::InvalidCell,
        Error::UnsupportedTheta(_) | Error::InvalidArgument(_) | Error::PointTooClose { .. } => SsgStatus::InvalidArgument,
        Error::BudgetExceeded { .. } => SsgStatus::BudgetExceeded,
        _ => SsgStatus::Internal,
    }
}

fn fail(status: SsgStatus, msg: impl Into<String>) -> SsgStatus {
    set_error(msg);
    status
}

/// Runs `f`, turning errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), SsgStatus>) -> SsgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SsgStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => fail(SsgStatus::Internal, "panic in selfsim-green"),
    }
}

fn lift<T>(r: selfsim_green::Result<T>) -> Result<T, SsgStatus> {
    r.map_err(|e| fail(status_of(&e), e.to_string()))
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, SsgStatus> {
    if p.is_null() {
        return Err(fail(SsgStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p).to_str().map_err(|_| fail(SsgStatus::InvalidArgument, "string is not UTF-8"))
}

unsafe fn cell_ref<'a>(cell: *const SsgCell) -> Result<&'a CellGraph, SsgStatus> {
    cell.as_ref().map(|c| &c.graph).ok_or_else(|| fail(SsgStatus::NullPointer, "null cell handle"))
}

unsafe fn write_json<T: serde::Serialize>(value: &T, out: *mut *mut c_char) -> Result<(), SsgStatus> {
    if out.is_null() {
        return Err(fail(SsgStatus::NullPointer, "null output pointer"));
    }
    let s = serde_json::to_string(value).map_err(|e| fail(SsgStatus::Internal, e.to_string()))?;
    let c = CString::new(s).map_err(|e| fail(SsgStatus::Internal, e.to_string()))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn store_cell(graph: CellGraph, out: *mut *mut SsgCell) -> Result<(), SsgStatus> {
    if out.is_null() {
        return Err(fail(SsgStatus::NullPointer, "null output pointer"));
    }
    let report = validate_cell(&graph, ValidateOptions::default());
    if !report.is_valid() {
        return Err(fail(SsgStatus::InvalidCell, report.violations.join("; ")));
    }
    *out = Box::into_raw(Box::new(SsgCell { graph }));
    Ok(())
}

/// Message for the last failed call on this thread, or null. Valid until
/// the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ssg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn ssg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses and validates a cell in the text grammar.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn ssg_cell_parse(text: *const c_char, out: *mut *mut SsgCell) -> SsgStatus {
    guard(|| {
        let g = lift(parse_cell(read_str(text)?))?;
        store_cell(g, out)
    })
}

/// One of the built-in cells: diamond, path2, sierpinski, k4_corners.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn ssg_cell_builtin(name: *const c_char, out: *mut *mut SsgCell) -> SsgStatus {
    guard(|| {
        let name = read_str(name)?;
        let g = builtin(name).ok_or_else(|| fail(SsgStatus::InvalidArgument, format!("unknown built-in cell '{name}'")))?;
        store_cell(g, out)
    })
}

/// # Safety
/// `cell` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn ssg_cell_free(cell: *mut SsgCell) {
    if !cell.is_null() {
        drop(Box::from_raw(cell));
    }
}

/// Vertex count and branching number.
///
/// # Safety
/// `cell` must be a live handle; `vertices` and `theta` writable pointers.
#[no_mangle]
pub unsafe extern "C" fn ssg_cell_shape(cell: *const SsgCell, vertices: *mut usize, theta: *mut usize) -> SsgStatus {
    guard(|| {
        let g = cell_ref(cell)?;
        if vertices.is_null() || theta.is_null() {
            return Err(fail(SsgStatus::NullPointer, "null output pointer"));
        }
        *vertices = g.n();
        *theta = g.theta();
        Ok(())
    })
}

/// `f`, `d`, `r`, their radii and expansions through `z^order`.
///
/// # Safety
/// `cell` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn ssg_functions_json(cell: *const SsgCell, order: usize, out: *mut *mut c_char) -> SsgStatus {
    guard(|| {
        let cf = lift(cell_functions(cell_ref(cell)?))?;
        write_json(&lift(FunctionsReport::new(&cf, order))?, out)
    })
}

/// Green's function coefficients through `z^order`, as rational strings.
///
/// # Safety
/// `cell` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn ssg_green_series_json(cell: *const SsgCell, order: usize, out: *mut *mut c_char) -> SsgStatus {
    guard(|| {
        let cf = lift(cell_functions(cell_ref(cell)?))?;
        write_json(&lift(green_series(&cf, order))?, out)
    })
}

/// # Safety
/// `cell` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn ssg_invariants_json(cell: *const SsgCell, out: *mut *mut c_char) -> SsgStatus {
    guard(|| {
        let g = cell_ref(cell)?;
        let cf = lift(cell_functions(g))?;
        write_json(&lift(invariants_with(g, &cf))?, out)
    })
}

/// # Safety
/// `cell` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn ssg_classify_json(cell: *const SsgCell, out: *mut *mut c_char) -> SsgStatus {
    guard(|| write_json(&classify(cell_ref(cell)?), out))
}

/// Full property suite; the edge budget comes from `SSGREEN_EDGE_BUDGET`.
///
/// # Safety
/// `cell` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn ssg_verify_json(cell: *const SsgCell, out: *mut *mut c_char) -> SsgStatus {
    guard(|| {
        let v = lift(verify_cell(cell_ref(cell)?, &BlowupOptions::default()))?;
        write_json(&v, out)
    })
}

/// Exact `n`-step return probabilities on the level-`level` approximant.
///
/// # Safety
/// `cell` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn ssg_return_probs_json(
    cell: *const SsgCell,
    level: usize,
    n_max: usize,
    out: *mut *mut c_char,
) -> SsgStatus {
    guard(|| {
        let a = lift(blowup(cell_ref(cell)?, level, &BlowupOptions::default()))?;
        write_json(&exact_return_probs(&a, n_max), out)
    })
}

/// # Safety
/// `s` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn ssg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
