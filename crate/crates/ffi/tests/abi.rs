use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use selfsim_green_ffi::*;

fn take(s: *mut c_char) -> serde_json::Value {
    let v = serde_json::from_str(unsafe { CStr::from_ptr(s) }.to_str().unwrap()).unwrap();
    unsafe { ssg_string_free(s) };
    v
}

fn diamond() -> *mut SsgCell {
    let mut cell = ptr::null_mut();
    let name = CString::new("diamond").unwrap();
    assert_eq!(unsafe { ssg_cell_builtin(name.as_ptr(), &mut cell) }, SsgStatus::Ok);
    cell
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(ssg_last_error()) }.to_string_lossy().into_owned()
}

#[test]
fn green_series_through_handle() {
    let cell = diamond();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { ssg_green_series_json(cell, 6, &mut out) }, SsgStatus::Ok);
    let v = take(out);
    assert_eq!(v["series"], serde_json::json!(["1", "0", "1/3", "0", "2/9", "0", "5/27"]));
    let (mut n, mut theta) = (0, 0);
    assert_eq!(unsafe { ssg_cell_shape(cell, &mut n, &mut theta) }, SsgStatus::Ok);
    assert_eq!((n, theta), (6, 2));
    unsafe { ssg_cell_free(cell) };
}

#[test]
fn json_outputs() {
    let cell = diamond();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { ssg_invariants_json(cell, &mut out) }, SsgStatus::Ok);
    assert_eq!(take(out)["tau"], "18");
    assert_eq!(unsafe { ssg_classify_json(cell, &mut out) }, SsgStatus::Ok);
    assert_eq!(take(out)["outcome"], "DifferentiallyTranscendental");
    assert_eq!(unsafe { ssg_functions_json(cell, 4, &mut out) }, SsgStatus::Ok);
    assert_eq!(take(out)["series"]["d"][4], "1/9");
    assert_eq!(unsafe { ssg_return_probs_json(cell, 2, 4, &mut out) }, SsgStatus::Ok);
    assert_eq!(take(out)["probs"][4], "2/9");
    assert_eq!(unsafe { ssg_verify_json(cell, &mut out) }, SsgStatus::Ok);
    let v = take(out);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
    unsafe { ssg_cell_free(cell) };
}

#[test]
fn error_codes() {
    let mut cell = ptr::null_mut();
    let bad = CString::new("vertices x\n").unwrap();
    assert_eq!(unsafe { ssg_cell_parse(bad.as_ptr(), &mut cell) }, SsgStatus::Parse);
    assert!(cell.is_null());
    assert!(last_error().contains("line 1"));

    let square = CString::new("vertices 4\nboundary 0 2\nedge 0 1\nedge 1 2\nedge 2 3\nedge 3 0\n").unwrap();
    assert_eq!(unsafe { ssg_cell_parse(square.as_ptr(), &mut cell) }, SsgStatus::InvalidCell);

    let unknown = CString::new("nosuch").unwrap();
    assert_eq!(unsafe { ssg_cell_builtin(unknown.as_ptr(), &mut cell) }, SsgStatus::InvalidArgument);
    assert_eq!(unsafe { ssg_cell_builtin(ptr::null(), &mut cell) }, SsgStatus::NullPointer);

    let mut out = ptr::null_mut();
    assert_eq!(unsafe { ssg_green_series_json(ptr::null(), 3, &mut out) }, SsgStatus::NullPointer);
    let d = diamond();
    assert_eq!(unsafe { ssg_green_series_json(d, 3, ptr::null_mut()) }, SsgStatus::NullPointer);
    unsafe {
        ssg_cell_free(d);
        ssg_cell_free(ptr::null_mut());
        ssg_string_free(ptr::null_mut());
    }
}

#[test]
fn budget_exceeded_status() {
    let cell = diamond();
    let mut out = ptr::null_mut();
    // level 9 of the diamond has 6^8 * 6 edges, over the default budget
    assert_eq!(unsafe { ssg_return_probs_json(cell, 9, 4, &mut out) }, SsgStatus::BudgetExceeded);
    assert!(last_error().contains("budget"));
    unsafe { ssg_cell_free(cell) };
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(ssg_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn c_program_links_against_header() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let profile_dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).parent().unwrap().join("debug");
    let lib = profile_dir.join("libselfsim_green_ffi.a");
    assert!(lib.exists(), "static library missing at {}", lib.display());
    let exe = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("ssg_smoke");
    let status = Command::new("cc")
        .arg(manifest.join("tests/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).contains("\"1/3\""));
}
