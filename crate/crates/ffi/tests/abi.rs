use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use intsim_ffi::*;
use serde_json::Value;

fn parse(json: &str) -> (IntsimStatus, *mut IntsimMatrix) {
    let text = CString::new(json).unwrap();
    let mut m = ptr::null_mut();
    let s = unsafe { intsim_matrix_parse(text.as_ptr(), &mut m) };
    (s, m)
}

fn document(r: *const IntsimReport) -> Value {
    let text = unsafe { CStr::from_ptr(intsim_report_json(r)) }.to_str().unwrap();
    serde_json::from_str(text).unwrap()
}

fn last_error() -> String {
    let p = intsim_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn decide_and_verify_round_trip() {
    let (s, m) = parse(r#"{"ring":"Z","entries":[[0,2],[3,5]]}"#);
    assert_eq!(s, IntsimStatus::Ok);
    unsafe {
        assert_eq!(intsim_matrix_rows(m), 2);
        assert_eq!(intsim_matrix_cols(m), 2);
        let mut r = ptr::null_mut();
        let s = intsim_decide(m, IntsimKind::Tri as u32, IntsimLevel::Ring as u32, 0, 1, 1_000_000, &mut r);
        assert_eq!(s, IntsimStatus::Ok);
        assert_eq!(intsim_report_exit_code(r), 0);
        let doc = document(r);
        assert_eq!(doc["result"]["decision"]["verdict"], "yes");

        let mut v = ptr::null_mut();
        assert_eq!(intsim_verify(intsim_report_json(r), &mut v), IntsimStatus::Ok);
        assert_eq!(document(v)["result"]["verified"], true);
        intsim_report_free(v);
        intsim_report_free(r);
        intsim_matrix_free(m);
    }
}

#[test]
fn parse_errors_set_the_message() {
    let (s, m) = parse(r#"{"ring":"Qsqrt","d":10,"entries":[[[1,0]]]}"#);
    assert_eq!(s, IntsimStatus::Usage);
    assert!(m.is_null());
    assert!(last_error().contains("invalid input"));
    let (s, _) = parse("{\"ring\":\"Z\",\n\"entries\":[[1,]]}");
    assert_eq!(s, IntsimStatus::Usage);
    assert!(last_error().contains("line 2"));
}

#[test]
fn null_and_invalid_arguments() {
    unsafe {
        let mut m = ptr::null_mut();
        assert_eq!(intsim_matrix_parse(ptr::null(), &mut m), IntsimStatus::NullPointer);
        let mut r = ptr::null_mut();
        assert_eq!(intsim_decide(ptr::null(), 0, 0, 0, 1, 10, &mut r), IntsimStatus::NullPointer);
        assert!(r.is_null());
        let (_, m) = parse(r#"{"ring":"Z","entries":[[1]]}"#);
        assert_eq!(intsim_decide(m, 7, 0, 0, 1, 10, &mut r), IntsimStatus::InvalidArgument);
        assert_eq!(intsim_decide(m, 0, 9, 0, 1, 10, &mut r), IntsimStatus::InvalidArgument);
        assert_eq!(intsim_decide(m, 0, 0, 0, 1, 10, ptr::null_mut()), IntsimStatus::NullPointer);
        assert_eq!(intsim_matrix_rows(ptr::null()), 0);
        assert!(intsim_report_json(ptr::null()).is_null());
        assert_eq!(intsim_report_exit_code(ptr::null()), -1);
        intsim_matrix_free(m);
        intsim_matrix_free(ptr::null_mut());
        intsim_report_free(ptr::null_mut());
    }
}

#[test]
fn status_codes_follow_exit_codes() {
    unsafe {
        let mut r = ptr::null_mut();
        assert_eq!(intsim_strata_audit(1, 2, 0, 2, 10, &mut r), IntsimStatus::Capacity);
        assert!(last_error().contains("capacity"));
        assert_eq!(intsim_report_exit_code(r), 3);
        intsim_report_free(r);

        assert_eq!(intsim_strata_audit(1, 2, 0, 2, 0, &mut r), IntsimStatus::Ok);
        assert_eq!(document(r)["input"]["budget"], 10_000_000);
        let audit = &document(r)["result"]["audits"][0];
        assert_eq!(audit["counts"]["X"], 40);
        intsim_report_free(r);

        let (_, m) = parse(r#"{"ring":"Qsqrt","d":-5,"entries":[[[1,0],[1,0]],[[0,0],[1,0]]]}"#);
        assert_eq!(intsim_decide(m, 0, 0, 0, 1, 10, &mut r), IntsimStatus::Unsupported);
        intsim_report_free(r);
        intsim_matrix_free(m);
    }
}

#[test]
fn counterexample_report_and_certification() {
    unsafe {
        let mut r = ptr::null_mut();
        assert_eq!(intsim_counterexample(0, -5, 2, true, 50, &mut r), IntsimStatus::Ok);
        let doc = document(r);
        assert_eq!(doc["result"]["certification"]["passed"], true);
        let mut v = ptr::null_mut();
        assert_eq!(intsim_verify(intsim_report_json(r), &mut v), IntsimStatus::Ok);
        intsim_report_free(v);
        intsim_report_free(r);

        let (_, m) = parse(r#"{"ring":"Qsqrt","d":-5,"entries":[[[4,-2],[2,2]],[[-2,-2],[4,0]]]}"#);
        assert_eq!(intsim_certify(m, 0, 50, &mut r), IntsimStatus::Ok);
        assert_eq!(document(r)["result"]["passed"], true);
        intsim_report_free(r);
        assert_eq!(intsim_report(m, 0, 20, 1_000_000, &mut r), IntsimStatus::Ok);
        assert_eq!(document(r)["result"]["conditions"][0]["verdict"], "no");
        intsim_report_free(r);
        intsim_matrix_free(m);
    }
}

#[test]
fn version_is_the_crate_version() {
    let v = unsafe { CStr::from_ptr(intsim_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

fn has_cc() -> bool {
    Command::new("cc").arg("--version").output().is_ok_and(|o| o.status.success())
}

#[test]
fn header_compiles_as_c_and_cpp() {
    if !has_cc() {
        eprintln!("no C compiler, skipping");
        return;
    }
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let include = dir.join("include");
    let demo = dir.join("examples/demo.c");
    let out = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(&include)
        .arg(&demo)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let out = Command::new("c++")
        .args(["-x", "c++", "-fsyntax-only", "-I"])
        .arg(&include)
        .arg(dir.join("include/intsim.h"))
        .output();
    if let Ok(out) = out {
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
}
