use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use ydcalc_ffi::*;

fn last_error() -> String {
    let p = yd_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn context(p: usize) -> *mut YdContext {
    let mut k = ptr::null_mut();
    assert_eq!(unsafe { yd_context_new(p, &mut k) }, YdStatus::Ok);
    k
}

#[test]
fn hopf_handles_round_trip() {
    unsafe {
        let k = context(2);
        for (which, dim) in [(YdAlgebra::H, 8), (YdAlgebra::A, 8), (YdAlgebra::DualOfH, 8), (YdAlgebra::Double, 64)] {
            let mut h = ptr::null_mut();
            assert_eq!(yd_hopf_build(k, which, &mut h), YdStatus::Ok);
            let mut d = 0usize;
            assert_eq!(yd_hopf_dim(h, &mut d), YdStatus::Ok);
            assert_eq!(d, dim);
            let mut pass = false;
            assert_eq!(yd_hopf_verify(h, &mut pass), YdStatus::Ok);
            assert!(pass, "{which:?}");

            let mut json = ptr::null_mut();
            assert_eq!(yd_hopf_to_json(h, &mut json), YdStatus::Ok);
            let mut back = ptr::null_mut();
            assert_eq!(yd_hopf_from_json(json, &mut back), YdStatus::Ok);
            let mut d2 = 0usize;
            assert_eq!(yd_hopf_dim(back, &mut d2), YdStatus::Ok);
            assert_eq!(d2, dim);
            yd_string_free(json);
            yd_hopf_free(back);
            yd_hopf_free(h);
        }
        yd_context_free(k);
    }
}

#[test]
fn corrupted_algebra_fails_verification() {
    unsafe {
        let k = context(2);
        let mut h = ptr::null_mut();
        assert_eq!(yd_hopf_build(k, YdAlgebra::H, &mut h), YdStatus::Ok);
        let mut json = ptr::null_mut();
        assert_eq!(yd_hopf_to_json(h, &mut json), YdStatus::Ok);
        let mut v: serde_json::Value = serde_json::from_str(CStr::from_ptr(json).to_str().unwrap()).unwrap();
        yd_string_free(json);
        let e = v["mult"].as_array_mut().unwrap().iter_mut().find(|e| e[0] == 1 && e[1] == 1).unwrap();
        e[3] = "2".into();
        let text = CString::new(v.to_string()).unwrap();
        let mut bad = ptr::null_mut();
        assert_eq!(yd_hopf_from_json(text.as_ptr(), &mut bad), YdStatus::Ok);
        let mut pass = true;
        assert_eq!(yd_hopf_verify(bad, &mut pass), YdStatus::Ok);
        assert!(!pass);
        assert!(last_error().contains("fails"));
        yd_hopf_free(bad);
        yd_hopf_free(h);
        yd_context_free(k);
    }
}

#[test]
fn computations_and_error_codes() {
    unsafe {
        let k = context(3);
        let (mut braid, mut closed) = (false, false);
        assert_eq!(yd_braiding_check(k, 1, 2, 1 << 16, &mut braid, &mut closed), YdStatus::Ok);
        assert!(braid && closed);
        assert_eq!(yd_braiding_check(k, 2, 0, 1 << 16, &mut braid, &mut closed), YdStatus::InvalidArgument);
        assert!(last_error().contains("not in Λ"));

        let (mut total, mut complete) = (0u64, false);
        assert_eq!(yd_nichols_total(k, 2, 2, 16, 4096, &mut total, &mut complete), YdStatus::Ok);
        assert!(complete);
        assert_eq!(total, 6);
        assert_eq!(yd_nichols_total(k, 1, 2, 16, 2, &mut total, &mut complete), YdStatus::CapExceeded);

        let mu = CString::new("1").unwrap();
        let mut dim = 0u64;
        assert_eq!(yd_lifting_dimension(k, YdFamily::Cubic, 1, 2, mu.as_ptr(), ptr::null(), 4096, &mut dim), YdStatus::Ok);
        assert_eq!(dim, 216);
        assert_eq!(yd_lifting_dimension(k, YdFamily::Pair, 0, 0, mu.as_ptr(), mu.as_ptr(), 4096, &mut dim), YdStatus::InvalidArgument);
        let junk = CString::new("1 +* x").unwrap();
        assert_eq!(yd_lifting_dimension(k, YdFamily::Cubic, 1, 2, junk.as_ptr(), ptr::null(), 4096, &mut dim), YdStatus::InvalidArgument);

        let mut report = ptr::null_mut();
        assert_eq!(yd_classification_report_json(k, &mut report), YdStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(CStr::from_ptr(report).to_str().unwrap()).unwrap();
        assert_eq!(v["p"], 3);
        yd_string_free(report);

        assert_eq!(yd_hopf_dim(ptr::null(), &mut 0usize), YdStatus::NullPointer);
        assert_eq!(yd_context_new(1, &mut ptr::null_mut()), YdStatus::InvalidArgument);
        let k6 = context(6);
        assert_eq!(yd_classification_report_json(k6, &mut report), YdStatus::InvalidArgument);
        yd_context_free(k6);
        yd_context_free(k);
    }
}

fn header() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("include/ydcalc.h")
}

#[test]
fn header_declares_every_entry_point() {
    let h = std::fs::read_to_string(header()).unwrap();
    let src = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("src/lib.rs")).unwrap();
    let exported: Vec<&str> = src
        .lines()
        .filter_map(|l| l.split("extern \"C\" fn ").nth(1))
        .map(|rest| rest.split('(').next().unwrap())
        .collect();
    assert!(exported.len() >= 12);
    for f in exported {
        assert!(h.contains(&format!("{f}(")), "{f} missing from header");
    }
    assert!(h.contains("typedef struct YdContext YdContext;"));
    assert!(h.contains("YD_STATUS_CAP_EXCEEDED = 4"));
}

/// Compile a C client against the generated header and the static library.
#[test]
fn c_client_links_and_runs() {
    let target = std::env::var_os("CARGO_TARGET_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("../../target"));
    let lib = ["debug", "release"].iter().map(|p| target.join(p)).find(|d| d.join("libydcalc_ffi.a").exists());
    let (Some(lib), Ok(_)) = (lib, Command::new("cc").arg("--version").output()) else {
        eprintln!("static library or C compiler not available; skipped");
        return;
    };
    let dir = std::env::temp_dir().join(format!("ydcalc-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let c = dir.join("client.c");
    std::fs::write(
        &c,
        r#"#include <stdio.h>
#include "ydcalc.h"
int main(void) {
    YdContext *k = NULL;
    YdHopf *h = NULL;
    size_t dim = 0;
    bool pass = false;
    if (yd_context_new(2, &k) != YD_STATUS_OK) return 10;
    if (yd_hopf_build(k, YD_ALGEBRA_DOUBLE, &h) != YD_STATUS_OK) return 11;
    if (yd_hopf_dim(h, &dim) != YD_STATUS_OK || dim != 64) return 12;
    if (yd_hopf_verify(h, &pass) != YD_STATUS_OK || !pass) return 13;
    if (yd_hopf_dim(NULL, &dim) != YD_STATUS_NULL_POINTER) return 14;
    printf("%zu\n", dim);
    yd_hopf_free(h);
    yd_context_free(k);
    return 0;
}
"#,
    )
    .unwrap();
    let exe = dir.join("client");
    let out = Command::new("cc")
        .arg(&c)
        .arg("-I")
        .arg(header().parent().unwrap())
        .arg(lib.join("libydcalc_ffi.a"))
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let run = Command::new(&exe).output().unwrap();
    assert_eq!(run.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "64");
    std::fs::remove_dir_all(&dir).ok();
}
