use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use taftyd_ffi::*;

fn last_error() -> String {
    let p = taftyd_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn params(n: u32, t: u32) -> *mut TaftydParams {
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { taftyd_params_new(n, t, &mut p) }, TaftydStatus::Ok);
    p
}

fn module(p: *const TaftydParams, i: i64, j: i64, lambda: &str) -> *mut TaftydModule {
    let lam = CString::new(lambda).unwrap();
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { taftyd_module_finite(p, i, j, lam.as_ptr(), &mut m) }, TaftydStatus::Ok);
    m
}

#[test]
fn module_round_trip() {
    unsafe {
        let p = params(3, 1);
        let mut big_n = 0;
        assert_eq!(taftyd_params_big_n(p, &mut big_n), TaftydStatus::Ok);
        assert_eq!(big_n, 3);

        let m = module(p, 2, 2, "0");
        let mut dim = 0usize;
        assert_eq!(taftyd_module_dim(m, &mut dim), TaftydStatus::Ok);
        assert_eq!(dim, 2);

        let mut ok = false;
        assert_eq!(taftyd_module_verify(m, &mut ok), TaftydStatus::Ok);
        assert!(ok);
        assert_eq!(taftyd_module_yang_baxter(m, &mut ok), TaftydStatus::Ok);
        assert!(ok);

        let mut dims = [0usize; 7];
        assert_eq!(taftyd_graded_dims(m, 6, 6561, dims.as_mut_ptr(), dims.len()), TaftydStatus::Ok);
        assert_eq!(dims, [1, 2, 3, 2, 1, 0, 0]);
        assert_eq!(
            taftyd_graded_dims(m, 6, 6561, dims.as_mut_ptr(), 3),
            TaftydStatus::BufferTooSmall
        );

        let mut s = ptr::null_mut();
        assert_eq!(taftyd_module_to_json(m, &mut s), TaftydStatus::Ok);
        let text = CStr::from_ptr(s).to_str().unwrap().to_owned();
        taftyd_string_free(s);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["dim"], "2");
        assert_eq!(v["truncated"], false);

        let m2 = module(p, 5, 2, "0");
        assert_eq!(taftyd_module_iso(m, m2, &mut ok), TaftydStatus::Ok);
        assert!(ok, "i1 = 2 and 5 agree mod N = 3");
        let m3 = module(p, 2, 1, "0");
        assert_eq!(taftyd_module_iso(m, m3, &mut ok), TaftydStatus::Ok);
        assert!(!ok);

        taftyd_module_free(m);
        taftyd_module_free(m2);
        taftyd_module_free(m3);
        taftyd_params_free(p);
    }
}

#[test]
fn classify_through_c() {
    unsafe {
        let p = params(3, 1);
        let zero = CString::new("0").unwrap();
        let mut finite = false;
        let mut s = ptr::null_mut();
        assert_eq!(taftyd_classify(p, 2, 2, zero.as_ptr(), &mut finite, &mut s), TaftydStatus::Ok);
        assert!(finite);
        let v: serde_json::Value = serde_json::from_str(CStr::from_ptr(s).to_str().unwrap()).unwrap();
        taftyd_string_free(s);
        assert_eq!(v["reason"], "TABLE_ROW");
        assert_eq!(v["tags"][0], serde_json::json!(["2", "1"]));

        let one = CString::new("1").unwrap();
        assert_eq!(
            taftyd_classify(p, 0, 0, one.as_ptr(), &mut finite, ptr::null_mut()),
            TaftydStatus::Ok
        );
        assert!(!finite);
        taftyd_params_free(p);
    }
}

#[test]
fn error_codes_and_messages() {
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(taftyd_params_new(1, 0, &mut p), TaftydStatus::InvalidArgument);
        assert!(p.is_null());
        assert!(last_error().contains("n must be at least 2"));

        let p = params(4, 2);
        let mut m = ptr::null_mut();
        assert_eq!(taftyd_module_infinite(p, 2, 0, 8, &mut m), TaftydStatus::InvalidSpecifier);
        assert!(last_error().contains("not in J"));
        assert_eq!(taftyd_module_infinite(p, 1, 0, 8, &mut m), TaftydStatus::Ok);
        assert!(taftyd_last_error_message().is_null());
        let mut dim = 0usize;
        taftyd_module_dim(m, &mut dim);
        assert_eq!(dim, 9);
        let mut dims = [0usize; 3];
        assert_eq!(taftyd_graded_dims(m, 2, 6561, dims.as_mut_ptr(), 3), TaftydStatus::Unsupported);
        taftyd_module_free(m);

        let bad = CString::new("zeta").unwrap();
        assert_eq!(
            taftyd_module_finite(p, 0, 0, bad.as_ptr(), &mut m),
            TaftydStatus::InvalidSpecifier
        );
        assert_eq!(
            taftyd_module_finite(p, 0, 0, ptr::null(), &mut m),
            TaftydStatus::NullPointer
        );
        assert_eq!(taftyd_module_dim(ptr::null(), &mut dim), TaftydStatus::NullPointer);
        let invalid = [0xffu8, 0];
        assert_eq!(
            taftyd_module_finite(p, 0, 0, invalid.as_ptr().cast(), &mut m),
            TaftydStatus::InvalidUtf8
        );
        taftyd_params_free(p);
        taftyd_params_free(ptr::null_mut());
        taftyd_string_free(ptr::null_mut());
    }
    let name = unsafe { CStr::from_ptr(taftyd_status_name(TaftydStatus::BudgetExceeded as i32)) };
    assert_eq!(name.to_str().unwrap(), "budget exceeded");
    let name = unsafe { CStr::from_ptr(taftyd_status_name(99)) };
    assert_eq!(name.to_str().unwrap(), "unknown status");
}

fn header() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include/taftyd.h")
}

#[test]
fn header_declares_the_api() {
    let h = std::fs::read_to_string(header()).unwrap();
    for f in [
        "taftyd_params_new",
        "taftyd_params_free",
        "taftyd_module_finite",
        "taftyd_module_infinite",
        "taftyd_module_verify",
        "taftyd_graded_dims",
        "taftyd_classify",
        "taftyd_last_error_message",
        "taftyd_string_free",
        "typedef struct TaftydModule TaftydModule",
        "TAFTYD_STATUS_OK = 0",
    ] {
        assert!(h.contains(f), "header lacks {f}");
    }
}

const C_PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "taftyd.h"

int main(void) {
    TaftydParams *p = NULL;
    if (taftyd_params_new(3, 1, &p) != TAFTYD_STATUS_OK) return 1;
    TaftydModule *m = NULL;
    if (taftyd_module_finite(p, 2, 2, "0", &m) != TAFTYD_STATUS_OK) return 2;
    size_t dims[6];
    if (taftyd_graded_dims(m, 5, 6561, dims, 6) != TAFTYD_STATUS_OK) return 3;
    size_t expect[6] = {1, 2, 3, 2, 1, 0};
    if (memcmp(dims, expect, sizeof dims) != 0) return 4;
    bool finite = false;
    if (taftyd_classify(p, 2, 2, "0", &finite, NULL) != TAFTYD_STATUS_OK || !finite) return 5;
    TaftydModule *bad = NULL;
    if (taftyd_module_finite(p, 0, 0, "2", &bad) != TAFTYD_STATUS_INVALID_SPECIFIER) return 6;
    if (taftyd_last_error_message() == NULL) return 7;
    taftyd_module_free(m);
    taftyd_params_free(p);
    printf("ok\n");
    return 0;
}
"#;

fn compiler() -> Option<&'static str> {
    ["cc", "gcc", "clang"]
        .into_iter()
        .find(|c| Command::new(c).arg("--version").output().is_ok_and(|o| o.status.success()))
}

#[test]
fn header_compiles_as_c() {
    let Some(cc) = compiler() else {
        eprintln!("no C compiler found; header compile check not run");
        return;
    };
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("probe.c");
    std::fs::write(&src, C_PROGRAM).unwrap();
    let include = header().parent().unwrap().to_path_buf();
    let out = Command::new(cc)
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(&include)
        .arg(&src)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

fn static_library() -> Option<PathBuf> {
    let exe = std::env::current_exe().ok()?;
    let deps = exe.parent()?;
    [deps.join("libtaftyd_ffi.a"), deps.parent()?.join("libtaftyd_ffi.a")]
        .into_iter()
        .find(|p| p.exists())
}

#[test]
fn c_program_links_against_static_library() {
    let (Some(cc), Some(lib)) = (compiler(), static_library()) else {
        eprintln!("no C compiler or static library found; link check not run");
        return;
    };
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("probe.c");
    let bin = dir.path().join("probe");
    std::fs::write(&src, C_PROGRAM).unwrap();
    let out = Command::new(cc)
        .args(["-std=c99", "-I"])
        .arg(header().parent().unwrap())
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let run = Command::new(&bin).output().unwrap();
    assert!(run.status.success(), "probe exited with {:?}", run.status.code());
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "ok");
}
