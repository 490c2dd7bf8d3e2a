use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use skewhilbert_ffi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

#[test]
fn corpus_handle_round_trip() {
    unsafe {
        let mut a = ptr::null_mut();
        assert_eq!(sh_algebra_corpus(cstr("fig1").as_ptr(), &mut a), ShStatus::Ok);
        let mut n = 0;
        assert_eq!(sh_algebra_size(a, &mut n), ShStatus::Ok);
        assert_eq!(n, 7);
        let (mut x, mut y, mut v) = (0, 0, 0);
        assert_eq!(sh_algebra_index(a, cstr("a").as_ptr(), &mut x), ShStatus::Ok);
        assert_eq!(sh_algebra_index(a, cstr("b").as_ptr(), &mut y), ShStatus::Ok);
        assert_eq!(sh_algebra_star(a, x, y, &mut v), ShStatus::Ok);
        let mut d = 0;
        assert_eq!(sh_algebra_index(a, cstr("d").as_ptr(), &mut d), ShStatus::Ok);
        assert_eq!(v, d);
        assert_eq!(sh_algebra_star(a, 99, 0, &mut v), ShStatus::OutOfRange);

        let mut text = ptr::null_mut();
        assert_eq!(sh_algebra_emit(a, &mut text), ShStatus::Ok);
        let mut b = ptr::null_mut();
        assert_eq!(sh_algebra_parse(text, &mut b), ShStatus::Ok);
        sh_string_free(text);
        let mut m = 0;
        sh_algebra_size(b, &mut m);
        assert_eq!(m, 7);
        sh_algebra_free(b);
        sh_algebra_free(a);
    }
}

#[test]
fn check_reports_witness() {
    unsafe {
        let mut a = ptr::null_mut();
        sh_algebra_corpus(cstr("fig1").as_ptr(), &mut a);
        let mut pass = true;
        let mut json = ptr::null_mut();
        assert_eq!(sh_check(a, cstr("hilbert").as_ptr(), &mut pass, &mut json), ShStatus::Ok);
        assert!(!pass);
        let doc: serde_json::Value = serde_json::from_str(CStr::from_ptr(json).to_str().unwrap()).unwrap();
        assert_eq!(doc["clause"], "H5");
        assert_eq!(doc["witness"], serde_json::json!(["a", "0", "e"]));
        sh_string_free(json);
        assert_eq!(sh_check(a, cstr("skew-hilbert").as_ptr(), &mut pass, ptr::null_mut()), ShStatus::Ok);
        assert!(pass);
        assert_eq!(sh_check(a, cstr("nonsense").as_ptr(), &mut pass, ptr::null_mut()), ShStatus::UnknownName);
        sh_algebra_free(a);
    }
}

#[test]
fn errors_set_message() {
    unsafe {
        let mut a = ptr::null_mut();
        assert_eq!(sh_algebra_parse(cstr("elements: a b\ntop: c\n").as_ptr(), &mut a), ShStatus::Parse);
        assert!(a.is_null());
        let msg = sh_last_error();
        assert!(!msg.is_null());
        assert!(!CStr::from_ptr(msg).to_str().unwrap().is_empty());
        sh_string_free(msg);
        assert_eq!(sh_algebra_parse(ptr::null(), &mut a), ShStatus::NullArgument);
        assert_eq!(sh_algebra_corpus(cstr("nope").as_ptr(), &mut a), ShStatus::UnknownName);
        assert_eq!(CStr::from_ptr(sh_status_name(ShStatus::Parse)).to_str().unwrap(), "parse error");
    }
}

#[test]
fn counts_and_caps() {
    unsafe {
        let mut n = 0;
        assert_eq!(sh_count_models(cstr("skew-hilbert").as_ptr(), 2, false, &mut n), ShStatus::Ok);
        assert_eq!(n, 1);
        assert_eq!(sh_count_models(cstr("skew-hilbert").as_ptr(), 3, true, &mut n), ShStatus::Ok);
        assert_eq!(n, 2);
        assert_eq!(sh_count_models(cstr("skew-hilbert").as_ptr(), 40, true, &mut n), ShStatus::CapExceeded);
    }
}

/// Compiles a C program against the generated header and the static library.
#[test]
fn c_program_links_against_header() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let target = std::env::var_os("CARGO_TARGET_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| manifest.join("../../target"));
    let profile_dir = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let lib = [profile_dir.join("libskewhilbert_ffi.a"), target.join("debug/libskewhilbert_ffi.a")]
        .into_iter()
        .find(|p| p.exists())
        .expect("static library built alongside the tests");
    let out = std::env::temp_dir().join(format!("skewhilbert_smoke_{}", std::process::id()));
    let status = Command::new("cc")
        .arg(manifest.join("tests/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status()
        .expect("C compiler available");
    assert!(status.success(), "C compile failed");
    let run = Command::new(&out).output().unwrap();
    let _ = std::fs::remove_file(&out);
    assert!(run.status.success(), "smoke program exited with {:?}", run.status.code());
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "ok");
}
