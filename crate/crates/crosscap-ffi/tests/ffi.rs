use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use crosscap_ffi::*;

fn parse(s: &str) -> *mut CrosscapScheme {
    let text = CString::new(s).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { crosscap_scheme_parse(text.as_ptr(), &mut out) },
        CrosscapStatus::Ok
    );
    out
}

fn take(s: *mut std::ffi::c_char) -> String {
    let owned = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { crosscap_string_free(s) };
    owned
}

fn last_error() -> String {
    let e = crosscap_last_error();
    assert!(!e.is_null());
    unsafe { CStr::from_ptr(e) }.to_string_lossy().into_owned()
}

#[test]
fn scheme_invariants() {
    let p = parse("1 -6 5 -4 3 -2");
    let (mut n, mut f, mut eg, mut g, mut orientable) = (0, 0, 0, 0, true);
    unsafe {
        assert_eq!(crosscap_scheme_edges(p, &mut n), CrosscapStatus::Ok);
        assert_eq!(crosscap_scheme_faces(p, &mut f), CrosscapStatus::Ok);
        assert_eq!(crosscap_scheme_euler_genus(p, &mut eg), CrosscapStatus::Ok);
        assert_eq!(
            crosscap_scheme_crosscap_number(p, &mut g),
            CrosscapStatus::Ok
        );
        assert_eq!(
            crosscap_scheme_is_orientable(p, &mut orientable),
            CrosscapStatus::Ok
        );
        let mut s = ptr::null_mut();
        assert_eq!(crosscap_scheme_to_string(p, &mut s), CrosscapStatus::Ok);
        assert!(!take(s).is_empty());
        crosscap_scheme_free(p);
    }
    assert_eq!((n, eg, g, orientable), (6, 3, 3, false));
    assert_eq!(f, 2 + n - eg - 2);
}

#[test]
fn drawing_round_trip() {
    let p = parse("1 -2 3 -4");
    unsafe {
        let (mut d, mut exceptional) = (ptr::null_mut(), true);
        assert_eq!(
            crosscap_perfect_drawing(p, &mut d, &mut exceptional),
            CrosscapStatus::Ok
        );
        assert!(!exceptional);
        let mut json = ptr::null_mut();
        assert_eq!(crosscap_drawing_to_json(d, &mut json), CrosscapStatus::Ok);
        let json = CString::new(take(json)).unwrap();
        let mut back = ptr::null_mut();
        assert_eq!(
            crosscap_drawing_from_json(json.as_ptr(), &mut back),
            CrosscapStatus::Ok
        );
        let (mut perfect, mut caps) = (false, 0);
        assert_eq!(
            crosscap_drawing_is_perfect(back, p, &mut perfect),
            CrosscapStatus::Ok
        );
        assert_eq!(
            crosscap_drawing_crosscaps(back, &mut caps),
            CrosscapStatus::Ok
        );
        assert!(perfect);
        assert_eq!(caps, 2);
        let mut svg = ptr::null_mut();
        assert_eq!(crosscap_drawing_to_svg(back, &mut svg), CrosscapStatus::Ok);
        assert!(take(svg).starts_with("<svg"));
        crosscap_drawing_free(back);
        crosscap_drawing_free(d);
        crosscap_scheme_free(p);
    }
}

#[test]
fn exceptional_scheme() {
    let p = parse("1 3 2 4 -8 -6 -7 -5");
    unsafe {
        let (mut d, mut exceptional) = (ptr::null_mut(), false);
        assert_eq!(
            crosscap_perfect_drawing(p, &mut d, &mut exceptional),
            CrosscapStatus::Ok
        );
        assert!(exceptional && d.is_null());
        let mut report = ptr::null_mut();
        assert_eq!(crosscap_classify_json(p, &mut report), CrosscapStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(report)).unwrap();
        assert_eq!(v["verdict"], "exceptional_reduced");
        assert_eq!(
            crosscap_search(p, 10, false, &mut d),
            CrosscapStatus::Budget
        );
        assert!(last_error().contains("nodes"));
        crosscap_scheme_free(p);
    }
}

#[test]
fn search_outcomes() {
    let p = parse("1 -3 -4 2");
    unsafe {
        let mut d = ptr::null_mut();
        assert_eq!(
            crosscap_search(p, 1_000_000, true, &mut d),
            CrosscapStatus::Ok
        );
        assert!(d.is_null());
        assert_eq!(
            crosscap_search(p, 1_000_000, false, &mut d),
            CrosscapStatus::Ok
        );
        assert!(!d.is_null());
        crosscap_drawing_free(d);
        crosscap_scheme_free(p);
    }
}

#[test]
fn error_codes() {
    let mut out = ptr::null_mut();
    unsafe {
        assert_eq!(
            crosscap_scheme_parse(ptr::null(), &mut out),
            CrosscapStatus::NullPointer
        );
        let bad = CString::new("1 -1").unwrap();
        assert_eq!(
            crosscap_scheme_parse(bad.as_ptr(), &mut out),
            CrosscapStatus::Parse
        );
        assert!(out.is_null());
        assert!(!last_error().is_empty());
        let invalid = [0xffu8, 0];
        assert_eq!(
            crosscap_scheme_parse(invalid.as_ptr().cast(), &mut out),
            CrosscapStatus::InvalidUtf8
        );
        let mut n = 0;
        assert_eq!(
            crosscap_scheme_edges(ptr::null(), &mut n),
            CrosscapStatus::NullPointer
        );
        let junk = CString::new("{").unwrap();
        let mut d = ptr::null_mut();
        assert_eq!(
            crosscap_drawing_from_json(junk.as_ptr(), &mut d),
            CrosscapStatus::Parse
        );
        let p = parse("1 2");
        assert!(crosscap_last_error().is_null());
        crosscap_scheme_free(p);
        crosscap_scheme_free(ptr::null_mut());
        crosscap_drawing_free(ptr::null_mut());
        crosscap_string_free(ptr::null_mut());
    }
}

/// Builds the static library, then compiles and runs a C program against it
/// and the generated header.
#[test]
fn c_program_links_against_the_header() {
    let crate_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    // A separate target directory keeps clear of the lock held by the outer cargo.
    let target = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("ffi-smoke");
    let status = Command::new(env!("CARGO"))
        .args([
            "build",
            "--offline",
            "--release",
            "--lib",
            "-p",
            "crosscap-ffi",
            "--target-dir",
        ])
        .arg(&target)
        .current_dir(&crate_dir)
        .status()
        .expect("cargo runs");
    assert!(status.success());
    let lib = target.join("release/libcrosscap_ffi.a");
    assert!(lib.exists(), "{} missing", lib.display());
    let exe = target.join("smoke");
    let status = Command::new("cc")
        .arg(crate_dir.join("tests/smoke.c"))
        .arg("-I")
        .arg(crate_dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("cc runs");
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "ok");
}
