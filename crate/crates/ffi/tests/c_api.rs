use std::ffi::{c_char, CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use khoma_ffi::*;

fn take_string(s: *mut c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { khoma_string_free(s) };
    out
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(khoma_last_error_message()) }.to_str().unwrap().to_owned()
}

fn parse(pd: &str) -> *mut KhomaDiagram {
    let c = CString::new(pd).unwrap();
    let mut d = ptr::null_mut();
    assert_eq!(unsafe { khoma_diagram_parse(c.as_ptr(), &mut d) }, KhomaStatus::Ok);
    d
}

#[test]
fn trefoil_bracket() {
    let d = parse("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)");
    assert_eq!(unsafe { khoma_diagram_crossing_count(d) }, 3);
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { khoma_bracket(d, false, &mut p) }, KhomaStatus::Ok);
    assert_eq!(unsafe { khoma_polynomial_coefficient(p, -7) }, 1);
    assert_eq!(unsafe { khoma_polynomial_coefficient(p, 5) }, -1);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { khoma_polynomial_to_string(p, &mut s) }, KhomaStatus::Ok);
    assert_eq!(take_string(s), "A^-7 - A^-3 - A^5");
    assert_eq!(unsafe { khoma_polynomial_to_json(p, &mut s) }, KhomaStatus::Ok);
    assert_eq!(take_string(s), r#"{"-7":1,"-3":-1,"5":-1}"#);
    unsafe {
        khoma_polynomial_free(p);
        khoma_diagram_free(d);
    }
}

#[test]
fn torus_homology_table() {
    let mut d = ptr::null_mut();
    assert_eq!(unsafe { khoma_diagram_torus(3, &mut d) }, KhomaStatus::Ok);
    let mut t = ptr::null_mut();
    assert_eq!(unsafe { khoma_homology(d, &mut t) }, KhomaStatus::Ok);
    assert_eq!(unsafe { khoma_homology_len(t) }, 5);

    let (mut a, mut b) = (0, 0);
    assert_eq!(unsafe { khoma_homology_bigrade(t, 0, &mut a, &mut b) }, KhomaStatus::Ok);
    assert_eq!((a, b), (3, 7));
    assert_eq!(unsafe { khoma_homology_bigrade(t, 5, &mut a, &mut b) }, KhomaStatus::InvalidArgument);

    let (mut free, mut len) = (9, 9);
    let mut torsion = [0u64; 2];
    let status = unsafe { khoma_homology_get(t, -3, -5, &mut free, torsion.as_mut_ptr(), 2, &mut len) };
    assert_eq!(status, KhomaStatus::Ok);
    assert_eq!((free, len, torsion[0]), (0, 1, 2));
    let status = unsafe { khoma_homology_get(t, 0, 0, &mut free, ptr::null_mut(), 0, &mut len) };
    assert_eq!(status, KhomaStatus::Ok);
    assert_eq!((free, len), (0, 0));

    let mut s = ptr::null_mut();
    assert_eq!(unsafe { khoma_homology_render(t, KhomaFormat::Csv, &mut s) }, KhomaStatus::Ok);
    assert!(take_string(s).contains("-5,Z_2,,,"));
    assert_eq!(unsafe { khoma_homology_render(t, KhomaFormat::Json, &mut s) }, KhomaStatus::Ok);
    assert!(take_string(s).starts_with(r#"{"entries":[{"a":3,"b":7"#));
    unsafe {
        khoma_homology_free(t);
        khoma_diagram_free(d);
    }
}

#[test]
fn errors_are_reported() {
    let mut d = ptr::null_mut();
    let bad = CString::new("X(1,2,3").unwrap();
    assert_eq!(unsafe { khoma_diagram_parse(bad.as_ptr(), &mut d) }, KhomaStatus::Parse);
    assert!(d.is_null());
    assert!(last_error().contains("syntax error"));

    let unpaired = CString::new("X(1,2,3,4)").unwrap();
    assert_eq!(unsafe { khoma_diagram_parse(unpaired.as_ptr(), &mut d) }, KhomaStatus::Parse);

    assert_eq!(unsafe { khoma_diagram_parse(ptr::null(), &mut d) }, KhomaStatus::NullPointer);
    let invalid = [0xffu8, 0];
    assert_eq!(unsafe { khoma_diagram_parse(invalid.as_ptr().cast(), &mut d) }, KhomaStatus::InvalidUtf8);
    assert_eq!(unsafe { khoma_diagram_torus(0, &mut d) }, KhomaStatus::InvalidArgument);

    let empty = parse("");
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { khoma_bracket(empty, false, &mut p) }, KhomaStatus::InvalidArgument);
    assert_eq!(unsafe { khoma_bracket(empty, true, &mut p) }, KhomaStatus::Ok);
    assert!(last_error().is_empty());
    unsafe {
        khoma_polynomial_free(p);
        khoma_diagram_free(empty);
        khoma_diagram_free(ptr::null_mut());
        khoma_string_free(ptr::null_mut());
    }
    assert_eq!(unsafe { khoma_homology(ptr::null(), &mut ptr::null_mut()) }, KhomaStatus::NullPointer);
    assert_eq!(unsafe { khoma_homology_len(ptr::null()) }, 0);
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(khoma_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

fn header() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("include/khoma.h")
}

#[test]
fn header_declares_the_api() {
    let h = std::fs::read_to_string(header()).unwrap();
    for name in [
        "typedef struct KhomaDiagram KhomaDiagram;",
        "KHOMA_STATUS_NULL_POINTER = 1",
        "KHOMA_STATUS_PANIC = 6",
        "khoma_diagram_parse(const char *pd, struct KhomaDiagram **out)",
        "khoma_homology_get(",
        "void khoma_string_free(char *s);",
        "const char *khoma_last_error_message(void);",
    ] {
        assert!(h.contains(name), "missing {name}");
    }
}

/// Compile and run a small C program against the static library.
#[test]
fn c_program_links_and_runs() {
    let tmp = Path::new(env!("CARGO_TARGET_TMPDIR"));
    let profile_dir = tmp.parent().unwrap().join(if cfg!(debug_assertions) { "debug" } else { "release" });
    let lib = profile_dir.join("libkhoma_ffi.a");
    assert!(lib.exists(), "{} not built", lib.display());
    let exe = tmp.join("khoma_smoke");
    let src = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/smoke.c");
    let status = Command::new("cc")
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(header().parent().unwrap())
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("a C compiler is available");
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("ok "));
}
