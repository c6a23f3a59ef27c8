use std::ffi::{c_char, CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use sqrank_ffi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take_string(p: *mut c_char) -> String {
    let s = CStr::from_ptr(p).to_str().unwrap().to_owned();
    sq_string_free(p);
    s
}

unsafe fn last_error() -> String {
    CStr::from_ptr(sq_last_error()).to_string_lossy().into_owned()
}

#[test]
fn partition_round_trip() {
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(sq_partition_parse(cstr("3^2 1^2").as_ptr(), &mut p), SqStatus::Ok);
        assert_eq!(sq_partition_len(p), 4);
        assert_eq!(sq_partition_weight(p), 8);
        let mut buf = [0u32; 8];
        assert_eq!(sq_partition_parts(p, buf.as_mut_ptr(), buf.len()), 4);
        assert_eq!(&buf[..4], &[3, 3, 1, 1]);
        assert_eq!(sq_partition_parts(p, ptr::null_mut(), 0), 4);

        let (mut sq, mut re, mut m, mut d) = (0, 0, 0, 0);
        assert_eq!(sq_sqrank(p, &mut sq), SqStatus::Ok);
        assert_eq!(sq_rerank(p, &mut re), SqStatus::Ok);
        assert_eq!(sq_mex(p, 2, 1, &mut m), SqStatus::Ok);
        assert_eq!(sq_durfee_side(p, 0, &mut d), SqStatus::Ok);
        assert_eq!((sq, re, m, d), (1, 2, 5, 2));
        sq_partition_free(p);

        let parts = [5u32, 3, 3, 1];
        assert_eq!(sq_partition_from_parts(parts.as_ptr(), 4, &mut p), SqStatus::Ok);
        let mut e1 = 0;
        assert_eq!(sq_e1_stat(p, 3, &mut e1), SqStatus::Ok);
        sq_partition_free(p);

        assert_eq!(sq_partition_from_parts(ptr::null(), 0, &mut p), SqStatus::Ok);
        assert_eq!(sq_partition_weight(p), 0);
        sq_partition_free(p);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(sq_partition_parse(ptr::null(), &mut p), SqStatus::NullPointer);
        assert_eq!(sq_partition_parse(cstr("3,x,1").as_ptr(), &mut p), SqStatus::InvalidInput);
        assert!(last_error().contains("`x`"));
        let bad = [1u32, 3];
        assert_eq!(sq_partition_from_parts(bad.as_ptr(), 2, &mut p), SqStatus::InvalidInput);
        assert_eq!(sq_stat(ptr::null(), 0, ptr::null_mut()), SqStatus::NullPointer);

        assert_eq!(sq_partition_parse(cstr("2,1").as_ptr(), &mut p), SqStatus::Ok);
        let mut out = 0;
        assert_eq!(sq_stat(p, 7, &mut out), SqStatus::Domain);
        assert_eq!(sq_mex(p, 0, 0, &mut out), SqStatus::Domain);
        sq_partition_free(p);

        let mut s = ptr::null_mut();
        assert_eq!(sq_bbs_evolve(cstr("0001").as_ptr(), &mut s), SqStatus::Domain);
        assert!(last_error().contains("carrier"));
        assert_eq!(sq_bbs_evolve(cstr("01a").as_ptr(), &mut s), SqStatus::InvalidInput);
        let mut z = ptr::null_mut();
        assert_eq!(sq_config_sum(3, 5, -1, &mut z), SqStatus::Domain);
        assert!(sq_series_to_string(ptr::null()).is_null());
    }
}

#[test]
fn series_access() {
    unsafe {
        let mut z = ptr::null_mut();
        assert_eq!(sq_config_sum(5, 2, -1, &mut z), SqStatus::Ok);
        assert_eq!(sq_series_len(z), 7);
        let coeffs: Vec<i64> = (0..7)
            .map(|k| {
                let mut c = 0;
                assert_eq!(sq_series_coeff(z, k, &mut c), SqStatus::Ok);
                c
            })
            .collect();
        assert_eq!(coeffs, [1, 1, 2, 2, 2, 1, 1]);
        assert_eq!(take_string(sq_series_to_string(z)), "1 + q + 2*q^2 + 2*q^3 + 2*q^4 + q^5 + q^6");
        sq_series_free(z);

        assert_eq!(sq_config_sum(5, 2, 1, &mut z), SqStatus::Ok);
        assert_eq!(take_string(sq_series_to_string(z)), "q + q^2 + q^3 + q^4");
        sq_series_free(z);

        let mut g = ptr::null_mut();
        assert_eq!(sq_gaussian(120, 60, &mut g), SqStatus::Ok);
        let mut c = 0;
        assert_eq!(sq_series_coeff(g, 1800, &mut c), SqStatus::Overflow);
        sq_series_free(g);
    }
}

#[test]
fn verify_json() {
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(sq_verify(cstr("equinumerosity").as_ptr(), 12, 8, 10, 10, &mut out), SqStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
        assert_eq!(v["pass"], true);
        assert_eq!(v["reports"][0]["check"], "equinumerosity");
        assert_eq!(sq_verify(cstr("nope").as_ptr(), 1, 1, 1, 1, &mut out), SqStatus::InvalidInput);
    }
}

fn manifest_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(manifest_dir().join("include/sqrank.h")).unwrap();
    let src = std::fs::read_to_string(manifest_dir().join("src/lib.rs")).unwrap();
    let exports: Vec<&str> = src
        .lines()
        .filter_map(|l| l.split("extern \"C\" fn ").nth(1))
        .map(|rest| rest.split('(').next().unwrap())
        .collect();
    assert!(exports.len() > 15);
    for name in exports {
        assert!(header.contains(&format!("{name}(")), "{name} missing from header");
    }
    for ty in ["typedef struct SqPartition SqPartition", "typedef struct SqSeries SqSeries", "SQ_STATUS_OK = 0"] {
        assert!(header.contains(ty), "{ty}");
    }
}

fn target_profile_dir() -> PathBuf {
    // target/<profile>/deps/<this test>
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(Path::parent).unwrap().to_path_buf()
}

#[test]
fn c_program_links_against_static_library() {
    let lib = target_profile_dir().join("libsqrank_ffi.a");
    if !lib.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: no C compiler or static library at {}", lib.display());
        return;
    }
    let bin = std::env::temp_dir().join(format!("sqrank_ffi_smoke_{}", std::process::id()));
    let status = Command::new("cc")
        .arg(manifest_dir().join("tests/c/smoke.c"))
        .arg("-I")
        .arg(manifest_dir().join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");
    let out = Command::new(&bin).output().unwrap();
    let _ = std::fs::remove_file(&bin);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "ok");
}
