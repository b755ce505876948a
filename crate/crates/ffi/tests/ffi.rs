use std::ffi::{c_char, CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use treemaps_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    tm_string_free(s);
    out
}

unsafe fn last_error() -> String {
    CStr::from_ptr(tm_last_error()).to_str().unwrap().to_owned()
}

unsafe fn poly(src: &str, r: u32) -> *mut TmPoly {
    let mut p = ptr::null_mut();
    assert_eq!(tm_poly_parse(c(src).as_ptr(), r, &mut p), TmStatus::Ok);
    p
}

unsafe fn forest(src: &str) -> *mut TmForest {
    let mut f = ptr::null_mut();
    assert_eq!(tm_forest_parse(c(src).as_ptr(), &mut f), TmStatus::Ok);
    f
}

unsafe fn poly_text(p: *const TmPoly) -> String {
    let mut s = ptr::null_mut();
    assert_eq!(tm_poly_to_string(p, &mut s), TmStatus::Ok);
    take(s)
}

#[test]
fn forest_operations() {
    unsafe {
        let f = forest("[[]]");
        let mut s = ptr::null_mut();
        assert_eq!(tm_coproduct(f, &mut s), TmStatus::Ok);
        assert_eq!(take(s), "1 ⊗ [[]] + [] ⊗ [] + [[]] ⊗ 1");
        let mut anti = ptr::null_mut();
        assert_eq!(tm_antipode(f, &mut anti), TmStatus::Ok);
        assert_eq!(tm_forest_to_string(anti, &mut s), TmStatus::Ok);
        assert_eq!(take(s), "[] [] - [[]]");
        let mut fp = ptr::null_mut();
        assert_eq!(tm_fpoly(f, &mut fp), TmStatus::Ok);
        assert_eq!(poly_text(fp), "2*y0 y0 + x y0");
        assert_eq!(tm_poly_modulus(fp), 1);
        let mut gp = ptr::null_mut();
        assert_eq!(tm_gpoly(f, &mut gp), TmStatus::Ok);
        tm_poly_free(gp);
        tm_poly_free(fp);
        tm_forest_free(anti);
        tm_forest_free(f);
    }
}

#[test]
fn tree_map_and_tau_conjugate() {
    unsafe {
        let w = poly("x y1", 2);
        let mut direct = ptr::null_mut();
        let mut conj = ptr::null_mut();
        let ladder = forest("[[]]");
        let anti = forest("[] [] - [[]]");
        assert_eq!(tm_rtm_apply(ladder, w, true, &mut conj), TmStatus::Ok);
        assert_eq!(tm_rtm_apply(anti, w, false, &mut direct), TmStatus::Ok);
        assert_eq!(poly_text(conj), poly_text(direct));
        for p in [w, direct, conj] {
            tm_poly_free(p);
        }
        tm_forest_free(ladder);
        tm_forest_free(anti);
    }
}

#[test]
fn products() {
    unsafe {
        let y = poly("y0", 1);
        let mut h = ptr::null_mut();
        assert_eq!(tm_harmonic(y, y, &mut h), TmStatus::Ok);
        assert_eq!(poly_text(h), "2*y0 y0 + x y0");
        let mut d = ptr::null_mut();
        assert_eq!(tm_diamond(0, y, y, &mut d), TmStatus::Ok);
        assert_eq!(poly_text(d), "y0 y0 - x y0");
        let w2 = poly("y1", 2);
        let mut bad = ptr::null_mut();
        assert_eq!(tm_harmonic(y, w2, &mut bad), TmStatus::Modulus);
        assert!(bad.is_null());
        assert_eq!(tm_diamond(2, y, w2, &mut bad), TmStatus::Modulus);
        for p in [y, h, d, w2] {
            tm_poly_free(p);
        }
    }
}

#[test]
fn numerics() {
    unsafe {
        let (mut re, mut im, mut err) = (0.0, 0.0, 0.0);
        assert_eq!(tm_eval(c("1;1").as_ptr(), 2, 100_000, &mut re, &mut im, &mut err), TmStatus::Ok);
        assert!((re + std::f64::consts::LN_2).abs() < 1e-4 && im.abs() < 1e-12);
        assert_eq!(tm_eval(c("1;0").as_ptr(), 1, 100_000, &mut re, &mut im, &mut err), TmStatus::NonAdmissible);
        let zeta2 = poly("x y0", 1);
        let (mut sum, mut bound) = (0.0, 0.0);
        assert_eq!(tm_check_kernel(zeta2, 100_000, 1e-3, &mut sum, &mut bound), TmStatus::CheckFailed);
        assert!((sum - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-4);
        tm_poly_free(zeta2);
    }
}

#[test]
fn verify_reports_json() {
    unsafe {
        let mut json = ptr::null_mut();
        assert_eq!(tm_verify(c("thm1,thm3").as_ptr(), 2, 2, 2, &mut json), TmStatus::Ok);
        let reports = take(json);
        assert!(reports.starts_with("[{\"law\":\"thm1\""));
        assert_eq!(tm_verify(c("nope").as_ptr(), 1, 1, 1, &mut json), TmStatus::InvalidArgument);
        assert!(last_error().contains("unknown law"));
    }
}

#[test]
fn errors_and_nulls() {
    unsafe {
        let mut f = ptr::null_mut();
        assert_eq!(tm_forest_parse(c("[[]").as_ptr(), &mut f), TmStatus::Syntax);
        assert!(f.is_null());
        assert!(last_error().contains("offset 3"));
        assert_eq!(tm_forest_parse(ptr::null(), &mut f), TmStatus::NullArgument);
        assert_eq!(tm_poly_parse(c("x").as_ptr(), 1, ptr::null_mut()), TmStatus::NullArgument);
        assert_eq!(tm_poly_parse(c("y3").as_ptr(), 2, &mut ptr::null_mut()), TmStatus::Modulus);
        let bytes = [0xffu8, 0];
        assert_eq!(tm_forest_parse(bytes.as_ptr().cast(), &mut f), TmStatus::InvalidUtf8);
        assert_eq!(tm_poly_modulus(ptr::null()), 0);
        tm_forest_free(ptr::null_mut());
        tm_poly_free(ptr::null_mut());
        tm_string_free(ptr::null_mut());
        let p = poly("x", 1);
        assert_eq!(last_error(), "");
        tm_poly_free(p);
    }
}

fn target_dir() -> PathBuf {
    // tests run from target/<profile>/deps/
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn c_program_links_against_header() {
    let crate_dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let lib = target_dir().join("libtreemaps_ffi.a");
    if Command::new("cc").arg("--version").output().is_err() || !lib.exists() {
        eprintln!("skipping: no C compiler or static library at {}", lib.display());
        return;
    }
    let out_dir = std::env::temp_dir().join(format!("treemaps-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&out_dir).unwrap();
    let exe = out_dir.join("smoke");
    let status = Command::new("cc")
        .arg(crate_dir.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(crate_dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");
    let run = Command::new(&exe).output().unwrap();
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "ok");
    std::fs::remove_dir_all(&out_dir).ok();
}
