//! C ABI over the treemaps library.
//!
//! Forest sums and polynomials cross the boundary as opaque handles owned by
//! the caller and released with the matching `*_free`. Every fallible call
//! returns a [`TmStatus`]; on failure the message is available from
//! [`tm_last_error`] on the same thread. Strings returned to the caller are
//! released with [`tm_string_free`]. Panics never cross the boundary.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use treemaps::hopf::{antipode, coproduct, ForestSumDisplay, TensorSumDisplay};
use treemaps::laws::{run_suite, Sweep};
use treemaps::mlv::{check_kernel, evaluate_l, EvalOptions};
use treemaps::parse::{parse_forest, parse_index, parse_poly};
use treemaps::products::{diamond, harmonic};
use treemaps::rtm::{apply_rtm, apply_tau_conjugate, f_poly, g_poly};
use treemaps::{shared, Error, ForestSum, NCPoly, RootIndex};

/// Result codes. `Ok` is zero.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TmStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Syntax = 3,
    Modulus = 4,
    NonAdmissible = 5,
    InvalidArgument = 6,
    /// A law suite or kernel check ran and reported a failure.
    CheckFailed = 7,
    Internal = 8,
}

/// Opaque handle to a rational combination of rooted forests.
pub struct TmForest(ForestSum);

/// Opaque handle to a noncommutative polynomial at a fixed modulus.
pub struct TmPoly(NCPoly);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let text = CString::new(message.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = text);
}

fn status_of(e: &Error) -> TmStatus {
    match e {
        Error::Syntax { .. } => TmStatus::Syntax,
        Error::ModulusMismatch(..) | Error::BadModulus(_) | Error::TwistOutOfRange { .. } => TmStatus::Modulus,
        Error::NonAdmissibleIndex(_) | Error::NonAdmissibleWord(_) | Error::NonAdmissibleOutput { .. } => {
            TmStatus::NonAdmissible
        }
        _ => TmStatus::InvalidArgument,
    }
}

struct Failure(TmStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

type Outcome = Result<(), Failure>;

/// Runs `body`, recording any failure or panic as the thread's last error.
fn guard(body: impl FnOnce() -> Outcome) -> TmStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_error("");
            TmStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_error(&message);
            status
        }
        Err(_) => {
            set_error("internal error");
            TmStatus::Internal
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(TmStatus::NullArgument, format!("{what} is null"))
}

/// Requires: `p` is null or points to a nul-terminated string.
unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(TmStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

/// Requires: `p` is null or a live handle.
unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

/// Requires: `out` is null or writable.
unsafe fn emit<T>(out: *mut *mut T, value: T) -> Outcome {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

/// Requires: `out` is null or writable.
unsafe fn emit_string(out: *mut *mut c_char, s: String) -> Outcome {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = CString::new(s).map_err(|_| Failure(TmStatus::Internal, "nul in output".into()))?.into_raw();
    Ok(())
}

/// Message for the last failed call on this thread; empty after a success.
/// Valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn tm_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library.
/// Requires: `s` is null or was returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a forest sum such as `[] [] - 2*[[]]`.
/// Requires: `src` is a nul-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn tm_forest_parse(src: *const c_char, out: *mut *mut TmForest) -> TmStatus {
    guard(|| emit(out, TmForest(parse_forest(text(src, "src")?)?)))
}

/// Requires: `f` is null or a live forest handle.
#[no_mangle]
pub unsafe extern "C" fn tm_forest_free(f: *mut TmForest) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Requires: `f` is a live forest handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn tm_forest_to_string(f: *const TmForest, out: *mut *mut c_char) -> TmStatus {
    guard(|| emit_string(out, ForestSumDisplay(&handle(f, "forest")?.0).to_string()))
}

/// Coproduct, rendered as text since tensors have no handle type.
/// Requires: `f` is a live forest handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn tm_coproduct(f: *const TmForest, out: *mut *mut c_char) -> TmStatus {
    guard(|| emit_string(out, TensorSumDisplay(&coproduct(&handle(f, "forest")?.0)).to_string()))
}

/// Requires: `f` is a live forest handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn tm_antipode(f: *const TmForest, out: *mut *mut TmForest) -> TmStatus {
    guard(|| emit(out, TmForest(antipode(&handle(f, "forest")?.0))))
}

/// Parses a polynomial such as `x y0 y0 - x x y0` at modulus `r`.
/// Requires: `src` is a nul-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn tm_poly_parse(src: *const c_char, r: u32, out: *mut *mut TmPoly) -> TmStatus {
    guard(|| emit(out, TmPoly(parse_poly(text(src, "src")?, r)?)))
}

/// Requires: `p` is null or a live polynomial handle.
#[no_mangle]
pub unsafe extern "C" fn tm_poly_free(p: *mut TmPoly) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Modulus of a polynomial, or 0 for a null handle.
/// Requires: `p` is null or a live polynomial handle.
#[no_mangle]
pub unsafe extern "C" fn tm_poly_modulus(p: *const TmPoly) -> u32 {
    p.as_ref().map_or(0, |p| p.0.modulus())
}

/// Requires: `p` is a live polynomial handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn tm_poly_to_string(p: *const TmPoly, out: *mut *mut c_char) -> TmStatus {
    guard(|| emit_string(out, handle(p, "poly")?.0.to_string()))
}

/// Applies the tree map of `f` to `p`, or its τ-conjugate when `tau` is set.
/// Requires: `f` and `p` are live handles; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn tm_rtm_apply(f: *const TmForest, p: *const TmPoly, tau: bool, out: *mut *mut TmPoly) -> TmStatus {
    guard(|| {
        let (f, p) = (&handle(f, "forest")?.0, &handle(p, "poly")?.0);
        let ctx = shared(p.modulus(), None)?;
        let image = if tau { apply_tau_conjugate(&ctx, f, p)? } else { apply_rtm(&ctx, f, p)? };
        emit(out, TmPoly(image))
    })
}

/// `F_f`, a polynomial at modulus 1.
/// Requires: `f` is a live forest handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn tm_fpoly(f: *const TmForest, out: *mut *mut TmPoly) -> TmStatus {
    guard(|| emit(out, TmPoly(f_poly(&*shared(1, None)?, &handle(f, "forest")?.0)?)))
}

/// `G_f`, a polynomial at modulus 1.
/// Requires: `f` is a live forest handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn tm_gpoly(f: *const TmForest, out: *mut *mut TmPoly) -> TmStatus {
    guard(|| emit(out, TmPoly(g_poly(&*shared(1, None)?, &handle(f, "forest")?.0)?)))
}

/// Harmonic product; both factors must share a modulus.
/// Requires: `a` and `b` are live handles; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn tm_harmonic(a: *const TmPoly, b: *const TmPoly, out: *mut *mut TmPoly) -> TmStatus {
    guard(|| {
        let (a, b) = (&handle(a, "left")?.0, &handle(b, "right")?.0);
        emit(out, TmPoly(harmonic(&*shared(a.modulus(), None)?, a, b)?))
    })
}

/// `v ⋄_s w` for `s = exp(2πi s_j / r)`, `v` at modulus 1 and `w` at modulus `r`.
/// Requires: `v` and `w` are live handles; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn tm_diamond(s_j: u32, v: *const TmPoly, w: *const TmPoly, out: *mut *mut TmPoly) -> TmStatus {
    guard(|| {
        let (v, w) = (&handle(v, "left")?.0, &handle(w, "right")?.0);
        let r = w.modulus();
        if s_j >= r {
            return Err(Error::TwistOutOfRange { j: s_j, r }.into());
        }
        emit(out, TmPoly(diamond(&*shared(r, None)?, RootIndex::new(s_j, r), v, w)?))
    })
}

fn options(max_terms: usize, tolerance: f64) -> EvalOptions {
    EvalOptions { max_terms, tolerance, ..EvalOptions::default() }
}

/// Evaluates `L(k; s)` for an index `k1,..;j1,..` at modulus `r`.
/// Requires: `index` is a nul-terminated string; the output pointers are writable.
#[no_mangle]
pub unsafe extern "C" fn tm_eval(
    index: *const c_char,
    r: u32,
    max_terms: usize,
    re: *mut f64,
    im: *mut f64,
    error: *mut f64,
) -> TmStatus {
    guard(|| {
        if re.is_null() || im.is_null() || error.is_null() {
            return Err(null("output"));
        }
        let ix = parse_index(text(index, "index")?, r)?;
        let got = evaluate_l(&ix, &options(max_terms, EvalOptions::default().tolerance))?;
        (*re, *im, *error) = (got.value.re, got.value.im, got.error_estimate);
        Ok(())
    })
}

/// Evaluates `p` numerically. Returns `CheckFailed` when `p` does not
/// numerically vanish; the outputs are written in either case.
/// Requires: `p` is a live handle; the output pointers are writable.
#[no_mangle]
pub unsafe extern "C" fn tm_check_kernel(
    p: *const TmPoly,
    max_terms: usize,
    tolerance: f64,
    sum_abs: *mut f64,
    bound: *mut f64,
) -> TmStatus {
    guard(|| {
        if sum_abs.is_null() || bound.is_null() {
            return Err(null("output"));
        }
        let rep = check_kernel(&handle(p, "poly")?.0, &options(max_terms, tolerance))?;
        (*sum_abs, *bound) = (rep.sum.norm(), rep.bound);
        if rep.pass {
            Ok(())
        } else {
            Err(Failure(TmStatus::CheckFailed, format!("|sum| = {:.3e} exceeds {:.3e}", rep.sum.norm(), rep.bound)))
        }
    })
}

/// Runs comma-separated law suites (or `all`) for r = 1..=`r_max` and writes
/// the reports as a JSON array. Returns `CheckFailed` when any suite has a
/// counterexample; the report is written in either case.
/// Requires: `suites` is a nul-terminated string; `json_out` is writable.
#[no_mangle]
pub unsafe extern "C" fn tm_verify(
    suites: *const c_char,
    r_max: u32,
    max_forest: u32,
    max_word: u32,
    json_out: *mut *mut c_char,
) -> TmStatus {
    guard(|| {
        let names: Vec<&str> = text(suites, "suites")?.split(',').map(str::trim).collect();
        let sweep = Sweep {
            r_values: (1..=r_max).collect(),
            max_forest_degree: max_forest,
            max_word_degree: max_word as usize,
            ..Sweep::default()
        };
        let reports = run_suite(&names, &sweep, None)?;
        let json = serde_json::to_string(&reports).map_err(|e| Failure(TmStatus::Internal, e.to_string()))?;
        emit_string(json_out, json)?;
        match reports.iter().find(|r| !r.passed()) {
            Some(r) => Err(Failure(TmStatus::CheckFailed, format!("{} has {} counterexamples", r.law, r.failures.len()))),
            None => Ok(()),
        }
    })
}
