//! C ABI over `ydcalc`. Objects are opaque handles owned by the caller and released with the
//! matching `*_free`; every entry point returns a [`YdStatus`] and writes results through out
//! pointers. Strings handed out are NUL-terminated UTF-8 and must be freed with
//! [`yd_string_free`]. The message of the last failure on the calling thread is available
//! from [`yd_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ydcalc::classify::{classification_report, ReportOptions};
use ydcalc::error::ErrorClass;
use ydcalc::hopf::{self, HopfAlgebra};
use ydcalc::nichols::graded_dims;
use ydcalc::rewrite::{build_lifting, Dimension, Family};
use ydcalc::ydmod::{self, Summand};
use ydcalc::{Error, ScalarContext};

/// Result of every call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum YdStatus {
    Ok = 0,
    NullPointer = 1,
    /// Bad parameters, unparsable text, or a value outside the supported range.
    InvalidArgument = 2,
    /// An object failed a structural check.
    VerificationFailed = 3,
    CapExceeded = 4,
    /// A Rust panic was caught at the boundary.
    Internal = 5,
}

/// Which Hopf algebra [`yd_hopf_build`] constructs.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum YdAlgebra {
    H = 0,
    A = 1,
    GrA = 2,
    DualOfH = 3,
    Double = 4,
}

/// Lifting families for [`yd_lifting_dimension`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum YdFamily {
    Quadratic = 0,
    Cubic = 1,
    Pair = 2,
}

/// Scalar field for one p.
pub struct YdContext(ScalarContext);

/// A finite-dimensional Hopf algebra given by structure constants.
pub struct YdHopf(HopfAlgebra);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> YdStatus {
    match e.class() {
        ErrorClass::Usage => YdStatus::InvalidArgument,
        ErrorClass::Verification => YdStatus::VerificationFailed,
        ErrorClass::Cap => YdStatus::CapExceeded,
    }
}

/// Run `f`, translating errors and panics into a status.
fn guard<F: FnOnce() -> Result<(), YdStatus>>(f: F) -> YdStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => YdStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic".into());
            YdStatus::Internal
        }
    }
}

fn lib<T>(r: ydcalc::Result<T>) -> Result<T, YdStatus> {
    r.map_err(|e| {
        set_error(e.to_string());
        status_of(&e)
    })
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, YdStatus> {
    if p.is_null() {
        set_error("null pointer argument".into());
        return Err(YdStatus::NullPointer);
    }
    Ok(&*p)
}

unsafe fn write<T>(out: *mut T, v: T) -> Result<(), YdStatus> {
    if out.is_null() {
        set_error("null out pointer".into());
        return Err(YdStatus::NullPointer);
    }
    out.write(v);
    Ok(())
}

fn to_c(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// V_{i,j}, or K_{χ^i} when `j` < 0, with its braiding.
fn simple_braiding(k: &ScalarContext, i: i64, j: i64) -> Result<(Summand, ydmod::Braiding), YdStatus> {
    let s = if j < 0 { Summand::Chi(i) } else { Summand::V(i, j) };
    if j >= 0 && !ydmod::in_lambda(k.p(), i, j) {
        lib::<()>(Err(Error::NotInLambda { i, j }))?;
    }
    let h = lib(ydmod::shared_h(k))?;
    Ok((s, ydmod::braiding(&lib(ydmod::make_simple(&h, s))?)))
}

unsafe fn scalar(ctx: &ScalarContext, s: *const c_char) -> Result<ydcalc::ThetaScalar, YdStatus> {
    if s.is_null() {
        return Ok(ctx.zero());
    }
    let text = CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("scalar text is not UTF-8".into());
        YdStatus::InvalidArgument
    })?;
    lib(ctx.parse(text))
}

/// Message of the last failure on this thread, or NULL. Owned by the library; valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn yd_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn yd_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn yd_context_new(p: usize, out: *mut *mut YdContext) -> YdStatus {
    guard(|| {
        let k = lib(ScalarContext::new(p))?;
        write(out, Box::into_raw(Box::new(YdContext(k))))
    })
}

/// # Safety
/// `ctx` must be NULL or a handle from [`yd_context_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn yd_context_free(ctx: *mut YdContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

/// # Safety
/// `ctx` must be a live context handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn yd_hopf_build(ctx: *const YdContext, which: YdAlgebra, out: *mut *mut YdHopf) -> YdStatus {
    guard(|| {
        let k = &deref(ctx)?.0;
        let h = lib(match which {
            YdAlgebra::H => hopf::build_h(k),
            YdAlgebra::A => hopf::build_a(k),
            YdAlgebra::GrA => hopf::build_gr_a(k),
            YdAlgebra::DualOfH => hopf::build_h(k).and_then(|h| hopf::dual(&h)),
            YdAlgebra::Double => hopf::drinfeld_double(k),
        })?;
        write(out, Box::into_raw(Box::new(YdHopf(h))))
    })
}

/// Parse an algebra from the JSON written by [`yd_hopf_to_json`].
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn yd_hopf_from_json(json: *const c_char, out: *mut *mut YdHopf) -> YdStatus {
    guard(|| {
        let text = CStr::from_ptr(deref(json)?).to_str().map_err(|_| {
            set_error("JSON is not UTF-8".into());
            YdStatus::InvalidArgument
        })?;
        let v: serde_json::Value = serde_json::from_str(text).map_err(|e| {
            set_error(e.to_string());
            YdStatus::InvalidArgument
        })?;
        let h = lib(HopfAlgebra::from_json(&v))?;
        write(out, Box::into_raw(Box::new(YdHopf(h))))
    })
}

/// # Safety
/// `h` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn yd_hopf_free(h: *mut YdHopf) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn yd_hopf_dim(h: *const YdHopf, out: *mut usize) -> YdStatus {
    guard(|| write(out, deref(h)?.0.dim))
}

/// Run every Hopf axiom check; `out_pass` receives whether all passed.
///
/// # Safety
/// `h` must be a live handle and `out_pass` writable.
#[no_mangle]
pub unsafe extern "C" fn yd_hopf_verify(h: *const YdHopf, out_pass: *mut bool) -> YdStatus {
    guard(|| {
        let r = lib(hopf::verify_hopf(&deref(h)?.0))?;
        if let Some(c) = r.checks.iter().find(|c| !c.pass) {
            set_error(format!("{} fails{}", c.axiom, c.witness.as_ref().map(|w| format!(": {w}")).unwrap_or_default()));
        }
        write(out_pass, r.all_pass())
    })
}

/// # Safety
/// `h` must be a live handle and `out` writable; free the string with [`yd_string_free`].
#[no_mangle]
pub unsafe extern "C" fn yd_hopf_to_json(h: *const YdHopf, out: *mut *mut c_char) -> YdStatus {
    guard(|| write(out, to_c(deref(h)?.0.to_json().to_string())))
}

/// Braid equation for V_{i,j} (or K_{χ^i} when `j` < 0), and agreement with the closed
/// formula for the two-dimensional case.
///
/// # Safety
/// `ctx` must be a live handle; out pointers writable.
#[no_mangle]
pub unsafe extern "C" fn yd_braiding_check(ctx: *const YdContext, i: i64, j: i64, cap: usize, out_braid: *mut bool, out_closed_form: *mut bool) -> YdStatus {
    guard(|| {
        let k = &deref(ctx)?.0;
        let (s, c) = simple_braiding(k, i, j)?;
        let braid = lib(c.satisfies_braid_equation(cap))?;
        let closed = match s {
            Summand::V(i, j) => ydmod::closed_form_braiding(k, i, j) == c,
            Summand::Chi(e) => c.matrix.entry(k, 0, 0) == k.xi_pow(k.p() as i64 * e * e),
        };
        write(out_braid, braid)?;
        write(out_closed_form, closed)
    })
}

/// Total dimension of B(V_{i,j}) (or B(K_{χ^i}) when `j` < 0) from graded dimensions up to
/// `cutoff`; `out_complete` is false when the top degree was not reached.
///
/// # Safety
/// `ctx` must be a live handle; out pointers writable.
#[no_mangle]
pub unsafe extern "C" fn yd_nichols_total(ctx: *const YdContext, i: i64, j: i64, cutoff: usize, cap: usize, out_total: *mut u64, out_complete: *mut bool) -> YdStatus {
    guard(|| {
        let k = &deref(ctx)?.0;
        let (_, c) = simple_braiding(k, i, j)?;
        let g = lib(graded_dims(&c, cutoff, cap))?;
        write(out_total, g.dims.iter().map(|&d| d as u64).sum())?;
        write(out_complete, g.complete)
    })
}

/// Irreducible-word count of a lifting algebra. `mu`/`nu` are scalar texts (NULL means 0);
/// `i`, `j` are ignored for [`YdFamily::Pair`]. `out_dim` receives `u64::MAX` when the
/// algebra is infinite-dimensional.
///
/// # Safety
/// `ctx` must be a live handle; `mu`, `nu` NULL or NUL-terminated; `out_dim` writable.
#[no_mangle]
pub unsafe extern "C" fn yd_lifting_dimension(
    ctx: *const YdContext,
    family: YdFamily,
    i: i64,
    j: i64,
    mu: *const c_char,
    nu: *const c_char,
    cap: usize,
    out_dim: *mut u64,
) -> YdStatus {
    guard(|| {
        let k = &deref(ctx)?.0;
        let mu = scalar(k, mu)?;
        let f = match family {
            YdFamily::Quadratic => Family::A3 { i, j, mu },
            YdFamily::Cubic => Family::A4 { i, j, mu },
            YdFamily::Pair => Family::A33 { mu, nu: scalar(k, nu)? },
        };
        let l = lib(build_lifting(k, f))?;
        let d = match lib(l.pres.dimension(cap))? {
            Dimension::Finite(n) => n as u64,
            Dimension::Infinite => u64::MAX,
        };
        write(out_dim, d)
    })
}

/// The classification report as JSON (the same document `ydcalc classify report --format
/// json` prints).
///
/// # Safety
/// `ctx` must be a live handle and `out` writable; free the string with [`yd_string_free`].
#[no_mangle]
pub unsafe extern "C" fn yd_classification_report_json(ctx: *const YdContext, out: *mut *mut c_char) -> YdStatus {
    guard(|| {
        let r = lib(classification_report(&deref(ctx)?.0, &ReportOptions::default()))?;
        write(out, to_c(r.to_json()))
    })
}
