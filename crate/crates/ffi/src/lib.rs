//! C ABI over `taftyd`.
//!
//! Handles are opaque and owned by the caller, who releases them with the
//! matching `_free` function. Every fallible call returns a [`TaftydStatus`];
//! on failure the message is kept per thread and read back with
//! [`taftyd_last_error_message`]. Strings returned through out-parameters are
//! released with [`taftyd_string_free`]. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use taftyd::braiding::{braiding_operator, classify_nichols, graded_nichols_dims, yang_baxter_check};
use taftyd::hopf::TaftParams;
use taftyd::yd::{
    build_finite_module, build_infinite_truncation, iso_test, parse_lambda, verify_yd_module, x_power_check, YdModule,
};
use taftyd::Error;

/// Parameters (n, t) of H(n,t,ξ).
pub struct TaftydParams(TaftParams);

/// A constructed Yetter-Drinfeld module.
pub struct TaftydModule(YdModule);

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TaftydStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    DivisionByZero = 3,
    DomainMismatch = 4,
    Index = 5,
    InvalidSpecifier = 6,
    InvalidArgument = 7,
    Unsupported = 8,
    NotApplicable = 9,
    BudgetExceeded = 10,
    Io = 11,
    BufferTooSmall = 12,
    Panic = 13,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(TaftydStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::DivisionByZero => TaftydStatus::DivisionByZero,
            Error::DomainMismatch(_) => TaftydStatus::DomainMismatch,
            Error::Index(_) => TaftydStatus::Index,
            Error::InvalidSpecifier(_) => TaftydStatus::InvalidSpecifier,
            Error::InvalidArgument(_) => TaftydStatus::InvalidArgument,
            Error::Unsupported(_) => TaftydStatus::Unsupported,
            Error::NotApplicable(_) => TaftydStatus::NotApplicable,
            Error::BudgetExceeded(_) => TaftydStatus::BudgetExceeded,
            Error::Io(_) => TaftydStatus::Io,
        };
        Failure(status, e.to_string())
    }
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> TaftydStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TaftydStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal panic: {msg}"));
            TaftydStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(TaftydStatus::NullPointer, format!("{what} is null"))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write_out<T>(out: *mut T, v: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(v);
    Ok(())
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Failure(TaftydStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).unwrap_or_default().into_raw()
}

fn json<T: serde::Serialize>(v: &T) -> Result<String, Failure> {
    serde_json::to_string(v).map_err(|e| Failure(TaftydStatus::Io, e.to_string()))
}

/// Creates H(n,t); needs n ≥ 2 and t < n.
///
/// # Safety
/// `out` must be a valid pointer to writable storage.
#[no_mangle]
pub unsafe extern "C" fn taftyd_params_new(n: u32, t: u32, out: *mut *mut TaftydParams) -> TaftydStatus {
    guard(|| {
        let p = TaftParams::new(n, t)?;
        write_out(out, Box::into_raw(Box::new(TaftydParams(p))), "out")
    })
}

/// # Safety
/// `p` must come from [`taftyd_params_new`] and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn taftyd_params_free(p: *mut TaftydParams) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// N, the order of ξᵗ.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn taftyd_params_big_n(p: *const TaftydParams, out: *mut u32) -> TaftydStatus {
    guard(|| write_out(out, deref(p, "params")?.0.big_n(), "out"))
}

/// V(t·i1, j, λ) with λ given as "0", "1" or "zeta^e".
///
/// # Safety
/// `p` must be a live handle, `lambda` a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn taftyd_module_finite(
    p: *const TaftydParams,
    i1: i64,
    j: i64,
    lambda: *const c_char,
    out: *mut *mut TaftydModule,
) -> TaftydStatus {
    guard(|| {
        let par = deref(p, "params")?.0;
        let lam = parse_lambda(read_str(lambda, "lambda")?, par.n())?;
        let m = build_finite_module(par, i1, j, lam)?;
        write_out(out, Box::into_raw(Box::new(TaftydModule(m))), "out")
    })
}

/// The window v₀..v_k of V(i, j); needs i ∈ 𝒥.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn taftyd_module_infinite(
    p: *const TaftydParams,
    i: i64,
    j: i64,
    k: u32,
    out: *mut *mut TaftydModule,
) -> TaftydStatus {
    guard(|| {
        let m = build_infinite_truncation(deref(p, "params")?.0, i, j, k)?;
        write_out(out, Box::into_raw(Box::new(TaftydModule(m))), "out")
    })
}

/// # Safety
/// `m` must come from a module constructor and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn taftyd_module_free(m: *mut TaftydModule) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// # Safety
/// `m` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn taftyd_module_dim(m: *const TaftydModule, out: *mut usize) -> TaftydStatus {
    guard(|| write_out(out, deref(m, "module")?.0.dim, "out"))
}

/// Runs the Yetter-Drinfeld axiom checks (and xⁿ = λ·id for finite modules).
/// A failed check is reported through `passed`, with the first witness as
/// the last error message.
///
/// # Safety
/// `m` must be a live handle and `passed` writable.
#[no_mangle]
pub unsafe extern "C" fn taftyd_module_verify(m: *const TaftydModule, passed: *mut bool) -> TaftydStatus {
    guard(|| {
        let m = &deref(m, "module")?.0;
        let mut rep = verify_yd_module(m);
        if !m.truncated {
            rep.absorb(x_power_check(m));
        }
        write_out(passed, rep.passed, "passed")?;
        if let Some(w) = rep.witness {
            set_error(w);
        }
        Ok(())
    })
}

/// Whether the braiding of `m` satisfies the braid relation.
///
/// # Safety
/// `m` must be a live handle and `passed` writable.
#[no_mangle]
pub unsafe extern "C" fn taftyd_module_yang_baxter(m: *const TaftydModule, passed: *mut bool) -> TaftydStatus {
    guard(|| {
        let rep = yang_baxter_check(&braiding_operator(&deref(m, "module")?.0));
        write_out(passed, rep.passed, "passed")
    })
}

/// Whether two modules over the same H are isomorphic.
///
/// # Safety
/// `a`, `b` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn taftyd_module_iso(
    a: *const TaftydModule,
    b: *const TaftydModule,
    out: *mut bool,
) -> TaftydStatus {
    guard(|| {
        let r = iso_test(&deref(a, "a")?.0.spec, &deref(b, "b")?.0.spec)?;
        write_out(out, r, "out")
    })
}

/// JSON dump of the module; free the string with [`taftyd_string_free`].
///
/// # Safety
/// `m` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn taftyd_module_to_json(m: *const TaftydModule, out: *mut *mut c_char) -> TaftydStatus {
    guard(|| {
        let s = json(&deref(m, "module")?.0)?;
        write_out(out, to_c_string(s), "out")
    })
}

/// dim 𝓑ᵐ for m = 0..=max_degree, written to `out[0..=max_degree]`.
///
/// # Safety
/// `m` must be a live handle and `out` must hold `out_len` writable elements.
#[no_mangle]
pub unsafe extern "C" fn taftyd_graded_dims(
    m: *const TaftydModule,
    max_degree: usize,
    budget: u64,
    out: *mut usize,
    out_len: usize,
) -> TaftydStatus {
    guard(|| {
        let m = &deref(m, "module")?.0;
        if out.is_null() {
            return Err(null("out"));
        }
        if out_len <= max_degree {
            return Err(Failure(
                TaftydStatus::BufferTooSmall,
                format!("need {} slots, got {out_len}", max_degree + 1),
            ));
        }
        let dims = graded_nichols_dims(m, max_degree, budget)?;
        ptr::copy_nonoverlapping(dims.as_ptr(), out, dims.len());
        Ok(())
    })
}

/// Finite-dimensionality verdict for 𝓑(V(t·i1, j, λ)). `json_out` may be
/// null; otherwise it receives the verdict as JSON.
///
/// # Safety
/// `p` must be a live handle, `lambda` a NUL-terminated string, `finite`
/// writable and `json_out` null or writable.
#[no_mangle]
pub unsafe extern "C" fn taftyd_classify(
    p: *const TaftydParams,
    i1: i64,
    j: i64,
    lambda: *const c_char,
    finite: *mut bool,
    json_out: *mut *mut c_char,
) -> TaftydStatus {
    guard(|| {
        let par = deref(p, "params")?.0;
        let lam = parse_lambda(read_str(lambda, "lambda")?, par.n())?;
        let v = classify_nichols(par, i1, j, &lam);
        write_out(finite, v.finite, "finite")?;
        if !json_out.is_null() {
            json_out.write(to_c_string(json(&v)?));
        }
        Ok(())
    })
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next call into the library from this thread.
#[no_mangle]
pub extern "C" fn taftyd_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be a string returned by this library, freed at most once. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn taftyd_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Static name of a status code; unknown codes map to "unknown status".
#[no_mangle]
pub extern "C" fn taftyd_status_name(code: i32) -> *const c_char {
    let s: &'static CStr = match code {
        0 => c"ok",
        1 => c"null pointer",
        2 => c"invalid utf-8",
        3 => c"division by zero",
        4 => c"domain mismatch",
        5 => c"index error",
        6 => c"invalid specifier",
        7 => c"invalid argument",
        8 => c"unsupported",
        9 => c"not applicable",
        10 => c"budget exceeded",
        11 => c"i/o error",
        12 => c"buffer too small",
        13 => c"panic",
        _ => c"unknown status",
    };
    s.as_ptr()
}
