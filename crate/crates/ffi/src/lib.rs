//! C ABI over `ortho_lvalues`.
//!
//! Conventions:
//! * every fallible function returns an [`OlStatus`] and writes results
//!   through out-pointers, which are left untouched on failure;
//! * weights and Satake parameters live behind opaque handles created by a
//!   `*_new` function and released by the matching `*_free`;
//! * strings returned to the caller are NUL-terminated UTF-8 and must be
//!   released with [`ol_string_free`];
//! * after a failure, [`ol_last_error`] describes it on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use ortho_lvalues::critical::{comb_lemma, critical_set, ratio_l_inf, CharData, CoeffWeight};
use ortho_lvalues::exactnum::{format_rational, parse_rational};
use ortho_lvalues::numerology::dims;
use ortho_lvalues::satake::{gk_ratio, local_l, LocalL, SatakeParam};
use ortho_lvalues::Error;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OlStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidInput = 4,
    Precondition = 5,
    Pole = 6,
    Internal = 7,
}

/// Coefficient weight together with the character data `(d, eps)`.
pub struct OlWeight {
    mu: CoeffWeight,
    ch: CharData,
}

/// Unramified Satake parameters at one place.
pub struct OlSatake(SatakeParam);

/// Dimensions and degrees for `(n, r_F)`.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OlDims {
    pub dim_sg: u64,
    pub dim_boundary: u64,
    pub dim_sm: u64,
    pub dim_scirc_m: u64,
    pub dim_up: u64,
    pub q0: u64,
    pub q_m: u64,
    pub q_b: u64,
    pub q_t: u64,
    pub frak_q_b: u64,
    pub frak_q_t: u64,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn fail(status: OlStatus, msg: impl Into<String>) -> OlStatus {
    set_error(msg);
    status
}

fn status_of(e: &Error) -> OlStatus {
    let status = match e {
        Error::Parse(_) => OlStatus::Parse,
        Error::Precondition(_) => OlStatus::Precondition,
        Error::Pole(_) => OlStatus::Pole,
        Error::Inconsistent(_) | Error::MalformedFactor | Error::DivisionByZero => {
            OlStatus::Internal
        }
        _ => OlStatus::InvalidInput,
    };
    fail(status, e.to_string())
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, OlStatus> {
    if s.is_null() {
        return Err(fail(OlStatus::NullArgument, "null string argument"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(OlStatus::InvalidUtf8, "argument is not UTF-8"))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s)
        .map(CString::into_raw)
        .unwrap_or(ptr::null_mut())
}

macro_rules! try_status {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

macro_rules! check_out {
    ($($p:ident),+) => {
        $(if $p.is_null() {
            return fail(OlStatus::NullArgument, concat!("null out-pointer ", stringify!($p)));
        })+
    };
}

/// Description of the last failure on this thread. The pointer stays valid
/// until the next failing call on the same thread; do not free it.
#[no_mangle]
pub extern "C" fn ol_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn ol_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `mu` (embeddings separated by `;`, entries by `,`) and the parity
/// list `eps` (`"0,1"`; null means all zero) into a weight handle.
///
/// # Safety
/// `mu` and a non-null `eps` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ol_weight_new(
    mu: *const c_char,
    d: i64,
    eps: *const c_char,
    out: *mut *mut OlWeight,
) -> OlStatus {
    check_out!(out);
    let mu_text = try_status!(read_str(mu));
    let mu = match CoeffWeight::parse(mu_text) {
        Ok(m) => m,
        Err(e) => return status_of(&e),
    };
    let parities = if eps.is_null() {
        vec![0; mu.r_f()]
    } else {
        let text = try_status!(read_str(eps));
        let parsed: Result<Vec<u8>, _> = text.split(',').map(|x| x.trim().parse::<u8>()).collect();
        match parsed {
            Ok(p) if p.len() == mu.r_f() => p,
            _ => return fail(OlStatus::Parse, format!("bad parity list {text:?}")),
        }
    };
    let ch = match CharData::new(d, parities) {
        Ok(c) => c,
        Err(e) => return status_of(&e),
    };
    *out = Box::into_raw(Box::new(OlWeight { mu, ch }));
    OlStatus::Ok
}

/// # Safety
/// `w` must be null or a handle from [`ol_weight_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ol_weight_free(w: *mut OlWeight) {
    if !w.is_null() {
        drop(Box::from_raw(w));
    }
}

unsafe fn weight<'a>(w: *const OlWeight) -> Result<&'a OlWeight, OlStatus> {
    w.as_ref()
        .ok_or_else(|| fail(OlStatus::NullArgument, "null weight handle"))
}

/// The critical set is the integer interval `[*lo, *hi]`.
///
/// # Safety
/// `w` must be a live handle; `lo` and `hi` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ol_critical_set(
    w: *const OlWeight,
    lo: *mut i64,
    hi: *mut i64,
) -> OlStatus {
    check_out!(lo, hi);
    let w = try_status!(weight(w));
    match critical_set(&w.mu, &w.ch) {
        Ok(set) => {
            let m = set.members();
            *lo = m[0];
            *hi = m[m.len() - 1];
            OlStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Whether `-n` and `1-n` are both critical, with the three equivalent
/// conditions cross-checked; a disagreement is reported as `Internal`.
///
/// # Safety
/// `w` must be a live handle; `holds` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ol_lemma_holds(w: *const OlWeight, holds: *mut bool) -> OlStatus {
    check_out!(holds);
    let w = try_status!(weight(w));
    match comb_lemma(&w.mu, &w.ch) {
        Ok(l) if l.all_agree() => {
            *holds = l.cond_ii;
            OlStatus::Ok
        }
        Ok(_) => fail(OlStatus::Internal, "lemma conditions disagree"),
        Err(e) => status_of(&e),
    }
}

/// `L_inf(-n) / L_inf(1-n)` as text `"a/b * pi^(h/2)"`.
///
/// # Safety
/// `w` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ol_ratio_l_inf(w: *const OlWeight, out: *mut *mut c_char) -> OlStatus {
    check_out!(out);
    let w = try_status!(weight(w));
    match ratio_l_inf(&w.mu, &w.ch) {
        Ok(v) => {
            *out = into_c_string(v.to_string());
            OlStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ol_dims(n: u64, r_f: u64, out: *mut OlDims) -> OlStatus {
    check_out!(out);
    match dims(n, r_f) {
        Ok(r) => {
            *out = OlDims {
                dim_sg: r.dim_sg,
                dim_boundary: r.dim_boundary,
                dim_sm: r.dim_sm,
                dim_scirc_m: r.dim_scirc_m,
                dim_up: r.dim_up,
                q0: r.q0,
                q_m: r.q_m,
                q_b: r.q_b,
                q_t: r.q_t,
                frak_q_b: r.frak_q_b,
                frak_q_t: r.frak_q_t,
            };
            OlStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Satake parameters from a comma-separated rational list, e.g. `"1,1/2"`.
///
/// # Safety
/// `thetas` and `theta_chi` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ol_satake_new(
    thetas: *const c_char,
    theta_chi: *const c_char,
    q: u64,
    out: *mut *mut OlSatake,
) -> OlStatus {
    check_out!(out);
    let thetas = try_status!(read_str(thetas));
    let chi = try_status!(read_str(theta_chi));
    let parsed = thetas
        .split(',')
        .map(|x| parse_rational(x.trim()))
        .collect::<Result<Vec<_>, _>>()
        .and_then(|t| SatakeParam::new(t, parse_rational(chi)?, q));
    match parsed {
        Ok(p) => {
            *out = Box::into_raw(Box::new(OlSatake(p)));
            OlStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// # Safety
/// `p` must be null or a handle from [`ol_satake_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ol_satake_free(p: *mut OlSatake) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// `L_v(s)` as a rational `"a/b"`; a pole returns `Pole` and leaves `out` alone.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ol_satake_local_l(
    p: *const OlSatake,
    s: i64,
    out: *mut *mut c_char,
) -> OlStatus {
    check_out!(out);
    let Some(p) = p.as_ref() else {
        return fail(OlStatus::NullArgument, "null Satake handle");
    };
    match local_l(s, &p.0) {
        LocalL::Value(v) => {
            *out = into_c_string(format_rational(&v));
            OlStatus::Ok
        }
        LocalL::Pole => fail(OlStatus::Pole, format!("L-factor has a pole at s = {s}")),
    }
}

/// `L_v(s) / L_v(1 + s)` as a rational `"a/b"`.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ol_satake_gk_ratio(
    p: *const OlSatake,
    s: i64,
    out: *mut *mut c_char,
) -> OlStatus {
    check_out!(out);
    let Some(p) = p.as_ref() else {
        return fail(OlStatus::NullArgument, "null Satake handle");
    };
    match gk_ratio(s, &p.0) {
        Ok(v) => {
            *out = into_c_string(format_rational(&v));
            OlStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Runs the command-line front end on `args` (without a program name) and
/// returns the report JSON through `out_json` (empty when the arguments were
/// rejected) and the process exit code through `exit_code`.
///
/// # Safety
/// `args` must point to `n_args` NUL-terminated strings; outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn ol_run(
    args: *const *const c_char,
    n_args: usize,
    out_json: *mut *mut c_char,
    exit_code: *mut i32,
) -> OlStatus {
    check_out!(out_json, exit_code);
    if args.is_null() && n_args > 0 {
        return fail(OlStatus::NullArgument, "null argument array");
    }
    let mut argv = vec!["ortho-lvalues".to_string()];
    for i in 0..n_args {
        argv.push(try_status!(read_str(*args.add(i))).to_string());
    }
    let outcome = ortho_lvalues::cli::run(argv);
    if !outcome.stderr.is_empty() && outcome.code == ortho_lvalues::cli::EXIT_USAGE {
        set_error(outcome.stderr.trim_end());
    }
    *exit_code = outcome.code;
    *out_json = into_c_string(outcome.stdout);
    OlStatus::Ok
}
