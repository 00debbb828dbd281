//! C interface to `omball`.
//!
//! Objects cross the boundary as opaque handles that the caller frees with
//! the matching `*_free` function. Every fallible call returns an
//! [`OmStatus`]; on failure [`omball_last_error`] describes what went wrong
//! on the calling thread. Strings returned to C are owned by the caller and
//! released with [`omball_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use omball::io::{format_arrangement_file, Input};
use omball::realization::random_generic;
use omball::report::{verify, Verdict, VerificationReport, VerifyOptions};
use omball::topology::collapse::DEFAULT_BUDGET;
use omball::{CovectorSet, Error};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OmStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Precondition = 4,
    Membership = 5,
    Validation = 6,
    Resource = 7,
    BufferTooSmall = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OmVerdict {
    BallCertified = 0,
    EvidenceOnly = 1,
    Refuted = 2,
    NotApplicable = 3,
}

impl From<Verdict> for OmVerdict {
    fn from(v: Verdict) -> Self {
        match v {
            Verdict::BallCertified => OmVerdict::BallCertified,
            Verdict::EvidenceOnly => OmVerdict::EvidenceOnly,
            Verdict::Refuted => OmVerdict::Refuted,
            Verdict::NotApplicable => OmVerdict::NotApplicable,
        }
    }
}

/// A parsed input: a covector set, plus the arrangement it came from if any.
pub struct OmInstance {
    input: Input,
    om: CovectorSet,
}

/// A finished verification run.
pub struct OmReport {
    report: VerificationReport,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn status_of(e: &Error) -> OmStatus {
    match e {
        Error::Parse { .. } => OmStatus::Parse,
        Error::Membership { .. } => OmStatus::Membership,
        Error::Resource(_) => OmStatus::Resource,
        Error::Validation(_) => OmStatus::Validation,
        _ => OmStatus::Precondition,
    }
}

/// Run `f`, turning errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), OmStatus>) -> OmStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => OmStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic");
            OmStatus::Panic
        }
    }
}

fn fail(e: Error) -> OmStatus {
    let s = status_of(&e);
    set_error(e.to_string());
    s
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, OmStatus> {
    if p.is_null() {
        set_error(format!("{what} is null"));
        return Err(OmStatus::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error(format!("{what} is not valid UTF-8"));
        OmStatus::InvalidUtf8
    })
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, OmStatus> {
    p.as_ref().ok_or_else(|| {
        set_error(format!("{what} is null"));
        OmStatus::NullPointer
    })
}

fn out_ptr<T>(p: *mut T) -> Result<(), OmStatus> {
    if p.is_null() {
        set_error("output pointer is null");
        Err(OmStatus::NullPointer)
    } else {
        Ok(())
    }
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("no interior nul").into_raw()
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn omball_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn omball_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parse an arrangement or covector file held in memory.
///
/// # Safety
/// `text` must be a nul-terminated string. `g_label` may be null; otherwise
/// it must be nul-terminated. `out` must point to writable storage.
#[no_mangle]
pub unsafe extern "C" fn omball_instance_parse(
    text: *const c_char,
    g_label: *const c_char,
    out: *mut *mut OmInstance,
) -> OmStatus {
    guard(|| {
        out_ptr(out)?;
        let text = str_arg(text, "text")?;
        let g = if g_label.is_null() {
            None
        } else {
            Some(str_arg(g_label, "g_label")?)
        };
        let input = Input::parse("<memory>", text).map_err(fail)?;
        let om = input.covectors(g).map_err(fail)?;
        *out = Box::into_raw(Box::new(OmInstance { input, om }));
        Ok(())
    })
}

/// # Safety
/// `inst` must be null or a handle from [`omball_instance_parse`] that has
/// not been freed.
#[no_mangle]
pub unsafe extern "C" fn omball_instance_free(inst: *mut OmInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

/// Number of ground set elements, `g` included. Zero for a null handle.
///
/// # Safety
/// `inst` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn omball_instance_elements(inst: *const OmInstance) -> usize {
    inst.as_ref().map_or(0, |i| i.om.ground().len())
}

/// Number of covectors, the zero vector included. Zero for a null handle.
///
/// # Safety
/// `inst` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn omball_instance_covectors(inst: *const OmInstance) -> usize {
    inst.as_ref().map_or(0, |i| i.om.len())
}

/// Whether the covector set satisfies all covector axioms.
///
/// # Safety
/// `inst` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn omball_instance_axioms_ok(inst: *const OmInstance, out: *mut bool) -> OmStatus {
    guard(|| {
        out_ptr(out)?;
        let inst = handle(inst, "instance")?;
        *out = inst.om.verify_covector_axioms().all_ok();
        Ok(())
    })
}

/// Whether every basis-sized element set is a basis.
///
/// # Safety
/// `inst` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn omball_instance_is_uniform(inst: *const OmInstance, out: *mut bool) -> OmStatus {
    guard(|| {
        out_ptr(out)?;
        let inst = handle(inst, "instance")?;
        *out = inst.om.is_uniform();
        Ok(())
    })
}

/// Write the f-vector of the bounded complex into `buf`.
///
/// `len` receives the number of entries. When `cap` is too small nothing is
/// written to `buf` and [`OmStatus::BufferTooSmall`] is returned, so a call
/// with `cap = 0` queries the length.
///
/// # Safety
/// `inst` must be a live handle, `len` writable, and `buf` valid for `cap`
/// writes (it may be null when `cap` is 0).
#[no_mangle]
pub unsafe extern "C" fn omball_bounded_f_vector(
    inst: *const OmInstance,
    buf: *mut usize,
    cap: usize,
    len: *mut usize,
) -> OmStatus {
    guard(|| {
        out_ptr(len)?;
        let inst = handle(inst, "instance")?;
        let aom = omball::bounded::AffineOM::new(inst.om.clone()).map_err(fail)?;
        let f = aom.bounded_complex().f_vector();
        *len = f.len();
        if cap < f.len() {
            set_error(format!("buffer holds {cap} entries, need {}", f.len()));
            return Err(OmStatus::BufferTooSmall);
        }
        out_ptr(buf)?;
        ptr::copy_nonoverlapping(f.as_ptr(), buf, f.len());
        Ok(())
    })
}

/// Run the verification pipeline. `budget` 0 selects the default node budget.
///
/// # Safety
/// `inst` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn omball_verify(inst: *const OmInstance, budget: u64, out: *mut *mut OmReport) -> OmStatus {
    guard(|| {
        out_ptr(out)?;
        let inst = handle(inst, "instance")?;
        let opts = VerifyOptions {
            source: "<memory>".into(),
            budget: if budget == 0 { DEFAULT_BUDGET } else { budget },
            timestamp: None,
        };
        let report = verify(inst.om.clone(), inst.input.arrangement(), &opts).map_err(fail)?;
        *out = Box::into_raw(Box::new(OmReport { report }));
        Ok(())
    })
}

/// # Safety
/// `rep` must be null or a handle from [`omball_verify`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn omball_report_free(rep: *mut OmReport) {
    if !rep.is_null() {
        drop(Box::from_raw(rep));
    }
}

/// Verdict of a report; `NotApplicable` for a null handle.
///
/// # Safety
/// `rep` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn omball_report_verdict(rep: *const OmReport) -> OmVerdict {
    rep.as_ref()
        .map_or(OmVerdict::NotApplicable, |r| r.report.verdict.into())
}

/// The report as JSON. Free the result with [`omball_string_free`].
///
/// # Safety
/// `rep` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn omball_report_json(rep: *const OmReport, out: *mut *mut c_char) -> OmStatus {
    guard(|| {
        out_ptr(out)?;
        let rep = handle(rep, "report")?;
        *out = into_c_string(rep.report.to_json());
        Ok(())
    })
}

/// A seeded random generic arrangement in the arrangement file format.
/// Free the result with [`omball_string_free`].
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn omball_generate(
    seed: u64,
    n: usize,
    d: usize,
    max_tries: usize,
    out: *mut *mut c_char,
) -> OmStatus {
    guard(|| {
        out_ptr(out)?;
        let arr = random_generic(seed, n, d, max_tries).map_err(fail)?;
        *out = into_c_string(format_arrangement_file(&arr));
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn omball_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
