//! C interface to schurcheck.
//!
//! Groups and reports are opaque heap handles released with their `_free`
//! function. Every call returns an `ScStatus`; on failure the message is
//! kept per thread and can be read with `sc_last_error`. Strings are
//! returned through caller buffers: the call always stores the required
//! size including the terminating NUL in `*needed` and returns
//! `SC_STATUS_BUFFER_TOO_SMALL` when `len` is short.

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use schurcheck::cli::report::VerificationReport;
use schurcheck::cli::{emit_report, Format};
use schurcheck::eliminator::{run_lemma, Config, LemmaId, Manifest};
use schurcheck::groups::{parse_and_validate, steinberg_degree, GroupSpec};
use schurcheck::orders::{divides_exact, evaluate_order};
use schurcheck::zsigmondy::{nondivisibility_witness, ppd, PpdMode, PpdResult};
use schurcheck::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Syntax = 3,
    Domain = 4,
    Data = 5,
    NoTableRow = 6,
    Unsupported = 7,
    BufferTooSmall = 8,
    Panic = 9,
}

/// A parsed group such as `SL(3,2)`.
pub struct ScGroup {
    spec: GroupSpec,
}

/// The outcome of a lemma verification run.
pub struct ScReport {
    report: VerificationReport,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ScSummary {
    pub cases: u64,
    pub eliminated: u64,
    pub unresolved: u64,
    pub failed: u64,
    /// 0 when every expectation holds, 1 otherwise.
    pub exit_code: i32,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn fail(e: Error) -> ScStatus {
    let status = match e {
        Error::Syntax(_) => ScStatus::Syntax,
        Error::Domain(_) | Error::NonIntegral(_) => ScStatus::Domain,
        Error::Data(_) => ScStatus::Data,
        Error::NoTableRow(_) => ScStatus::NoTableRow,
        Error::Unsupported(_) => ScStatus::Unsupported,
    };
    set_error(e.to_string());
    status
}

/// Runs `f`, turning panics into `SC_STATUS_PANIC`.
fn guard(f: impl FnOnce() -> Result<(), ScStatus>) -> ScStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => ScStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic".into());
            ScStatus::Panic
        }
    }
}

fn null() -> ScStatus {
    set_error("null pointer argument".into());
    ScStatus::NullPointer
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, ScStatus> {
    if s.is_null() {
        return Err(null());
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8".into());
        ScStatus::InvalidUtf8
    })
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, ScStatus> {
    p.as_ref().ok_or_else(null)
}

unsafe fn store<T>(out: *mut T, v: T) -> Result<(), ScStatus> {
    if out.is_null() {
        return Err(null());
    }
    out.write(v);
    Ok(())
}

/// Copies `s` plus a NUL into `buf`. `buf` may be null when `len` is 0.
/// Leaves the last-error message alone.
unsafe fn copy_out(s: &str, buf: *mut c_char, len: usize, needed: *mut usize) -> ScStatus {
    let want = s.len() + 1;
    if !needed.is_null() {
        needed.write(want);
    }
    if len < want || buf.is_null() {
        return ScStatus::BufferTooSmall;
    }
    ptr::copy_nonoverlapping(s.as_ptr(), buf.cast::<u8>(), s.len());
    buf.add(s.len()).write(0);
    ScStatus::Ok
}

unsafe fn write_string(
    s: &str,
    buf: *mut c_char,
    len: usize,
    needed: *mut usize,
) -> Result<(), ScStatus> {
    match copy_out(s, buf, len, needed) {
        ScStatus::Ok => Ok(()),
        status => {
            set_error(format!(
                "buffer of {len} bytes is too small, {} needed",
                s.len() + 1
            ));
            Err(status)
        }
    }
}

/// Static description of a status code. Never null.
#[no_mangle]
pub extern "C" fn sc_status_str(status: ScStatus) -> *const c_char {
    let s: &'static CStr = match status {
        ScStatus::Ok => c"ok",
        ScStatus::NullPointer => c"null pointer argument",
        ScStatus::InvalidUtf8 => c"invalid UTF-8",
        ScStatus::Syntax => c"syntax error",
        ScStatus::Domain => c"invalid parameters",
        ScStatus::Data => c"data error",
        ScStatus::NoTableRow => c"no table row",
        ScStatus::Unsupported => c"unsupported",
        ScStatus::BufferTooSmall => c"buffer too small",
        ScStatus::Panic => c"internal panic",
    };
    s.as_ptr()
}

/// Message of the last failed call on this thread.
///
/// # Safety
/// Buffer convention: `buf` points to `len` writable bytes (or is null with
/// `len == 0`); `needed` may be null.
#[no_mangle]
pub unsafe extern "C" fn sc_last_error(
    buf: *mut c_char,
    len: usize,
    needed: *mut usize,
) -> ScStatus {
    let msg = LAST_ERROR.with(|e| e.borrow().clone());
    copy_out(&msg, buf, len, needed)
}

/// Parses a group name such as `PSp(6,3^2)` or `E8(2^9)`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sc_group_parse(text: *const c_char, out: *mut *mut ScGroup) -> ScStatus {
    guard(|| {
        let text = read_str(text)?;
        let spec = parse_and_validate(text).map_err(fail)?;
        store(out, Box::into_raw(Box::new(ScGroup { spec })))
    })
}

/// # Safety
/// `group` must come from `sc_group_parse` and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn sc_group_free(group: *mut ScGroup) {
    if !group.is_null() {
        drop(Box::from_raw(group));
    }
}

/// Canonical name of the group.
///
/// # Safety
/// `group` must be a live handle; `buf`, `len`, `needed` follow the buffer convention.
#[no_mangle]
pub unsafe extern "C" fn sc_group_name(
    group: *const ScGroup,
    buf: *mut c_char,
    len: usize,
    needed: *mut usize,
) -> ScStatus {
    guard(|| write_string(&deref(group)?.spec.to_string(), buf, len, needed))
}

/// Group order in decimal.
///
/// # Safety
/// `group` must be a live handle; `buf`, `len`, `needed` follow the buffer convention.
#[no_mangle]
pub unsafe extern "C" fn sc_group_order(
    group: *const ScGroup,
    buf: *mut c_char,
    len: usize,
    needed: *mut usize,
) -> ScStatus {
    guard(|| {
        write_string(
            &evaluate_order(&deref(group)?.spec).to_string(),
            buf,
            len,
            needed,
        )
    })
}

/// Steinberg character degree in decimal.
///
/// # Safety
/// `group` must be a live handle; `buf`, `len`, `needed` follow the buffer convention.
#[no_mangle]
pub unsafe extern "C" fn sc_group_steinberg(
    group: *const ScGroup,
    buf: *mut c_char,
    len: usize,
    needed: *mut usize,
) -> ScStatus {
    guard(|| {
        write_string(
            &steinberg_degree(&deref(group)?.spec).to_string(),
            buf,
            len,
            needed,
        )
    })
}

/// Whether `|l|` divides `|h|`, by exact division.
///
/// # Safety
/// Both handles must be live and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn sc_divides_exact(
    l: *const ScGroup,
    h: *const ScGroup,
    out: *mut bool,
) -> ScStatus {
    guard(|| {
        let (l, h) = (deref(l)?, deref(h)?);
        store(out, divides_exact(&l.spec, &h.spec))
    })
}

/// Largest `e` such that a primitive prime divisor of `p^e - 1` divides
/// `|l|` but not `|h|`. `*found` is false when there is none.
///
/// # Safety
/// Both handles must be live; `e` and `found` must be valid.
#[no_mangle]
pub unsafe extern "C" fn sc_witness(
    l: *const ScGroup,
    h: *const ScGroup,
    e: *mut u64,
    found: *mut bool,
) -> ScStatus {
    guard(|| {
        let (l, h) = (deref(l)?, deref(h)?);
        let w = nondivisibility_witness(&l.spec, &h.spec).map_err(fail)?;
        store(found, w.is_some())?;
        store(e, w.unwrap_or(0))
    })
}

/// Whether `x^n - y^n` has a primitive prime divisor.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn sc_ppd_exists(x: u64, y: u64, n: u64, out: *mut bool) -> ScStatus {
    guard(|| {
        let r = ppd(x, y, n, PpdMode::Exists).map_err(fail)?;
        store(out, r != PpdResult::Exception)
    })
}

/// Runs one lemma (`"lemma-4.1"`, `"5.1"`, ...) or `"all"` with the default
/// sampling and the built-in data and manifest.
///
/// # Safety
/// `lemma` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sc_verify(lemma: *const c_char, out: *mut *mut ScReport) -> ScStatus {
    guard(|| {
        let name = read_str(lemma)?;
        let ids = if name == "all" {
            LemmaId::ALL.to_vec()
        } else {
            vec![name.parse().map_err(fail)?]
        };
        let cfg = Config::default();
        let runs = ids
            .into_iter()
            .map(|id| run_lemma(id, &cfg))
            .collect::<Result<Vec<_>, _>>()
            .map_err(fail)?;
        let report =
            VerificationReport::build(&format!("verify {name}"), &runs, Manifest::builtin(), false);
        store(out, Box::into_raw(Box::new(ScReport { report })))
    })
}

/// # Safety
/// `report` must come from `sc_verify` and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn sc_report_free(report: *mut ScReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// # Safety
/// `report` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn sc_report_summary(
    report: *const ScReport,
    out: *mut ScSummary,
) -> ScStatus {
    guard(|| {
        let s = &deref(report)?.report.summary;
        store(
            out,
            ScSummary {
                cases: s.cases as u64,
                eliminated: s.eliminated as u64,
                unresolved: s.unresolved as u64,
                failed: s.failed as u64,
                exit_code: s.exit_code,
            },
        )
    })
}

/// The report as JSON.
///
/// # Safety
/// `report` must be a live handle; `buf`, `len`, `needed` follow the buffer convention.
#[no_mangle]
pub unsafe extern "C" fn sc_report_json(
    report: *const ScReport,
    buf: *mut c_char,
    len: usize,
    needed: *mut usize,
) -> ScStatus {
    guard(|| {
        let bytes = emit_report(&deref(report)?.report, Format::Json);
        let text = String::from_utf8(bytes).expect("serde_json emits UTF-8");
        write_string(&text, buf, len, needed)
    })
}
