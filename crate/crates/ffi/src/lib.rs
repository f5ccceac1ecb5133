//! C ABI for the multistruct analyzer.
//!
//! Every entry point returns an [`MsStatus`] or a plain value and never
//! unwinds across the boundary. Reports are opaque [`MsReport`] handles owned
//! by the caller and released with [`ms_report_free`]. Strings returned as
//! `char *` are owned by the caller and released with [`ms_string_free`].
//!
//! When a call fails, [`ms_last_error_message`] describes the failure. The
//! message is per thread and stays valid until the next failing call on the
//! same thread.

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use libc::{c_char, size_t};

use multistruct::problem::parse_problem;
use multistruct::report::{run_analysis, StructureReport};
use multistruct::scalar::FieldSpec;
use multistruct::Error;

/// Status codes. Values 0 to 4 match the exit codes of the command line tool.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MsStatus {
    Ok = 0,
    /// A null pointer, invalid UTF-8 or an unknown field name.
    InvalidArgument = 1,
    /// The problem text does not parse.
    Parse = 2,
    /// The ideal is not zero-dimensional, not local, or the unit ideal.
    Domain = 3,
    /// The analysis finished and some property check was falsified. The
    /// report is still returned.
    Falsification = 4,
    /// A panic was caught inside the library.
    Internal = 5,
}

/// Which filtration a query refers to.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MsChain {
    /// Powers of the maximal ideal.
    Powers = 0,
    /// Annihilators of the powers.
    Annihilator = 1,
    /// Double annihilators of the powers.
    DoubleAnnihilator = 2,
}

/// An analysis report.
pub struct MsReport {
    inner: StructureReport,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    let c = CString::new(text).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn error_status(e: &Error) -> MsStatus {
    set_error(e.to_string());
    match e.exit_code() {
        2 => MsStatus::Parse,
        3 => MsStatus::Domain,
        _ => MsStatus::Falsification,
    }
}

fn guarded(f: impl FnOnce() -> MsStatus) -> MsStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| {
        set_error("internal error: panic inside multistruct");
        MsStatus::Internal
    })
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, MsStatus> {
    if p.is_null() {
        set_error(format!("{what} is null"));
        return Err(MsStatus::InvalidArgument);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error(format!("{what} is not valid UTF-8"));
        MsStatus::InvalidArgument
    })
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map_or(ptr::null_mut(), CString::into_raw)
}

/// The library version as a static string. Do not free it.
#[no_mangle]
pub extern "C" fn ms_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// The message of the last failure on this thread, or null if there was
/// none. Do not free it.
#[no_mangle]
pub extern "C" fn ms_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Analyzes a problem file given as text.
///
/// `field` may be null to keep the field of the text, or a string such as
/// `"2"`, `"32003"` or `"Q"` to override it. On `MS_STATUS_OK` and
/// `MS_STATUS_FALSIFICATION`, `*out` receives a new report; otherwise
/// `*out` is set to null.
///
/// # Safety
/// `text` and a non-null `field` must be NUL-terminated strings, and `out`
/// must point to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn ms_analyze(text: *const c_char, field: *const c_char, out: *mut *mut MsReport) -> MsStatus {
    if out.is_null() {
        set_error("out is null");
        return MsStatus::InvalidArgument;
    }
    *out = ptr::null_mut();
    guarded(|| {
        let text = match str_arg(text, "text") {
            Ok(t) => t,
            Err(s) => return s,
        };
        let field = if field.is_null() {
            None
        } else {
            match str_arg(field, "field").map(str::parse::<FieldSpec>) {
                Ok(Ok(f)) => Some(f),
                Ok(Err(e)) => {
                    set_error(e.to_string());
                    return MsStatus::InvalidArgument;
                }
                Err(s) => return s,
            }
        };
        let mut problem = match parse_problem(text) {
            Ok(p) => p,
            Err(e) => return error_status(&e),
        };
        if let Some(f) = field {
            problem.field = f;
        }
        let report = match run_analysis(&problem) {
            Ok(r) => r.without_timing(),
            Err(e) => return error_status(&e),
        };
        let status = if report.has_falsification() {
            set_error(format!("falsification: {}", report.falsifications.join("; ")));
            MsStatus::Falsification
        } else {
            MsStatus::Ok
        };
        *out = Box::into_raw(Box::new(MsReport { inner: report }));
        status
    })
}

/// Analyzes a problem file over its own field. Same as `ms_analyze` with a
/// null field.
///
/// # Safety
/// See `ms_analyze`.
#[no_mangle]
pub unsafe extern "C" fn ms_analyze_text(text: *const c_char, out: *mut *mut MsReport) -> MsStatus {
    ms_analyze(text, ptr::null(), out)
}

/// Releases a report. Null is ignored.
///
/// # Safety
/// `report` must come from `ms_analyze` and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ms_report_free(report: *mut MsReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ms_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// The report as pretty-printed JSON, or null if `report` is null.
///
/// # Safety
/// `report` must be null or a live report.
#[no_mangle]
pub unsafe extern "C" fn ms_report_json(report: *const MsReport) -> *mut c_char {
    match report.as_ref() {
        Some(r) => to_c_string(r.inner.to_json()),
        None => ptr::null_mut(),
    }
}

/// The human-readable summary, or null if `report` is null.
///
/// # Safety
/// `report` must be null or a live report.
#[no_mangle]
pub unsafe extern "C" fn ms_report_text(report: *const MsReport, with_properties: bool) -> *mut c_char {
    match report.as_ref() {
        Some(r) => to_c_string(r.inner.render_text(with_properties)),
        None => ptr::null_mut(),
    }
}

/// Dimension of the algebra over the field; 0 for a null report.
///
/// # Safety
/// `report` must be null or a live report.
#[no_mangle]
pub unsafe extern "C" fn ms_report_dim(report: *const MsReport) -> size_t {
    report.as_ref().map_or(0, |r| r.inner.dim_b)
}

/// The largest `l` with a nonzero `l`-th power of the maximal ideal.
///
/// # Safety
/// `report` must be null or a live report.
#[no_mangle]
pub unsafe extern "C" fn ms_report_m(report: *const MsReport) -> size_t {
    report.as_ref().map_or(0, |r| r.inner.m)
}

/// Dimension of the socle.
///
/// # Safety
/// `report` must be null or a live report.
#[no_mangle]
pub unsafe extern "C" fn ms_report_socle_dim(report: *const MsReport) -> size_t {
    report.as_ref().map_or(0, |r| r.inner.verdict.socle_dim)
}

/// The structural Gorenstein criterion.
///
/// # Safety
/// `report` must be null or a live report.
#[no_mangle]
pub unsafe extern "C" fn ms_report_is_gorenstein(report: *const MsReport) -> bool {
    report.as_ref().is_some_and(|r| r.inner.verdict.criterion_gorenstein)
}

/// Whether the criterion agrees with the socle dimension test.
///
/// # Safety
/// `report` must be null or a live report.
#[no_mangle]
pub unsafe extern "C" fn ms_report_agrees(report: *const MsReport) -> bool {
    report.as_ref().is_some_and(|r| r.inner.verdict.agrees)
}

/// Number of falsified property checks.
///
/// # Safety
/// `report` must be null or a live report.
#[no_mangle]
pub unsafe extern "C" fn ms_report_falsification_count(report: *const MsReport) -> size_t {
    report.as_ref().map_or(0, |r| r.inner.falsifications.len())
}

/// Copies the graded dimensions of one filtration into `buf`, writing at
/// most `len` entries. Returns the number of entries available, which is
/// `m + 1`, so a call with `len = 0` queries the size.
///
/// # Safety
/// `report` must be null or a live report, and `buf` must hold `len`
/// entries unless `len` is 0.
#[no_mangle]
pub unsafe extern "C" fn ms_report_graded_dims(
    report: *const MsReport,
    chain: MsChain,
    buf: *mut size_t,
    len: size_t,
) -> size_t {
    let Some(r) = report.as_ref() else { return 0 };
    let t = &r.inner.structure_type;
    let dims = match chain {
        MsChain::Powers => &t.dims_b,
        MsChain::Annihilator => &t.dims_m,
        MsChain::DoubleAnnihilator => &t.dims_a,
    };
    if !buf.is_null() {
        for (i, d) in dims.iter().take(len).enumerate() {
            *buf.add(i) = *d;
        }
    }
    dims.len()
}
