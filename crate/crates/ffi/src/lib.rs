//! C interface.
//!
//! Every fallible call returns a [`BfpStatus`] and writes its result through
//! an out-pointer. On failure `bfp_last_error` describes the error for the
//! calling thread. Handles and strings returned here are released with the
//! matching `*_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use bfp::extremal::{
    brute_force_extremal, verify_counterexample, CounterexampleReport, ExtremalError, SearchConfig, SearchReport,
};
use bfp::graphs::DegreeSequence;
use bfp::report::to_json_string;
use bfp::spectral::{spectral_radius_graph, DEFAULT_TOL};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BfpStatus {
    Ok = 0,
    NullPointer = 1,
    BadParameters = 2,
    GuardExceeded = 3,
    Numeric = 4,
    Internal = 5,
}

/// Result of `bfp_verify`.
pub struct BfpReport {
    report: CounterexampleReport,
}

/// Result of `bfp_search`.
pub struct BfpSearch {
    report: SearchReport,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &ExtremalError) -> BfpStatus {
    match e {
        ExtremalError::Hypothesis(_) | ExtremalError::InvalidSearch(_) | ExtremalError::Graph(_) => {
            BfpStatus::BadParameters
        }
        ExtremalError::Guard { .. } => BfpStatus::GuardExceeded,
        ExtremalError::Disagreement { .. } | ExtremalError::Poly(_) | ExtremalError::Spectral(_) => {
            BfpStatus::Numeric
        }
        ExtremalError::Inconsistent(_) => BfpStatus::Internal,
    }
}

/// Runs `f`, turning a panic into `Internal`.
fn guarded(f: impl FnOnce() -> Result<(), (BfpStatus, String)>) -> BfpStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => BfpStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            BfpStatus::Internal
        }
    }
}

fn null(name: &str) -> (BfpStatus, String) {
    (BfpStatus::NullPointer, format!("{name} is null"))
}

fn extremal_err(e: ExtremalError) -> (BfpStatus, String) {
    (status_of(&e), e.to_string())
}

fn json_string(text: Result<String, String>) -> Result<*mut c_char, (BfpStatus, String)> {
    let text = text.map_err(|e| (BfpStatus::Internal, e))?;
    CString::new(text)
        .map(CString::into_raw)
        .map_err(|e| (BfpStatus::Internal, e.to_string()))
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn bfp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Compares `K^±_{p,q−k}` with every one-vertex-added graph of the same size.
///
/// # Safety
/// `out` must be null or valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn bfp_verify(p: u64, q: u64, k: u64, out: *mut *mut BfpReport) -> BfpStatus {
    guarded(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let report = verify_counterexample(p, q, k, &SearchConfig::default()).map_err(extremal_err)?;
        // SAFETY: checked non-null; the caller guarantees validity.
        unsafe { *out = Box::into_raw(Box::new(BfpReport { report })) };
        Ok(())
    })
}

/// # Safety
/// `report` must be null or a handle from `bfp_verify`; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn bfp_report_verdict(report: *const BfpReport, out: *mut bool) -> BfpStatus {
    guarded(|| {
        // SAFETY: null-checked; the caller guarantees a live handle.
        let r = unsafe { report.as_ref() }.ok_or_else(|| null("report"))?;
        let out = unsafe { out.as_mut() }.ok_or_else(|| null("out"))?;
        *out = r.report.verdict;
        Ok(())
    })
}

/// `ρ(K^±_{p,q−k})` from the exact route.
///
/// # Safety
/// As for `bfp_report_verdict`.
#[no_mangle]
pub unsafe extern "C" fn bfp_report_rho_pm(report: *const BfpReport, out: *mut f64) -> BfpStatus {
    guarded(|| {
        // SAFETY: null-checked; the caller guarantees a live handle.
        let r = unsafe { report.as_ref() }.ok_or_else(|| null("report"))?;
        let out = unsafe { out.as_mut() }.ok_or_else(|| null("out"))?;
        *out = r.report.rho_pm;
        Ok(())
    })
}

/// # Safety
/// As for `bfp_report_verdict`.
#[no_mangle]
pub unsafe extern "C" fn bfp_report_candidate_count(report: *const BfpReport, out: *mut usize) -> BfpStatus {
    guarded(|| {
        // SAFETY: null-checked; the caller guarantees a live handle.
        let r = unsafe { report.as_ref() }.ok_or_else(|| null("report"))?;
        let out = unsafe { out.as_mut() }.ok_or_else(|| null("out"))?;
        *out = r.report.candidates.len();
        Ok(())
    })
}

/// Radius of candidate `index`, in order of `a`.
///
/// # Safety
/// As for `bfp_report_verdict`.
#[no_mangle]
pub unsafe extern "C" fn bfp_report_candidate_rho(report: *const BfpReport, index: usize, out: *mut f64) -> BfpStatus {
    guarded(|| {
        // SAFETY: null-checked; the caller guarantees a live handle.
        let r = unsafe { report.as_ref() }.ok_or_else(|| null("report"))?;
        let out = unsafe { out.as_mut() }.ok_or_else(|| null("out"))?;
        let c = r.report.candidates.get(index).ok_or_else(|| {
            (
                BfpStatus::BadParameters,
                format!("candidate {index} out of range ({} candidates)", r.report.candidates.len()),
            )
        })?;
        *out = c.rho;
        Ok(())
    })
}

/// Full report as JSON; release with `bfp_string_free`.
///
/// # Safety
/// As for `bfp_report_verdict`.
#[no_mangle]
pub unsafe extern "C" fn bfp_report_to_json(report: *const BfpReport, out: *mut *mut c_char) -> BfpStatus {
    guarded(|| {
        // SAFETY: null-checked; the caller guarantees a live handle.
        let r = unsafe { report.as_ref() }.ok_or_else(|| null("report"))?;
        let out = unsafe { out.as_mut() }.ok_or_else(|| null("out"))?;
        *out = json_string(to_json_string(&r.report))?;
        Ok(())
    })
}

/// # Safety
/// `report` must be null or a handle from `bfp_verify` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bfp_report_free(report: *mut BfpReport) {
    if !report.is_null() {
        // SAFETY: the handle came from Box::into_raw and is freed once.
        drop(unsafe { Box::from_raw(report) });
    }
}

/// Exhaustive search of `𝒦(p, q, e)`. `max_subsets = 0` selects the default guard.
///
/// # Safety
/// `out` must be null or valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn bfp_search(
    p: u64,
    q: u64,
    e: u64,
    max_subsets: u64,
    dedup: bool,
    connected_only: bool,
    out: *mut *mut BfpSearch,
) -> BfpStatus {
    guarded(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        if p == 0 || q == 0 || e == 0 {
            return Err((BfpStatus::BadParameters, "requires p, q, e >= 1".into()));
        }
        let mut cfg = SearchConfig {
            dedup,
            connected_only,
            ..SearchConfig::default()
        };
        if max_subsets > 0 {
            cfg.max_subsets = max_subsets;
        }
        let found = brute_force_extremal(p, q, e, &cfg).map_err(extremal_err)?;
        let report = SearchReport::new(&found, &cfg);
        // SAFETY: checked non-null; the caller guarantees validity.
        unsafe { *out = Box::into_raw(Box::new(BfpSearch { report })) };
        Ok(())
    })
}

/// Largest radius found; NaN when the family is empty.
///
/// # Safety
/// `search` must be null or a live handle from `bfp_search`; `out` null or writable.
#[no_mangle]
pub unsafe extern "C" fn bfp_search_max_rho(search: *const BfpSearch, out: *mut f64) -> BfpStatus {
    guarded(|| {
        // SAFETY: null-checked; the caller guarantees a live handle.
        let s = unsafe { search.as_ref() }.ok_or_else(|| null("search"))?;
        let out = unsafe { out.as_mut() }.ok_or_else(|| null("out"))?;
        *out = s.report.max_rho.unwrap_or(f64::NAN);
        Ok(())
    })
}

/// Number of maximizing graphs, counting labelled copies.
///
/// # Safety
/// As for `bfp_search_max_rho`.
#[no_mangle]
pub unsafe extern "C" fn bfp_search_maximizer_count(search: *const BfpSearch, out: *mut u64) -> BfpStatus {
    guarded(|| {
        // SAFETY: null-checked; the caller guarantees a live handle.
        let s = unsafe { search.as_ref() }.ok_or_else(|| null("search"))?;
        let out = unsafe { out.as_mut() }.ok_or_else(|| null("out"))?;
        *out = s.report.maximizer_count;
        Ok(())
    })
}

/// Whether some maximizer is a complete bipartite graph plus one vertex.
///
/// # Safety
/// As for `bfp_search_max_rho`.
#[no_mangle]
pub unsafe extern "C" fn bfp_search_one_vertex_added(search: *const BfpSearch, out: *mut bool) -> BfpStatus {
    guarded(|| {
        // SAFETY: null-checked; the caller guarantees a live handle.
        let s = unsafe { search.as_ref() }.ok_or_else(|| null("search"))?;
        let out = unsafe { out.as_mut() }.ok_or_else(|| null("out"))?;
        *out = s.report.one_vertex_added_among_maximizers;
        Ok(())
    })
}

/// # Safety
/// As for `bfp_search_max_rho`.
#[no_mangle]
pub unsafe extern "C" fn bfp_search_to_json(search: *const BfpSearch, out: *mut *mut c_char) -> BfpStatus {
    guarded(|| {
        // SAFETY: null-checked; the caller guarantees a live handle.
        let s = unsafe { search.as_ref() }.ok_or_else(|| null("search"))?;
        let out = unsafe { out.as_mut() }.ok_or_else(|| null("out"))?;
        *out = json_string(to_json_string(&s.report))?;
        Ok(())
    })
}

/// # Safety
/// `search` must be null or a handle from `bfp_search` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bfp_search_free(search: *mut BfpSearch) {
    if !search.is_null() {
        // SAFETY: the handle came from Box::into_raw and is freed once.
        drop(unsafe { Box::from_raw(search) });
    }
}

/// `ρ(G_D)` for the nonincreasing sequence `degrees[0..len]`, with `q`
/// columns (`0` means the largest degree).
///
/// # Safety
/// `degrees` must be null or valid for `len` reads; `out` null or writable.
#[no_mangle]
pub unsafe extern "C" fn bfp_spectral_radius_degrees(
    degrees: *const u32,
    len: usize,
    q: usize,
    out: *mut f64,
) -> BfpStatus {
    guarded(|| {
        if degrees.is_null() {
            return Err(null("degrees"));
        }
        let out = unsafe { out.as_mut() }.ok_or_else(|| null("out"))?;
        // SAFETY: non-null; the caller guarantees `len` readable entries.
        let d = unsafe { std::slice::from_raw_parts(degrees, len) }.to_vec();
        let d = DegreeSequence::new(d).map_err(|e| (BfpStatus::BadParameters, e.to_string()))?;
        let q = if q == 0 { d.max_degree() as usize } else { q };
        let f = bfp::graphs::build_ferrers(&d, q).map_err(|e| (BfpStatus::BadParameters, e.to_string()))?;
        let r = spectral_radius_graph(f.graph(), DEFAULT_TOL).map_err(|e| (BfpStatus::Numeric, e.to_string()))?;
        *out = r.rho;
        Ok(())
    })
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bfp_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: the string came from CString::into_raw and is freed once.
        drop(unsafe { CString::from_raw(s) });
    }
}

