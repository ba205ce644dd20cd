//! C interface to `dispersable-core`.
//!
//! Graphs and embeddings are opaque heap objects owned by the caller and
//! released with their `_free` function. Strings returned through `char **`
//! are released with `dsp_string_free`. Every fallible call returns a
//! `DspStatus`; on failure `dsp_last_error_message` describes the error for
//! the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Duration;

use dispersable_core::barnette;
use dispersable_core::book::{verify, BookEmbedding};
use dispersable_core::generators;
use dispersable_core::graph::Graph;
use dispersable_core::io::{parse_embedding, parse_graph, parse_rotation, write_embedding};
use dispersable_core::render::{render_svg, RenderSpec};
use dispersable_core::solver::{decide_dbt, Budget, DbtOutcome, DecideOptions};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DspStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidInput = 4,
    VerificationFailed = 5,
    Unknown = 6,
    NotFound = 7,
    Internal = 8,
}

/// Opaque graph handle.
pub struct DspGraph {
    inner: Graph,
}

/// Opaque book embedding handle.
pub struct DspEmbedding {
    inner: BookEmbedding,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl std::fmt::Display) {
    let text = CString::new(msg.to_string().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = text);
}

fn fail(status: DspStatus, msg: impl std::fmt::Display) -> DspStatus {
    set_error(msg);
    status
}

/// Runs `f`, turning panics into `Internal`.
fn guard(f: impl FnOnce() -> DspStatus) -> DspStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => {
            if status == DspStatus::Ok {
                set_error("");
            }
            status
        }
        Err(_) => fail(DspStatus::Internal, "internal panic"),
    }
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, DspStatus> {
    if s.is_null() {
        return Err(fail(DspStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(s).to_str().map_err(|_| fail(DspStatus::InvalidUtf8, "string is not UTF-8"))
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> DspStatus {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            DspStatus::Ok
        }
        Err(_) => fail(DspStatus::Internal, "output contains a NUL byte"),
    }
}

macro_rules! try_status {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(status) => return status,
        }
    };
}

macro_rules! non_null {
    ($($p:expr),+) => {
        $(if $p.is_null() {
            return fail(DspStatus::NullPointer, concat!("null argument `", stringify!($p), "`"));
        })+
    };
}

/// Parses the `n m` / `u v` graph text format.
///
/// # Safety
/// `src` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dsp_graph_from_text(src: *const c_char, out: *mut *mut DspGraph) -> DspStatus {
    guard(|| {
        non_null!(out);
        let s = try_status!(text(src));
        match parse_graph(s) {
            Ok(g) => {
                *out = Box::into_raw(Box::new(DspGraph { inner: g }));
                DspStatus::Ok
            }
            Err(e) => fail(DspStatus::ParseError, e),
        }
    })
}

/// Builds a named graph; `params` may be null when `param_count` is 0.
///
/// # Safety
/// `name` must be NUL-terminated, `params` must point to `param_count`
/// values, `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn dsp_graph_from_name(
    name: *const c_char,
    params: *const usize,
    param_count: usize,
    out: *mut *mut DspGraph,
) -> DspStatus {
    guard(|| {
        non_null!(out);
        let name = try_status!(text(name));
        if params.is_null() && param_count > 0 {
            return fail(DspStatus::NullPointer, "null parameter array");
        }
        let params = if param_count == 0 { &[][..] } else { std::slice::from_raw_parts(params, param_count) };
        match generators::named_graph(name, params) {
            Ok(g) => {
                *out = Box::into_raw(Box::new(DspGraph { inner: g }));
                DspStatus::Ok
            }
            Err(e) => fail(DspStatus::InvalidInput, e),
        }
    })
}

/// # Safety
/// `g` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn dsp_graph_free(g: *mut DspGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a valid graph handle or null (returns 0).
#[no_mangle]
pub unsafe extern "C" fn dsp_graph_vertex_count(g: *const DspGraph) -> usize {
    g.as_ref().map_or(0, |g| g.inner.vertex_count())
}

/// # Safety
/// `g` must be a valid graph handle or null (returns 0).
#[no_mangle]
pub unsafe extern "C" fn dsp_graph_edge_count(g: *const DspGraph) -> usize {
    g.as_ref().map_or(0, |g| g.inner.edge_count())
}

/// # Safety
/// `g` must be a valid graph handle or null (returns 0).
#[no_mangle]
pub unsafe extern "C" fn dsp_graph_max_degree(g: *const DspGraph) -> usize {
    g.as_ref().map_or(0, |g| g.inner.max_degree())
}

/// Parses the embedding text format against `g`.
///
/// # Safety
/// Pointers must be valid; `src` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn dsp_embedding_from_text(
    g: *const DspGraph,
    src: *const c_char,
    out: *mut *mut DspEmbedding,
) -> DspStatus {
    guard(|| {
        non_null!(g, out);
        let s = try_status!(text(src));
        match parse_embedding(s, &(*g).inner) {
            Ok(e) => {
                *out = Box::into_raw(Box::new(DspEmbedding { inner: e }));
                DspStatus::Ok
            }
            Err(e) => fail(DspStatus::ParseError, e),
        }
    })
}

/// # Safety
/// Pointers must be valid; the string is released with `dsp_string_free`.
#[no_mangle]
pub unsafe extern "C" fn dsp_embedding_to_text(
    g: *const DspGraph,
    emb: *const DspEmbedding,
    out: *mut *mut c_char,
) -> DspStatus {
    guard(|| {
        non_null!(g, emb, out);
        let (g, emb) = (&(*g).inner, &(*emb).inner);
        if emb.spine().len() != g.vertex_count() || emb.pages().len() != g.edge_count() {
            return fail(DspStatus::InvalidInput, "embedding does not match the graph");
        }
        put_string(out, write_embedding(g, emb))
    })
}

/// # Safety
/// `emb` must be a valid handle or null (returns 0).
#[no_mangle]
pub unsafe extern "C" fn dsp_embedding_page_count(emb: *const DspEmbedding) -> usize {
    emb.as_ref().map_or(0, |e| e.inner.page_count())
}

/// # Safety
/// `emb` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn dsp_embedding_free(emb: *mut DspEmbedding) {
    if !emb.is_null() {
        drop(Box::from_raw(emb));
    }
}

/// # Safety
/// `s` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn dsp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// `Ok` when the embedding is valid, `VerificationFailed` when not.
///
/// # Safety
/// Pointers must be valid handles.
#[no_mangle]
pub unsafe extern "C" fn dsp_verify(g: *const DspGraph, emb: *const DspEmbedding, dispersable: bool) -> DspStatus {
    guard(|| {
        non_null!(g, emb);
        match verify(&(*g).inner, &(*emb).inner, dispersable) {
            Ok(r) if r.valid() => DspStatus::Ok,
            Ok(r) => fail(DspStatus::VerificationFailed, format!("{} violations, first {:?}", r.violations.len(), r.violations[0])),
            Err(e) => fail(DspStatus::InvalidInput, e),
        }
    })
}

/// Least page count in `[lower, upper]` using the internal solver.
/// `budget_seconds <= 0` means unlimited. Returns `NotFound` when the whole
/// range is infeasible and `Unknown` when the budget ran out.
///
/// # Safety
/// `g`, `pages_out` and `witness_out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn dsp_decide(
    g: *const DspGraph,
    lower: usize,
    upper: usize,
    dispersable: bool,
    budget_seconds: f64,
    pages_out: *mut usize,
    witness_out: *mut *mut DspEmbedding,
) -> DspStatus {
    guard(|| {
        non_null!(g, pages_out, witness_out);
        let budget = if budget_seconds > 0.0 && budget_seconds.is_finite() {
            Budget::time(Duration::from_secs_f64(budget_seconds))
        } else {
            Budget::UNLIMITED
        };
        let opts = DecideOptions { dispersable, budget, ..DecideOptions::default() };
        match decide_dbt(&(*g).inner, lower, upper, &opts) {
            Ok(r) => match r.outcome {
                DbtOutcome::Found { pages, witness } => {
                    *pages_out = pages;
                    *witness_out = Box::into_raw(Box::new(DspEmbedding { inner: witness }));
                    DspStatus::Ok
                }
                DbtOutcome::NoneInRange => fail(DspStatus::NotFound, "no layout in range"),
                DbtOutcome::Unknown => fail(DspStatus::Unknown, "budget exhausted"),
            },
            Err(e) => fail(DspStatus::InvalidInput, e),
        }
    })
}

/// Three-page dispersable layout from a rotation system in text form.
///
/// # Safety
/// Pointers must be valid; `rotation` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn dsp_barnette(
    g: *const DspGraph,
    rotation: *const c_char,
    out: *mut *mut DspEmbedding,
) -> DspStatus {
    guard(|| {
        non_null!(g, out);
        let r = try_status!(text(rotation));
        let rs = match parse_rotation(r, (*g).inner.clone()) {
            Ok(rs) => rs,
            Err(e) => return fail(DspStatus::ParseError, e),
        };
        match barnette::layout(&rs) {
            Ok(l) => {
                *out = Box::into_raw(Box::new(DspEmbedding { inner: l.embedding }));
                DspStatus::Ok
            }
            Err(e @ (barnette::BarnetteError::InvariantViolated { .. } | barnette::BarnetteError::Internal(_))) => {
                fail(DspStatus::Internal, e)
            }
            Err(e) => fail(DspStatus::InvalidInput, e),
        }
    })
}

/// SVG chord diagram; release with `dsp_string_free`.
///
/// # Safety
/// Pointers must be valid handles.
#[no_mangle]
pub unsafe extern "C" fn dsp_render_svg(
    g: *const DspGraph,
    emb: *const DspEmbedding,
    out: *mut *mut c_char,
) -> DspStatus {
    guard(|| {
        non_null!(g, emb, out);
        let (g, emb) = (&(*g).inner, &(*emb).inner);
        if emb.spine().len() != g.vertex_count() || emb.pages().len() != g.edge_count() {
            return fail(DspStatus::InvalidInput, "embedding does not match the graph");
        }
        put_string(out, render_svg(g, emb, &RenderSpec::default()))
    })
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn dsp_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}
