//! C ABI over the `qaoalie` library.
//!
//! Problems and graphs are opaque handles created from JSON documents. Every
//! call returns a [`QaoalieStatus`]; results come back as JSON strings owned by
//! the caller and released with [`qaoalie_string_free`]. The message of the most
//! recent failure on the calling thread is available from
//! [`qaoalie_last_error`].

use std::cell::RefCell;
use std::collections::BTreeSet;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qaoalie::closure::{analyze, AnalysisOptions, Mode, DEFAULT_TOLERANCE};
use qaoalie::forcing::{forcing_run, minimal_forcing_search, ForcingMode, ForcingOptions};
use qaoalie::hamlib::{parse_graph, parse_spec, GraphSpec, ProblemSpec, Vertex};
use qaoalie::verify::{run_all, VerifyParams};
use qaoalie::Error;

/// Result code of every exported function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QaoalieStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidInput = 3,
    ResourceLimit = 4,
    Panic = 5,
}

/// Infection rule for the forcing entry points.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QaoalieProcess {
    Zero = 0,
    Generalized = 1,
    Hyper = 2,
}

impl From<QaoalieProcess> for ForcingMode {
    fn from(p: QaoalieProcess) -> Self {
        match p {
            QaoalieProcess::Zero => ForcingMode::Zero,
            QaoalieProcess::Generalized => ForcingMode::Generalized,
            QaoalieProcess::Hyper => ForcingMode::Hyper,
        }
    }
}

/// A parsed problem file.
pub struct QaoalieProblem {
    spec: ProblemSpec,
}

/// A parsed graph document.
pub struct QaoalieGraph {
    graph: GraphSpec,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

enum Failure {
    Status(QaoalieStatus, String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> QaoalieStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QaoalieStatus::Ok,
        Ok(Err(Failure::Status(s, msg))) => {
            set_error(msg);
            s
        }
        Ok(Err(Failure::Lib(e))) => {
            let status = if e.exit_code() == 3 {
                QaoalieStatus::ResourceLimit
            } else {
                QaoalieStatus::InvalidInput
            };
            set_error(e.to_string());
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            QaoalieStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure::Status(QaoalieStatus::NullPointer, format!("{what} is null"))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Failure::Status(QaoalieStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn write_json<T: serde::Serialize>(out: *mut *mut c_char, value: &T) -> Result<(), Failure> {
    let s = serde_json::to_string(value)
        .map_err(|e| Failure::Status(QaoalieStatus::InvalidInput, format!("serialize: {e}")))?;
    let c = CString::new(s).map_err(|e| Failure::Status(QaoalieStatus::InvalidInput, e.to_string()))?;
    *out = c.into_raw();
    Ok(())
}

fn analysis(float_mode: bool, tolerance: f64, stability: usize) -> Result<AnalysisOptions, Failure> {
    if stability == 0 {
        return Err(Failure::Status(QaoalieStatus::InvalidInput, "stability must be at least 1".into()));
    }
    let mut opts = AnalysisOptions {
        stability,
        ..AnalysisOptions::default()
    };
    if float_mode {
        let tolerance = if tolerance == 0.0 { DEFAULT_TOLERANCE } else { tolerance };
        if !(tolerance.is_finite() && tolerance > 0.0) {
            return Err(Failure::Status(
                QaoalieStatus::InvalidInput,
                format!("tolerance must be positive and finite, got {tolerance}"),
            ));
        }
        opts.mode = Mode::Float { tolerance };
        opts.closure.tolerance = tolerance;
    }
    Ok(opts)
}

/// Message of the last failure on this thread, or null. Valid until the next call.
#[no_mangle]
pub extern "C" fn qaoalie_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn qaoalie_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a problem document.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qaoalie_problem_parse(json: *const c_char, out: *mut *mut QaoalieProblem) -> QaoalieStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let spec = parse_spec(text(json, "json")?)?;
        *out = Box::into_raw(Box::new(QaoalieProblem { spec }));
        Ok(())
    })
}

/// Re-samples the problem's sampled coefficients from `seed`.
///
/// # Safety
/// `problem` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn qaoalie_problem_reseed(problem: *mut QaoalieProblem, seed: u64) -> QaoalieStatus {
    guard(|| {
        let p = problem.as_mut().ok_or_else(|| null("problem"))?;
        p.spec = p.spec.with_seed(seed)?;
        Ok(())
    })
}

/// Number of qubits of the problem, or 0 for a null handle.
///
/// # Safety
/// `problem` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qaoalie_problem_qubits(problem: *const QaoalieProblem) -> usize {
    problem.as_ref().map_or(0, |p| p.spec.n)
}

/// # Safety
/// `problem` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qaoalie_problem_free(problem: *mut QaoalieProblem) {
    if !problem.is_null() {
        drop(Box::from_raw(problem));
    }
}

/// Closure analysis; writes the report as JSON to `out_json`.
///
/// `float_mode` selects floating-point elimination; `tolerance` of 0 picks the
/// default. `stability` is the number of seeds to rerun with.
///
/// # Safety
/// `problem` must be a live handle; `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qaoalie_closure(
    problem: *const QaoalieProblem,
    float_mode: bool,
    tolerance: f64,
    stability: usize,
    out_json: *mut *mut c_char,
) -> QaoalieStatus {
    guard(|| {
        let p = problem.as_ref().ok_or_else(|| null("problem"))?;
        if out_json.is_null() {
            return Err(null("out_json"));
        }
        let report = analyze(&p.spec, &analysis(float_mode, tolerance, stability)?)?;
        write_json(out_json, &report)
    })
}

/// Dimension of the dynamical Lie algebra, exact arithmetic.
///
/// # Safety
/// `problem` must be a live handle; `out_dimension` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qaoalie_dimension(problem: *const QaoalieProblem, out_dimension: *mut usize) -> QaoalieStatus {
    guard(|| {
        let p = problem.as_ref().ok_or_else(|| null("problem"))?;
        if out_dimension.is_null() {
            return Err(null("out_dimension"));
        }
        *out_dimension = analyze(&p.spec, &AnalysisOptions::default())?.dimension;
        Ok(())
    })
}

/// Parses a graph document.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qaoalie_graph_parse(json: *const c_char, out: *mut *mut QaoalieGraph) -> QaoalieStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let graph = parse_graph(text(json, "json")?)?;
        *out = Box::into_raw(Box::new(QaoalieGraph { graph }));
        Ok(())
    })
}

/// # Safety
/// `graph` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qaoalie_graph_free(graph: *mut QaoalieGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// Runs a forcing process from `set` (and, for the hyper rule, the 2-edges in
/// `edges`, given as `2 * edge_count` vertex ids). Writes whether every vertex
/// ends infected to `out_forcing` and, if `out_json` is non-null, the final
/// state as JSON.
///
/// # Safety
/// `graph` must be a live handle; `set` must hold `set_len` ids and `edges`
/// `2 * edge_count` ids (either may be null when its length is 0).
#[no_mangle]
pub unsafe extern "C" fn qaoalie_force(
    graph: *const QaoalieGraph,
    process: QaoalieProcess,
    set: *const Vertex,
    set_len: usize,
    edges: *const Vertex,
    edge_count: usize,
    out_forcing: *mut bool,
    out_json: *mut *mut c_char,
) -> QaoalieStatus {
    guard(|| {
        let g = &graph.as_ref().ok_or_else(|| null("graph"))?.graph;
        if out_forcing.is_null() {
            return Err(null("out_forcing"));
        }
        let s1: BTreeSet<Vertex> = slice(set, set_len, "set")?.iter().copied().collect();
        let s2: BTreeSet<(Vertex, Vertex)> = slice(edges, 2 * edge_count, "edges")?
            .chunks(2)
            .map(|e| (e[0].min(e[1]), e[0].max(e[1])))
            .collect();
        for v in s1.iter().chain(s2.iter().flat_map(|(u, v)| [u, v])) {
            if !g.vertices.contains(v) {
                return Err(Failure::Status(QaoalieStatus::InvalidInput, format!("vertex {v} is not in the graph")));
            }
        }
        let state = forcing_run(g, &s1, &s2, process.into(), ForcingOptions::default())?;
        *out_forcing = state.covers(g);
        if !out_json.is_null() {
            write_json(out_json, &state)?;
        }
        Ok(())
    })
}

unsafe fn slice<'a>(p: *const Vertex, len: usize, what: &str) -> Result<&'a [Vertex], Failure> {
    if len == 0 {
        Ok(&[])
    } else if p.is_null() {
        Err(null(what))
    } else {
        Ok(std::slice::from_raw_parts(p, len))
    }
}

/// Smallest forcing sets up to `max_size` vertices, as JSON.
///
/// # Safety
/// `graph` must be a live handle; `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qaoalie_force_search(
    graph: *const QaoalieGraph,
    process: QaoalieProcess,
    max_size: usize,
    out_json: *mut *mut c_char,
) -> QaoalieStatus {
    guard(|| {
        let g = &graph.as_ref().ok_or_else(|| null("graph"))?.graph;
        if out_json.is_null() {
            return Err(null("out_json"));
        }
        let found = minimal_forcing_search(g, process.into(), max_size)?;
        write_json(out_json, &found)
    })
}

/// Replays every built-in identity with coefficients drawn from `seed`.
///
/// # Safety
/// `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qaoalie_verify_all(seed: u64, out_json: *mut *mut c_char) -> QaoalieStatus {
    guard(|| {
        if out_json.is_null() {
            return Err(null("out_json"));
        }
        let report = run_all(seed, &VerifyParams::default())?;
        write_json(out_json, &report)
    })
}
