//! C ABI for the graph coloring library.
//!
//! Conventions:
//! - Handles (`GbscGraph`, `GbscColoring`) are opaque; create and destroy
//!   them only through these functions, never share one across threads
//!   without external synchronization.
//! - Functions return `GBSC_OK` (0) on success or a negative status; the
//!   message behind the most recent failure on the calling thread is
//!   available via [`gbsc_last_error`].
//! - Every entry point catches panics and converts them to
//!   `GBSC_ERR_PANIC`, so no unwind ever crosses the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Duration;

use gbsc::coloring::{dsatur, rlf, sli, Coloring};
use gbsc::exact::chromatic_exact;
use gbsc::graph::{read_dimacs, write_dimacs, Graph};
use gbsc::pipeline::{gbsc_color, GbscConfig};

/// Success.
pub const GBSC_OK: i32 = 0;
/// A required pointer argument was null.
pub const GBSC_ERR_NULL: i32 = -1;
/// The operation itself failed; see `gbsc_last_error`.
pub const GBSC_ERR_FAILED: i32 = -2;
/// An argument was malformed (bad UTF-8, unknown method name).
pub const GBSC_ERR_ARG: i32 = -3;
/// An internal panic was caught at the boundary.
pub const GBSC_ERR_PANIC: i32 = -4;

/// An undirected simple graph (opaque).
pub struct GbscGraph(Graph);

/// A total vertex coloring (opaque).
pub struct GbscColoring(Coloring);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let sanitized: String = msg
        .chars()
        .map(|c| if c == '\0' { ' ' } else { c })
        .collect();
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(sanitized).expect("no interior NUL"));
}

fn guard<F: FnOnce() -> i32>(f: F) -> i32 {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(&format!("internal panic: {msg}"));
            GBSC_ERR_PANIC
        }
    }
}

/// Copies the calling thread's most recent error message (NUL-terminated)
/// into `buf` and returns the byte length the full message needs, including
/// the terminator. Call with `cap = 0` to size a buffer; a return value not
/// larger than `cap` means the copy is complete.
///
/// # Safety
/// `buf` must point to at least `cap` writable bytes, or be null with
/// `cap = 0`.
#[no_mangle]
pub unsafe extern "C" fn gbsc_last_error(buf: *mut c_char, cap: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        let bytes = msg.as_bytes_with_nul();
        if !buf.is_null() && cap > 0 {
            let n = bytes.len().min(cap);
            std::ptr::copy_nonoverlapping(bytes.as_ptr().cast::<c_char>(), buf, n);
            // Guarantee termination even when truncating.
            *buf.add(n - 1) = 0;
        }
        bytes.len()
    })
}

/// Creates an empty graph on `n` vertices. Returns null only on internal
/// panic. Free with [`gbsc_graph_free`].
#[no_mangle]
pub extern "C" fn gbsc_graph_new(n: u32) -> *mut GbscGraph {
    let mut out = std::ptr::null_mut();
    guard(|| {
        out = Box::into_raw(Box::new(GbscGraph(Graph::empty(n as usize))));
        GBSC_OK
    });
    out
}

/// Parses a NUL-terminated DIMACS text. Returns null on failure (see
/// [`gbsc_last_error`]). Free with [`gbsc_graph_free`].
///
/// # Safety
/// `text` must be a valid NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn gbsc_graph_from_dimacs(text: *const c_char) -> *mut GbscGraph {
    if text.is_null() {
        set_error("text is null");
        return std::ptr::null_mut();
    }
    let mut out = std::ptr::null_mut();
    guard(|| {
        let Ok(text) = CStr::from_ptr(text).to_str() else {
            set_error("text is not valid UTF-8");
            return GBSC_ERR_ARG;
        };
        match read_dimacs(text) {
            Ok(g) => {
                out = Box::into_raw(Box::new(GbscGraph(g)));
                GBSC_OK
            }
            Err(e) => {
                set_error(&e.to_string());
                GBSC_ERR_FAILED
            }
        }
    });
    out
}

/// Inserts the undirected edge (u, v).
///
/// # Safety
/// `g` must be a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn gbsc_graph_add_edge(g: *mut GbscGraph, u: u32, v: u32) -> i32 {
    let Some(g) = g.as_mut() else {
        set_error("graph is null");
        return GBSC_ERR_NULL;
    };
    guard(|| match g.0.insert_edge(u as usize, v as usize) {
        Ok(()) => GBSC_OK,
        Err(e) => {
            set_error(&e.to_string());
            GBSC_ERR_FAILED
        }
    })
}

/// Number of vertices.
///
/// # Safety
/// `g` must be a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn gbsc_graph_vertex_count(g: *const GbscGraph) -> u32 {
    g.as_ref().map_or(0, |g| g.0.vertex_count() as u32)
}

/// Number of edges.
///
/// # Safety
/// `g` must be a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn gbsc_graph_edge_count(g: *const GbscGraph) -> u64 {
    g.as_ref().map_or(0, |g| g.0.edge_count() as u64)
}

/// Serializes the graph as DIMACS text via the two-call pattern: returns
/// the byte length needed including the NUL terminator, copying up to `cap`
/// bytes into `buf` when it is non-null.
///
/// # Safety
/// `g` must be a live handle; `buf` must point to `cap` writable bytes, or
/// be null with `cap = 0`.
#[no_mangle]
pub unsafe extern "C" fn gbsc_graph_to_dimacs(
    g: *const GbscGraph,
    buf: *mut c_char,
    cap: usize,
) -> usize {
    let Some(g) = g.as_ref() else {
        set_error("graph is null");
        return 0;
    };
    let mut needed = 0;
    guard(|| {
        let text = write_dimacs(&g.0);
        let bytes = text.as_bytes();
        needed = bytes.len() + 1;
        if !buf.is_null() && cap > 0 {
            let n = bytes.len().min(cap - 1);
            std::ptr::copy_nonoverlapping(bytes.as_ptr().cast::<c_char>(), buf, n);
            *buf.add(n) = 0;
        }
        GBSC_OK
    });
    needed
}

/// Releases a graph handle; null is ignored.
///
/// # Safety
/// `g` must be null or a live handle, and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn gbsc_graph_free(g: *mut GbscGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Colors the graph with the named method ("dsatur", "rlf", "sli" or
/// "gbsc"); `seed` drives the sampling pipeline and is ignored by the
/// deterministic heuristics. On success stores a coloring handle in `out`.
///
/// # Safety
/// `g` must be a live handle, `method` a valid NUL-terminated string, and
/// `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gbsc_color_graph(
    g: *const GbscGraph,
    method: *const c_char,
    seed: u64,
    out: *mut *mut GbscColoring,
) -> i32 {
    if g.is_null() || method.is_null() || out.is_null() {
        set_error("null argument");
        return GBSC_ERR_NULL;
    }
    let g = &(*g).0;
    guard(|| {
        let Ok(method) = CStr::from_ptr(method).to_str() else {
            set_error("method is not valid UTF-8");
            return GBSC_ERR_ARG;
        };
        let coloring = match method {
            "dsatur" => dsatur(g),
            "rlf" => rlf(g),
            "sli" => sli(g),
            "gbsc" => match gbsc_color(g, &GbscConfig::new(seed)) {
                Ok((coloring, _)) => coloring,
                Err(e) => {
                    set_error(&e.to_string());
                    return GBSC_ERR_FAILED;
                }
            },
            other => {
                set_error(&format!(
                    "unknown method \"{other}\" (expected dsatur, rlf, sli or gbsc)"
                ));
                return GBSC_ERR_ARG;
            }
        };
        *out = Box::into_raw(Box::new(GbscColoring(coloring)));
        GBSC_OK
    })
}

/// Computes the exact chromatic number by branch-and-bound within
/// `time_limit_ms`. Stores the chromatic number (or, on timeout, the best
/// upper bound) in `out_chi` and the timeout flag (0/1) in `out_timed_out`;
/// either output pointer may be null if unwanted.
///
/// # Safety
/// `g` must be a live handle; non-null outputs must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn gbsc_exact_chromatic(
    g: *const GbscGraph,
    time_limit_ms: u64,
    out_chi: *mut u32,
    out_timed_out: *mut i32,
) -> i32 {
    let Some(g) = g.as_ref() else {
        set_error("graph is null");
        return GBSC_ERR_NULL;
    };
    guard(|| {
        let res = chromatic_exact(&g.0, Duration::from_millis(time_limit_ms));
        if !out_chi.is_null() {
            *out_chi = res.chi as u32;
        }
        if !out_timed_out.is_null() {
            *out_timed_out = i32::from(res.timed_out);
        }
        GBSC_OK
    })
}

/// Number of distinct colors used.
///
/// # Safety
/// `c` must be a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn gbsc_coloring_palette(c: *const GbscColoring) -> u32 {
    c.as_ref().map_or(0, |c| c.0.palette_size() as u32)
}

/// Stores vertex `v`'s color in `out_color`.
///
/// # Safety
/// `c` must be a live handle and `out_color` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gbsc_coloring_color_of(
    c: *const GbscColoring,
    v: u32,
    out_color: *mut u32,
) -> i32 {
    if c.is_null() || out_color.is_null() {
        set_error("null argument");
        return GBSC_ERR_NULL;
    }
    let c = &(*c).0;
    if v as usize >= c.len() {
        set_error(&format!("vertex {v} out of range ({} vertices)", c.len()));
        return GBSC_ERR_ARG;
    }
    match c.color_of(v as usize) {
        Some(color) => {
            *out_color = color as u32;
            GBSC_OK
        }
        None => {
            set_error(&format!("vertex {v} is uncolored"));
            GBSC_ERR_FAILED
        }
    }
}

/// Releases a coloring handle; null is ignored.
///
/// # Safety
/// `c` must be null or a live handle, and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn gbsc_coloring_free(c: *mut GbscColoring) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}
