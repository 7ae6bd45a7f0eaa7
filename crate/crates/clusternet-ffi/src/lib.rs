//! C ABI for the cluster-graph library.
//!
//! Handles are opaque; every function returns a [`CnStatus`] and writes
//! results through out-pointers. On any failure a thread-local message is
//! set and can be read with [`cn_last_error`] until the next call on the
//! same thread. Strings returned through out-pointers are owned by the
//! caller and must be released with [`cn_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;

use clusternet::analysis;
use clusternet::cluster::{build_cluster_graph, ReconstructionMode};
use clusternet::dot::graph_to_dot;
use clusternet::error::Error;
use clusternet::model::{GraphFile, Model, ModelFile};
use clusternet::parse::render_state;
use clusternet::{ClusterGraph, GroebnerBasis, State};

/// Status codes shared by every entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CnStatus {
    CnOk = 0,
    /// A required pointer was null or an argument was out of range.
    CnInvalidArgument = 1,
    /// A string argument was not valid UTF-8.
    CnUtf8 = 2,
    CnIo = 3,
    /// State-expression or document parsing failed.
    CnParse = 4,
    /// The model is inconsistent (grading, homogeneity, species).
    CnModel = 5,
    /// An enumeration or reconstruction cap was exceeded.
    CnCap = 6,
    CnOverflow = 7,
    /// The queried state belongs to a cluster outside the graph.
    CnNotInGraph = 8,
    CnPanic = 9,
}

/// Opaque model handle: a resolved model plus the basis that canonicalizes
/// its states.
#[repr(C)]
pub struct CnModel {
    _private: [u8; 0],
}

/// Opaque graph handle: a reconstructed cluster graph plus its basis.
#[repr(C)]
pub struct CnGraph {
    _private: [u8; 0],
}

struct ModelHandle {
    model: Model,
    basis: GroebnerBasis,
}

struct GraphHandle {
    file: GraphFile,
    graph: ClusterGraph,
    basis: GroebnerBasis,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_error(msg: &str) {
    let cleaned: String = msg.chars().filter(|&c| c != '\0').collect();
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(cleaned).unwrap());
}

fn status_of(err: &Error) -> CnStatus {
    match err {
        Error::Io(_) => CnStatus::CnIo,
        Error::Json(_) | Error::Syntax { .. } | Error::UnknownSpecies { .. } => CnStatus::CnParse,
        Error::InvalidModel(_) | Error::InvalidGrading(_) | Error::NoPositiveGrading => {
            CnStatus::CnModel
        }
        Error::InvalidGraph(_) => CnStatus::CnParse,
        Error::CapExceeded { .. } => CnStatus::CnCap,
        Error::Overflow => CnStatus::CnOverflow,
        Error::StateNotInGraph(_) => CnStatus::CnNotInGraph,
        _ => CnStatus::CnInvalidArgument,
    }
}

fn fail(err: &Error) -> CnStatus {
    set_error(&err.to_string());
    status_of(err)
}

fn guarded(f: impl FnOnce() -> CnStatus) -> CnStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic");
            CnStatus::CnPanic
        }
    }
}

/// # Safety
/// `ptr` must be a valid NUL-terminated string.
unsafe fn utf8<'a>(ptr: *const c_char) -> Result<&'a str, CnStatus> {
    if ptr.is_null() {
        set_error("null string argument");
        return Err(CnStatus::CnInvalidArgument);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error("string argument is not UTF-8");
        CnStatus::CnUtf8
    })
}

fn give_string(s: String, out: *mut *mut c_char) -> CnStatus {
    let cleaned: String = s.chars().filter(|&c| c != '\0').collect();
    let c = CString::new(cleaned).unwrap();
    unsafe { *out = c.into_raw() };
    CnStatus::CnOk
}

unsafe fn model_ref<'a>(ptr: *const CnModel) -> Result<&'a ModelHandle, CnStatus> {
    if ptr.is_null() {
        set_error("null model handle");
        return Err(CnStatus::CnInvalidArgument);
    }
    Ok(&*(ptr as *const ModelHandle))
}

unsafe fn graph_ref<'a>(ptr: *const CnGraph) -> Result<&'a GraphHandle, CnStatus> {
    if ptr.is_null() {
        set_error("null graph handle");
        return Err(CnStatus::CnInvalidArgument);
    }
    Ok(&*(ptr as *const GraphHandle))
}

fn open_model(file: ModelFile, out: *mut *mut CnModel) -> CnStatus {
    let model = match Model::resolve(file) {
        Ok(m) => m,
        Err(e) => return fail(&e),
    };
    let basis = match model.base_basis() {
        Ok(b) => b,
        Err(e) => return fail(&e),
    };
    let handle = Box::new(ModelHandle { model, basis });
    unsafe { *out = Box::into_raw(handle) as *mut CnModel };
    CnStatus::CnOk
}

/// Message for the most recent failure on this thread; empty when the
/// last call succeeded. Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn cn_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Release a string returned by this library.
///
/// # Safety
/// `s` must come from this library and not have been freed before.
#[no_mangle]
pub unsafe extern "C" fn cn_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Load a model document from a JSON file.
///
/// # Safety
/// `path` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cn_model_load(path: *const c_char, out: *mut *mut CnModel) -> CnStatus {
    guarded(|| {
        if out.is_null() {
            set_error("null out pointer");
            return CnStatus::CnInvalidArgument;
        }
        let path = match utf8(path) {
            Ok(p) => p,
            Err(s) => return s,
        };
        match ModelFile::load(Path::new(path)) {
            Ok(f) => open_model(f, out),
            Err(e) => fail(&e),
        }
    })
}

/// Parse a model document from a JSON string.
///
/// # Safety
/// `json` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cn_model_from_json(
    json: *const c_char,
    out: *mut *mut CnModel,
) -> CnStatus {
    guarded(|| {
        if out.is_null() {
            set_error("null out pointer");
            return CnStatus::CnInvalidArgument;
        }
        let json = match utf8(json) {
            Ok(j) => j,
            Err(s) => return s,
        };
        match serde_json::from_str::<ModelFile>(json) {
            Ok(f) => open_model(f, out),
            Err(e) => fail(&Error::Json(e)),
        }
    })
}

/// # Safety
/// `model` must come from a `cn_model_*` constructor, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn cn_model_free(model: *mut CnModel) {
    if !model.is_null() {
        drop(Box::from_raw(model as *mut ModelHandle));
    }
}

/// # Safety
/// `model` must be a live handle, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cn_model_species_count(
    model: *const CnModel,
    out: *mut usize,
) -> CnStatus {
    guarded(|| {
        let handle = match model_ref(model) {
            Ok(h) => h,
            Err(s) => return s,
        };
        if out.is_null() {
            set_error("null out pointer");
            return CnStatus::CnInvalidArgument;
        }
        *out = handle.model.species.len();
        CnStatus::CnOk
    })
}

/// Do two state expressions denote states in the same cluster?
/// Writes 1 or 0 to `out_equal`.
///
/// # Safety
/// `model` must be a live handle, the strings NUL-terminated, `out_equal`
/// a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cn_cluster_eq(
    model: *const CnModel,
    state_a: *const c_char,
    state_b: *const c_char,
    out_equal: *mut i32,
) -> CnStatus {
    guarded(|| {
        let handle = match model_ref(model) {
            Ok(h) => h,
            Err(s) => return s,
        };
        if out_equal.is_null() {
            set_error("null out pointer");
            return CnStatus::CnInvalidArgument;
        }
        let (a, b) = match (utf8(state_a), utf8(state_b)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(s), _) | (_, Err(s)) => return s,
        };
        let run = || -> Result<bool, Error> {
            let a = handle.model.parse_state(a)?;
            let b = handle.model.parse_state(b)?;
            handle.basis.is_connected(&a, &b)
        };
        match run() {
            Ok(eq) => {
                *out_equal = eq as i32;
                CnStatus::CnOk
            }
            Err(e) => fail(&e),
        }
    })
}

/// Canonical representative of a state's cluster, rendered as a state
/// expression.
///
/// # Safety
/// `model` must be a live handle, `state` NUL-terminated, `out_expr` a
/// valid pointer; free the result with [`cn_string_free`].
#[no_mangle]
pub unsafe extern "C" fn cn_cluster_repr(
    model: *const CnModel,
    state: *const c_char,
    out_expr: *mut *mut c_char,
) -> CnStatus {
    guarded(|| {
        let handle = match model_ref(model) {
            Ok(h) => h,
            Err(s) => return s,
        };
        if out_expr.is_null() {
            set_error("null out pointer");
            return CnStatus::CnInvalidArgument;
        }
        let expr = match utf8(state) {
            Ok(e) => e,
            Err(s) => return s,
        };
        let run = || -> Result<String, Error> {
            let s = handle.model.parse_state(expr)?;
            let rep = handle.basis.normal_form(&s)?;
            Ok(render_state(&rep, &handle.model.species))
        };
        match run() {
            Ok(text) => give_string(text, out_expr),
            Err(e) => fail(&e),
        }
    })
}

/// Reconstruct the cluster graph reachable from the given initial state
/// expressions. `exhaustive` nonzero probes every cluster member; caps of
/// zero take the model's defaults.
///
/// # Safety
/// `model` must be a live handle; `initial` must point to `n_initial`
/// NUL-terminated strings; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cn_graph_build(
    model: *const CnModel,
    initial: *const *const c_char,
    n_initial: usize,
    exhaustive: i32,
    node_cap: usize,
    arc_cap: usize,
    out: *mut *mut CnGraph,
) -> CnStatus {
    guarded(|| {
        let handle = match model_ref(model) {
            Ok(h) => h,
            Err(s) => return s,
        };
        if out.is_null() || (initial.is_null() && n_initial > 0) || n_initial == 0 {
            set_error("graph build needs at least one initial state");
            return CnStatus::CnInvalidArgument;
        }
        let mut states: Vec<State> = Vec::with_capacity(n_initial);
        for i in 0..n_initial {
            let expr = match utf8(*initial.add(i)) {
                Ok(e) => e,
                Err(s) => return s,
            };
            match handle.model.parse_state(expr) {
                Ok(s) => states.push(s),
                Err(e) => return fail(&e),
            }
        }
        let mut caps = handle.model.caps.graph_caps();
        if node_cap > 0 {
            caps.nodes = node_cap;
        }
        if arc_cap > 0 {
            caps.arcs = arc_cap;
        }
        let mode = if exhaustive != 0 {
            ReconstructionMode::Exhaustive
        } else {
            ReconstructionMode::Direct
        };
        let run = || -> Result<GraphHandle, Error> {
            let cache = handle.model.basis_cache()?;
            let graph = build_cluster_graph(
                &cache,
                &handle.model.irreversible,
                &states,
                mode,
                caps,
            )?;
            let file = GraphFile::assemble(
                &handle.model.species,
                &handle.model.grading,
                cache.base(),
                &graph,
            );
            Ok(GraphHandle {
                file,
                graph,
                basis: cache.base().clone(),
            })
        };
        match run() {
            Ok(gh) => {
                *out = Box::into_raw(Box::new(gh)) as *mut CnGraph;
                CnStatus::CnOk
            }
            Err(e) => fail(&e),
        }
    })
}

/// Parse a graph document from a JSON string.
///
/// # Safety
/// `json` must be NUL-terminated, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cn_graph_from_json(
    json: *const c_char,
    out: *mut *mut CnGraph,
) -> CnStatus {
    guarded(|| {
        if out.is_null() {
            set_error("null out pointer");
            return CnStatus::CnInvalidArgument;
        }
        let json = match utf8(json) {
            Ok(j) => j,
            Err(s) => return s,
        };
        let run = || -> Result<GraphHandle, Error> {
            let file: GraphFile = serde_json::from_str(json)?;
            let graph = file.cluster_graph()?;
            let basis = file.groebner()?;
            Ok(GraphHandle { file, graph, basis })
        };
        match run() {
            Ok(gh) => {
                *out = Box::into_raw(Box::new(gh)) as *mut CnGraph;
                CnStatus::CnOk
            }
            Err(e) => fail(&e),
        }
    })
}

/// # Safety
/// `graph` must come from a `cn_graph_*` constructor, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn cn_graph_free(graph: *mut CnGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph as *mut GraphHandle));
    }
}

/// # Safety
/// `graph` must be a live handle, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cn_graph_node_count(graph: *const CnGraph, out: *mut usize) -> CnStatus {
    guarded(|| match graph_ref(graph) {
        Ok(h) => {
            if out.is_null() {
                set_error("null out pointer");
                return CnStatus::CnInvalidArgument;
            }
            unsafe { *out = h.graph.nodes().len() };
            CnStatus::CnOk
        }
        Err(s) => s,
    })
}

/// # Safety
/// `graph` must be a live handle, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cn_graph_arc_count(graph: *const CnGraph, out: *mut usize) -> CnStatus {
    guarded(|| match graph_ref(graph) {
        Ok(h) => {
            if out.is_null() {
                set_error("null out pointer");
                return CnStatus::CnInvalidArgument;
            }
            unsafe { *out = h.graph.arcs().len() };
            CnStatus::CnOk
        }
        Err(s) => s,
    })
}

/// Serialize the graph document to JSON.
///
/// # Safety
/// `graph` must be a live handle; free the result with [`cn_string_free`].
#[no_mangle]
pub unsafe extern "C" fn cn_graph_to_json(
    graph: *const CnGraph,
    out_json: *mut *mut c_char,
) -> CnStatus {
    guarded(|| {
        let h = match graph_ref(graph) {
            Ok(h) => h,
            Err(s) => return s,
        };
        if out_json.is_null() {
            set_error("null out pointer");
            return CnStatus::CnInvalidArgument;
        }
        match h.file.to_json() {
            Ok(s) => give_string(s, out_json),
            Err(e) => fail(&e),
        }
    })
}

/// Render the graph in DOT.
///
/// # Safety
/// `graph` must be a live handle; free the result with [`cn_string_free`].
#[no_mangle]
pub unsafe extern "C" fn cn_graph_to_dot(
    graph: *const CnGraph,
    out_dot: *mut *mut c_char,
) -> CnStatus {
    guarded(|| {
        let h = match graph_ref(graph) {
            Ok(h) => h,
            Err(s) => return s,
        };
        if out_dot.is_null() {
            set_error("null out pointer");
            return CnStatus::CnInvalidArgument;
        }
        give_string(graph_to_dot(&h.file), out_dot)
    })
}

/// Is the cluster of `to` reachable from the cluster of `from`? Writes 1
/// or 0 to `out_connected` and, when connected, the shortest arc count to
/// `out_path_len` (may be null).
///
/// # Safety
/// `graph` must be a live handle, the strings NUL-terminated,
/// `out_connected` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cn_connect(
    graph: *const CnGraph,
    from: *const c_char,
    to: *const c_char,
    out_connected: *mut i32,
    out_path_len: *mut usize,
) -> CnStatus {
    guarded(|| {
        let h = match graph_ref(graph) {
            Ok(h) => h,
            Err(s) => return s,
        };
        if out_connected.is_null() {
            set_error("null out pointer");
            return CnStatus::CnInvalidArgument;
        }
        let (from, to) = match (utf8(from), utf8(to)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(s), _) | (_, Err(s)) => return s,
        };
        let run = || -> Result<analysis::Connectivity, Error> {
            let s = h.file.parse_state(from)?;
            let t = h.file.parse_state(to)?;
            analysis::connected(&h.graph, &s, &t, &h.basis)
        };
        match run() {
            Ok(conn) => {
                *out_connected = conn.connected as i32;
                if !out_path_len.is_null() {
                    *out_path_len = conn.shortest_path.map(|p| p.len()).unwrap_or(0);
                }
                CnStatus::CnOk
            }
            Err(e) => fail(&e),
        }
    })
}

/// Count simple pathways between two clusters, stopping at `max_paths`
/// (zero = unlimited). `out_truncated` (may be null) reports whether the
/// cap cut the enumeration short.
///
/// # Safety
/// `graph` must be a live handle, the strings NUL-terminated, `out_count`
/// a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cn_count_paths(
    graph: *const CnGraph,
    from: *const c_char,
    to: *const c_char,
    max_paths: usize,
    out_count: *mut usize,
    out_truncated: *mut i32,
) -> CnStatus {
    guarded(|| {
        let h = match graph_ref(graph) {
            Ok(h) => h,
            Err(s) => return s,
        };
        if out_count.is_null() {
            set_error("null out pointer");
            return CnStatus::CnInvalidArgument;
        }
        let (from, to) = match (utf8(from), utf8(to)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(s), _) | (_, Err(s)) => return s,
        };
        let run = || -> Result<analysis::PathQueryResult, Error> {
            let s = h.file.parse_state(from)?;
            let t = h.file.parse_state(to)?;
            analysis::enumerate_paths(&h.graph, &s, &t, &h.basis, max_paths)
        };
        match run() {
            Ok(r) => {
                *out_count = r.paths.len();
                if !out_truncated.is_null() {
                    *out_truncated = r.truncated as i32;
                }
                CnStatus::CnOk
            }
            Err(e) => fail(&e),
        }
    })
}
