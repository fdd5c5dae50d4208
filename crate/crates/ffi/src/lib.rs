//! C interface to `gbsn`.
//!
//! Graphs are passed around as opaque [`GbsnGraph`] handles. Every fallible
//! call returns a [`GbsnStatus`]; on failure the message is available from
//! [`gbsn_last_error`] on the same thread. Strings returned through `out`
//! parameters are owned by the caller and must be released with
//! [`gbsn_string_free`]. Results are JSON documents in the same shape as the
//! command line's `--json` output.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use gbsn::finquo::{build_level_quotient, certificate_search, SearchBudget};
use gbsn::gog::{baumslag_solitar, identity_loop, leary_minasyan, presentation, GraphOfGroups};
use gbsn::hnn::{AscHnn, Word};
use gbsn::lattice::IntMatrix;
use gbsn::monodromy::{classify_monodromy, decide_all, default_cap};
use gbsn::{json, Error};
use serde_json::{json, Value};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GbsnStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidGraph = 4,
    DomainError = 5,
    Panic = 6,
}

/// A validated graph of groups.
pub struct GbsnGraph {
    graph: GraphOfGroups,
}

struct Failure(GbsnStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::InvalidGraph(_) => GbsnStatus::InvalidGraph,
            _ => GbsnStatus::DomainError,
        };
        Failure(status, e.to_string())
    }
}

impl From<gbsn::ParseError> for Failure {
    fn from(e: gbsn::ParseError) -> Self {
        Failure(GbsnStatus::ParseError, e.to_string())
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> GbsnStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => GbsnStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_last_error(message);
            status
        }
        Err(panic) => {
            let message = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(format!("internal panic: {message}"));
            GbsnStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(GbsnStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(GbsnStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn graph<'a>(g: *const GbsnGraph) -> Result<&'a GraphOfGroups, Failure> {
    g.as_ref()
        .map(|h| &h.graph)
        .ok_or_else(|| Failure(GbsnStatus::NullPointer, "graph handle is null".into()))
}

unsafe fn emit(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(GbsnStatus::NullPointer, "output pointer is null".into()));
    }
    let c = CString::new(s).map_err(|_| Failure(GbsnStatus::Panic, "output contains a nul byte".into()))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn emit_json(out: *mut *mut c_char, v: &Value) -> Result<(), Failure> {
    emit(out, serde_json::to_string(v).expect("json"))
}

unsafe fn emit_graph(out: *mut *mut GbsnGraph, g: GraphOfGroups) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(GbsnStatus::NullPointer, "output pointer is null".into()));
    }
    let g = g.validated()?;
    *out = Box::into_raw(Box::new(GbsnGraph { graph: g }));
    Ok(())
}

fn cap_or_default(g: &GraphOfGroups, cap: u64) -> u64 {
    if cap == 0 {
        default_cap(g.rank())
    } else {
        cap
    }
}

/// Parses and validates a graph in the text format. On success `*out`
/// receives a handle to free with [`gbsn_graph_free`].
///
/// # Safety
/// `source` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gbsn_graph_parse(source: *const c_char, out: *mut *mut GbsnGraph) -> GbsnStatus {
    guard(|| {
        let g: GraphOfGroups = text(source, "source")?.parse()?;
        emit_graph(out, g)
    })
}

/// One of `leary-minasyan`, `bs` (phi = [[2]]) or `identity-loop` (rank 2).
///
/// # Safety
/// `name` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gbsn_graph_builtin(name: *const c_char, out: *mut *mut GbsnGraph) -> GbsnStatus {
    guard(|| {
        let g = match text(name, "name")? {
            "leary-minasyan" => leary_minasyan(),
            "bs" => baumslag_solitar(IntMatrix::from_rows(&[[2]])),
            "identity-loop" => identity_loop(2),
            other => return Err(Failure(GbsnStatus::ParseError, format!("unknown builtin `{other}`"))),
        };
        emit_graph(out, g)
    })
}

/// # Safety
/// `g` must be null or a handle from this library that was not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gbsn_graph_free(g: *mut GbsnGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Rank of the vertex and edge groups, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gbsn_graph_rank(g: *const GbsnGraph) -> usize {
    g.as_ref().map_or(0, |h| h.graph.rank())
}

/// The graph in the text format accepted by [`gbsn_graph_parse`].
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gbsn_graph_to_text(g: *const GbsnGraph, out: *mut *mut c_char) -> GbsnStatus {
    guard(|| emit(out, graph(g)?.to_string()))
}

/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gbsn_presentation_json(g: *const GbsnGraph, out: *mut *mut c_char) -> GbsnStatus {
    guard(|| emit_json(out, &presentation(graph(g)?).to_json()))
}

/// `cap` bounds the finite-group closure; 0 selects the default.
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gbsn_monodromy_json(g: *const GbsnGraph, cap: u64, out: *mut *mut c_char) -> GbsnStatus {
    guard(|| {
        let g = graph(g)?;
        emit_json(out, &classify_monodromy(g, cap_or_default(g, cap)).to_json())
    })
}

/// VRC, LERF, residual finiteness and Grothendieck rigidity verdicts.
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gbsn_properties_json(g: *const GbsnGraph, cap: u64, out: *mut *mut c_char) -> GbsnStatus {
    guard(|| {
        let g = graph(g)?;
        let verdicts = decide_all(g, cap_or_default(g, cap))?;
        emit_json(out, &serde_json::to_value(&verdicts).expect("verdicts serialize"))
    })
}

/// Normal form of `word` (e.g. `t a1^2 t^-1`); the graph must be an
/// ascending HNN extension.
///
/// # Safety
/// `g` must be a live handle, `word` a nul-terminated string and `out` a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gbsn_normalize_json(
    g: *const GbsnGraph,
    word: *const c_char,
    out: *mut *mut c_char,
) -> GbsnStatus {
    guard(|| {
        let h = AscHnn::from_graph(graph(g)?)?;
        let w = Word::parse(text(word, "word")?, h.rank())?;
        let nf = h.normalize(&w);
        let mut j = nf.to_json();
        j["input"] = w.to_string().into();
        j["height"] = nf.height().into();
        emit_json(out, &j)
    })
}

/// The level quotient `G_l` at the prime `p`.
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gbsn_level_quotient_json(
    g: *const GbsnGraph,
    p: u64,
    level: u32,
    out: *mut *mut c_char,
) -> GbsnStatus {
    guard(|| {
        let h = AscHnn::from_graph(graph(g)?)?;
        let q = build_level_quotient(&h, p, level)?;
        emit_json(
            out,
            &json!({
                "p": p,
                "l": level,
                "modulus": q.modulus,
                "M_l": json::int_matrix(&q.m_l),
                "r_l": q.r_l,
                "order": json::int(&q.order().into()),
            }),
        )
    })
}

/// Searches the default budget for a finite quotient in which the subgroup
/// generated by `generators` (one word per line, `#` comments) has a proper
/// image.
///
/// # Safety
/// `g` must be a live handle, `generators` a nul-terminated string and
/// `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gbsn_certificate_search_json(
    g: *const GbsnGraph,
    generators: *const c_char,
    out: *mut *mut c_char,
) -> GbsnStatus {
    guard(|| {
        let h = AscHnn::from_graph(graph(g)?)?;
        let gens = gbsn::cli::parse_word_list(text(generators, "generators")?, h.rank())?;
        let outcome = certificate_search(&h, &gens, &SearchBudget::default_for(&h));
        let mut j = outcome.to_json();
        j["subgroup"] = gens.iter().map(ToString::to_string).collect::<Vec<_>>().into();
        emit_json(out, &j)
    })
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn gbsn_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gbsn_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
