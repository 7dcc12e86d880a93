//! C ABI over `gaut-core`.
//!
//! Objects are passed as opaque pointers created by `*_parse`/`*_new`-style
//! functions and released with the matching `*_free`. Every fallible call
//! returns a [`GautStatus`]; on failure, [`gaut_last_error`] describes the
//! problem until the next call on the same thread. Strings handed out by the
//! library are NUL-terminated UTF-8 and must be released with
//! [`gaut_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use gaut_core::automaton::GraphAutomaton;
use gaut_core::color::{make_color_automaton, recognize, standard_generators};
use gaut_core::encoder::{encode_graph, parse_graph_input, GraphFormat};
use gaut_core::hypergraph::{eval_graph, isomorphic, Hypergraph};
use gaut_core::relation::{check_axioms, tsrel_dset, StateSet};
use gaut_core::term::{parse_term, MagmoidTerm};
use gaut_core::Error;

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GautStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Syntax = 3,
    RankMismatch = 4,
    UnknownSymbol = 5,
    BudgetExceeded = 6,
    InvalidArgument = 7,
    NotTsRel = 8,
    Internal = 9,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GautGraphFormat {
    EdgeList = 0,
    HypergraphJson = 1,
    Dot = 2,
}

/// A magmoid term.
pub struct GautTerm(MagmoidTerm);

/// A hypergraph.
pub struct GautGraph(Hypergraph);

/// A graph automaton.
pub struct GautAutomaton(GraphAutomaton);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(GautStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Syntax { .. } | Error::Json(_) => GautStatus::Syntax,
            Error::RankMismatch { .. } => GautStatus::RankMismatch,
            Error::UnknownSymbol(_) => GautStatus::UnknownSymbol,
            Error::BudgetExceeded { .. } => GautStatus::BudgetExceeded,
            Error::NotTsRel => GautStatus::NotTsRel,
            _ => GautStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(GautStatus::NullPointer, format!("`{what}` is null"))
}

fn set_error(msg: Option<String>) {
    let c = msg.map(|m| CString::new(m.replace('\0', " ")).expect("no interior NUL"));
    LAST_ERROR.with(|slot| *slot.borrow_mut() = c);
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> GautStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error(None);
            GautStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(Some(msg));
            status
        }
        Err(_) => {
            set_error(Some("internal error".into()));
            GautStatus::Internal
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Failure(GautStatus::InvalidUtf8, format!("`{what}`: {e}")))
}

unsafe fn get<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn put<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s).expect("no interior NUL").into_raw()
}

/// Message for the last failed call on this thread, or null after a
/// successful call. Owned by the library.
#[no_mangle]
pub extern "C" fn gaut_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gaut_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a term in S-expression syntax.
///
/// # Safety
/// `src` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gaut_term_parse(src: *const c_char, out: *mut *mut GautTerm) -> GautStatus {
    guard(|| {
        let t = parse_term(text(src, "src")?)?;
        t.rank()?;
        put(out, Box::into_raw(Box::new(GautTerm(t))), "out")
    })
}

/// # Safety
/// `t` must be a live term; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gaut_term_to_string(t: *const GautTerm, out: *mut *mut c_char) -> GautStatus {
    guard(|| {
        let t = get(t, "t")?;
        put(out, c_string(t.0.to_string()), "out")
    })
}

/// # Safety
/// `t` must be a live term; `m`, `n` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gaut_term_rank(t: *const GautTerm, m: *mut usize, n: *mut usize) -> GautStatus {
    guard(|| {
        let r = get(t, "t")?.0.rank()?;
        put(m, r.m, "m")?;
        put(n, r.n, "n")
    })
}

/// Number of atom leaves, or 0 for a null term.
///
/// # Safety
/// `t` must be null or a live term.
#[no_mangle]
pub unsafe extern "C" fn gaut_term_atom_count(t: *const GautTerm) -> usize {
    t.as_ref().map_or(0, |t| t.0.atom_count())
}

/// # Safety
/// `t` must be null or a term not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gaut_term_free(t: *mut GautTerm) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// # Safety
/// `src` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gaut_graph_parse(
    src: *const c_char,
    format: GautGraphFormat,
    out: *mut *mut GautGraph,
) -> GautStatus {
    guard(|| {
        let format = match format {
            GautGraphFormat::EdgeList => GraphFormat::EdgeList,
            GautGraphFormat::HypergraphJson => GraphFormat::HypergraphJson,
            GautGraphFormat::Dot => GraphFormat::Dot,
        };
        let g = parse_graph_input(text(src, "src")?, format)?;
        put(out, Box::into_raw(Box::new(GautGraph(g))), "out")
    })
}

/// # Safety
/// `g` must be a live graph; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gaut_graph_to_json(g: *const GautGraph, out: *mut *mut c_char) -> GautStatus {
    guard(|| {
        let g = get(g, "g")?;
        put(out, c_string(g.0.to_json()), "out")
    })
}

/// # Safety
/// `g`, `h` must be live graphs; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gaut_graph_isomorphic(g: *const GautGraph, h: *const GautGraph, out: *mut bool) -> GautStatus {
    guard(|| {
        let (g, h) = (get(g, "g")?, get(h, "h")?);
        put(out, isomorphic(&g.0, &h.0).is_some(), "out")
    })
}

/// # Safety
/// `g` must be null or a graph not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gaut_graph_free(g: *mut GautGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// A term whose graph evaluation is isomorphic to `g`.
///
/// # Safety
/// `g` must be a live graph; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gaut_graph_encode(g: *const GautGraph, out: *mut *mut GautTerm) -> GautStatus {
    guard(|| {
        let g = get(g, "g")?;
        put(out, Box::into_raw(Box::new(GautTerm(encode_graph(&g.0)))), "out")
    })
}

/// # Safety
/// `t` must be a live term; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gaut_term_eval_graph(t: *const GautTerm, out: *mut *mut GautGraph) -> GautStatus {
    guard(|| {
        let g = eval_graph(&get(t, "t")?.0)?;
        put(out, Box::into_raw(Box::new(GautGraph(g))), "out")
    })
}

/// Reads an automaton from its JSON description.
///
/// # Safety
/// `src` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gaut_automaton_from_json(src: *const c_char, out: *mut *mut GautAutomaton) -> GautStatus {
    guard(|| {
        let a = GraphAutomaton::from_json(text(src, "src")?)?;
        put(out, Box::into_raw(Box::new(GautAutomaton(a))), "out")
    })
}

/// The k-coloring automaton.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gaut_automaton_coloring(k: usize, out: *mut *mut GautAutomaton) -> GautStatus {
    guard(|| {
        let a = make_color_automaton(k)?;
        put(out, Box::into_raw(Box::new(GautAutomaton(a))), "out")
    })
}

/// # Safety
/// `a` must be a live automaton, `t` a live term; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gaut_automaton_accepts(
    a: *const GautAutomaton,
    t: *const GautTerm,
    out: *mut bool,
) -> GautStatus {
    guard(|| {
        let (a, t) = (get(a, "a")?, get(t, "t")?);
        put(out, a.0.accepts(&t.0)?, "out")
    })
}

/// # Safety
/// `a` must be null or an automaton not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gaut_automaton_free(a: *mut GautAutomaton) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// Decides k-colorability. When the graph is colorable and `witness` is not
/// null, `*witness` receives a JSON object mapping node ids to colors;
/// otherwise `*witness` is set to null.
///
/// # Safety
/// `g` must be a live graph; `colorable` must be writable; `witness` must be
/// null or writable.
#[no_mangle]
pub unsafe extern "C" fn gaut_is_k_colorable(
    g: *const GautGraph,
    k: usize,
    colorable: *mut bool,
    witness: *mut *mut c_char,
) -> GautStatus {
    guard(|| {
        let g = get(g, "g")?;
        let (ok, coloring) = recognize(&g.0, k)?;
        put(colorable, ok, "colorable")?;
        if !witness.is_null() {
            let json = coloring.map_or(ptr::null_mut(), |c| {
                c_string(serde_json::to_string(&c).expect("serializable"))
            });
            witness.write(json);
        }
        Ok(())
    })
}

/// Checks the graph equations in TSRel({1..states}) and returns the report
/// as JSON.
///
/// # Safety
/// `holds` and `report` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gaut_check_axioms(states: usize, holds: *mut bool, report: *mut *mut c_char) -> GautStatus {
    guard(|| {
        if states == 0 {
            return Err(Failure(GautStatus::InvalidArgument, "states must be at least 1".into()));
        }
        let q = StateSet::range(states)?;
        let r = check_axioms(&q, &tsrel_dset(&q), &standard_generators(states)?)?;
        put(holds, r.holds, "holds")?;
        put(report, c_string(r.to_json()), "report")
    })
}
