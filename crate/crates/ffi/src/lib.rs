//! C ABI over the `skein` library.
//!
//! Diagrams are opaque handles created by `skein_diagram_from_*` and released
//! with `skein_diagram_free`. Every fallible call returns a [`SkeinStatus`];
//! results come back through out-pointers. Strings handed out by the library
//! are released with `skein_string_free`. After a failure,
//! `skein_last_error` describes it.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use skein::cli::Zoo;
use skein::diagram::{BraidWord, Diagram};
use skein::invariants::EvalOptions;
use skein::skein::Convention;
use skein::zoo::ALGEBRA_NAMES;

/// Opaque diagram handle.
pub struct SkeinDiagram {
    inner: Diagram,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SkeinStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    UnknownAlgebra = 4,
    InvalidArgument = 5,
    EvaluationError = 6,
    Panic = 7,
}

pub const SKEIN_CONVENTION_MODERN: i32 = 0;
pub const SKEIN_CONVENTION_OLD: i32 = 1;

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn fail(status: SkeinStatus, msg: impl Into<String>) -> SkeinStatus {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).expect("nul bytes removed"));
    status
}

fn guard(f: impl FnOnce() -> SkeinStatus) -> SkeinStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(SkeinStatus::Panic, "internal panic"),
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, SkeinStatus> {
    if p.is_null() {
        return Err(fail(SkeinStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| fail(SkeinStatus::InvalidUtf8, e.to_string()))
}

unsafe fn give_string(s: String, out: *mut *mut c_char) -> SkeinStatus {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            SkeinStatus::Ok
        }
        Err(e) => fail(SkeinStatus::EvaluationError, e.to_string()),
    }
}

unsafe fn make_diagram(
    text: *const c_char,
    out: *mut *mut SkeinDiagram,
    parse: fn(&str) -> Result<Diagram, String>,
) -> SkeinStatus {
    guard(|| {
        if out.is_null() {
            return fail(SkeinStatus::NullPointer, "null out pointer");
        }
        *out = ptr::null_mut();
        let s = match read_str(text) {
            Ok(s) => s,
            Err(st) => return st,
        };
        match parse(s) {
            Ok(d) => {
                *out = Box::into_raw(Box::new(SkeinDiagram { inner: d }));
                SkeinStatus::Ok
            }
            Err(e) => fail(SkeinStatus::ParseError, e),
        }
    })
}

/// Parses a planar diagram code such as `X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)`.
///
/// # Safety
/// `pd` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn skein_diagram_from_pd(pd: *const c_char, out: *mut *mut SkeinDiagram) -> SkeinStatus {
    make_diagram(pd, out, |s| Diagram::parse_pd(s).map_err(|e| e.to_string()))
}

/// Closes a braid word such as `3: 1 -2 1 -2`.
///
/// # Safety
/// `braid` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn skein_diagram_from_braid(braid: *const c_char, out: *mut *mut SkeinDiagram) -> SkeinStatus {
    make_diagram(braid, out, |s| {
        s.parse::<BraidWord>().map(|b| b.closure()).map_err(|e| e.to_string())
    })
}

/// # Safety
/// `d` must come from `skein_diagram_from_*` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn skein_diagram_free(d: *mut SkeinDiagram) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// # Safety
/// `d` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn skein_diagram_crossing_count(d: *const SkeinDiagram, out: *mut usize) -> SkeinStatus {
    if d.is_null() || out.is_null() {
        return fail(SkeinStatus::NullPointer, "null argument");
    }
    *out = (*d).inner.crossing_count();
    SkeinStatus::Ok
}

/// # Safety
/// `d` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn skein_diagram_component_count(d: *const SkeinDiagram, out: *mut usize) -> SkeinStatus {
    if d.is_null() || out.is_null() {
        return fail(SkeinStatus::NullPointer, "null argument");
    }
    *out = (*d).inner.component_count();
    SkeinStatus::Ok
}

/// Normalized PD code of the diagram. Free the result with
/// `skein_string_free`.
///
/// # Safety
/// `d` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn skein_diagram_to_pd(d: *const SkeinDiagram, out: *mut *mut c_char) -> SkeinStatus {
    guard(|| {
        if d.is_null() || out.is_null() {
            return fail(SkeinStatus::NullPointer, "null argument");
        }
        give_string((*d).inner.to_pd(), out)
    })
}

/// Sixteen hex digits identifying the diagram up to relabeling.
///
/// # Safety
/// `d` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn skein_diagram_key(d: *const SkeinDiagram, out: *mut *mut c_char) -> SkeinStatus {
    guard(|| {
        if d.is_null() || out.is_null() {
            return fail(SkeinStatus::NullPointer, "null argument");
        }
        give_string((*d).inner.canonical_key().digest(), out)
    })
}

/// Value of the invariant in the named algebra (`components`, `mod3`,
/// `P2`, `P3`, `linking` or `quasi`), as text. `convention` is
/// `SKEIN_CONVENTION_MODERN` or `SKEIN_CONVENTION_OLD`. Free the result
/// with `skein_string_free`.
///
/// # Safety
/// `d` must be a live handle, `algebra` a nul-terminated string and `out` a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn skein_invariant(
    d: *const SkeinDiagram,
    algebra: *const c_char,
    convention: i32,
    out: *mut *mut c_char,
) -> SkeinStatus {
    guard(|| {
        if d.is_null() || out.is_null() {
            return fail(SkeinStatus::NullPointer, "null argument");
        }
        *out = ptr::null_mut();
        let name = match read_str(algebra) {
            Ok(s) => s,
            Err(st) => return st,
        };
        if !ALGEBRA_NAMES.contains(&name) {
            return fail(SkeinStatus::UnknownAlgebra, format!("unknown algebra {name:?}"));
        }
        let convention = match convention {
            SKEIN_CONVENTION_MODERN => Convention::Modern,
            SKEIN_CONVENTION_OLD => Convention::Old,
            c => return fail(SkeinStatus::InvalidArgument, format!("unknown convention {c}")),
        };
        let opts = EvalOptions { convention, ..Default::default() };
        match Zoo::new().evaluate(name, &(*d).inner, opts) {
            Ok(v) => give_string(v, out),
            Err(e) => fail(SkeinStatus::EvaluationError, e.to_string()),
        }
    })
}

/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn skein_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failure on this thread. The pointer stays valid
/// until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn skein_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn skein_status_str(s: SkeinStatus) -> *const c_char {
    let t: &'static CStr = match s {
        SkeinStatus::Ok => c"ok",
        SkeinStatus::NullPointer => c"null pointer",
        SkeinStatus::InvalidUtf8 => c"invalid utf-8",
        SkeinStatus::ParseError => c"parse error",
        SkeinStatus::UnknownAlgebra => c"unknown algebra",
        SkeinStatus::InvalidArgument => c"invalid argument",
        SkeinStatus::EvaluationError => c"evaluation error",
        SkeinStatus::Panic => c"panic",
    };
    t.as_ptr()
}
