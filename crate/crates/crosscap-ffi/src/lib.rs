//! C ABI over the `crosscap` library.
//!
//! Schemes and drawings cross the boundary as opaque pointers created by this
//! library and released with the matching `*_free` function. Every fallible
//! call returns a [`CrosscapStatus`]; on failure a description is available
//! from [`crosscap_last_error`] on the same thread until the next call.
//! Strings returned through `char **` outputs are owned by the caller and must
//! be released with [`crosscap_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use crosscap::drawing::CrossCapDrawing;
use crosscap::search::{find, SearchOutcome, SearchSpec};
use crosscap::synthesis::{classify, perfect_drawing, Synthesis};
use crosscap::{SignedCyclicPermutation, SynthesisError};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrosscapStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Domain = 4,
    Budget = 5,
    Panic = 6,
}

/// A parsed signed cyclic permutation.
pub struct CrosscapScheme(SignedCyclicPermutation);

/// A cross-cap drawing.
pub struct CrosscapDrawing(CrossCapDrawing);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(CString::new(msg).expect("no interior nul")));
}

struct Failure(CrosscapStatus, String);

impl Failure {
    fn null(what: &str) -> Self {
        Failure(CrosscapStatus::NullPointer, format!("{what} is null"))
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> CrosscapStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CrosscapStatus::Ok,
        Ok(Err(Failure(code, msg))) => {
            set_error(msg);
            code
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal panic: {msg}"));
            CrosscapStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(Failure::null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| Failure(CrosscapStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn get<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| Failure::null(what))
}

unsafe fn put<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::null(what));
    }
    out.write(value);
    Ok(())
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s).expect("no interior nul").into_raw()
}

fn domain(e: impl std::fmt::Display) -> Failure {
    Failure(CrosscapStatus::Domain, e.to_string())
}

fn synthesis(e: SynthesisError) -> Failure {
    match e {
        SynthesisError::BudgetExhausted(_) => Failure(CrosscapStatus::Budget, e.to_string()),
        other => domain(other),
    }
}

/// Message for the most recent failure on this thread, or null. The pointer
/// stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn crosscap_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn crosscap_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a permutation such as `"1 -6 5 -4 3 -2"`.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn crosscap_scheme_parse(
    text: *const c_char,
    out: *mut *mut CrosscapScheme,
) -> CrosscapStatus {
    guard(|| {
        let s = read_str(text, "text")?;
        let p = SignedCyclicPermutation::parse(s.trim())
            .map_err(|e| Failure(CrosscapStatus::Parse, e.to_string()))?;
        put(out, Box::into_raw(Box::new(CrosscapScheme(p))), "out")
    })
}

/// Releases a scheme. Null is ignored.
///
/// # Safety
/// `scheme` must come from [`crosscap_scheme_parse`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn crosscap_scheme_free(scheme: *mut CrosscapScheme) {
    if !scheme.is_null() {
        drop(Box::from_raw(scheme));
    }
}

/// Number of edges.
///
/// # Safety
/// `scheme` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn crosscap_scheme_edges(
    scheme: *const CrosscapScheme,
    out: *mut usize,
) -> CrosscapStatus {
    guard(|| put(out, get(scheme, "scheme")?.0.n(), "out"))
}

/// Number of faces of the embedding.
///
/// # Safety
/// `scheme` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn crosscap_scheme_faces(
    scheme: *const CrosscapScheme,
    out: *mut usize,
) -> CrosscapStatus {
    guard(|| put(out, get(scheme, "scheme")?.0.face_count(), "out"))
}

/// Euler genus of the embedding surface.
///
/// # Safety
/// `scheme` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn crosscap_scheme_euler_genus(
    scheme: *const CrosscapScheme,
    out: *mut usize,
) -> CrosscapStatus {
    guard(|| put(out, get(scheme, "scheme")?.0.euler_genus(), "out"))
}

/// Whether the embedding surface is orientable.
///
/// # Safety
/// `scheme` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn crosscap_scheme_is_orientable(
    scheme: *const CrosscapScheme,
    out: *mut bool,
) -> CrosscapStatus {
    guard(|| put(out, get(scheme, "scheme")?.0.is_orientable(), "out"))
}

/// Cross-cap number of the scheme.
///
/// # Safety
/// `scheme` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn crosscap_scheme_crosscap_number(
    scheme: *const CrosscapScheme,
    out: *mut usize,
) -> CrosscapStatus {
    guard(|| put(out, get(scheme, "scheme")?.0.crosscap_number(), "out"))
}

/// Canonical text form of the scheme.
///
/// # Safety
/// `scheme` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn crosscap_scheme_to_string(
    scheme: *const CrosscapScheme,
    out: *mut *mut c_char,
) -> CrosscapStatus {
    guard(|| {
        put(
            out,
            owned_string(get(scheme, "scheme")?.0.to_string()),
            "out",
        )
    })
}

/// Classification report as JSON.
///
/// # Safety
/// `scheme` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn crosscap_classify_json(
    scheme: *const CrosscapScheme,
    out: *mut *mut c_char,
) -> CrosscapStatus {
    guard(|| {
        let c = classify(&get(scheme, "scheme")?.0).map_err(synthesis)?;
        put(
            out,
            owned_string(serde_json::to_string(&c).map_err(domain)?),
            "out",
        )
    })
}

/// Builds a perfect drawing. When the scheme has none, `*out` is set to null
/// and `*exceptional` to true; the reason is available from
/// [`crosscap_classify_json`].
///
/// # Safety
/// `scheme` must be a live handle; `out` and `exceptional` writable.
#[no_mangle]
pub unsafe extern "C" fn crosscap_perfect_drawing(
    scheme: *const CrosscapScheme,
    out: *mut *mut CrosscapDrawing,
    exceptional: *mut bool,
) -> CrosscapStatus {
    guard(|| {
        let p = &get(scheme, "scheme")?.0;
        if out.is_null() || exceptional.is_null() {
            return Err(Failure::null("output"));
        }
        match perfect_drawing(p).map_err(synthesis)? {
            Synthesis::Perfect { drawing } => {
                put(
                    out,
                    Box::into_raw(Box::new(CrosscapDrawing(drawing))),
                    "out",
                )?;
                put(exceptional, false, "exceptional")
            }
            Synthesis::Exceptional { .. } => {
                put(out, ptr::null_mut(), "out")?;
                put(exceptional, true, "exceptional")
            }
        }
    })
}

/// Exhaustive search for a drawing on the cross-cap number of the scheme.
/// With `fantastic`, every edge must enter a cross-cap. When the search
/// space is exhausted `*out` is null; exceeding `budget` nodes returns
/// [`CrosscapStatus::Budget`].
///
/// # Safety
/// `scheme` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn crosscap_search(
    scheme: *const CrosscapScheme,
    budget: usize,
    fantastic: bool,
    out: *mut *mut CrosscapDrawing,
) -> CrosscapStatus {
    guard(|| {
        let p = &get(scheme, "scheme")?.0;
        if out.is_null() {
            return Err(Failure::null("out"));
        }
        let spec = if fantastic {
            SearchSpec::fantastic(p, budget)
        } else {
            SearchSpec::perfect(p, budget)
        };
        match find(&spec) {
            SearchOutcome::Found { drawing, .. } => put(
                out,
                Box::into_raw(Box::new(CrosscapDrawing(drawing))),
                "out",
            ),
            SearchOutcome::Exhausted { .. } => put(out, ptr::null_mut(), "out"),
            SearchOutcome::BudgetExceeded { nodes } => Err(Failure(
                CrosscapStatus::Budget,
                format!("search gave up after {nodes} nodes"),
            )),
        }
    })
}

/// Reads a drawing from its JSON form.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn crosscap_drawing_from_json(
    json: *const c_char,
    out: *mut *mut CrosscapDrawing,
) -> CrosscapStatus {
    guard(|| {
        let d = CrossCapDrawing::from_json(read_str(json, "json")?)
            .map_err(|e| Failure(CrosscapStatus::Parse, e.to_string()))?;
        put(out, Box::into_raw(Box::new(CrosscapDrawing(d))), "out")
    })
}

/// Releases a drawing. Null is ignored.
///
/// # Safety
/// `drawing` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn crosscap_drawing_free(drawing: *mut CrosscapDrawing) {
    if !drawing.is_null() {
        drop(Box::from_raw(drawing));
    }
}

/// Number of cross-caps the drawing uses.
///
/// # Safety
/// `drawing` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn crosscap_drawing_crosscaps(
    drawing: *const CrosscapDrawing,
    out: *mut usize,
) -> CrosscapStatus {
    guard(|| put(out, get(drawing, "drawing")?.0.crosscaps, "out"))
}

/// Whether the drawing realizes `scheme` with every pair of edges meeting
/// at most once in a cross-cap.
///
/// # Safety
/// Both handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn crosscap_drawing_is_perfect(
    drawing: *const CrosscapDrawing,
    scheme: *const CrosscapScheme,
    out: *mut bool,
) -> CrosscapStatus {
    guard(|| {
        let d = &get(drawing, "drawing")?.0;
        let p = &get(scheme, "scheme")?.0;
        let ok = d.validate().ok() && d.is_perfect(p).map_err(domain)?;
        put(out, ok, "out")
    })
}

/// JSON form of the drawing.
///
/// # Safety
/// `drawing` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn crosscap_drawing_to_json(
    drawing: *const CrosscapDrawing,
    out: *mut *mut c_char,
) -> CrosscapStatus {
    guard(|| {
        put(
            out,
            owned_string(get(drawing, "drawing")?.0.to_json()),
            "out",
        )
    })
}

/// SVG rendering of the drawing.
///
/// # Safety
/// `drawing` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn crosscap_drawing_to_svg(
    drawing: *const CrosscapDrawing,
    out: *mut *mut c_char,
) -> CrosscapStatus {
    guard(|| {
        put(
            out,
            owned_string(get(drawing, "drawing")?.0.to_svg().map_err(domain)?),
            "out",
        )
    })
}
