//! C ABI over the `siltq` engine.
//!
//! Objects cross the boundary as opaque handles that the caller frees with
//! the matching `*_free` function. Every fallible call returns a
//! [`SiltqStatus`]; on failure the message is available from
//! [`siltq_last_error`] on the same thread until the next failing call.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use siltq::enumerate::{enumerate_with, Census, EnumerateOptions};
use siltq::io::CensusFile;
use siltq::silting::Workspace;
use siltq::{build_algebra, catalog, io, symmetry, Algebra, Error, FieldKind};

/// Result of a fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SiltqStatus {
    Ok = 0,
    /// A required pointer was null or a string was not UTF-8.
    NullArgument = 1,
    /// Malformed input: spec syntax, unknown builtin, bad parameters or vertex.
    InvalidInput = 2,
    /// The computation reached a mathematical dead end.
    Math = 3,
    /// The census is incomplete where a complete one is needed.
    Incomplete = 4,
    /// A buffer was too small; the required length has been written.
    BufferTooSmall = 5,
    /// Rust code panicked; the handle passed in should not be reused.
    Panic = 6,
}

/// Opaque finite-dimensional algebra.
pub struct SiltqAlgebra {
    inner: Arc<Algebra>,
}

/// Opaque census of 2-term silting objects.
pub struct SiltqCensus {
    inner: Census,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(s).ok());
}

fn status_of(e: &Error) -> SiltqStatus {
    match e {
        Error::IncompleteCensus => SiltqStatus::Incomplete,
        e if e.is_input_error() => SiltqStatus::InvalidInput,
        _ => SiltqStatus::Math,
    }
}

fn guard(f: impl FnOnce() -> Result<(), SiltqStatus>) -> SiltqStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SiltqStatus::Ok,
        Ok(Err(s)) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            set_error(format!("internal panic: {msg}"));
            SiltqStatus::Panic
        }
    }
}

fn fail(e: Error) -> SiltqStatus {
    set_error(e.to_string());
    status_of(&e)
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, SiltqStatus> {
    if p.is_null() {
        set_error(format!("{what} is null"));
        return Err(SiltqStatus::NullArgument);
    }
    // SAFETY: the caller passes a NUL-terminated string that outlives the call.
    unsafe { CStr::from_ptr(p) }.to_str().map_err(|_| {
        set_error(format!("{what} is not UTF-8"));
        SiltqStatus::NullArgument
    })
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, SiltqStatus> {
    // SAFETY: non-null handles come from this library and are still live.
    unsafe { p.as_ref() }.ok_or_else(|| {
        set_error(format!("{what} is null"));
        SiltqStatus::NullArgument
    })
}

fn out_ptr<T>(p: *mut T, what: &str) -> Result<(), SiltqStatus> {
    if p.is_null() {
        set_error(format!("{what} is null"));
        Err(SiltqStatus::NullArgument)
    } else {
        Ok(())
    }
}

fn field(prime: u64) -> Result<FieldKind, Error> {
    if prime == 0 {
        Ok(FieldKind::Rational)
    } else {
        FieldKind::prime(prime)
    }
}

/// The message of the last failing call on this thread, or null. The
/// pointer stays valid until the next failing call on this thread.
#[no_mangle]
pub extern "C" fn siltq_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

#[no_mangle]
pub extern "C" fn siltq_clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn siltq_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds a catalog algebra. `params` is `"n=3,r=0"` style and may be
/// empty; `prime` is 0 for the rationals.
///
/// # Safety
/// `name` and `params` must be NUL-terminated strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn siltq_algebra_builtin(
    name: *const c_char,
    params: *const c_char,
    prime: u64,
    out: *mut *mut SiltqAlgebra,
) -> SiltqStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let name = unsafe { str_arg(name, "name") }?;
        let params = if params.is_null() { "" } else { unsafe { str_arg(params, "params") }? };
        let build = || -> Result<Algebra, Error> {
            let p = catalog::builtin(name, &catalog::parse_params(params)?, field(prime)?)?;
            build_algebra(&p)
        };
        let a = build().map_err(fail)?;
        unsafe { *out = Box::into_raw(Box::new(SiltqAlgebra { inner: Arc::new(a) })) };
        Ok(())
    })
}

/// Builds an algebra from a JSON spec document.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn siltq_algebra_from_json(json: *const c_char, out: *mut *mut SiltqAlgebra) -> SiltqStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let text = unsafe { str_arg(json, "json") }?;
        let a = io::parse_spec(text).and_then(|p| build_algebra(&p)).map_err(fail)?;
        unsafe { *out = Box::into_raw(Box::new(SiltqAlgebra { inner: Arc::new(a) })) };
        Ok(())
    })
}

/// # Safety
/// `a` must be null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn siltq_algebra_free(a: *mut SiltqAlgebra) {
    if !a.is_null() {
        drop(unsafe { Box::from_raw(a) });
    }
}

/// Dimension over the base field, or 0 for a null handle.
///
/// # Safety
/// `a` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn siltq_algebra_dim(a: *const SiltqAlgebra) -> usize {
    unsafe { a.as_ref() }.map_or(0, |a| a.inner.dim())
}

/// # Safety
/// `a` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn siltq_algebra_vertex_count(a: *const SiltqAlgebra) -> usize {
    unsafe { a.as_ref() }.map_or(0, |a| a.inner.vertex_count())
}

/// Enumerates `2silt` up to `cap` elements. An incomplete census is still
/// returned with status `Ok`; query it with [`siltq_census_complete`].
///
/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn siltq_enumerate(a: *const SiltqAlgebra, cap: usize, out: *mut *mut SiltqCensus) -> SiltqStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let a = unsafe { handle(a, "algebra") }?;
        let opts = EnumerateOptions { cap, ..EnumerateOptions::default() };
        let c = enumerate_with(&a.inner, &opts, &Workspace::new()).map_err(fail)?;
        unsafe { *out = Box::into_raw(Box::new(SiltqCensus { inner: c })) };
        Ok(())
    })
}

/// # Safety
/// `c` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn siltq_census_free(c: *mut SiltqCensus) {
    if !c.is_null() {
        drop(unsafe { Box::from_raw(c) });
    }
}

/// # Safety
/// `c` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn siltq_census_len(c: *const SiltqCensus) -> usize {
    unsafe { c.as_ref() }.map_or(0, |c| c.inner.len())
}

/// # Safety
/// `c` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn siltq_census_complete(c: *const SiltqCensus) -> bool {
    unsafe { c.as_ref() }.is_some_and(|c| c.inner.complete)
}

/// Copies the g-vector matrix of element `index` row by row into `buf`
/// (`n·n` entries for `n` vertices) and stores that length in `written`.
///
/// # Safety
/// `c` must be a live handle; `buf` must hold `buf_len` entries; `written` must be writable.
#[no_mangle]
pub unsafe extern "C" fn siltq_census_key(
    c: *const SiltqCensus,
    index: usize,
    buf: *mut i64,
    buf_len: usize,
    written: *mut usize,
) -> SiltqStatus {
    guard(|| {
        out_ptr(written, "written")?;
        let c = unsafe { handle(c, "census") }?;
        let t = c.inner.elements.get(index).ok_or_else(|| {
            set_error(format!("index {index} out of range for {} elements", c.inner.len()));
            SiltqStatus::InvalidInput
        })?;
        let flat: Vec<i64> = t.key().iter().flatten().copied().collect();
        unsafe { *written = flat.len() };
        if buf_len < flat.len() {
            set_error(format!("buffer holds {buf_len} entries, {} needed", flat.len()));
            return Err(SiltqStatus::BufferTooSmall);
        }
        out_ptr(buf, "buf")?;
        // SAFETY: buf holds at least flat.len() entries.
        unsafe { ptr::copy_nonoverlapping(flat.as_ptr(), buf, flat.len()) };
        Ok(())
    })
}

/// Sizes of the two halves of a complete census at a vertex (0-based):
/// elements with the projective in degree −1, and in degree 0.
///
/// # Safety
/// `c` must be a live handle; `minus` and `plus` must be writable.
#[no_mangle]
pub unsafe extern "C" fn siltq_census_bisect(
    c: *const SiltqCensus,
    vertex: usize,
    minus: *mut usize,
    plus: *mut usize,
) -> SiltqStatus {
    guard(|| {
        out_ptr(minus, "minus")?;
        out_ptr(plus, "plus")?;
        let c = unsafe { handle(c, "census") }?;
        let b = symmetry::bisect(&c.inner, vertex).map_err(fail)?;
        unsafe {
            *minus = b.minus.len();
            *plus = b.plus.len();
        }
        Ok(())
    })
}

/// The census in its JSON file format. Free the result with [`siltq_string_free`].
///
/// # Safety
/// `c` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn siltq_census_to_json(c: *const SiltqCensus, out: *mut *mut c_char) -> SiltqStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let c = unsafe { handle(c, "census") }?;
        let json = CensusFile::from_census(&c.inner, None).to_json();
        let s = CString::new(json).map_err(|_| {
            set_error("census JSON contains a NUL byte");
            SiltqStatus::Math
        })?;
        unsafe { *out = s.into_raw() };
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn siltq_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}
