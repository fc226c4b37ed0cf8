//! C ABI for the moralframes library: opaque handles, integer status codes,
//! and a thread-local last-error message. The header is generated into
//! `include/moralframes.h` by the build script.
//!
//! Conventions:
//!
//! - Constructors take an out-pointer and return [`mf_status`]; on anything
//!   but `MF_STATUS_OK` the out-pointer is left untouched and
//!   [`mf_last_error_message`] carries the detail.
//! - Every handle has exactly one `*_free` function. Handles are immutable
//!   after construction and safe to share across threads for reads.
//! - Strings are NUL-terminated UTF-8. Strings returned by the library are
//!   freed with [`mf_string_free`].

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;

use moralframes::axes::{build_axes, AxisSet};
use moralframes::embed::{cosine, load_embeddings, EmbeddingStore};
use moralframes::error::Error;
use moralframes::lexicon::{load_lexicon, MoralLexicon};
use moralframes::manifest::write_atomic;
use moralframes::preprocess::{normalize_text, tokenize};
use moralframes::scoring::{frame_bias, frame_intensity, word_contributions, CorpusBaseline};

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[allow(non_camel_case_types)]
pub enum mf_status {
    MF_STATUS_OK = 0,
    MF_STATUS_IO = 1,
    MF_STATUS_PARSE = 2,
    MF_STATUS_DATA = 3,
    MF_STATUS_ARGUMENT = 4,
    MF_STATUS_NULL_POINTER = 5,
    MF_STATUS_UTF8 = 6,
    MF_STATUS_PANIC = 7,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let sanitized = message.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

fn status_of(err: &Error) -> mf_status {
    match err {
        Error::Io { .. } => mf_status::MF_STATUS_IO,
        Error::Parse { .. } | Error::EmptyStore { .. } => mf_status::MF_STATUS_PARSE,
        Error::InvalidArgument { .. } | Error::LengthMismatch { .. } | Error::ZeroNorm { .. } => {
            mf_status::MF_STATUS_ARGUMENT
        }
        _ => mf_status::MF_STATUS_DATA,
    }
}

fn fail(err: &Error) -> mf_status {
    set_error(&err.to_string());
    status_of(err)
}

/// Runs a closure behind a panic guard; panics become `MF_STATUS_PANIC`.
fn guarded(f: impl FnOnce() -> mf_status) -> mf_status {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic");
            mf_status::MF_STATUS_PANIC
        }
    }
}

unsafe fn utf8_arg<'a>(ptr: *const c_char, name: &str) -> Result<&'a str, mf_status> {
    if ptr.is_null() {
        set_error(&format!("{name} is NULL"));
        return Err(mf_status::MF_STATUS_NULL_POINTER);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error(&format!("{name} is not valid UTF-8"));
        mf_status::MF_STATUS_UTF8
    })
}

macro_rules! require_nonnull {
    ($ptr:expr, $name:literal) => {
        if $ptr.is_null() {
            set_error(concat!($name, " is NULL"));
            return mf_status::MF_STATUS_NULL_POINTER;
        }
    };
}

/// Opaque embedding store handle.
#[allow(non_camel_case_types)]
pub struct mf_embeddings {
    inner: EmbeddingStore,
}

/// Opaque moral lexicon handle.
#[allow(non_camel_case_types)]
pub struct mf_lexicon {
    inner: MoralLexicon,
}

/// Opaque frame-axis-set handle.
#[allow(non_camel_case_types)]
pub struct mf_axes {
    inner: AxisSet,
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn mf_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the most recent error on this thread. Valid until the next
/// failing call on the same thread; never NULL.
#[no_mangle]
pub extern "C" fn mf_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Loads a whitespace-separated embedding text file.
///
/// # Safety
/// `path` must be a NUL-terminated string; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mf_embeddings_load(
    path: *const c_char,
    out: *mut *mut mf_embeddings,
) -> mf_status {
    guarded(|| {
        require_nonnull!(out, "out");
        let path = match utf8_arg(path, "path") {
            Ok(p) => p,
            Err(status) => return status,
        };
        match load_embeddings(Path::new(path), None) {
            Ok(store) => {
                *out = Box::into_raw(Box::new(mf_embeddings { inner: store }));
                mf_status::MF_STATUS_OK
            }
            Err(err) => fail(&err),
        }
    })
}

/// # Safety
/// `store` must be NULL or a pointer from `mf_embeddings_load`, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mf_embeddings_free(store: *mut mf_embeddings) {
    if !store.is_null() {
        drop(Box::from_raw(store));
    }
}

/// Embedding dimensionality, or 0 for NULL.
///
/// # Safety
/// `store` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mf_embeddings_dim(store: *const mf_embeddings) -> usize {
    store.as_ref().map_or(0, |s| s.inner.dim())
}

/// Vocabulary size, or 0 for NULL.
///
/// # Safety
/// `store` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mf_embeddings_len(store: *const mf_embeddings) -> usize {
    store.as_ref().map_or(0, |s| s.inner.len())
}

/// Whether `token` (exact match, case-sensitive) is in the vocabulary.
///
/// # Safety
/// `store` must be NULL or a live handle; `token` NUL-terminated or NULL.
#[no_mangle]
pub unsafe extern "C" fn mf_embeddings_contains(
    store: *const mf_embeddings,
    token: *const c_char,
) -> bool {
    let Some(store) = store.as_ref() else {
        return false;
    };
    let Ok(token) = utf8_arg(token, "token") else {
        return false;
    };
    store.inner.contains(token)
}

/// Cosine similarity of two `len`-dimensional vectors into `out`.
///
/// # Safety
/// `a` and `b` must point to `len` doubles; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn mf_cosine(
    a: *const f64,
    b: *const f64,
    len: usize,
    out: *mut f64,
) -> mf_status {
    guarded(|| {
        require_nonnull!(a, "a");
        require_nonnull!(b, "b");
        require_nonnull!(out, "out");
        let a = std::slice::from_raw_parts(a, len);
        let b = std::slice::from_raw_parts(b, len);
        match cosine(a, b) {
            Ok(value) => {
                *out = value;
                mf_status::MF_STATUS_OK
            }
            Err(err) => fail(&err),
        }
    })
}

/// Loads the lexicon interchange TSV.
///
/// # Safety
/// `path` must be NUL-terminated; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn mf_lexicon_load(
    path: *const c_char,
    out: *mut *mut mf_lexicon,
) -> mf_status {
    guarded(|| {
        require_nonnull!(out, "out");
        let path = match utf8_arg(path, "path") {
            Ok(p) => p,
            Err(status) => return status,
        };
        match load_lexicon(Path::new(path)) {
            Ok(lexicon) => {
                *out = Box::into_raw(Box::new(mf_lexicon { inner: lexicon }));
                mf_status::MF_STATUS_OK
            }
            Err(err) => fail(&err),
        }
    })
}

/// # Safety
/// `lexicon` must be NULL or a pointer from `mf_lexicon_load`, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mf_lexicon_free(lexicon: *mut mf_lexicon) {
    if !lexicon.is_null() {
        drop(Box::from_raw(lexicon));
    }
}

/// Total number of (cell, word) assignments, or 0 for NULL.
///
/// # Safety
/// `lexicon` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mf_lexicon_len(lexicon: *const mf_lexicon) -> usize {
    lexicon.as_ref().map_or(0, |l| l.inner.len())
}

/// Builds the five frame axes from pole centroids.
///
/// # Safety
/// All handles must be live; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn mf_axes_build(
    lexicon: *const mf_lexicon,
    store: *const mf_embeddings,
    out: *mut *mut mf_axes,
) -> mf_status {
    guarded(|| {
        require_nonnull!(lexicon, "lexicon");
        require_nonnull!(store, "store");
        require_nonnull!(out, "out");
        match build_axes(&(*lexicon).inner, &(*store).inner) {
            Ok(axes) => {
                *out = Box::into_raw(Box::new(mf_axes { inner: axes }));
                mf_status::MF_STATUS_OK
            }
            Err(err) => fail(&err),
        }
    })
}

/// Loads an axis-set JSON written by `mf_axes_save_json` or the CLI.
///
/// # Safety
/// `path` must be NUL-terminated; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn mf_axes_load_json(
    path: *const c_char,
    out: *mut *mut mf_axes,
) -> mf_status {
    guarded(|| {
        require_nonnull!(out, "out");
        let path = match utf8_arg(path, "path") {
            Ok(p) => p,
            Err(status) => return status,
        };
        match AxisSet::from_json_file(Path::new(path)) {
            Ok(axes) => {
                *out = Box::into_raw(Box::new(mf_axes { inner: axes }));
                mf_status::MF_STATUS_OK
            }
            Err(err) => fail(&err),
        }
    })
}

/// Writes the axis set as JSON (atomic replace).
///
/// # Safety
/// `axes` must be a live handle; `path` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn mf_axes_save_json(
    axes: *const mf_axes,
    path: *const c_char,
) -> mf_status {
    guarded(|| {
        require_nonnull!(axes, "axes");
        let path = match utf8_arg(path, "path") {
            Ok(p) => p,
            Err(status) => return status,
        };
        let json = match (*axes).inner.to_json() {
            Ok(json) => json,
            Err(err) => return fail(&err),
        };
        match write_atomic(Path::new(path), json.as_bytes()) {
            Ok(()) => mf_status::MF_STATUS_OK,
            Err(err) => fail(&err),
        }
    })
}

/// # Safety
/// `axes` must be NULL or a pointer from an `mf_axes_*` constructor.
#[no_mangle]
pub unsafe extern "C" fn mf_axes_free(axes: *mut mf_axes) {
    if !axes.is_null() {
        drop(Box::from_raw(axes));
    }
}

/// Axis-set dimensionality, or 0 for NULL.
///
/// # Safety
/// `axes` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mf_axes_dim(axes: *const mf_axes) -> usize {
    axes.as_ref().map_or(0, |a| a.inner.dim)
}

/// Normalizes and tokenizes `text`, then scores it against the five axes.
///
/// `bias_out` and `intensity_out` must hold 5 doubles each, filled in
/// canonical foundation order (care, fairness, loyalty, authority,
/// sanctity). `baseline` is either a pointer to the 5 per-foundation corpus
/// baseline biases, or NULL, in which case intensity is the variance of the
/// contributions around the document's own bias. Fails with `MF_STATUS_DATA` when
/// no token is embedded.
///
/// # Safety
/// Handles must be live; `text` NUL-terminated; out-pointers valid;
/// `baseline` NULL or 5 doubles.
#[no_mangle]
pub unsafe extern "C" fn mf_score_text(
    axes: *const mf_axes,
    store: *const mf_embeddings,
    text: *const c_char,
    baseline: *const f64,
    bias_out: *mut f64,
    intensity_out: *mut f64,
    n_scored_tokens_out: *mut usize,
) -> mf_status {
    guarded(|| {
        require_nonnull!(axes, "axes");
        require_nonnull!(store, "store");
        require_nonnull!(bias_out, "bias_out");
        require_nonnull!(intensity_out, "intensity_out");
        let text = match utf8_arg(text, "text") {
            Ok(t) => t,
            Err(status) => return status,
        };
        let tokens = tokenize(&normalize_text(text));
        let contribs = word_contributions(&tokens, &(*axes).inner, &(*store).inner);
        let bias = match frame_bias(&contribs, "<ffi>") {
            Ok(bias) => bias,
            Err(err) => return fail(&err),
        };
        let baseline_bias = if baseline.is_null() {
            bias
        } else {
            std::slice::from_raw_parts(baseline, 5).try_into().unwrap()
        };
        let reference = CorpusBaseline {
            baseline_bias,
            n_documents: 1,
        };
        let intensity = match frame_intensity(&contribs, &reference, "<ffi>") {
            Ok(intensity) => intensity,
            Err(err) => return fail(&err),
        };
        std::ptr::copy_nonoverlapping(bias.as_ptr(), bias_out, 5);
        std::ptr::copy_nonoverlapping(intensity.as_ptr(), intensity_out, 5);
        if !n_scored_tokens_out.is_null() {
            *n_scored_tokens_out = contribs.n_scored_tokens;
        }
        mf_status::MF_STATUS_OK
    })
}

/// Normalizes `raw` (NFC, lowercase, URL/sigil/punctuation handling,
/// whitespace collapse) and returns a newly allocated string. NULL on
/// invalid input. Free with [`mf_string_free`].
///
/// # Safety
/// `raw` must be NULL or NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn mf_normalize_text(raw: *const c_char) -> *mut c_char {
    let Ok(raw) = utf8_arg(raw, "raw") else {
        return std::ptr::null_mut();
    };
    match catch_unwind(|| normalize_text(raw)) {
        Ok(normalized) => CString::new(normalized)
            .map(CString::into_raw)
            .unwrap_or(std::ptr::null_mut()),
        Err(_) => {
            set_error("internal panic");
            std::ptr::null_mut()
        }
    }
}

/// Frees a string returned by this library.
///
/// # Safety
/// `s` must be NULL or a pointer returned by `mf_normalize_text`.
#[no_mangle]
pub unsafe extern "C" fn mf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
