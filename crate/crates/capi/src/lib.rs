//! C ABI for the two-level FM-index. Handles are opaque pointers created by
//! `pfpfm_build` or `pfpfm_load` and released with `pfpfm_free`; every
//! fallible call returns a `PfpFmStatus`. Panics never cross the boundary.

use std::ffi::{c_char, CStr};
use std::panic::catch_unwind;
use std::ptr;
use std::slice;

use pfp_fm::{container, Error, TriggerOracle, TwoLevelIndex};

/// Opaque index handle.
pub struct PfpFmIndex(TwoLevelIndex);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PfpFmStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// Parameters are out of range (w, p, path encoding, pattern length).
    InvalidArgument = 2,
    /// The text cannot be indexed (empty, contains 0x00, or too large).
    BadText = 3,
    /// Construction failed after validation.
    BuildFailed = 4,
    /// The index file is missing, unreadable, or corrupt.
    BadIndexFile = 5,
    /// File system error.
    IoFailed = 6,
    /// An internal invariant failed; the handle is untouched.
    Panicked = 7,
}

fn status_of(err: &Error) -> PfpFmStatus {
    match err {
        Error::EmptyText | Error::SentinelInInput(_) | Error::TextTooLarge(_) => {
            PfpFmStatus::BadText
        }
        Error::InvalidTrigger(_) | Error::PatternTooLong { .. } => PfpFmStatus::InvalidArgument,
        Error::DictionaryTooLarge(_)
        | Error::FingerprintCollisions(_)
        | Error::BadSequence(_)
        | Error::BenchMismatch { .. } => PfpFmStatus::BuildFailed,
        Error::Format(_) => PfpFmStatus::BadIndexFile,
        Error::Io(_) => PfpFmStatus::IoFailed,
    }
}

unsafe fn write_handle(
    out: *mut *mut PfpFmIndex,
    result: std::thread::Result<Result<TwoLevelIndex, Error>>,
) -> PfpFmStatus {
    match result {
        Ok(Ok(index)) => {
            *out = Box::into_raw(Box::new(PfpFmIndex(index)));
            PfpFmStatus::Ok
        }
        Ok(Err(e)) => {
            *out = ptr::null_mut();
            status_of(&e)
        }
        Err(_) => {
            *out = ptr::null_mut();
            PfpFmStatus::Panicked
        }
    }
}

/// Builds an index over `text` with hashed triggers of window length `w` and
/// modulus `p`, storing the new handle in `*out`.
///
/// # Safety
/// `text` must point to `text_len` readable bytes and `out` must be valid
/// for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn pfpfm_build(
    text: *const u8,
    text_len: usize,
    w: usize,
    p: u64,
    seed: u64,
    out: *mut *mut PfpFmIndex,
) -> PfpFmStatus {
    if text.is_null() || out.is_null() {
        return PfpFmStatus::NullArgument;
    }
    let text = slice::from_raw_parts(text, text_len);
    let result = catch_unwind(|| {
        TriggerOracle::hashed(w, p).and_then(|oracle| TwoLevelIndex::build(text, oracle, seed))
    });
    write_handle(out, result)
}

/// Loads an index from the NUL-terminated path `path` into `*out`.
///
/// # Safety
/// `path` must be a valid NUL-terminated string and `out` must be valid for
/// writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn pfpfm_load(
    path: *const c_char,
    out: *mut *mut PfpFmIndex,
) -> PfpFmStatus {
    if path.is_null() || out.is_null() {
        return PfpFmStatus::NullArgument;
    }
    let Ok(path) = CStr::from_ptr(path).to_str() else {
        return PfpFmStatus::InvalidArgument;
    };
    let result = catch_unwind(|| container::load(path));
    write_handle(out, result)
}

/// Writes `index` to the NUL-terminated path `path`.
///
/// # Safety
/// `index` must be a live handle from this library and `path` a valid
/// NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn pfpfm_save(
    index: *const PfpFmIndex,
    path: *const c_char,
) -> PfpFmStatus {
    if index.is_null() || path.is_null() {
        return PfpFmStatus::NullArgument;
    }
    let Ok(path) = CStr::from_ptr(path).to_str() else {
        return PfpFmStatus::InvalidArgument;
    };
    match catch_unwind(|| container::save(&(*index).0, path)) {
        Ok(Ok(())) => PfpFmStatus::Ok,
        Ok(Err(e)) => status_of(&e),
        Err(_) => PfpFmStatus::Panicked,
    }
}

unsafe fn count_impl(
    index: *const PfpFmIndex,
    pattern: *const u8,
    pattern_len: usize,
    out_count: *mut u64,
    baseline: bool,
) -> PfpFmStatus {
    if index.is_null() || out_count.is_null() || (pattern.is_null() && pattern_len != 0) {
        return PfpFmStatus::NullArgument;
    }
    let pattern = if pattern_len == 0 {
        &[][..]
    } else {
        slice::from_raw_parts(pattern, pattern_len)
    };
    match catch_unwind(|| {
        if baseline {
            (*index).0.count_baseline(pattern)
        } else {
            (*index).0.count(pattern)
        }
    }) {
        Ok(n) => {
            *out_count = n as u64;
            PfpFmStatus::Ok
        }
        Err(_) => PfpFmStatus::Panicked,
    }
}

/// Counts occurrences of `pattern` using the accelerated two-level search,
/// storing the result in `*out_count`. Patterns containing bytes absent from
/// the text count zero.
///
/// # Safety
/// `index` must be a live handle, `pattern` must point to `pattern_len`
/// readable bytes (or be null with `pattern_len == 0`), and `out_count`
/// must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn pfpfm_count(
    index: *const PfpFmIndex,
    pattern: *const u8,
    pattern_len: usize,
    out_count: *mut u64,
) -> PfpFmStatus {
    count_impl(index, pattern, pattern_len, out_count, false)
}

/// Counts occurrences of `pattern` using plain single-level backward search.
///
/// # Safety
/// Same contract as `pfpfm_count`.
#[no_mangle]
pub unsafe extern "C" fn pfpfm_count_baseline(
    index: *const PfpFmIndex,
    pattern: *const u8,
    pattern_len: usize,
    out_count: *mut u64,
) -> PfpFmStatus {
    count_impl(index, pattern, pattern_len, out_count, true)
}

/// Releases a handle. Null is a no-op; handles must not be used after this.
///
/// # Safety
/// `index` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn pfpfm_free(index: *mut PfpFmIndex) {
    if !index.is_null() {
        drop(Box::from_raw(index));
    }
}

/// Returns a static name for a status code, for error messages.
#[no_mangle]
pub extern "C" fn pfpfm_status_name(status: PfpFmStatus) -> *const c_char {
    let name: &'static CStr = match status {
        PfpFmStatus::Ok => c"ok",
        PfpFmStatus::NullArgument => c"null argument",
        PfpFmStatus::InvalidArgument => c"invalid argument",
        PfpFmStatus::BadText => c"text cannot be indexed",
        PfpFmStatus::BuildFailed => c"index construction failed",
        PfpFmStatus::BadIndexFile => c"bad index file",
        PfpFmStatus::IoFailed => c"i/o error",
        PfpFmStatus::Panicked => c"internal error",
    };
    name.as_ptr()
}
