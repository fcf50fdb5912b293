//! C ABI for `premkit`.
//!
//! Every function returns a [`PremkitStatus`]. On failure the message is
//! kept per thread and can be read with [`premkit_last_error`]. Objects are
//! handed out as opaque pointers and must be released with the matching
//! `_free` function; strings returned by the library are released with
//! [`premkit_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use premkit::braid::{humphries_certificate, is_trivial_braid, permutation_of, BraidWord, HumphriesVerdict};
use premkit::foldmap::{monodromy, pullback, BasepointFrame, CrossingWord, DiskArrangement};
use premkit::report::{self, ReportError};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PremkitStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidInput = 4,
    BufferTooSmall = 5,
    Panic = 6,
}

/// A braid word. Opaque.
pub struct PremkitBraid(BraidWord);

/// A validated fold-map model. Opaque.
pub struct PremkitArrangement(DiskArrangement);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn fail(status: PremkitStatus, message: impl Into<String>) -> PremkitStatus {
    set_error(message);
    status
}

fn guarded(f: impl FnOnce() -> PremkitStatus) -> PremkitStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    catch_unwind(AssertUnwindSafe(f))
        .unwrap_or_else(|_| fail(PremkitStatus::Panic, "internal error"))
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, PremkitStatus> {
    if s.is_null() {
        return Err(fail(PremkitStatus::NullArgument, "null string"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| fail(PremkitStatus::InvalidUtf8, e.to_string()))
}

fn report_status(e: &ReportError) -> PremkitStatus {
    match e {
        ReportError::Parse { .. } => PremkitStatus::ParseError,
        ReportError::Invalid(_) => PremkitStatus::InvalidInput,
    }
}

/// Message of the last failed call on this thread, or null. The pointer is
/// valid until the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn premkit_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn premkit_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Runs a JSON request (the same as the command-line reports use) and
/// stores the report in `*out`, to be freed with [`premkit_string_free`].
///
/// # Safety
/// `request` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn premkit_run_json(
    request: *const c_char,
    out: *mut *mut c_char,
) -> PremkitStatus {
    guarded(|| {
        if out.is_null() {
            return fail(PremkitStatus::NullArgument, "null output pointer");
        }
        *out = ptr::null_mut();
        let text = match read_str(request) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match report::run_json(text) {
            Ok(rep) => {
                *out = CString::new(rep.to_json())
                    .expect("JSON has no NUL")
                    .into_raw();
                PremkitStatus::Ok
            }
            Err(e) => fail(report_status(&e), e.to_string()),
        }
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn premkit_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a braid on `strands` strands from `len` signed generator indices.
///
/// # Safety
/// `letters` must point to `len` readable values (or be null when `len` is
/// 0) and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn premkit_braid_new(
    strands: usize,
    letters: *const i32,
    len: usize,
    out: *mut *mut PremkitBraid,
) -> PremkitStatus {
    guarded(|| {
        if out.is_null() || (letters.is_null() && len > 0) {
            return fail(PremkitStatus::NullArgument, "null argument");
        }
        *out = ptr::null_mut();
        let letters = if len == 0 {
            Vec::new()
        } else {
            std::slice::from_raw_parts(letters, len).to_vec()
        };
        match BraidWord::new(strands, letters) {
            Ok(b) => {
                *out = Box::into_raw(Box::new(PremkitBraid(b)));
                PremkitStatus::Ok
            }
            Err(e) => fail(PremkitStatus::InvalidInput, e.to_string()),
        }
    })
}

/// # Safety
/// `b` must be null or a handle from [`premkit_braid_new`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn premkit_braid_free(b: *mut PremkitBraid) {
    if !b.is_null() {
        drop(Box::from_raw(b));
    }
}

/// Writes the one-based permutation of the braid into `images`, which must
/// hold `capacity` entries; `*written` receives the strand count.
///
/// # Safety
/// `b` must be a live handle; `images` must have room for `capacity` values.
#[no_mangle]
pub unsafe extern "C" fn premkit_braid_permutation(
    b: *const PremkitBraid,
    images: *mut usize,
    capacity: usize,
    written: *mut usize,
) -> PremkitStatus {
    guarded(|| {
        if b.is_null() || images.is_null() || written.is_null() {
            return fail(PremkitStatus::NullArgument, "null argument");
        }
        let p = permutation_of(&(*b).0).one_based();
        write_slice(&p, images, capacity, written)
    })
}

/// # Safety
/// `b` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn premkit_braid_is_trivial(b: *const PremkitBraid, out: *mut bool) -> PremkitStatus {
    guarded(|| {
        if b.is_null() || out.is_null() {
            return fail(PremkitStatus::NullArgument, "null argument");
        }
        *out = is_trivial_braid(&(*b).0);
        PremkitStatus::Ok
    })
}

/// Sets `*infinite_order` when the permutation order of the braid is
/// divisible by 2, 3 or 5.
///
/// # Safety
/// `b` must be a live handle and `infinite_order` writable.
#[no_mangle]
pub unsafe extern "C" fn premkit_braid_humphries(
    b: *const PremkitBraid,
    infinite_order: *mut bool,
) -> PremkitStatus {
    guarded(|| {
        if b.is_null() || infinite_order.is_null() {
            return fail(PremkitStatus::NullArgument, "null argument");
        }
        *infinite_order = humphries_certificate(&(*b).0).verdict == HumphriesVerdict::InfiniteOrder;
        PremkitStatus::Ok
    })
}

/// Parses and validates an arrangement from JSON.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn premkit_arrangement_from_json(
    json: *const c_char,
    out: *mut *mut PremkitArrangement,
) -> PremkitStatus {
    guarded(|| {
        if out.is_null() {
            return fail(PremkitStatus::NullArgument, "null output pointer");
        }
        *out = ptr::null_mut();
        let text = match read_str(json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match DiskArrangement::from_json(text) {
            Ok(a) => {
                *out = Box::into_raw(Box::new(PremkitArrangement(a)));
                PremkitStatus::Ok
            }
            Err(e) => fail(PremkitStatus::InvalidInput, e.to_string()),
        }
    })
}

/// # Safety
/// `a` must be null or a handle from [`premkit_arrangement_from_json`].
#[no_mangle]
pub unsafe extern "C" fn premkit_arrangement_free(a: *mut PremkitArrangement) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// Monodromy of a loop (JSON crossing word) in the canonical frame at the
/// basepoint, written one-based into `images`.
///
/// # Safety
/// `a` must be a live handle, `loop_json` a NUL-terminated string, and
/// `images` must have room for `capacity` values.
#[no_mangle]
pub unsafe extern "C" fn premkit_monodromy(
    a: *const PremkitArrangement,
    loop_json: *const c_char,
    images: *mut usize,
    capacity: usize,
    written: *mut usize,
) -> PremkitStatus {
    guarded(|| {
        if a.is_null() || images.is_null() || written.is_null() {
            return fail(PremkitStatus::NullArgument, "null argument");
        }
        let arr = &(*a).0;
        let text = match read_str(loop_json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let result = CrossingWord::from_json(text).and_then(|l| {
            let frame = BasepointFrame::canonical(arr, arr.basepoint())?;
            monodromy(arr, &l, &frame)
        });
        match result {
            Ok(p) => write_slice(&p.one_based(), images, capacity, written),
            Err(e) => fail(PremkitStatus::InvalidInput, e.to_string()),
        }
    })
}

/// Number of components of the pullback of the fold map along a loop.
///
/// # Safety
/// `a` must be a live handle, `loop_json` a NUL-terminated string and
/// `components` writable.
#[no_mangle]
pub unsafe extern "C" fn premkit_pullback_components(
    a: *const PremkitArrangement,
    loop_json: *const c_char,
    components: *mut usize,
) -> PremkitStatus {
    guarded(|| {
        if a.is_null() || components.is_null() {
            return fail(PremkitStatus::NullArgument, "null argument");
        }
        let text = match read_str(loop_json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match CrossingWord::from_json(text).and_then(|l| pullback(&(*a).0, &l)) {
            Ok(pb) => {
                *components = pb.component_count();
                PremkitStatus::Ok
            }
            Err(e) => fail(PremkitStatus::InvalidInput, e.to_string()),
        }
    })
}

unsafe fn write_slice(
    values: &[usize],
    out: *mut usize,
    capacity: usize,
    written: *mut usize,
) -> PremkitStatus {
    *written = values.len();
    if values.len() > capacity {
        return fail(
            PremkitStatus::BufferTooSmall,
            format!("need room for {} values", values.len()),
        );
    }
    ptr::copy_nonoverlapping(values.as_ptr(), out, values.len());
    PremkitStatus::Ok
}
