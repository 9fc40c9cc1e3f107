//! C ABI for polar Grassmann codes.
//!
//! Two opaque handles are exported: `PgCode` (a built code P(n, k, q)) and
//! `PgLineCodec` (the enumerator, local encoder and local corrector for line
//! codes). Every fallible function returns a [`PgStatus`]; on failure a
//! message is available from [`pg_last_error_message`] on the same thread.
//! Handles are released with the matching `_free` function, which accepts null.
//!
//! Buffers are caller-owned. Functions that fill a buffer take its capacity
//! and return `PG_STATUS_BUFFER_TOO_SMALL` when it is too short, after writing
//! the required length to the `*_len` out-parameter when one is given.

use std::cell::RefCell;
use std::ffi::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};

use polar_grassmann::codec::{LineCodec, ReceivedWord};
use polar_grassmann::distance::min_distance_exhaustive;
use polar_grassmann::{Error, LinearCode, MatrixGF, Subspace};

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    OutOfRange = 3,
    BufferTooSmall = 4,
    BudgetExceeded = 5,
    NotTotallySingular = 6,
    Unavailable = 7,
    Panicked = 99,
}

/// A built code P(n, k, q).
pub struct PgCode {
    inner: LinearCode,
}

/// Enumerator and local codec for the line code P(n, 2, q).
pub struct PgLineCodec {
    inner: LineCodec,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: impl Into<String>) {
    LAST_ERROR.with(|cell| *cell.borrow_mut() = msg.into());
}

fn fail(status: PgStatus, msg: impl Into<String>) -> PgStatus {
    set_error(msg);
    status
}

fn status_of(err: &Error) -> PgStatus {
    match err {
        Error::IndexOutOfRange { .. } => PgStatus::OutOfRange,
        Error::BudgetExceeded { .. } => PgStatus::BudgetExceeded,
        Error::NotTotallySingular => PgStatus::NotTotallySingular,
        Error::LocalCorrectionUnavailable(_) => PgStatus::Unavailable,
        _ => PgStatus::InvalidArgument,
    }
}

fn from_error(err: Error) -> PgStatus {
    fail(status_of(&err), err.to_string())
}

fn panic_message(payload: &(dyn std::any::Any + Send)) -> String {
    if let Some(s) = payload.downcast_ref::<&str>() {
        (*s).to_owned()
    } else if let Some(s) = payload.downcast_ref::<String>() {
        s.clone()
    } else {
        "unknown panic".to_owned()
    }
}

/// Runs `body`, converting a panic into `PgStatus::Panicked`.
fn ffi_guard(body: impl FnOnce() -> PgStatus) -> PgStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(payload) => fail(PgStatus::Panicked, panic_message(payload.as_ref())),
    }
}

/// # Safety
/// `ptr` must be null or point to `len` readable bytes.
unsafe fn slice_in<'a>(ptr: *const u8, len: usize) -> Option<&'a [u8]> {
    if ptr.is_null() {
        (len == 0).then_some(&[])
    } else {
        Some(std::slice::from_raw_parts(ptr, len))
    }
}

/// Copies `src` into the caller buffer `dst` of capacity `cap`.
///
/// # Safety
/// `dst` must be null or point to `cap` writable bytes.
unsafe fn copy_out(src: &[u8], dst: *mut u8, cap: usize) -> PgStatus {
    if src.len() > cap {
        return fail(PgStatus::BufferTooSmall, format!("buffer holds {cap} bytes, {} needed", src.len()));
    }
    if src.is_empty() {
        return PgStatus::Ok;
    }
    if dst.is_null() {
        return fail(PgStatus::NullPointer, "output buffer is null");
    }
    std::ptr::copy_nonoverlapping(src.as_ptr(), dst, src.len());
    PgStatus::Ok
}

/// Copies the last error message of this thread into `buf` (NUL-terminated,
/// truncated to `cap - 1` bytes) and returns its full length. With a null
/// `buf` or zero `cap` only the length is returned.
///
/// # Safety
/// `buf` must be null or point to `cap` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn pg_last_error_message(buf: *mut c_char, cap: usize) -> usize {
    LAST_ERROR.with(|cell| {
        let msg = cell.borrow();
        if !buf.is_null() && cap > 0 {
            let n = msg.len().min(cap - 1);
            std::ptr::copy_nonoverlapping(msg.as_ptr(), buf as *mut u8, n);
            *buf.add(n) = 0;
        }
        msg.len()
    })
}

/// Builds P(n, k, q) into `*out`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle pointer.
#[no_mangle]
pub unsafe extern "C" fn pg_code_build(n: u32, k: u32, q: u32, out: *mut *mut PgCode) -> PgStatus {
    ffi_guard(|| {
        if out.is_null() {
            return fail(PgStatus::NullPointer, "out is null");
        }
        match LinearCode::build(n as usize, k as usize, q) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(PgCode { inner }));
                PgStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Releases a code handle. Null is ignored.
///
/// # Safety
/// `code` must be null or a handle from [`pg_code_build`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pg_code_free(code: *mut PgCode) {
    if !code.is_null() {
        drop(Box::from_raw(code));
    }
}

/// Code length N, or 0 for a null handle.
///
/// # Safety
/// `code` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pg_code_length(code: *const PgCode) -> u64 {
    code.as_ref().map_or(0, |c| c.inner.length() as u64)
}

/// Code dimension K, or 0 for a null handle.
///
/// # Safety
/// `code` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pg_code_dimension(code: *const PgCode) -> u64 {
    code.as_ref().map_or(0, |c| c.inner.dimension() as u64)
}

/// Message length `C(2n+1, k)`, or 0 for a null handle.
///
/// # Safety
/// `code` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pg_code_message_len(code: *const PgCode) -> u64 {
    code.as_ref().map_or(0, |c| c.inner.message_len() as u64)
}

/// Writes the generator matrix row-major into `out` and its shape into
/// `rows`/`cols` (written even when the buffer is too small).
///
/// # Safety
/// `code` must be a live handle; `rows` and `cols` valid pointers; `out`
/// null or `cap` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn pg_code_generator(
    code: *const PgCode,
    out: *mut u8,
    cap: usize,
    rows: *mut usize,
    cols: *mut usize,
) -> PgStatus {
    ffi_guard(|| {
        let Some(code) = code.as_ref() else {
            return fail(PgStatus::NullPointer, "code is null");
        };
        if rows.is_null() || cols.is_null() {
            return fail(PgStatus::NullPointer, "rows or cols is null");
        }
        let g = code.inner.generator();
        *rows = g.rows();
        *cols = g.cols();
        copy_out(g.data(), out, cap)
    })
}

/// Encodes `msg` (length [`pg_code_message_len`]) into `out` (length N).
///
/// # Safety
/// `code` must be a live handle; `msg` must hold `msg_len` bytes; `out` null
/// or `cap` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn pg_code_encode(
    code: *const PgCode,
    msg: *const u8,
    msg_len: usize,
    out: *mut u8,
    cap: usize,
) -> PgStatus {
    ffi_guard(|| {
        let Some(code) = code.as_ref() else {
            return fail(PgStatus::NullPointer, "code is null");
        };
        let Some(msg) = slice_in(msg, msg_len) else {
            return fail(PgStatus::NullPointer, "msg is null");
        };
        let q = code.inner.q();
        if let Some(&v) = msg.iter().find(|&&v| v as u32 >= q) {
            return fail(PgStatus::InvalidArgument, format!("message entry {v} is not in GF({q})"));
        }
        match code.inner.encode(msg) {
            Ok(word) => copy_out(&word, out, cap),
            Err(e) => from_error(e),
        }
    })
}

/// Exact minimum distance by exhaustive enumeration of at most `budget` steps.
///
/// # Safety
/// `code` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pg_code_min_distance(code: *const PgCode, budget: u64, out: *mut u64) -> PgStatus {
    ffi_guard(|| {
        let Some(code) = code.as_ref() else {
            return fail(PgStatus::NullPointer, "code is null");
        };
        if out.is_null() {
            return fail(PgStatus::NullPointer, "out is null");
        }
        match min_distance_exhaustive(&code.inner, budget) {
            Ok(d) => {
                *out = d;
                PgStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Creates the line codec for P(n, 2, q) into `*out`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pg_codec_new(n: u32, q: u32, out: *mut *mut PgLineCodec) -> PgStatus {
    ffi_guard(|| {
        if out.is_null() {
            return fail(PgStatus::NullPointer, "out is null");
        }
        match LineCodec::new(n as usize, q) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(PgLineCodec { inner }));
                PgStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Releases a codec handle. Null is ignored.
///
/// # Safety
/// `codec` must be null or a handle from [`pg_codec_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pg_codec_free(codec: *mut PgLineCodec) {
    if !codec.is_null() {
        drop(Box::from_raw(codec));
    }
}

/// Number of lines N, or 0 for a null handle.
///
/// # Safety
/// `codec` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pg_codec_length(codec: *const PgLineCodec) -> u64 {
    codec.as_ref().map_or(0, |c| c.inner.length())
}

/// Message length `C(2n+1, 2)`, or 0 for a null handle.
///
/// # Safety
/// `codec` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pg_codec_message_len(codec: *const PgLineCodec) -> u64 {
    codec.as_ref().map_or(0, |c| c.inner.message_len() as u64)
}

/// Writes the RREF basis of the line at `index` row-major into `out`
/// (two rows of `2n+1` entries).
///
/// # Safety
/// `codec` must be a live handle; `out` null or `cap` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn pg_codec_unrank(codec: *const PgLineCodec, index: u64, out: *mut u8, cap: usize) -> PgStatus {
    ffi_guard(|| {
        let Some(codec) = codec.as_ref() else {
            return fail(PgStatus::NullPointer, "codec is null");
        };
        match codec.inner.counter().unrank(index) {
            Ok(line) => copy_out(line.basis().data(), out, cap),
            Err(e) => from_error(e),
        }
    })
}

/// Position of the line spanned by two rows of `2n+1` entries given
/// row-major in `rows`.
///
/// # Safety
/// `codec` must be a live handle; `rows` must hold `len` bytes; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn pg_codec_rank(
    codec: *const PgLineCodec,
    rows: *const u8,
    len: usize,
    out: *mut u64,
) -> PgStatus {
    ffi_guard(|| {
        let Some(codec) = codec.as_ref() else {
            return fail(PgStatus::NullPointer, "codec is null");
        };
        let Some(rows) = slice_in(rows, len) else {
            return fail(PgStatus::NullPointer, "rows is null");
        };
        if out.is_null() {
            return fail(PgStatus::NullPointer, "out is null");
        }
        let space = codec.inner.space();
        let dim = space.dim();
        if len != 2 * dim {
            return fail(PgStatus::InvalidArgument, format!("expected {} entries, got {len}", 2 * dim));
        }
        if let Some(&v) = rows.iter().find(|&&v| v as u32 >= space.q()) {
            return fail(PgStatus::InvalidArgument, format!("entry {v} is not in GF({})", space.q()));
        }
        let line = MatrixGF::from_vec(space.field(), 2, dim, rows.to_vec())
            .and_then(|m| Subspace::from_matrix(&m))
            .and_then(|s| codec.inner.counter().rank(&s));
        match line {
            Ok(i) => {
                *out = i;
                PgStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Position-local encoding of `msg` into `out` (length N).
///
/// # Safety
/// `codec` must be a live handle; `msg` must hold `msg_len` bytes; `out`
/// null or `cap` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn pg_codec_encode(
    codec: *const PgLineCodec,
    msg: *const u8,
    msg_len: usize,
    out: *mut u8,
    cap: usize,
) -> PgStatus {
    ffi_guard(|| {
        let Some(codec) = codec.as_ref() else {
            return fail(PgStatus::NullPointer, "codec is null");
        };
        let Some(msg) = slice_in(msg, msg_len) else {
            return fail(PgStatus::NullPointer, "msg is null");
        };
        let word = codec.inner.message_to_form(msg).and_then(|form| codec.inner.encode(&form));
        match word {
            Ok(word) => copy_out(&word, out, cap),
            Err(e) => from_error(e),
        }
    })
}

/// Corrects `received` (length N) into `out` by plane votes. The numbers of
/// changed and tied positions go to `changed` and `ties` when non-null; tied
/// positions keep their received value.
///
/// # Safety
/// `codec` must be a live handle; `received` must hold `len` bytes; `out`
/// null or `cap` writable bytes; `changed`/`ties` null or valid.
#[no_mangle]
pub unsafe extern "C" fn pg_codec_decode(
    codec: *const PgLineCodec,
    received: *const u8,
    len: usize,
    out: *mut u8,
    cap: usize,
    changed: *mut u64,
    ties: *mut u64,
) -> PgStatus {
    ffi_guard(|| {
        let Some(codec) = codec.as_ref() else {
            return fail(PgStatus::NullPointer, "codec is null");
        };
        let Some(received) = slice_in(received, len) else {
            return fail(PgStatus::NullPointer, "received is null");
        };
        let space = codec.inner.space();
        let result =
            ReceivedWord::new(space.n(), space.q(), received.to_vec()).and_then(|w| codec.inner.correct_all(&w));
        match result {
            Ok((word, report)) => {
                let status = copy_out(&word, out, cap);
                if status == PgStatus::Ok {
                    if let Some(c) = changed.as_mut() {
                        *c = report.changes.len() as u64;
                    }
                    if let Some(t) = ties.as_mut() {
                        *t = report.ties.len() as u64;
                    }
                }
                status
            }
            Err(e) => from_error(e),
        }
    })
}
