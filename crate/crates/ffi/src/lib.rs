//! C ABI for edkit.
//!
//! Strings cross the boundary as `(const uint32_t *codes, size_t len)`; a
//! null pointer is accepted when `len` is zero. Every fallible call returns
//! an [`EdStatus`] and, on failure, leaves a message readable through
//! [`ed_last_error`] on the calling thread. Handles returned through out
//! pointers are owned by the caller and released with the matching `_free`.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use edkit::align::{align, AlignConfig, BandedEstimator, ExactEstimator};
use edkit::dimred::{block_distance, dimred_general, dimred_perm, BlockString};
use edkit::periodic::{min_period, smallest_rotation_offset};
use edkit::ulam::{decode_alignment, hamming, ulam_embed, SparseEmbedding};
use edkit::{Banded, EditOp, EditScript, Error, Str};

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Capacity = 3,
    NotPermutation = 4,
    InvalidScript = 5,
    InsufficientDimension = 6,
    Estimator = 7,
    GenerationFailed = 8,
    Parse = 9,
    OutOfRange = 10,
    Panic = 11,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdOpKind {
    Insert = 0,
    Delete = 1,
    Substitute = 2,
}

/// One edit. `pos` is 1-based; `symbol` is 0 for deletions.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EdOp {
    pub kind: EdOpKind,
    pub pos: usize,
    pub symbol: u32,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EdAlignStats {
    pub levels: usize,
    pub estimator_calls: u64,
}

/// Opaque edit script.
pub struct EdScript(EditScript);

/// Opaque sparse Ulam embedding.
pub struct EdUlam(SparseEmbedding);

/// Opaque block string.
pub struct EdBlocks(BlockString);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> EdStatus {
    match e {
        Error::Capacity { .. } => EdStatus::Capacity,
        Error::InvalidScript { .. } => EdStatus::InvalidScript,
        Error::InvalidArgument(_) => EdStatus::InvalidArgument,
        Error::NotPermutation { .. } => EdStatus::NotPermutation,
        Error::InsufficientDimension { .. } => EdStatus::InsufficientDimension,
        Error::Estimator(_) => EdStatus::Estimator,
        Error::GenerationFailed { .. } => EdStatus::GenerationFailed,
        Error::Parse(_) => EdStatus::Parse,
    }
}

enum Fail {
    Null(&'static str),
    Range(String),
    Lib(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> EdStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => EdStatus::Ok,
        Ok(Err(Fail::Null(what))) => {
            set_error(format!("null pointer: {what}"));
            EdStatus::NullPointer
        }
        Ok(Err(Fail::Range(msg))) => {
            set_error(msg);
            EdStatus::OutOfRange
        }
        Ok(Err(Fail::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic".into());
            EdStatus::Panic
        }
    }
}

unsafe fn input(codes: *const u32, len: usize, what: &'static str) -> Result<Str, Fail> {
    if len == 0 {
        return Ok(Str::new());
    }
    if codes.is_null() {
        return Err(Fail::Null(what));
    }
    Ok(Str::from_codes(std::slice::from_raw_parts(codes, len).iter().copied())?)
}

unsafe fn out<'a, T>(p: *mut T, what: &'static str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or(Fail::Null(what))
}

unsafe fn handle<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or(Fail::Null(what))
}

fn boxed<T>(v: T) -> *mut T {
    Box::into_raw(Box::new(v))
}

/// Message for the last failed call on this thread, or null. Valid until
/// the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn ed_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn ed_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

#[no_mangle]
pub unsafe extern "C" fn ed_edit_distance(
    a: *const u32,
    a_len: usize,
    b: *const u32,
    b_len: usize,
    distance: *mut usize,
) -> EdStatus {
    guard(|| {
        let (x, y) = (input(a, a_len, "a")?, input(b, b_len, "b")?);
        let d = out(distance, "distance")?;
        *d = edkit::edit_distance(&x, &y)?;
        Ok(())
    })
}

/// Sets `*within` to whether the distance is at most `k`, and `*distance`
/// to the distance when it is.
#[no_mangle]
pub unsafe extern "C" fn ed_banded_distance(
    a: *const u32,
    a_len: usize,
    b: *const u32,
    b_len: usize,
    k: usize,
    within: *mut bool,
    distance: *mut usize,
) -> EdStatus {
    guard(|| {
        let (x, y) = (input(a, a_len, "a")?, input(b, b_len, "b")?);
        let (w, d) = (out(within, "within")?, out(distance, "distance")?);
        match edkit::banded_distance(&x, &y, k)? {
            Banded::Within(v) => {
                *w = true;
                *d = v;
            }
            Banded::Exceeds => *w = false,
        }
        Ok(())
    })
}

/// Minimum-length script from `a` to `b`.
#[no_mangle]
pub unsafe extern "C" fn ed_optimal_alignment(
    a: *const u32,
    a_len: usize,
    b: *const u32,
    b_len: usize,
    script: *mut *mut EdScript,
) -> EdStatus {
    guard(|| {
        let (x, y) = (input(a, a_len, "a")?, input(b, b_len, "b")?);
        let s = out(script, "script")?;
        *s = boxed(EdScript(edkit::optimal_alignment(&x, &y)?));
        Ok(())
    })
}

/// Recursive aligner. `band` of 0 queries exact distances; otherwise the
/// estimator answers `max(|a|, |b|)` beyond `band`. `stats` may be null.
#[no_mangle]
pub unsafe extern "C" fn ed_align(
    a: *const u32,
    a_len: usize,
    b: *const u32,
    b_len: usize,
    m: usize,
    band: usize,
    seed: u64,
    script: *mut *mut EdScript,
    stats: *mut EdAlignStats,
) -> EdStatus {
    guard(|| {
        let (x, y) = (input(a, a_len, "a")?, input(b, b_len, "b")?);
        let s = out(script, "script")?;
        let cfg = AlignConfig { seed, ..AlignConfig::default() };
        let rep = if band == 0 {
            align(&x, &y, m, &ExactEstimator, &cfg)?
        } else {
            align(&x, &y, m, &BandedEstimator { k: band }, &cfg)?
        };
        if let Some(st) = stats.as_mut() {
            *st = EdAlignStats { levels: rep.levels, estimator_calls: rep.estimator_calls };
        }
        *s = boxed(EdScript(rep.script));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn ed_script_len(script: *const EdScript) -> usize {
    script.as_ref().map_or(0, |s| s.0.len())
}

#[no_mangle]
pub unsafe extern "C" fn ed_script_get(script: *const EdScript, index: usize, op: *mut EdOp) -> EdStatus {
    guard(|| {
        let s = handle(script, "script")?;
        let o = out(op, "op")?;
        let e = s.0.ops.get(index).ok_or_else(|| Fail::Range(format!("op {index} of {}", s.0.len())))?;
        *o = match *e {
            EditOp::Insert { pos, symbol } => EdOp { kind: EdOpKind::Insert, pos, symbol: symbol.0 },
            EditOp::Delete { pos } => EdOp { kind: EdOpKind::Delete, pos, symbol: 0 },
            EditOp::Substitute { pos, symbol } => EdOp { kind: EdOpKind::Substitute, pos, symbol: symbol.0 },
        };
        Ok(())
    })
}

/// Applies `script` to `a`. Writes the result length to `*out_len`; when
/// `capacity` is too small nothing is copied and `OutOfRange` is returned.
#[no_mangle]
pub unsafe extern "C" fn ed_script_apply(
    script: *const EdScript,
    a: *const u32,
    a_len: usize,
    buf: *mut u32,
    capacity: usize,
    out_len: *mut usize,
) -> EdStatus {
    guard(|| {
        let s = handle(script, "script")?;
        let x = input(a, a_len, "a")?;
        let n = out(out_len, "out_len")?;
        let y = edkit::apply_script(&x, &s.0)?;
        *n = y.len();
        if y.len() > capacity {
            return Err(Fail::Range(format!("result has {} letters, buffer holds {capacity}", y.len())));
        }
        if !y.is_empty() {
            if buf.is_null() {
                return Err(Fail::Null("buf"));
            }
            std::slice::from_raw_parts_mut(buf, y.len()).iter_mut().zip(&y).for_each(|(d, s)| *d = s.0);
        }
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn ed_script_free(script: *mut EdScript) {
    if !script.is_null() {
        drop(Box::from_raw(script));
    }
}

/// Embeds a permutation. `m` of 0 picks the least valid level count.
#[no_mangle]
pub unsafe extern "C" fn ed_ulam_embed(
    perm: *const u32,
    len: usize,
    eps: f64,
    seed: u64,
    m: u32,
    embedding: *mut *mut EdUlam,
) -> EdStatus {
    guard(|| {
        let x = input(perm, len, "perm")?;
        let e = out(embedding, "embedding")?;
        *e = boxed(EdUlam(ulam_embed(&x, eps, seed, (m > 0).then_some(m))?));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn ed_ulam_dimension(embedding: *const EdUlam) -> u64 {
    embedding.as_ref().map_or(0, |e| e.0.dim)
}

#[no_mangle]
pub unsafe extern "C" fn ed_ulam_nonzeros(embedding: *const EdUlam) -> usize {
    embedding.as_ref().map_or(0, |e| e.0.nonzeros())
}

#[no_mangle]
pub unsafe extern "C" fn ed_ulam_hamming(a: *const EdUlam, b: *const EdUlam, distance: *mut usize) -> EdStatus {
    guard(|| {
        let (x, y) = (handle(a, "a")?, handle(b, "b")?);
        *out(distance, "distance")? = hamming(&x.0, &y.0)?;
        Ok(())
    })
}

/// Edit script between the permutations behind two embeddings.
#[no_mangle]
pub unsafe extern "C" fn ed_ulam_decode(a: *const EdUlam, b: *const EdUlam, script: *mut *mut EdScript) -> EdStatus {
    guard(|| {
        let (x, y) = (handle(a, "a")?, handle(b, "b")?);
        *out(script, "script")? = boxed(EdScript(decode_alignment(&x.0, &y.0)?));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn ed_ulam_free(embedding: *mut EdUlam) {
    if !embedding.is_null() {
        drop(Box::from_raw(embedding));
    }
}

/// Cuts a string into blocks. `permutation` selects the map for inputs
/// without repeated letters.
#[no_mangle]
pub unsafe extern "C" fn ed_dimred(
    codes: *const u32,
    len: usize,
    c: usize,
    seed: u64,
    permutation: bool,
    blocks: *mut *mut EdBlocks,
) -> EdStatus {
    guard(|| {
        let x = input(codes, len, "codes")?;
        let o = out(blocks, "blocks")?;
        let b = if permutation { dimred_perm(&x, c, seed)? } else { dimred_general(&x, c, seed)? };
        *o = boxed(EdBlocks(b));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn ed_blocks_count(blocks: *const EdBlocks) -> usize {
    blocks.as_ref().map_or(0, |b| b.0.len())
}

/// 0-based start and length of block `index`.
#[no_mangle]
pub unsafe extern "C" fn ed_blocks_get(
    blocks: *const EdBlocks,
    index: usize,
    start: *mut usize,
    len: *mut usize,
) -> EdStatus {
    guard(|| {
        let b = handle(blocks, "blocks")?;
        let (s, l) = (out(start, "start")?, out(len, "len")?);
        let r = b.0.ranges().nth(index).ok_or_else(|| Fail::Range(format!("block {index} of {}", b.0.len())))?;
        *s = r.start;
        *l = r.len();
        Ok(())
    })
}

/// Edit distance between block sequences, blocks compared by content.
#[no_mangle]
pub unsafe extern "C" fn ed_block_distance(a: *const EdBlocks, b: *const EdBlocks, distance: *mut usize) -> EdStatus {
    guard(|| {
        let (x, y) = (handle(a, "a")?, handle(b, "b")?);
        *out(distance, "distance")? = block_distance(&x.0, &y.0)?;
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn ed_blocks_free(blocks: *mut EdBlocks) {
    if !blocks.is_null() {
        drop(Box::from_raw(blocks));
    }
}

#[no_mangle]
pub unsafe extern "C" fn ed_min_period(codes: *const u32, len: usize, period: *mut usize) -> EdStatus {
    guard(|| {
        let x = input(codes, len, "codes")?;
        *out(period, "period")? = min_period(&x)?;
        Ok(())
    })
}

/// 1-based offset of the lexicographically least rotation.
#[no_mangle]
pub unsafe extern "C" fn ed_smallest_rotation(codes: *const u32, len: usize, offset: *mut usize) -> EdStatus {
    guard(|| {
        let x = input(codes, len, "codes")?;
        *out(offset, "offset")? = smallest_rotation_offset(&x)?;
        Ok(())
    })
}
