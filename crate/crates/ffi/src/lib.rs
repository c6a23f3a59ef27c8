//! C ABI over the `sqrank` library.
//!
//! Objects cross the boundary as opaque handles (`SqPartition`, `SqSeries`)
//! that the caller frees with the matching `*_free` function. Strings
//! returned to C are NUL-terminated and released with `sq_string_free`.
//! Every fallible call returns an `SqStatus`; on failure the message is
//! available from `sq_last_error` until the next failing call on the same
//! thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use sqrank::partitions::{durfee_side, e1_stat, mex, Stat};
use sqrank::paths::{bbs_evolve, config_sum};
use sqrank::qseries::gaussian;
use sqrank::verify::{run_checks, Bounds, CheckId};
use sqrank::{BitSeq, Error, Partition, QSeries};

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SqStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    Domain = 3,
    /// A coefficient does not fit the requested integer type.
    Overflow = 4,
    Internal = 5,
}

/// Opaque integer partition.
pub struct SqPartition(Partition);

/// Opaque q-series with exact integer coefficients.
pub struct SqSeries(QSeries);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let c = CString::new(msg.into().replace('\0', " ")).expect("NUL removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: SqStatus, msg: impl Into<String>) -> SqStatus {
    set_error(msg);
    status
}

fn from_lib(e: Error) -> SqStatus {
    let status = match e {
        Error::InvalidPartition(_) | Error::InvalidFrobenius(_) | Error::Parse { .. } => SqStatus::InvalidInput,
        Error::Domain(_) | Error::NotUnit(_) | Error::InexactDivision => SqStatus::Domain,
        Error::Invariant(_) => SqStatus::Internal,
    };
    fail(status, e.to_string())
}

/// Runs `f`, turning a panic into `SqStatus::Internal`.
fn guard(f: impl FnOnce() -> SqStatus) -> SqStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(SqStatus::Internal, "panic inside sqrank"),
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, SqStatus> {
    if s.is_null() {
        return Err(fail(SqStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(s).to_str().map_err(|_| fail(SqStatus::InvalidInput, "string argument is not UTF-8"))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

macro_rules! non_null {
    ($($p:expr),+) => {
        $(if $p.is_null() {
            return fail(SqStatus::NullPointer, concat!("null argument `", stringify!($p), "`"));
        })+
    };
}

fn stat_of(which: u32) -> Result<Stat, SqStatus> {
    Stat::from_offset(which as usize).map_err(from_lib)
}

/// Message of the last failing call on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn sq_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn sq_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `"5,3,3,1"` or `"3^2 1^4"` (empty string for the empty partition).
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sq_partition_parse(text: *const c_char, out: *mut *mut SqPartition) -> SqStatus {
    non_null!(out);
    guard(|| {
        let s = match read_str(text) {
            Ok(s) => s,
            Err(st) => return st,
        };
        match Partition::parse_any(s) {
            Ok(p) => {
                *out = Box::into_raw(Box::new(SqPartition(p)));
                SqStatus::Ok
            }
            Err(e) => from_lib(e),
        }
    })
}

/// Builds a partition from `len` weakly decreasing positive parts.
///
/// # Safety
/// `parts` must point to `len` readable values (may be NULL when `len` is 0).
#[no_mangle]
pub unsafe extern "C" fn sq_partition_from_parts(parts: *const u32, len: usize, out: *mut *mut SqPartition) -> SqStatus {
    non_null!(out);
    if len > 0 && parts.is_null() {
        return fail(SqStatus::NullPointer, "null argument `parts`");
    }
    guard(|| {
        let v: Vec<usize> =
            if len == 0 { Vec::new() } else { std::slice::from_raw_parts(parts, len).iter().map(|&p| p as usize).collect() };
        match Partition::new(v) {
            Ok(p) => {
                *out = Box::into_raw(Box::new(SqPartition(p)));
                SqStatus::Ok
            }
            Err(e) => from_lib(e),
        }
    })
}

/// # Safety
/// `p` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn sq_partition_free(p: *mut SqPartition) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Sum of parts, or 0 for NULL.
///
/// # Safety
/// `p` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sq_partition_weight(p: *const SqPartition) -> usize {
    p.as_ref().map_or(0, |p| p.0.weight())
}

/// Number of parts, or 0 for NULL.
///
/// # Safety
/// `p` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sq_partition_len(p: *const SqPartition) -> usize {
    p.as_ref().map_or(0, |p| p.0.len())
}

/// Copies up to `cap` parts into `buf` and returns the total number of
/// parts, so a call with `cap = 0` sizes the buffer.
///
/// # Safety
/// `p` must be NULL or a live handle; `buf` must have room for `cap` values.
#[no_mangle]
pub unsafe extern "C" fn sq_partition_parts(p: *const SqPartition, buf: *mut u32, cap: usize) -> usize {
    let Some(p) = p.as_ref() else { return 0 };
    if !buf.is_null() {
        for (i, &part) in p.0.parts().iter().take(cap).enumerate() {
            *buf.add(i) = part as u32;
        }
    }
    p.0.len()
}

/// sqrank (`which = 0`) or rerank (`which = 1`).
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sq_stat(p: *const SqPartition, which: u32, out: *mut usize) -> SqStatus {
    non_null!(p, out);
    guard(|| match stat_of(which) {
        Ok(s) => {
            *out = sqrank::partitions::stat(&(*p).0, s);
            SqStatus::Ok
        }
        Err(st) => st,
    })
}

/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sq_sqrank(p: *const SqPartition, out: *mut usize) -> SqStatus {
    sq_stat(p, 0, out)
}

/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sq_rerank(p: *const SqPartition, out: *mut usize) -> SqStatus {
    sq_stat(p, 1, out)
}

/// Least positive integer congruent to `a` mod `modulus` that is not a part.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sq_mex(p: *const SqPartition, modulus: u32, a: u32, out: *mut usize) -> SqStatus {
    non_null!(p, out);
    guard(|| match mex(&(*p).0, modulus as usize, a as usize) {
        Ok(m) => {
            *out = m;
            SqStatus::Ok
        }
        Err(e) => from_lib(e),
    })
}

/// Side `n` of the largest `n x (n+a)` rectangle in the diagram.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sq_durfee_side(p: *const SqPartition, a: u32, out: *mut usize) -> SqStatus {
    non_null!(p, out);
    guard(|| {
        *out = durfee_side(&(*p).0, a as usize);
        SqStatus::Ok
    })
}

/// The statistic `E1(λ; n)` on partitions inside an `n`-row box.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sq_e1_stat(p: *const SqPartition, n: usize, out: *mut usize) -> SqStatus {
    non_null!(p, out);
    guard(|| {
        *out = e1_stat(&(*p).0, n);
        SqStatus::Ok
    })
}

fn emit_series(s: QSeries, out: *mut *mut SqSeries) -> SqStatus {
    unsafe { *out = Box::into_raw(Box::new(SqSeries(s))) };
    SqStatus::Ok
}

/// Gaussian binomial `[l, m]`; zero outside `0 <= m <= l`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sq_gaussian(l: i64, m: i64, out: *mut *mut SqSeries) -> SqStatus {
    non_null!(out);
    guard(|| emit_series(gaussian(l, m), out))
}

/// Configuration sum over words of length `l` with `s` ones; `r < 0`
/// means no restriction on epsilon1.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sq_config_sum(l: usize, s: usize, r: i64, out: *mut *mut SqSeries) -> SqStatus {
    non_null!(out);
    if s > l {
        return fail(SqStatus::Domain, format!("need s <= L, got L = {l}, s = {s}"));
    }
    let r = usize::try_from(r).ok();
    guard(|| emit_series(config_sum(l, s, r), out))
}

/// # Safety
/// `s` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn sq_series_free(s: *mut SqSeries) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Number of stored coefficients (degree + 1), or 0 for NULL.
///
/// # Safety
/// `s` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sq_series_len(s: *const SqSeries) -> usize {
    s.as_ref().map_or(0, |s| s.0.coeffs().len())
}

/// Coefficient of `q^k`. Returns `Overflow` if it does not fit in 64 bits.
///
/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sq_series_coeff(s: *const SqSeries, k: usize, out: *mut i64) -> SqStatus {
    non_null!(s, out);
    match (*s).0.coeff_i64(k) {
        Some(c) => {
            *out = c;
            SqStatus::Ok
        }
        None => fail(SqStatus::Overflow, format!("coefficient of q^{k} exceeds 64 bits")),
    }
}

/// Renders the series as text; free the result with `sq_string_free`.
///
/// # Safety
/// `s` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sq_series_to_string(s: *const SqSeries) -> *mut c_char {
    match s.as_ref() {
        Some(s) => into_c_string(s.0.to_string()),
        None => {
            set_error("null argument `s`");
            ptr::null_mut()
        }
    }
}

/// One box-ball step of a `0`/`1` string; the result is written to `out`
/// as a new string to be freed with `sq_string_free`.
///
/// # Safety
/// `bits` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sq_bbs_evolve(bits: *const c_char, out: *mut *mut c_char) -> SqStatus {
    non_null!(out);
    guard(|| {
        let s = match read_str(bits) {
            Ok(s) => s,
            Err(st) => return st,
        };
        match s.parse::<BitSeq>().and_then(|b| bbs_evolve(&b)) {
            Ok(next) => {
                *out = into_c_string(next.to_string());
                SqStatus::Ok
            }
            Err(e) => from_lib(e),
        }
    })
}

/// Runs one named check (or all when `check` is NULL) with the given
/// bounds and writes a JSON document `{"pass": bool, "reports": [...]}`
/// to `out`. A failing check is not an error: inspect `"pass"`.
///
/// # Safety
/// `check` must be NULL or a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sq_verify(
    check: *const c_char,
    n_max: usize,
    l_max: usize,
    order: usize,
    weight_max: usize,
    out: *mut *mut c_char,
) -> SqStatus {
    non_null!(out);
    guard(|| {
        let ids: Vec<CheckId> = if check.is_null() {
            CheckId::ALL.to_vec()
        } else {
            match read_str(check).map(str::parse::<CheckId>) {
                Ok(Ok(id)) => vec![id],
                Ok(Err(e)) => return from_lib(e),
                Err(st) => return st,
            }
        };
        let reports = run_checks(&ids, &Bounds { n_max, l_max, order, weight_max });
        let doc = serde_json::json!({
            "pass": reports.iter().all(|r| r.pass),
            "reports": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
        });
        *out = into_c_string(doc.to_string());
        SqStatus::Ok
    })
}
