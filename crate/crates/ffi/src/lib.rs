//! C ABI over `spmoments`.
//!
//! Objects are opaque handles created by `spm_*_new`/`spm_*_load` and released
//! by the matching `spm_*_free`. Every fallible call returns an [`SpmStatus`];
//! the message of the last failure on the calling thread is available from
//! [`spm_last_error`]. Panics never cross the boundary.

use spmoments::battery::{criterion, Ctx};
use spmoments::coeffs::{bundled_dataset_path, load_dataset, SpectralDataset};
use spmoments::expsums::ExpSumCache;
use spmoments::weights::{w_ab, w_ab_hat_closed, WeightParams};
use spmoments::Error;
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpmStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Numerical = 3,
    Dataset = 4,
    Io = 5,
    Panic = 6,
}

/// Exponential sums modulo a fixed `r`.
pub struct SpmExpSums(ExpSumCache);
/// The weight `W_{A,B}`.
pub struct SpmWeight(WeightParams);
/// A loaded Hecke-Maass dataset.
pub struct SpmDataset(SpectralDataset);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> SpmStatus {
    match e {
        Error::InvalidArgument(_) | Error::NotInvertible { .. } => SpmStatus::InvalidArgument,
        Error::Dataset(_) => SpmStatus::Dataset,
        Error::Io(_) => SpmStatus::Io,
        _ => SpmStatus::Numerical,
    }
}

fn fail(e: Error) -> SpmStatus {
    set_error(&e.to_string());
    status_of(&e)
}

fn null() -> SpmStatus {
    set_error("null pointer argument");
    SpmStatus::NullPointer
}

fn guard(f: impl FnOnce() -> SpmStatus) -> SpmStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal panic");
            SpmStatus::Panic
        }
    }
}

fn boxed<T>(v: T, out: *mut *mut T) -> SpmStatus {
    // SAFETY: caller checked `out` is non-null and writable.
    unsafe { *out = Box::into_raw(Box::new(v)) };
    SpmStatus::Ok
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn spm_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Copy the last error message of this thread into `buf` (truncated, always
/// NUL-terminated when `len > 0`). Returns the full message length.
///
/// # Safety
/// `buf` must be null or point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn spm_last_error(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        let bytes = e.as_bytes();
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len - 1);
            std::ptr::copy_nonoverlapping(bytes.as_ptr(), buf.cast::<u8>(), n);
            *buf.add(n) = 0;
        }
        bytes.len()
    })
}

// ---------------------------------------------------------------- sums

/// # Safety
/// `out` must be a valid pointer; the handle is released with [`spm_expsums_free`].
#[no_mangle]
pub unsafe extern "C" fn spm_expsums_new(r: u64, out: *mut *mut SpmExpSums) -> SpmStatus {
    guard(|| {
        if out.is_null() {
            return null();
        }
        match ExpSumCache::new(r) {
            Ok(c) => boxed(SpmExpSums(c), out),
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `h` must be null or a handle from [`spm_expsums_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn spm_expsums_free(h: *mut SpmExpSums) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// `S(k, n; r)` (real and imaginary parts).
///
/// # Safety
/// `h` must be a live handle; `re` and `im` must be writable.
#[no_mangle]
pub unsafe extern "C" fn spm_kloosterman(h: *const SpmExpSums, k: i64, n: i64, re: *mut f64, im: *mut f64) -> SpmStatus {
    guard(|| {
        if h.is_null() || re.is_null() || im.is_null() {
            return null();
        }
        let v = (*h).0.kloosterman(k, n);
        *re = v.re;
        *im = v.im;
        SpmStatus::Ok
    })
}

/// `gcd(k, n, r)^{1/2} d(r) r^{1/2} - |S(k, n; r)|`.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn spm_weil_margin(h: *const SpmExpSums, k: i64, n: i64, out: *mut f64) -> SpmStatus {
    guard(|| {
        if h.is_null() || out.is_null() {
            return null();
        }
        *out = (*h).0.weil_margin(k, n);
        SpmStatus::Ok
    })
}

// ---------------------------------------------------------------- weights

/// # Safety
/// `out` must be a valid pointer; release with [`spm_weight_free`].
#[no_mangle]
pub unsafe extern "C" fn spm_weight_new(a: f64, b: f64, out: *mut *mut SpmWeight) -> SpmStatus {
    guard(|| {
        if out.is_null() {
            return null();
        }
        match WeightParams::new(a, b) {
            Ok(p) => boxed(SpmWeight(p), out),
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `h` must be null or a live handle from [`spm_weight_new`].
#[no_mangle]
pub unsafe extern "C" fn spm_weight_free(h: *mut SpmWeight) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// `W_{A,B}(x)` to absolute tolerance `tol`.
///
/// # Safety
/// `h` must be a live handle; `re` and `im` must be writable.
#[no_mangle]
pub unsafe extern "C" fn spm_weight_eval(h: *const SpmWeight, x: f64, tol: f64, re: *mut f64, im: *mut f64) -> SpmStatus {
    guard(|| {
        if h.is_null() || re.is_null() || im.is_null() {
            return null();
        }
        match w_ab(x, &(*h).0, tol) {
            Ok(v) => {
                *re = v.re;
                *im = v.im;
                SpmStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Closed-form Fourier transform of `W_{A,B}` at `u`.
///
/// # Safety
/// `h` must be a live handle; `re` and `im` must be writable.
#[no_mangle]
pub unsafe extern "C" fn spm_weight_hat(h: *const SpmWeight, u: f64, tol: f64, re: *mut f64, im: *mut f64) -> SpmStatus {
    guard(|| {
        if h.is_null() || re.is_null() || im.is_null() {
            return null();
        }
        match w_ab_hat_closed(u, &(*h).0, tol) {
            Ok(v) => {
                *re = v.re;
                *im = v.im;
                SpmStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

// ---------------------------------------------------------------- dataset

/// Load a JSON-lines dataset; a null `path` loads the bundled table.
///
/// # Safety
/// `path` must be null or a NUL-terminated UTF-8 string; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn spm_dataset_load(path: *const c_char, out: *mut *mut SpmDataset) -> SpmStatus {
    guard(|| {
        if out.is_null() {
            return null();
        }
        let p = if path.is_null() {
            bundled_dataset_path()
        } else {
            match CStr::from_ptr(path).to_str() {
                Ok(s) => s.into(),
                Err(_) => return fail(Error::InvalidArgument("path is not UTF-8".into())),
            }
        };
        match load_dataset(p) {
            Ok(d) => boxed(SpmDataset(d), out),
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `h` must be null or a live handle from [`spm_dataset_load`].
#[no_mangle]
pub unsafe extern "C" fn spm_dataset_free(h: *mut SpmDataset) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Number of forms; 0 for a null handle.
///
/// # Safety
/// `h` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn spm_dataset_len(h: *const SpmDataset) -> usize {
    if h.is_null() {
        0
    } else {
        (*h).0.forms().len()
    }
}

/// Spectral parameter of form `index`.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn spm_dataset_t(h: *const SpmDataset, index: usize, out: *mut f64) -> SpmStatus {
    guard(|| {
        if h.is_null() || out.is_null() {
            return null();
        }
        match (*h).0.forms().get(index) {
            Some(f) => {
                *out = f.t;
                SpmStatus::Ok
            }
            None => fail(Error::InvalidArgument(format!("form index {index} out of range"))),
        }
    })
}

/// Hecke eigenvalue `lambda(n)` of form `index`.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn spm_dataset_lambda(h: *const SpmDataset, index: usize, n: u64, out: *mut f64) -> SpmStatus {
    guard(|| {
        if h.is_null() || out.is_null() {
            return null();
        }
        let Some(f) = (*h).0.forms().get(index) else {
            return fail(Error::InvalidArgument(format!("form index {index} out of range")));
        };
        match f.lambda(n) {
            Ok(v) => {
                *out = v;
                SpmStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

// ---------------------------------------------------------------- battery

/// Run acceptance criterion `id` (1..=15). `dataset` may be null for the
/// bundled table. Outputs: whether every check passed, the number of checks
/// and the number of failures.
///
/// # Safety
/// `dataset` must be null or a live handle; the out pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn spm_run_criterion(
    id: u8,
    seed: u64,
    dataset: *const SpmDataset,
    pass: *mut bool,
    checks: *mut usize,
    failures: *mut usize,
) -> SpmStatus {
    guard(|| {
        if pass.is_null() || checks.is_null() || failures.is_null() {
            return null();
        }
        let owned;
        let ds = if dataset.is_null() {
            match load_dataset(bundled_dataset_path()) {
                Ok(d) => {
                    owned = d;
                    &owned
                }
                Err(e) => return fail(e),
            }
        } else {
            &(*dataset).0
        };
        let ctx = match Ctx::new(seed, 1.0, false) {
            Ok(c) => c,
            Err(e) => return fail(e),
        };
        match criterion(id, &ctx, ds) {
            Ok(o) => {
                *pass = o.pass();
                *checks = o.records.len();
                *failures = o.failures();
                SpmStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}
