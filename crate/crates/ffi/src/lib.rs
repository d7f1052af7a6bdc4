//! C ABI for the bound engine. Handles are opaque; every entry point
//! checks for null, catches panics, and reports through [`SofaStatus`].
//! Each `sofa_*_new`-style constructor has exactly one matching free
//! function, and handles must not be used after being freed.

use num_traits::ToPrimitive;
use sofa_bnb::engine::{run, BoundCertificate};
use sofa_bnb::kernel::decimal_round;
use sofa_bnb::profile::{bundled, parse_profile, Profile};
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SofaStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// An argument was not understood (bad UTF-8, unknown name, zero size).
    InvalidArgument = 2,
    /// Profile text did not parse or validate.
    ParseError = 3,
    /// The engine refused the configuration.
    EngineError = 4,
    /// The output buffer cannot hold the result.
    BufferTooSmall = 5,
    /// An internal invariant failed; the library caught a panic.
    Panic = 6,
}

/// An immutable problem description (corridor slopes, final-slope window,
/// stop criteria). Create with [`sofa_problem_parse`] or
/// [`sofa_problem_bundled`]; destroy with [`sofa_problem_free`].
pub struct SofaProblem {
    profile: Profile,
}

/// The certified outcome of a finished run. The stored bounds are exact
/// rationals; accessors render them outward-rounded. Destroy with
/// [`sofa_certificate_free`].
pub struct SofaCertificate {
    cert: BoundCertificate,
}

fn guard(status: impl FnOnce() -> SofaStatus + std::panic::UnwindSafe) -> SofaStatus {
    catch_unwind(status).unwrap_or(SofaStatus::Panic)
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, SofaStatus> {
    if ptr.is_null() {
        return Err(SofaStatus::NullPointer);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| SofaStatus::InvalidArgument)
}

/// Copies `s` plus a NUL terminator into the caller's buffer.
unsafe fn write_buf(s: &str, buf: *mut c_char, len: usize) -> SofaStatus {
    if buf.is_null() {
        return SofaStatus::NullPointer;
    }
    if len < s.len() + 1 {
        return SofaStatus::BufferTooSmall;
    }
    ptr::copy_nonoverlapping(s.as_ptr(), buf as *mut u8, s.len());
    *buf.add(s.len()) = 0;
    SofaStatus::Ok
}

/// Library version as a static NUL-terminated string; never freed.
#[no_mangle]
pub extern "C" fn sofa_bnb_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Parses profile text into a new problem handle.
///
/// # Safety
/// `text` must be a valid NUL-terminated string; `out` must be a valid
/// pointer. On success `*out` owns the problem and must be released with
/// [`sofa_problem_free`]. On failure `*out` is set to null.
#[no_mangle]
pub unsafe extern "C" fn sofa_problem_parse(
    text: *const c_char,
    out: *mut *mut SofaProblem,
) -> SofaStatus {
    if out.is_null() {
        return SofaStatus::NullPointer;
    }
    *out = ptr::null_mut();
    let text = match read_str(text) {
        Ok(t) => t,
        Err(s) => return s,
    };
    guard(AssertUnwindSafe(|| match parse_profile(text) {
        Ok(profile) => {
            *out = Box::into_raw(Box::new(SofaProblem { profile }));
            SofaStatus::Ok
        }
        Err(_) => SofaStatus::ParseError,
    }))
}

/// Loads one of the profiles shipped with the library by name.
///
/// # Safety
/// Same contract as [`sofa_problem_parse`].
#[no_mangle]
pub unsafe extern "C" fn sofa_problem_bundled(
    name: *const c_char,
    out: *mut *mut SofaProblem,
) -> SofaStatus {
    if out.is_null() {
        return SofaStatus::NullPointer;
    }
    *out = ptr::null_mut();
    let name = match read_str(name) {
        Ok(t) => t,
        Err(s) => return s,
    };
    let Some(text) = bundled(name) else {
        return SofaStatus::InvalidArgument;
    };
    guard(AssertUnwindSafe(|| match parse_profile(text) {
        Ok(profile) => {
            *out = Box::into_raw(Box::new(SofaProblem { profile }));
            SofaStatus::Ok
        }
        Err(_) => SofaStatus::ParseError,
    }))
}

/// Releases a problem handle. Null is a no-op.
///
/// # Safety
/// `problem` must be null or a pointer returned by a constructor that has
/// not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn sofa_problem_free(problem: *mut SofaProblem) {
    if !problem.is_null() {
        drop(Box::from_raw(problem));
    }
}

/// Runs branch and bound to completion under the problem's stop criteria.
/// A nonzero `max_iterations` additionally caps the iteration count, which
/// also makes profiles without stop criteria runnable.
///
/// # Safety
/// `problem` must be a live problem handle; `out` must be valid. On
/// success `*out` owns the certificate and must be released with
/// [`sofa_certificate_free`]. On failure `*out` is set to null.
#[no_mangle]
pub unsafe extern "C" fn sofa_problem_run(
    problem: *const SofaProblem,
    max_iterations: u64,
    out: *mut *mut SofaCertificate,
) -> SofaStatus {
    if out.is_null() {
        return SofaStatus::NullPointer;
    }
    *out = ptr::null_mut();
    if problem.is_null() {
        return SofaStatus::NullPointer;
    }
    let problem = &*problem;
    guard(AssertUnwindSafe(|| {
        let mut cfg = problem.profile.engine_config();
        if max_iterations > 0 {
            cfg.max_iterations = Some(match cfg.max_iterations {
                Some(m) => m.min(max_iterations),
                None => max_iterations,
            });
        }
        match run(problem.profile.spec(), &cfg, |_| {}) {
            Ok(cert) => {
                *out = Box::into_raw(Box::new(SofaCertificate { cert }));
                SofaStatus::Ok
            }
            Err(_) => SofaStatus::EngineError,
        }
    }))
}

/// Releases a certificate handle. Null is a no-op.
///
/// # Safety
/// `cert` must be null or a pointer returned by [`sofa_problem_run`] that
/// has not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn sofa_certificate_free(cert: *mut SofaCertificate) {
    if !cert.is_null() {
        drop(Box::from_raw(cert));
    }
}

/// Iterations the run performed; 0 when `cert` is null.
///
/// # Safety
/// `cert` must be null or a live certificate handle.
#[no_mangle]
pub unsafe extern "C" fn sofa_certificate_iterations(cert: *const SofaCertificate) -> u64 {
    if cert.is_null() {
        return 0;
    }
    (*cert).cert.iterations
}

unsafe fn bound_decimal(
    cert: *const SofaCertificate,
    digits: u32,
    upper: bool,
    buf: *mut c_char,
    len: usize,
) -> SofaStatus {
    if cert.is_null() {
        return SofaStatus::NullPointer;
    }
    if digits > 50 {
        return SofaStatus::InvalidArgument;
    }
    let cert = &*cert;
    guard(AssertUnwindSafe(|| {
        let value = if upper { &cert.cert.upper } else { &cert.cert.lower };
        // Round outward so the printed strings are themselves valid bounds.
        let text = decimal_round(value, digits, upper);
        write_buf(&text, buf, len)
    }))
}

/// Writes the certified upper bound, rounded up at `digits` decimals, as a
/// NUL-terminated string.
///
/// # Safety
/// `cert` must be a live certificate handle; `buf` must point to at least
/// `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn sofa_certificate_upper_decimal(
    cert: *const SofaCertificate,
    digits: u32,
    buf: *mut c_char,
    len: usize,
) -> SofaStatus {
    bound_decimal(cert, digits, true, buf, len)
}

/// Writes the certified lower bound, rounded down at `digits` decimals, as
/// a NUL-terminated string.
///
/// # Safety
/// Same contract as [`sofa_certificate_upper_decimal`].
#[no_mangle]
pub unsafe extern "C" fn sofa_certificate_lower_decimal(
    cert: *const SofaCertificate,
    digits: u32,
    buf: *mut c_char,
    len: usize,
) -> SofaStatus {
    bound_decimal(cert, digits, false, buf, len)
}

/// Stores double approximations of the exact bounds. The doubles are
/// nearest-value conversions and may round in either direction; use the
/// decimal accessors when one-sided rounding matters.
///
/// # Safety
/// `cert` must be a live certificate handle; `upper` and `lower` must be
/// valid pointers.
#[no_mangle]
pub unsafe extern "C" fn sofa_certificate_bounds_f64(
    cert: *const SofaCertificate,
    upper: *mut f64,
    lower: *mut f64,
) -> SofaStatus {
    if cert.is_null() || upper.is_null() || lower.is_null() {
        return SofaStatus::NullPointer;
    }
    let cert = &*cert;
    guard(AssertUnwindSafe(|| {
        *upper = cert.cert.upper.to_f64().unwrap_or(f64::NAN);
        *lower = cert.cert.lower.to_f64().unwrap_or(f64::NAN);
        SofaStatus::Ok
    }))
}
