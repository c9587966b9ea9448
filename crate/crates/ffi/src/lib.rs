//! C ABI over `exotic-core`.
//!
//! Conventions:
//! * every fallible function returns an [`ExoStatus`]; on failure a message
//!   is available from [`exo_last_error`] on the same thread;
//! * points are opaque [`ExoPoint`] handles released with [`exo_point_free`];
//! * strings returned through `char **out` are owned by the caller and must be
//!   released with [`exo_string_free`];
//! * orbits, partitions and compositions are passed as comma-separated
//!   integers, the empty string standing for the empty partition.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use exotic_core::combinatorics::{d_alpha, Bipartition, Composition, Partition};
use exotic_core::jordan::exotic_jordan_type;
use exotic_core::polyid::verify_identity_catalog;
use exotic_core::spaltenstein::{effective_guard, fiber_census, FlagType};
use exotic_core::symplectic::{normal_basis, ExoticPoint};
use exotic_core::Error;

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExoStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidUtf8 = 3,
    GuardExceeded = 4,
    VerificationFailed = 5,
    Internal = 6,
}

/// An exotic nilpotent pair `(v, x)` over a prime field.
pub struct ExoPoint {
    inner: ExoticPoint,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).expect("NULs removed"));
}

fn status_of(e: &Error) -> ExoStatus {
    match e {
        Error::GuardExceeded { .. } => ExoStatus::GuardExceeded,
        _ => ExoStatus::InvalidArgument,
    }
}

/// Runs `f`, translating errors and panics into status codes.
fn guarded(f: impl FnOnce() -> Result<(), (ExoStatus, String)>) -> ExoStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            ExoStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal error (panic)");
            ExoStatus::Internal
        }
    }
}

fn lib<T>(r: exotic_core::Result<T>) -> Result<T, (ExoStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

/// # Safety
/// `s` must be null or a valid NUL-terminated string.
unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, (ExoStatus, String)> {
    if s.is_null() {
        return Err((ExoStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| (ExoStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

fn check_out<T>(out: *mut T) -> Result<(), (ExoStatus, String)> {
    if out.is_null() {
        Err((ExoStatus::NullPointer, "output pointer is null".into()))
    } else {
        Ok(())
    }
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).expect("JSON has no NUL").into_raw()
}

unsafe fn read_orbit(mu: *const c_char, nu: *const c_char) -> Result<Bipartition, (ExoStatus, String)> {
    let mu: Partition = lib(read_str(mu, "mu")?.parse())?;
    let nu: Partition = lib(read_str(nu, "nu")?.parse())?;
    Ok(Bipartition::new(mu, nu))
}

/// Builds the normal-basis point of the orbit `(mu, nu)` over 𝔽_p.
///
/// # Safety
/// `mu` and `nu` must be valid C strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn exo_point_normal_basis(
    mu: *const c_char,
    nu: *const c_char,
    p: u32,
    out: *mut *mut ExoPoint,
) -> ExoStatus {
    guarded(|| {
        check_out(out)?;
        let b = read_orbit(mu, nu)?;
        let inner = lib(normal_basis(&b, p))?;
        *out = Box::into_raw(Box::new(ExoPoint { inner }));
        Ok(())
    })
}

/// Releases a point; null is ignored.
///
/// # Safety
/// `pt` must come from [`exo_point_normal_basis`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn exo_point_free(pt: *mut ExoPoint) {
    if !pt.is_null() {
        drop(Box::from_raw(pt));
    }
}

/// Dimension `2n` of the ambient symplectic space.
///
/// # Safety
/// `pt` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn exo_point_dim(pt: *const ExoPoint, out: *mut usize) -> ExoStatus {
    guarded(|| {
        check_out(out)?;
        let pt = pt.as_ref().ok_or((ExoStatus::NullPointer, "point is null".to_string()))?;
        *out = pt.inner.dim();
        Ok(())
    })
}

/// `{"p": .., "x": [[..]], "form": [[..]], "v": [..]}` for the point.
///
/// # Safety
/// `pt` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn exo_point_json(pt: *const ExoPoint, out: *mut *mut c_char) -> ExoStatus {
    guarded(|| {
        check_out(out)?;
        let pt = &pt.as_ref().ok_or((ExoStatus::NullPointer, "point is null".to_string()))?.inner;
        let rows = |m: &exotic_core::exactla::FqMatrix| -> Vec<Vec<u32>> {
            (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
        };
        let json = serde_json::json!({
            "p": pt.p(),
            "x": rows(&pt.x),
            "form": rows(pt.space.form()),
            "v": pt.v,
        });
        *out = into_c_string(json.to_string());
        Ok(())
    })
}

/// The exotic Jordan type of the point as `{"mu": [..], "nu": [..]}`.
///
/// # Safety
/// `pt` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn exo_point_exotic_type_json(pt: *const ExoPoint, out: *mut *mut c_char) -> ExoStatus {
    guarded(|| {
        check_out(out)?;
        let pt = pt.as_ref().ok_or((ExoStatus::NullPointer, "point is null".to_string()))?;
        let b = lib(exotic_jordan_type(&pt.inner))?;
        *out = into_c_string(serde_json::to_string(&b).expect("serializable"));
        Ok(())
    })
}

/// `d^α` of the orbit `(mu, nu)` for the composition `alpha`.
///
/// # Safety
/// String arguments must be valid C strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn exo_d_alpha(
    mu: *const c_char,
    nu: *const c_char,
    alpha: *const c_char,
    out: *mut i64,
) -> ExoStatus {
    guarded(|| {
        check_out(out)?;
        let b = read_orbit(mu, nu)?;
        let a: Composition = lib(read_str(alpha, "alpha")?.parse())?;
        *out = lib(d_alpha(&b, &a))?;
        Ok(())
    })
}

/// Census of the fibre of type `alpha` over the point, as a JSON list of
/// `{"key": [{"mu":..,"nu":..}, ..], "count": ..}` sorted by key.
/// `guard` bounds the estimated number of flags; `EXOTIC_GUARD` overrides it.
///
/// # Safety
/// `pt` must be a live handle, `alpha` a valid C string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn exo_fiber_census_json(
    pt: *const ExoPoint,
    alpha: *const c_char,
    guard: u64,
    out: *mut *mut c_char,
) -> ExoStatus {
    guarded(|| {
        check_out(out)?;
        let pt = pt.as_ref().ok_or((ExoStatus::NullPointer, "point is null".to_string()))?;
        let a: Composition = lib(read_str(alpha, "alpha")?.parse())?;
        let census = lib(fiber_census(&pt.inner, &FlagType::new(a), effective_guard(guard.max(1))))?;
        let rows: Vec<serde_json::Value> = census
            .iter()
            .map(|(k, c)| serde_json::json!({"key": k, "count": c}))
            .collect();
        *out = into_c_string(serde_json::Value::Array(rows).to_string());
        Ok(())
    })
}

/// Checks the dimension-difference identity catalog. Writes the number
/// passed and the total; returns `VerificationFailed` unless all pass.
///
/// # Safety
/// `passed` and `total` must be writable.
#[no_mangle]
pub unsafe extern "C" fn exo_verify_identities(passed: *mut u32, total: *mut u32) -> ExoStatus {
    guarded(|| {
        check_out(passed)?;
        check_out(total)?;
        let r = verify_identity_catalog();
        *passed = r.passed() as u32;
        *total = r.outcomes.len() as u32;
        if r.all_passed() {
            Ok(())
        } else {
            Err((ExoStatus::VerificationFailed, format!("{}/{} identities hold", r.passed(), r.outcomes.len())))
        }
    })
}

/// Releases a string returned by this library; null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn exo_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread (empty after success).
/// The pointer stays valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn exo_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}
