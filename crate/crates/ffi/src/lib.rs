//! C ABI for `chern-calculus`.
//!
//! Every fallible function returns a [`ChernStatus`] and writes its result
//! through an out-pointer. On failure a description is kept per thread and can
//! be read with [`chern_last_error_message`]. Strings returned through `char **`
//! are owned by the caller and must be released with [`chern_string_free`];
//! class handles are released with [`chern_kclass_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use chern_calculus::chern_roots::KClass;
use chern_calculus::gamma::filtration_degree;
use chern_calculus::grassmann::{model_rank, verify_presentation};
use chern_calculus::grr_check::{all_pass, verify_all};
use chern_calculus::partitions::{lr_coefficient, Partition};
use chern_calculus::Error;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChernStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Malformed partition, class or JSON input.
    Parse = 3,
    /// Input outside the domain of the operation.
    Domain = 4,
    Precondition = 5,
    /// Internal ring mismatch.
    Context = 6,
    /// The computation ran but a checked identity failed.
    VerificationFailed = 7,
    Panic = 8,
}

/// Opaque handle to a virtual bundle in the split model.
pub struct ChernKClass(KClass);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(CString::new(msg).expect("interior NULs removed")));
}

fn clear_last_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Failure(ChernStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Parse(_) | Error::Partition(_) | Error::Class(_) => ChernStatus::Parse,
            Error::Domain(_) | Error::Degree(_) | Error::NotSymmetric(_) => ChernStatus::Domain,
            Error::Precondition(_) => ChernStatus::Precondition,
            Error::Context(_) | Error::InvalidRing(_) => ChernStatus::Context,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(ChernStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, converting errors and panics into a status and the thread's last error.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> ChernStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            clear_last_error();
            ChernStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_last_error(format!("internal panic: {msg}"));
            ChernStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(ChernStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn write<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure(ChernStatus::Panic, "output contains NUL".into()))?;
    write(out, c.into_raw(), "output pointer")
}

unsafe fn class<'a>(h: *const ChernKClass) -> Result<&'a KClass, Failure> {
    h.as_ref().map(|c| &c.0).ok_or_else(|| null("class handle"))
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("library types serialize")
}

/// Message for the last failed call on this thread, or NULL after a success.
/// The pointer stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn chern_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn chern_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and must not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn chern_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a class from `{"pos":[[..],..],"neg":[[..],..]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn chern_kclass_from_json(json: *const c_char, out: *mut *mut ChernKClass) -> ChernStatus {
    guard(|| {
        let x = KClass::parse_json(read_str(json, "json")?)?;
        write(out, Box::into_raw(Box::new(ChernKClass(x))), "output pointer")
    })
}

/// Releases a class handle. NULL is ignored.
///
/// # Safety
/// `h` must come from this library and must not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn chern_kclass_free(h: *mut ChernKClass) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Serializes a class to the same JSON shape accepted by [`chern_kclass_from_json`].
///
/// # Safety
/// `h` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn chern_kclass_to_json(h: *const ChernKClass, out: *mut *mut c_char) -> ChernStatus {
    guard(|| write_string(out, to_json(&class(h)?.to_json())))
}

/// Rank as a decimal string (ranks are unbounded integers).
///
/// # Safety
/// `h` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn chern_kclass_rank(h: *const ChernKClass, out: *mut *mut c_char) -> ChernStatus {
    guard(|| write_string(out, class(h)?.rank().to_string()))
}

unsafe fn binary(
    a: *const ChernKClass,
    b: *const ChernKClass,
    out: *mut *mut ChernKClass,
    op: impl FnOnce(&KClass, &KClass) -> KClass,
) -> ChernStatus {
    guard(|| {
        let r = op(class(a)?, class(b)?);
        write(out, Box::into_raw(Box::new(ChernKClass(r))), "output pointer")
    })
}

/// `a + b` as a new handle.
///
/// # Safety
/// `a`, `b` must be live handles and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn chern_kclass_add(
    a: *const ChernKClass,
    b: *const ChernKClass,
    out: *mut *mut ChernKClass,
) -> ChernStatus {
    binary(a, b, out, |x, y| x + y)
}

/// `a ⊗ b` as a new handle.
///
/// # Safety
/// `a`, `b` must be live handles and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn chern_kclass_tensor(
    a: *const ChernKClass,
    b: *const ChernKClass,
    out: *mut *mut ChernKClass,
) -> ChernStatus {
    binary(a, b, out, |x, y| x.tensor(y))
}

/// The dual class as a new handle.
///
/// # Safety
/// `h` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn chern_kclass_dual(h: *const ChernKClass, out: *mut *mut ChernKClass) -> ChernStatus {
    guard(|| {
        let d = class(h)?.dual();
        write(out, Box::into_raw(Box::new(ChernKClass(d))), "output pointer")
    })
}

/// Total Chern class truncated at `degree`, as a JSON array of polynomials
/// in the root variables `u1, u2, ...`.
///
/// # Safety
/// `h` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn chern_kclass_total_chern_json(
    h: *const ChernKClass,
    degree: u32,
    out: *mut *mut c_char,
) -> ChernStatus {
    guard(|| {
        if degree == 0 {
            return Err(Failure(ChernStatus::Domain, "degree must be at least 1".into()));
        }
        write_string(out, to_json(&class(h)?.total_chern(degree).to_json()))
    })
}

/// Gamma-filtration degree of `x - rank(x)` read below `degree`, as JSON
/// `{"kind":"finite","value":2}`, `{"kind":"at_least",...}` or `{"kind":"infinite"}`.
///
/// # Safety
/// `h` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn chern_kclass_filtration_degree_json(
    h: *const ChernKClass,
    degree: u32,
    out: *mut *mut c_char,
) -> ChernStatus {
    guard(|| write_string(out, to_json(&filtration_degree(class(h)?, degree))))
}

/// Littlewood-Richardson coefficient `c^mu_{eps,nu}`; partitions are written
/// as comma-separated parts, e.g. `"2,1"`, with `""` for the empty partition.
///
/// # Safety
/// The strings must be NUL-terminated and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn chern_lr_coefficient(
    mu: *const c_char,
    eps: *const c_char,
    nu: *const c_char,
    out: *mut u64,
) -> ChernStatus {
    guard(|| {
        let mu: Partition = read_str(mu, "mu")?.parse()?;
        let eps: Partition = read_str(eps, "eps")?.parse()?;
        let nu: Partition = read_str(nu, "nu")?.parse()?;
        write(out, lr_coefficient(&mu, &eps, &nu), "output pointer")
    })
}

/// Additive rank of the boxed Schur model of Gr(m, n).
///
/// # Safety
/// `out` must be a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn chern_grass_rank(m: usize, n: usize, out: *mut usize) -> ChernStatus {
    guard(|| write(out, model_rank(m, n)?, "output pointer"))
}

/// Presentation report for Gr(m, n) as JSON. The report is written even when
/// a check fails, in which case the status is `VerificationFailed`.
///
/// # Safety
/// `out` must be a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn chern_grass_present_json(m: usize, n: usize, out: *mut *mut c_char) -> ChernStatus {
    guard(|| {
        let report = verify_presentation(m, n)?;
        write_string(out, to_json(&report.to_json()))?;
        if report.pass() {
            Ok(())
        } else {
            Err(Failure(ChernStatus::VerificationFailed, format!("presentation checks failed for Gr({m},{n})")))
        }
    })
}

/// Runs the vanishing, factor and composition checks for `i = 1..=max_i`
/// and writes the reports as a JSON array. The reports are written even when
/// a check fails, in which case the status is `VerificationFailed`.
///
/// # Safety
/// `out` must be a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn chern_grr_verify_json(max_i: u32, seed: u64, out: *mut *mut c_char) -> ChernStatus {
    guard(|| {
        let reports = verify_all(max_i, seed)?;
        let json: Vec<_> = reports.iter().map(|r| r.to_json()).collect();
        write_string(out, to_json(&json))?;
        if all_pass(&reports) {
            Ok(())
        } else {
            Err(Failure(ChernStatus::VerificationFailed, "at least one identity check failed".into()))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn error_kinds_map_to_statuses() {
        let status = |e: Error| Failure::from(e).0;
        assert_eq!(status(Error::Partition("x".into())), ChernStatus::Parse);
        assert_eq!(status(Error::Class("x".into())), ChernStatus::Parse);
        assert_eq!(status(Error::Degree("x".into())), ChernStatus::Domain);
        assert_eq!(status(Error::Precondition("x".into())), ChernStatus::Precondition);
        assert_eq!(status(Error::InvalidRing("x".into())), ChernStatus::Context);
    }

    #[test]
    fn panics_become_a_status() {
        assert_eq!(guard(|| panic!("boom")), ChernStatus::Panic);
        let msg = unsafe { CStr::from_ptr(chern_last_error_message()) };
        assert_eq!(msg.to_str().unwrap(), "internal panic: boom");
        assert_eq!(guard(|| Ok(())), ChernStatus::Ok);
        assert!(chern_last_error_message().is_null());
    }

    #[test]
    fn nul_bytes_in_messages_are_replaced() {
        set_last_error("a\0b");
        let msg = unsafe { CStr::from_ptr(chern_last_error_message()) };
        assert_eq!(msg.to_str().unwrap(), "a b");
    }
}
