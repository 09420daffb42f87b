//! C ABI over the `lazard` library.
//!
//! Every fallible call returns a [`LazardStatus`]. On failure the message is
//! kept per thread and can be read with [`lazard_last_error`]. Algebras are
//! opaque handles released with [`lazard_algebra_free`]; strings returned by
//! the library are released with [`lazard_string_free`].

use lazard::cohomology::{betti_trivial, CohomologyError};
use lazard::corpus::corpus;
use lazard::format::{AlgebraFile, FormatError};
use lazard::lhs::{main_theorem_check, LhsError};
use lazard::lie::LieAlgebra;
use lazard::modarith::PrimeContext;
use lazard::report::{self, Versioned};
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LazardStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Malformed document or unknown corpus entry.
    Parse = 3,
    /// Well-formed input that is not a valid algebra or fails a hypothesis.
    InvalidInput = 4,
    /// A verification check disagreed.
    CheckFailed = 5,
    /// The output buffer is too small; the required length was written.
    BufferTooSmall = 6,
    /// Internal panic caught at the boundary.
    Panic = 7,
}

/// Opaque algebra handle.
pub struct LazardAlgebra {
    algebra: LieAlgebra,
    name: String,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn fail(status: LazardStatus, msg: impl Into<String>) -> LazardStatus {
    set_error(msg);
    status
}

fn guard(f: impl FnOnce() -> LazardStatus) -> LazardStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            fail(LazardStatus::Panic, msg)
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, LazardStatus> {
    if s.is_null() {
        return Err(fail(LazardStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(LazardStatus::InvalidUtf8, "argument is not valid UTF-8"))
}

fn lhs_status(e: &LhsError) -> LazardStatus {
    match e {
        LhsError::Cohomology(CohomologyError::DSquaredNonzero { .. }) => LazardStatus::CheckFailed,
        _ => LazardStatus::InvalidInput,
    }
}

fn store(out: *mut *mut LazardAlgebra, algebra: LieAlgebra, name: String) -> LazardStatus {
    let h = Box::new(LazardAlgebra { algebra, name });
    // SAFETY: caller checked `out` is non-null.
    unsafe { *out = Box::into_raw(h) };
    LazardStatus::Ok
}

/// Parses a structure-constant JSON document.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lazard_algebra_from_json(json: *const c_char, out: *mut *mut LazardAlgebra) -> LazardStatus {
    guard(|| {
        if out.is_null() {
            return fail(LazardStatus::NullPointer, "null output pointer");
        }
        let text = match read_str(json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let parsed = serde_json::from_str::<AlgebraFile>(text)
            .map_err(FormatError::from)
            .and_then(|f| Ok((f.to_algebra()?, f.name)));
        match parsed {
            Ok((g, name)) => store(out, g, name.unwrap_or_else(|| "algebra".to_string())),
            Err(e @ FormatError::Syntax { .. }) => fail(LazardStatus::Parse, e.to_string()),
            Err(e) => fail(LazardStatus::InvalidInput, e.to_string()),
        }
    })
}

/// Builds a corpus entry such as `heisenberg_gen(1)` over `Z/p^k`.
///
/// # Safety
/// `spec` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lazard_algebra_from_corpus(
    spec: *const c_char,
    p: u64,
    k: u32,
    out: *mut *mut LazardAlgebra,
) -> LazardStatus {
    guard(|| {
        if out.is_null() {
            return fail(LazardStatus::NullPointer, "null output pointer");
        }
        let spec = match read_str(spec) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let ctx = match PrimeContext::new(p, k) {
            Ok(c) => c,
            Err(e) => return fail(LazardStatus::InvalidInput, e.to_string()),
        };
        match corpus(spec, ctx) {
            Ok(g) => store(out, g, spec.to_string()),
            Err(e @ lazard::corpus::CorpusError::Unknown(_)) => fail(LazardStatus::Parse, e.to_string()),
            Err(e) => fail(LazardStatus::InvalidInput, e.to_string()),
        }
    })
}

/// # Safety
/// `algebra` must be null or a handle returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lazard_algebra_free(algebra: *mut LazardAlgebra) {
    if !algebra.is_null() {
        drop(Box::from_raw(algebra));
    }
}

/// Rank of the algebra, or 0 for a null handle.
///
/// # Safety
/// `algebra` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lazard_algebra_rank(algebra: *const LazardAlgebra) -> usize {
    algebra.as_ref().map_or(0, |a| a.algebra.rank())
}

/// Betti numbers of `g/pg` with trivial coefficients, `rank + 1` values.
/// `len` receives the required length; if `cap` is smaller nothing is
/// written to `out` and `BufferTooSmall` is returned.
///
/// # Safety
/// `algebra` must be a live handle, `len` valid, and `out` valid for `cap`
/// writes.
#[no_mangle]
pub unsafe extern "C" fn lazard_betti(
    algebra: *const LazardAlgebra,
    out: *mut usize,
    cap: usize,
    len: *mut usize,
) -> LazardStatus {
    guard(|| {
        let Some(a) = algebra.as_ref() else {
            return fail(LazardStatus::NullPointer, "null algebra handle");
        };
        if len.is_null() {
            return fail(LazardStatus::NullPointer, "null length pointer");
        }
        let betti = match betti_trivial(&a.algebra) {
            Ok(b) => b,
            Err(e) => return fail(LazardStatus::CheckFailed, e.to_string()),
        };
        *len = betti.len();
        if cap < betti.len() {
            return fail(
                LazardStatus::BufferTooSmall,
                format!("need {} entries, got {cap}", betti.len()),
            );
        }
        if out.is_null() {
            return fail(LazardStatus::NullPointer, "null output buffer");
        }
        ptr::copy_nonoverlapping(betti.as_ptr(), out, betti.len());
        LazardStatus::Ok
    })
}

/// Runs the group-side and Lie-side recursions against the direct
/// computation. Returns `CheckFailed` on disagreement. If `report_json` is
/// non-null it receives the JSON report, to be released with
/// [`lazard_string_free`].
///
/// # Safety
/// `algebra` must be a live handle; `report_json` null or valid.
#[no_mangle]
pub unsafe extern "C" fn lazard_compare(algebra: *const LazardAlgebra, report_json: *mut *mut c_char) -> LazardStatus {
    guard(|| {
        let Some(a) = algebra.as_ref() else {
            return fail(LazardStatus::NullPointer, "null algebra handle");
        };
        let rep = match main_theorem_check(&a.algebra, &a.name) {
            Ok(r) => r,
            Err(e) => return fail(lhs_status(&e), e.to_string()),
        };
        let pass = rep.pass;
        let table = report::comparison_table(&rep);
        if !report_json.is_null() {
            let json = Versioned::new(rep).to_json();
            *report_json = CString::new(json).expect("json has no nul").into_raw();
        }
        if pass {
            LazardStatus::Ok
        } else {
            fail(LazardStatus::CheckFailed, table)
        }
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lazard_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next library call on the same thread.
#[no_mangle]
pub extern "C" fn lazard_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn lazard_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
