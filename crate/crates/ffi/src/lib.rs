//! C ABI over `fingroup`.
//!
//! Groups are opaque `FgGroup` handles. Every fallible call returns an
//! `FgStatus`; on anything but `FG_STATUS_OK` the message is available from
//! `fg_last_error_message` on the same thread. Strings handed out by the
//! library are freed with `fg_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use fingroup::equations::{solve, EquationSystem, SolveOutcome, DEFAULT_SOLVE_BUDGET};
use fingroup::structure::monolith;
use fingroup::suite::{verify_paper, SuiteOptions};
use fingroup::words::{holds_law, parse_law, LawOptions};
use fingroup::{builtin, Error, FiniteGroup};

/// Opaque group handle.
pub struct FgGroup {
    inner: FiniteGroup,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    UnknownGroup = 4,
    TooLarge = 5,
    BudgetExhausted = 6,
    NoSolution = 7,
    Failed = 8,
    Panic = 99,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let c = CString::new(msg.into().replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> FgStatus {
    match e {
        Error::Syntax { .. } | Error::InvalidPermutation(_) | Error::UnboundVariable(_) => FgStatus::Parse,
        Error::UnknownGroup(_) => FgStatus::UnknownGroup,
        Error::GroupTooLarge(_) | Error::DegreeTooLarge(..) => FgStatus::TooLarge,
        Error::BudgetExhausted(_) => FgStatus::BudgetExhausted,
        _ => FgStatus::Failed,
    }
}

fn guard(f: impl FnOnce() -> Result<(), (FgStatus, String)>) -> FgStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => FgStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            FgStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (FgStatus, String) {
    (status_of(&e), e.to_string())
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, (FgStatus, String)> {
    if p.is_null() {
        return Err((FgStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (FgStatus::InvalidUtf8, "argument is not valid UTF-8".into()))
}

unsafe fn group<'a>(g: *const FgGroup) -> Result<&'a FiniteGroup, (FgStatus, String)> {
    g.as_ref()
        .map(|g| &g.inner)
        .ok_or((FgStatus::NullPointer, "null group handle".into()))
}

fn out_ptr<T>(p: *mut T) -> Result<(), (FgStatus, String)> {
    if p.is_null() {
        Err((FgStatus::NullPointer, "null output pointer".into()))
    } else {
        Ok(())
    }
}

fn into_c(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// Builds a group from an expression such as `S(4)` or `direct(S4,C3)`.
///
/// # Safety
/// `spec` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fg_group_from_spec(spec: *const c_char, out: *mut *mut FgGroup) -> FgStatus {
    guard(|| {
        out_ptr(out)?;
        let g = builtin(text(spec)?).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(FgGroup { inner: g }));
        Ok(())
    })
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `g` must come from `fg_group_from_spec` and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn fg_group_free(g: *mut FgGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fg_group_order(g: *const FgGroup, out: *mut usize) -> FgStatus {
    guard(|| {
        out_ptr(out)?;
        *out = group(g)?.order();
        Ok(())
    })
}

/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fg_group_degree(g: *const FgGroup, out: *mut usize) -> FgStatus {
    guard(|| {
        out_ptr(out)?;
        *out = group(g)?.degree();
        Ok(())
    })
}

/// Checks `law` (e.g. `"x^12 = 1"`) on every assignment.
///
/// # Safety
/// `g` must be a live handle, `law` nul-terminated, `holds` writable.
#[no_mangle]
pub unsafe extern "C" fn fg_law_holds(g: *const FgGroup, law: *const c_char, holds: *mut bool) -> FgStatus {
    guard(|| {
        out_ptr(holds)?;
        let g = group(g)?;
        let law = parse_law(text(law)?).map_err(lib_err)?;
        *holds = holds_law(g, &law, &LawOptions::default()).map_err(lib_err)?.holds;
        Ok(())
    })
}

/// Order of the monolith; 1 when the group is not monolithic.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fg_monolith_order(g: *const FgGroup, out: *mut usize) -> FgStatus {
    guard(|| {
        out_ptr(out)?;
        *out = monolith(group(g)?).monolith.order();
        Ok(())
    })
}

/// Least solution of an equation system, written as `"x = (1 3 2), y = ()"`
/// into a new string. Returns `FG_STATUS_NO_SOLUTION` when none exists.
///
/// # Safety
/// `g` must be a live handle, `system` nul-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fg_solve(g: *const FgGroup, system: *const c_char, out: *mut *mut c_char) -> FgStatus {
    guard(|| {
        out_ptr(out)?;
        *out = ptr::null_mut();
        let g = group(g)?;
        let sys = EquationSystem::parse(text(system)?).map_err(lib_err)?;
        match solve(&sys, g, DEFAULT_SOLVE_BUDGET).map_err(lib_err)? {
            SolveOutcome::Solution(a) => {
                let s: Vec<String> = a.iter().map(|(v, &x)| format!("{v} = {}", g.element(x))).collect();
                *out = into_c(s.join(", "));
                Ok(())
            }
            SolveOutcome::NoSolution => Err((FgStatus::NoSolution, "no solution".into())),
            SolveOutcome::Exhausted(b) => Err((FgStatus::BudgetExhausted, format!("budget {b} exhausted"))),
        }
    })
}

/// Runs the verification suite with default bounds and returns its JSON
/// report. `passed` receives the overall verdict.
///
/// # Safety
/// `out` and `passed` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fg_verify_paper_json(out: *mut *mut c_char, passed: *mut bool) -> FgStatus {
    guard(|| {
        out_ptr(out)?;
        out_ptr(passed)?;
        let report = verify_paper(&SuiteOptions::default());
        *passed = report.passed;
        *out = into_c(report.to_json());
        Ok(())
    })
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next call into the library from this thread.
#[no_mangle]
pub extern "C" fn fg_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be a string returned by this library, or null.
#[no_mangle]
pub unsafe extern "C" fn fg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_mapping() {
        assert_eq!(status_of(&Error::UnknownGroup("X".into())), FgStatus::UnknownGroup);
        assert_eq!(status_of(&Error::GroupTooLarge(1)), FgStatus::TooLarge);
        assert_eq!(status_of(&Error::NotAbelian), FgStatus::Failed);
    }

    #[test]
    fn panics_are_contained() {
        assert_eq!(guard(|| panic!("boom")), FgStatus::Panic);
        assert!(!fg_last_error_message().is_null());
        assert_eq!(guard(|| Ok(())), FgStatus::Ok);
        assert!(fg_last_error_message().is_null());
    }
}
