//! C ABI for `kuls-core`.
//!
//! Algebras are opaque handles created by `kuls_algebra_from_*` and released
//! with `kuls_algebra_free`. Every fallible call returns a [`KulsStatus`];
//! on failure `kuls_last_error_message` describes the error for the calling
//! thread. Strings returned through out-parameters are owned by the caller and
//! must be released with `kuls_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use kuls_core::families::{family, parse_params, Family, FamilySpec};
use kuls_core::form::canonical_form;
use kuls_core::kulshammer::{compare, reynolds_sequence, ReynoldsReport, DEFAULT_MAX_N};
use kuls_core::normalform::{build_algebra, AlgebraTable, DEFAULT_DEGREE_BOUND};
use kuls_core::report::{canonical_json, verdict_json};
use kuls_core::{parse_presentation, Error, FieldSpec};

/// Result codes. Zero is success.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KulsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Syntax = 3,
    InvalidPresentation = 4,
    BadField = 5,
    BadParameters = 6,
    InfiniteDimensional = 7,
    DegreeBoundExceeded = 8,
    NotSelfinjective = 9,
    NotSymmetric = 10,
    Degenerate = 11,
    CharacteristicMismatch = 12,
    BudgetExceeded = 13,
    Internal = 14,
    Panic = 15,
}

impl From<&Error> for KulsStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Syntax { .. } => KulsStatus::Syntax,
            Error::Presentation(_) => KulsStatus::InvalidPresentation,
            Error::BadField(_) => KulsStatus::BadField,
            Error::BadParameters(_) | Error::Usage(_) | Error::DimensionMismatch { .. } => {
                KulsStatus::BadParameters
            }
            Error::InfiniteDimensional { .. } | Error::NotNilpotent => {
                KulsStatus::InfiniteDimensional
            }
            Error::DegreeBoundExceeded { .. } => KulsStatus::DegreeBoundExceeded,
            Error::SocleMismatch { .. } => KulsStatus::NotSelfinjective,
            Error::NotSymmetric { .. } => KulsStatus::NotSymmetric,
            Error::Degenerate(_) => KulsStatus::Degenerate,
            Error::CharacteristicMismatch(..) => KulsStatus::CharacteristicMismatch,
            Error::BudgetExceeded { .. } => KulsStatus::BudgetExceeded,
            Error::InvariantViolation(_) | Error::ConsistencyFailure { .. } => KulsStatus::Internal,
        }
    }
}

/// Opaque handle to a finite-dimensional algebra with its multiplication table.
pub struct KulsAlgebra {
    table: AlgebraTable,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_last_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

enum Failure {
    Status(KulsStatus, String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

/// Runs `body`, translating errors and panics into a status code.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> KulsStatus {
    clear_last_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => KulsStatus::Ok,
        Ok(Err(Failure::Status(s, msg))) => {
            set_last_error(msg);
            s
        }
        Ok(Err(Failure::Core(e))) => {
            set_last_error(format!("{}: {e}", e.code()));
            KulsStatus::from(&e)
        }
        Err(_) => {
            set_last_error("panic inside kuls".into());
            KulsStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::Status(KulsStatus::NullPointer, format!("{what} is NULL")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure::Status(KulsStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

fn check_out<T>(out: *mut T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        Err(Failure::Status(KulsStatus::NullPointer, format!("{what} is NULL")))
    } else {
        Ok(())
    }
}

unsafe fn algebra_ref<'a>(a: *const KulsAlgebra, what: &str) -> Result<&'a KulsAlgebra, Failure> {
    a.as_ref()
        .ok_or_else(|| Failure::Status(KulsStatus::NullPointer, format!("{what} is NULL")))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).expect("JSON has no interior NUL").into_raw()
}

fn max_n_or_default(max_n: u32) -> u32 {
    if max_n == 0 {
        DEFAULT_MAX_N
    } else {
        max_n
    }
}

fn sequence(a: &KulsAlgebra, max_n: u32) -> Result<ReynoldsReport, Error> {
    let form = canonical_form(&a.table)?;
    reynolds_sequence(&a.table, &form, max_n_or_default(max_n))
}

/// Builds an algebra from presentation source text.
///
/// # Safety
/// `source` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kuls_algebra_from_dsl(
    source: *const c_char,
    out: *mut *mut KulsAlgebra,
) -> KulsStatus {
    guard(|| {
        check_out(out, "out")?;
        let text = read_str(source, "source")?;
        let table = build_algebra(&parse_presentation(text)?, DEFAULT_DEGREE_BOUND)?;
        *out = Box::into_raw(Box::new(KulsAlgebra { table }));
        Ok(())
    })
}

/// Builds a member of a built-in family over GF(p^e), e.g. `"Omega"`, `"n=2"`.
///
/// # Safety
/// `name` and `params` must be NUL-terminated strings and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kuls_algebra_from_family(
    name: *const c_char,
    params: *const c_char,
    p: u32,
    e: u32,
    out: *mut *mut KulsAlgebra,
) -> KulsStatus {
    guard(|| {
        check_out(out, "out")?;
        let fam: Family = read_str(name, "name")?.parse()?;
        let params = parse_params(read_str(params, "params")?)?;
        let pairs: Vec<(&str, u32)> = params.iter().map(|(k, v)| (k.as_str(), *v)).collect();
        let field = FieldSpec::extension(p, e.max(1), None)?;
        let spec = FamilySpec::new(fam, &pairs, field)?;
        let table = build_algebra(&family(&spec)?, DEFAULT_DEGREE_BOUND)?;
        *out = Box::into_raw(Box::new(KulsAlgebra { table }));
        Ok(())
    })
}

/// Dimension of the algebra over its field.
///
/// # Safety
/// `algebra` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kuls_algebra_dim(algebra: *const KulsAlgebra, out: *mut usize) -> KulsStatus {
    guard(|| {
        check_out(out, "out")?;
        *out = algebra_ref(algebra, "algebra")?.table.dim();
        Ok(())
    })
}

/// Canonical JSON report of the Reynolds ideal sequence. `max_n = 0` selects
/// the default range.
///
/// # Safety
/// `algebra` must be a live handle and `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kuls_invariants_json(
    algebra: *const KulsAlgebra,
    max_n: u32,
    out_json: *mut *mut c_char,
) -> KulsStatus {
    guard(|| {
        check_out(out_json, "out_json")?;
        let r = sequence(algebra_ref(algebra, "algebra")?, max_n)?;
        *out_json = into_c_string(canonical_json(&r));
        Ok(())
    })
}

/// Verdict JSON comparing the Reynolds ideal sequences of two algebras.
///
/// # Safety
/// `a` and `b` must be live handles and `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kuls_compare_json(
    a: *const KulsAlgebra,
    b: *const KulsAlgebra,
    max_n: u32,
    out_json: *mut *mut c_char,
) -> KulsStatus {
    guard(|| {
        check_out(out_json, "out_json")?;
        let ra = sequence(algebra_ref(a, "a")?, max_n)?;
        let rb = sequence(algebra_ref(b, "b")?, max_n)?;
        let v = compare(&ra, &rb)?;
        *out_json = into_c_string(verdict_json(&v).to_string());
        Ok(())
    })
}

/// Releases a handle. NULL is ignored.
///
/// # Safety
/// `algebra` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn kuls_algebra_free(algebra: *mut KulsAlgebra) {
    if !algebra.is_null() {
        drop(Box::from_raw(algebra));
    }
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must be NULL or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn kuls_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or NULL. The pointer
/// stays valid until the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn kuls_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn kuls_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
