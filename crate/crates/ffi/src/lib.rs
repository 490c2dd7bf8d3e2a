//! C interface to the skewhilbert workbench.
//!
//! Structures are passed as opaque `ShAlgebra` handles. Every fallible call
//! returns an `ShStatus`; on failure a description is kept per thread and can
//! be fetched with `sh_last_error`. Strings returned by the library must be
//! released with `sh_string_free`, handles with `sh_algebra_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use skewhilbert::search::{self, SearchSpec};
use skewhilbert::{axioms, codec, corpus, AxiomSystem, Error, FinStructure};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    UnknownName = 4,
    Precondition = 5,
    CapExceeded = 6,
    OutOfRange = 7,
    Invalid = 8,
    Panic = 9,
}

/// Opaque handle to a finite structure.
pub struct ShAlgebra {
    inner: FinStructure,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let c = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: ShStatus, msg: impl Into<String>) -> ShStatus {
    set_error(msg);
    status
}

fn from_error(e: Error) -> ShStatus {
    let status = match &e {
        Error::Parse { .. } | Error::DuplicateLabel(_) | Error::MissingTable(_) | Error::NotAPoset { .. } => {
            ShStatus::Parse
        }
        Error::CapExceeded { .. } => ShStatus::CapExceeded,
        Error::Precondition(_)
        | Error::NotStrongCongruence { .. }
        | Error::NoTop
        | Error::NoBounds
        | Error::MissingComponent(_) => ShStatus::Precondition,
        _ => ShStatus::Invalid,
    };
    fail(status, e.to_string())
}

/// Runs `f`, converting panics into `ShStatus::Panic`.
fn guard(f: impl FnOnce() -> ShStatus) -> ShStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(ShStatus::Panic, "internal panic"))
}

/// # Safety
/// `s` must be null or a valid NUL-terminated string.
unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, ShStatus> {
    if s.is_null() {
        return Err(fail(ShStatus::NullArgument, "null string argument"));
    }
    CStr::from_ptr(s).to_str().map_err(|_| fail(ShStatus::InvalidUtf8, "argument is not UTF-8"))
}

fn to_c(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

fn parse_system(name: &str) -> Result<AxiomSystem, ShStatus> {
    name.parse().map_err(|_| fail(ShStatus::UnknownName, format!("unknown axiom system `{name}`")))
}

/// # Safety
/// `out` must be valid for a pointer write.
unsafe fn give(out: *mut *mut ShAlgebra, s: FinStructure) -> ShStatus {
    *out = Box::into_raw(Box::new(ShAlgebra { inner: s }));
    ShStatus::Ok
}

/// Static description of a status code. Never null; do not free.
#[no_mangle]
pub extern "C" fn sh_status_name(status: ShStatus) -> *const c_char {
    let s: &'static CStr = match status {
        ShStatus::Ok => c"ok",
        ShStatus::NullArgument => c"null argument",
        ShStatus::InvalidUtf8 => c"invalid UTF-8",
        ShStatus::Parse => c"parse error",
        ShStatus::UnknownName => c"unknown name",
        ShStatus::Precondition => c"precondition not met",
        ShStatus::CapExceeded => c"size cap exceeded",
        ShStatus::OutOfRange => c"index out of range",
        ShStatus::Invalid => c"invalid argument",
        ShStatus::Panic => c"internal error",
    };
    s.as_ptr()
}

/// Copy of the last error message on this thread, or null if none. Free
/// with `sh_string_free`.
#[no_mangle]
pub extern "C" fn sh_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null_mut(), |c| c.clone().into_raw()))
}

/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sh_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses an algebra in the text or JSON format.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sh_algebra_parse(text: *const c_char, out: *mut *mut ShAlgebra) -> ShStatus {
    guard(|| {
        if out.is_null() {
            return fail(ShStatus::NullArgument, "null output pointer");
        }
        *out = ptr::null_mut();
        let text = match read_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match codec::parse_any(text) {
            Ok(s) => give(out, s),
            Err(e) => from_error(e),
        }
    })
}

/// Loads a built-in example such as `fig1`.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sh_algebra_corpus(name: *const c_char, out: *mut *mut ShAlgebra) -> ShStatus {
    guard(|| {
        if out.is_null() {
            return fail(ShStatus::NullArgument, "null output pointer");
        }
        *out = ptr::null_mut();
        let name = match read_str(name) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match corpus::algebra_text(name) {
            Some(text) => match codec::parse(text) {
                Ok(s) => give(out, s),
                Err(e) => from_error(e),
            },
            None => fail(ShStatus::UnknownName, format!("no corpus entry `{name}`")),
        }
    })
}

/// # Safety
/// `a` must be null or a handle from this library that is not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sh_algebra_free(a: *mut ShAlgebra) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// # Safety
/// `a` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sh_algebra_size(a: *const ShAlgebra, out: *mut usize) -> ShStatus {
    if a.is_null() || out.is_null() {
        return fail(ShStatus::NullArgument, "null argument");
    }
    *out = (*a).inner.size();
    ShStatus::Ok
}

/// Index of the element with this label.
///
/// # Safety
/// `a` must be a live handle, `label` a NUL-terminated string and `out` valid
/// for writes.
#[no_mangle]
pub unsafe extern "C" fn sh_algebra_index(a: *const ShAlgebra, label: *const c_char, out: *mut usize) -> ShStatus {
    if a.is_null() || out.is_null() {
        return fail(ShStatus::NullArgument, "null argument");
    }
    let label = match read_str(label) {
        Ok(t) => t,
        Err(s) => return s,
    };
    match (*a).inner.carrier().index_of(label) {
        Some(x) => {
            *out = x;
            ShStatus::Ok
        }
        None => fail(ShStatus::UnknownName, format!("unknown label `{label}`")),
    }
}

/// `x * y` as an element index.
///
/// # Safety
/// `a` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sh_algebra_star(a: *const ShAlgebra, x: usize, y: usize, out: *mut usize) -> ShStatus {
    if a.is_null() || out.is_null() {
        return fail(ShStatus::NullArgument, "null argument");
    }
    let s = &(*a).inner;
    if !s.has_star() {
        return fail(ShStatus::Precondition, "structure has no star table");
    }
    if x >= s.size() || y >= s.size() {
        return fail(ShStatus::OutOfRange, format!("index out of range for size {}", s.size()));
    }
    *out = s.s(x, y);
    ShStatus::Ok
}

/// Normalized text form of the structure. Free with `sh_string_free`.
///
/// # Safety
/// `a` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sh_algebra_emit(a: *const ShAlgebra, out: *mut *mut c_char) -> ShStatus {
    if a.is_null() || out.is_null() {
        return fail(ShStatus::NullArgument, "null argument");
    }
    *out = to_c(codec::emit(&(*a).inner));
    ShStatus::Ok
}

/// Checks an axiom system by its command-line name. `pass` receives the
/// outcome; if `verdict_json` is not null it receives the verdict as JSON,
/// to be freed with `sh_string_free`.
///
/// # Safety
/// `a` must be a live handle, `system` a NUL-terminated string, `pass` valid
/// for writes and `verdict_json` null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sh_check(
    a: *const ShAlgebra,
    system: *const c_char,
    pass: *mut bool,
    verdict_json: *mut *mut c_char,
) -> ShStatus {
    guard(|| {
        if a.is_null() || pass.is_null() {
            return fail(ShStatus::NullArgument, "null argument");
        }
        let sys = match read_str(system).and_then(parse_system) {
            Ok(s) => s,
            Err(s) => return s,
        };
        let s = &(*a).inner;
        match axioms::check(s, sys) {
            Ok(v) => {
                *pass = v.pass;
                if !verdict_json.is_null() {
                    let doc = serde_json::json!({
                        "system": sys.name(),
                        "pass": v.pass,
                        "clause": v.clause,
                        "witness": v.labeled_witness(s.carrier()),
                        "detail": v.detail,
                    });
                    *verdict_json = to_c(doc.to_string());
                }
                ShStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Number of models of `system` on `size` elements, up to isomorphism or
/// labelled.
///
/// # Safety
/// `system` must be a NUL-terminated string and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sh_count_models(system: *const c_char, size: usize, up_to_iso: bool, out: *mut usize) -> ShStatus {
    guard(|| {
        if out.is_null() {
            return fail(ShStatus::NullArgument, "null output pointer");
        }
        let sys = match read_str(system).and_then(parse_system) {
            Ok(s) => s,
            Err(s) => return s,
        };
        let spec = SearchSpec::new(size, sys);
        let spec = if up_to_iso { spec } else { spec.labelled() };
        match search::count_models(&spec) {
            Ok(n) => {
                *out = n;
                ShStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}
