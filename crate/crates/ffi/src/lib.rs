//! C interface to qpmut. Objects cross the boundary as opaque handles;
//! documents cross as NUL-terminated JSON strings using the same schemas as
//! the command line tool. Every call returns a [`QpmutStatus`]; on failure
//! the message is available from [`qpmut_last_error_message`] on the same
//! thread. Strings returned through out-parameters are owned by the caller
//! and released with [`qpmut_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qpmut::jacobian::{finiteness_certificate, Finiteness};
use qpmut::json::{parse_value, qp_from_json, qp_to_json, render, rep_from_json, rep_to_json};
use qpmut::qp::{is_rigid_truncated, mutate, premutate, Qp};
use qpmut::representation::{are_isomorphic, mutate_rep, validate_rep, Representation};
use qpmut::{selftest, Error};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QpmutStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Structural = 4,
    Precondition = 5,
    Io = 6,
    Panic = 7,
}

/// A quiver with potential.
pub struct QpmutQp(Qp);

/// A representation, carrying the quiver it lives over.
pub struct QpmutRep(Representation);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

enum Failure {
    Null(&'static str),
    Utf8(&'static str),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> QpmutStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QpmutStatus::Ok,
        Ok(Err(Failure::Null(what))) => {
            set_error(format!("null argument: {what}"));
            QpmutStatus::NullArgument
        }
        Ok(Err(Failure::Utf8(what))) => {
            set_error(format!("argument is not UTF-8: {what}"));
            QpmutStatus::InvalidUtf8
        }
        Ok(Err(Failure::Lib(e))) => {
            let datum = e.datum().map(|d| format!(" [{d}]")).unwrap_or_default();
            set_error(format!("{}: {}{datum}", e.code(), e.message()));
            match e {
                Error::Parse { .. } => QpmutStatus::Parse,
                Error::Structural { .. } => QpmutStatus::Structural,
                Error::Precondition { .. } => QpmutStatus::Precondition,
                Error::Io { .. } => QpmutStatus::Io,
            }
        }
        Err(_) => {
            set_error("internal panic".to_string());
            QpmutStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::Null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure::Utf8(what))
}

unsafe fn handle<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or(Failure::Null(what))
}

unsafe fn put<T>(out: *mut T, value: T, what: &'static str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Null(what));
    }
    out.write(value);
    Ok(())
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).unwrap_or_default().into_raw()
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn qpmut_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or NULL. Valid until the
/// next failing call on this thread.
#[no_mangle]
pub extern "C" fn qpmut_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

#[no_mangle]
pub extern "C" fn qpmut_clear_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

/// # Safety
/// `s` must be NULL or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn qpmut_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parse a QP document. `truncation` 0 keeps the value in the document.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qpmut_qp_from_json(json: *const c_char, truncation: usize, out: *mut *mut QpmutQp) -> QpmutStatus {
    guard(|| {
        let v = parse_value(text(json, "json")?)?;
        let p = qp_from_json(&v, (truncation > 0).then_some(truncation))?;
        put(out, Box::into_raw(Box::new(QpmutQp(p))), "out")
    })
}

/// # Safety
/// `qp` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qpmut_qp_to_json(qp: *const QpmutQp, out: *mut *mut c_char) -> QpmutStatus {
    guard(|| {
        let p = handle(qp, "qp")?;
        put(out, owned_string(render(&qp_to_json(&p.0), false)), "out")
    })
}

/// # Safety
/// `qp` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qpmut_qp_free(qp: *mut QpmutQp) {
    if !qp.is_null() {
        drop(Box::from_raw(qp));
    }
}

/// # Safety
/// `qp` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qpmut_qp_num_vertices(qp: *const QpmutQp, out: *mut usize) -> QpmutStatus {
    guard(|| put(out, handle(qp, "qp")?.0.quiver().num_vertices(), "out"))
}

/// Mutation at the named vertex followed by reduction.
///
/// # Safety
/// `qp` must be a live handle, `vertex` a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qpmut_qp_mutate(qp: *const QpmutQp, vertex: *const c_char, out: *mut *mut QpmutQp) -> QpmutStatus {
    guard(|| {
        let p = &handle(qp, "qp")?.0;
        let k = p.quiver().require_vertex(text(vertex, "vertex")?)?;
        let m = mutate(p, k)?;
        put(out, Box::into_raw(Box::new(QpmutQp(m.reduced().clone()))), "out")
    })
}

/// Dimension of the truncated Jacobian algebra. When `certified` is false
/// the dimension is that of the truncation and `nilpotency` is 0.
///
/// # Safety
/// `qp` must be a live handle and the out pointers valid.
#[no_mangle]
pub unsafe extern "C" fn qpmut_qp_jacobian_dim(
    qp: *const QpmutQp,
    dim: *mut usize,
    nilpotency: *mut usize,
    certified: *mut bool,
) -> QpmutStatus {
    guard(|| {
        let p = &handle(qp, "qp")?.0;
        let (d, n, c) = match finiteness_certificate(p, p.truncation())? {
            Finiteness::Finite { dim, nilpotency } => (dim, nilpotency, true),
            Finiteness::Inconclusive { dims, .. } => (dims.iter().sum(), 0, false),
        };
        put(dim, d, "dim")?;
        put(nilpotency, n, "nilpotency")?;
        put(certified, c, "certified")
    })
}

/// Rigidity verdict label: NOT_RIGID, RIGID_CERTIFIED or RIGID_UP_TO_N.
///
/// # Safety
/// `qp` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qpmut_qp_rigidity(qp: *const QpmutQp, out: *mut *mut c_char) -> QpmutStatus {
    guard(|| {
        let v = is_rigid_truncated(&handle(qp, "qp")?.0)?;
        put(out, owned_string(v.label().to_string()), "out")
    })
}

/// Parse a representation document over the quiver of `qp`.
///
/// # Safety
/// `qp` must be a live handle, `json` a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qpmut_rep_from_json(qp: *const QpmutQp, json: *const c_char, out: *mut *mut QpmutRep) -> QpmutStatus {
    guard(|| {
        let p = &handle(qp, "qp")?.0;
        let m = rep_from_json(&parse_value(text(json, "json")?)?, p.quiver())?;
        put(out, Box::into_raw(Box::new(QpmutRep(m))), "out")
    })
}

/// # Safety
/// `rep` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qpmut_rep_to_json(rep: *const QpmutRep, out: *mut *mut c_char) -> QpmutStatus {
    guard(|| {
        let m = handle(rep, "rep")?;
        put(out, owned_string(render(&rep_to_json(&m.0), false)), "out")
    })
}

/// # Safety
/// `rep` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qpmut_rep_free(rep: *mut QpmutRep) {
    if !rep.is_null() {
        drop(Box::from_raw(rep));
    }
}

/// Whether the representation is nilpotent and satisfies the relations of `qp`.
///
/// # Safety
/// Handles must be live and `valid` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qpmut_rep_validate(qp: *const QpmutQp, rep: *const QpmutRep, valid: *mut bool) -> QpmutStatus {
    guard(|| {
        let r = validate_rep(&handle(qp, "qp")?.0, &handle(rep, "rep")?.0)?;
        put(valid, r.valid, "valid")
    })
}

/// Mutated representation over the premutated QP. If `out_qp` is not NULL
/// it receives that premutated QP.
///
/// # Safety
/// Handles must be live, `vertex` a NUL-terminated string, `out` valid and
/// `out_qp` NULL or valid.
#[no_mangle]
pub unsafe extern "C" fn qpmut_rep_mutate(
    qp: *const QpmutQp,
    rep: *const QpmutRep,
    vertex: *const c_char,
    out: *mut *mut QpmutRep,
    out_qp: *mut *mut QpmutQp,
) -> QpmutStatus {
    guard(|| {
        let p = &handle(qp, "qp")?.0;
        let m = &handle(rep, "rep")?.0;
        let k = p.quiver().require_vertex(text(vertex, "vertex")?)?;
        let mutated = mutate_rep(p, m, k)?;
        if out.is_null() {
            return Err(Failure::Null("out"));
        }
        if !out_qp.is_null() {
            out_qp.write(Box::into_raw(Box::new(QpmutQp(premutate(p, k)?.qp))));
        }
        put(out, Box::into_raw(Box::new(QpmutRep(mutated))), "out")
    })
}

/// Seeded isomorphism test between representations of the same quiver.
///
/// # Safety
/// Handles must be live and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qpmut_rep_is_isomorphic(a: *const QpmutRep, b: *const QpmutRep, seed: u64, out: *mut bool) -> QpmutStatus {
    guard(|| {
        let iso = are_isomorphic(&handle(a, "a")?.0, &handle(b, "b")?.0, seed)?;
        put(out, iso, "out")
    })
}

/// Run the acceptance corpus; `report` receives the rendered table.
///
/// # Safety
/// `report` and `passed` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn qpmut_selftest(seed: u64, report: *mut *mut c_char, passed: *mut bool) -> QpmutStatus {
    guard(|| {
        let rows = selftest::run_all(seed);
        put(passed, rows.iter().all(|r| r.passed), "passed")?;
        put(report, owned_string(selftest::render(seed, &rows)), "report")
    })
}
