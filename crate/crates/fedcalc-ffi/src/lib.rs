//! C interface. Every function returns a [`FedStatus`]; results come back through
//! out-pointers. Handles are opaque and owned by the caller, who releases them with
//! the matching `*_free` function. Strings returned by the library are released
//! with [`fed_string_free`].
//!
//! Indices in this interface are 1-based, as in the text formats.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use fedcalc::algebra::{parse_xpoly, ChainElement, EForm, Family, PolyDiffOp, PolyVector, Series, SmElement, XPoly};
use fedcalc::cli::{suites, ConfigError, Scenario};
use fedcalc::fedosov::{Connection, Contractible, FedosovData, Fiberwise};

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FedStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// A string argument is not valid UTF-8.
    InvalidUtf8 = 2,
    /// A polynomial, fixture or scenario failed to parse.
    Parse = 3,
    /// Arguments are well-formed but inconsistent (index range, family, dimension).
    Invalid = 4,
    /// A truncation order or arity exceeds a supported limit.
    Capacity = 5,
    /// The operation is not defined for this element family.
    Unsupported = 6,
    /// Internal error; the message has details.
    Panic = 7,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn fail(status: FedStatus, msg: impl ToString) -> FedStatus {
    let msg = CString::new(msg.to_string().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
    status
}

/// Runs `f`, turning panics into [`FedStatus::Panic`].
fn guard(f: impl FnOnce() -> Result<(), (FedStatus, String)>) -> FedStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => FedStatus::Ok,
        Ok(Err((s, m))) => fail(s, m),
        Err(p) => {
            let m = p.downcast_ref::<&str>().map(|s| s.to_string()).or_else(|| p.downcast_ref::<String>().cloned());
            fail(FedStatus::Panic, m.unwrap_or_else(|| "panic".into()))
        }
    }
}

type Res<T> = Result<T, (FedStatus, String)>;

unsafe fn text<'a>(s: *const c_char) -> Res<&'a str> {
    if s.is_null() {
        return Err((FedStatus::NullPointer, "string argument is null".into()));
    }
    CStr::from_ptr(s).to_str().map_err(|e| (FedStatus::InvalidUtf8, e.to_string()))
}

unsafe fn put<T>(out: *mut T, v: T) -> Res<()> {
    if out.is_null() {
        return Err((FedStatus::NullPointer, "output pointer is null".into()));
    }
    out.write(v);
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Res<()> {
    let c = CString::new(s).map_err(|e| (FedStatus::Panic, e.to_string()))?;
    if out.is_null() {
        return Err((FedStatus::NullPointer, "output pointer is null".into()));
    }
    out.write(c.into_raw());
    Ok(())
}

unsafe fn handle<'a, T>(h: *const T) -> Res<&'a T> {
    h.as_ref().ok_or((FedStatus::NullPointer, "handle is null".into()))
}

fn index(name: &str, i: usize, dim: usize) -> Res<usize> {
    if i == 0 || i > dim {
        return Err((FedStatus::Invalid, format!("{name} = {i} outside 1..{dim}")));
    }
    Ok(i - 1)
}

/// An element of one of the five families.
pub enum FedElement {
    Sm(SmElement),
    Pv(PolyVector),
    Do(PolyDiffOp),
    Ef(EForm),
    Ch(ChainElement),
}

macro_rules! each {
    ($x:expr, $e:ident => $body:expr) => {
        match $x {
            FedElement::Sm($e) => FedElement::Sm($body),
            FedElement::Pv($e) => FedElement::Pv($body),
            FedElement::Do($e) => FedElement::Do($body),
            FedElement::Ef($e) => FedElement::Ef($body),
            FedElement::Ch($e) => FedElement::Ch($body),
        }
    };
}
macro_rules! with {
    ($x:expr, $e:ident => $body:expr) => {
        match $x {
            FedElement::Sm($e) => $body,
            FedElement::Pv($e) => $body,
            FedElement::Do($e) => $body,
            FedElement::Ef($e) => $body,
            FedElement::Ch($e) => $body,
        }
    };
}

impl FedElement {
    fn dim(&self) -> usize {
        with!(self, e => e.dim())
    }
}

/// Message for the last failing call on this thread, or null. Valid until the next call.
#[no_mangle]
pub extern "C" fn fed_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fed_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn fed_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// A torsion-free connection being assembled.
pub struct FedConnection {
    dim: usize,
    entries: Vec<(usize, usize, usize, XPoly)>,
}

/// Creates the flat connection in dimension `dim`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fed_connection_new(dim: usize, out: *mut *mut FedConnection) -> FedStatus {
    guard(|| {
        if dim == 0 || dim > fedcalc::algebra::MAX_DIM {
            return Err((FedStatus::Capacity, format!("dimension {dim} outside 1..{}", fedcalc::algebra::MAX_DIM)));
        }
        put(out, Box::into_raw(Box::new(FedConnection { dim, entries: Vec::new() })))
    })
}

/// Sets `Γ^k_{ij}` (and so `Γ^k_{ji}`) to a polynomial in `x1..xd`.
///
/// # Safety
/// `conn` must be a live handle and `value` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn fed_connection_set(
    conn: *mut FedConnection,
    k: usize,
    i: usize,
    j: usize,
    value: *const c_char,
) -> FedStatus {
    guard(|| {
        let c = conn.as_mut().ok_or((FedStatus::NullPointer, "handle is null".to_string()))?;
        let (k, i, j) = (index("k", k, c.dim)?, index("i", i, c.dim)?, index("j", j, c.dim)?);
        let v = parse_xpoly(text(value)?, c.dim).map_err(|e| (FedStatus::Parse, e.to_string()))?;
        let (a, b) = (i.min(j), i.max(j));
        c.entries.retain(|e| (e.0, e.1, e.2) != (a, b, k));
        c.entries.push((a, b, k, v));
        Ok(())
    })
}

/// # Safety
/// `conn` must be null or a live handle; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn fed_connection_free(conn: *mut FedConnection) {
    if !conn.is_null() {
        drop(Box::from_raw(conn));
    }
}

const _: () = assert!(FED_MAX_ORDER == fedcalc::cli::config::MAX_NY);

/// A resolved Fedosov differential.
pub struct FedFedosov(FedosovData);

/// Largest fiber truncation accepted.
pub const FED_MAX_ORDER: u32 = 10;

/// Solves for `A` with fiber truncation `order` (2 ≤ order ≤ [`FED_MAX_ORDER`]).
///
/// # Safety
/// `conn` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fed_fedosov_compute(
    conn: *const FedConnection,
    order: u32,
    out: *mut *mut FedFedosov,
) -> FedStatus {
    guard(|| {
        let c = handle(conn)?;
        if order < 2 {
            return Err((FedStatus::Invalid, "order must be at least 2".into()));
        }
        if order > FED_MAX_ORDER {
            return Err((FedStatus::Capacity, format!("order {order} above {FED_MAX_ORDER}")));
        }
        let conn =
            Connection::new(c.dim, c.entries.iter().cloned()).map_err(|e| (FedStatus::Invalid, e.to_string()))?;
        put(out, Box::into_raw(Box::new(FedFedosov(FedosovData::compute(&conn, order)))))
    })
}

/// # Safety
/// `fd` must be null or a live handle; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn fed_fedosov_free(fd: *mut FedFedosov) {
    if !fd.is_null() {
        drop(Box::from_raw(fd));
    }
}

/// Number of fixed-point iterations used.
///
/// # Safety
/// `fd` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fed_fedosov_iterations(fd: *const FedFedosov, out: *mut usize) -> FedStatus {
    guard(|| put(out, handle(fd)?.0.iterations()))
}

/// `A` as a new element handle.
///
/// # Safety
/// `fd` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fed_fedosov_a(fd: *const FedFedosov, out: *mut *mut FedElement) -> FedStatus {
    guard(|| put(out, Box::into_raw(Box::new(FedElement::Pv(handle(fd)?.0.a().clone())))))
}

/// Term count of `dB + ½[B,B]` up to fiber degree `order − 1`; zero for a correct resolution.
///
/// # Safety
/// `fd` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fed_fedosov_mc_residual_terms(fd: *const FedFedosov, out: *mut usize) -> FedStatus {
    guard(|| {
        let fd = &handle(fd)?.0;
        put(out, fd.mc_residual().up_to_degree(fd.order() - 1).len())
    })
}

/// The flat section `τ(f)` of a base function `f`.
///
/// # Safety
/// `fd` must be a live handle, `f` a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fed_fedosov_tau(
    fd: *const FedFedosov,
    f: *const c_char,
    out: *mut *mut FedElement,
) -> FedStatus {
    guard(|| {
        let fd = &handle(fd)?.0;
        let f = parse_xpoly(text(f)?, fd.dim()).map_err(|e| (FedStatus::Parse, e.to_string()))?;
        put(out, Box::into_raw(Box::new(FedElement::Sm(fd.tau_function(&f)))))
    })
}

/// Applies the Fedosov differential `D`.
///
/// # Safety
/// `fd` and `x` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fed_fedosov_apply(
    fd: *const FedFedosov,
    x: *const FedElement,
    out: *mut *mut FedElement,
) -> FedStatus {
    guard(|| {
        let fd = &handle(fd)?.0;
        let x = handle(x)?;
        if x.dim() != fd.dim() {
            return Err((FedStatus::Invalid, format!("element dimension {} differs from {}", x.dim(), fd.dim())));
        }
        let y = each!(x, e => fd.d(e));
        put(out, Box::into_raw(Box::new(y)))
    })
}

#[derive(serde::Deserialize)]
struct Header {
    family: Family,
}

fn parse_fixture<K: fedcalc::algebra::Key>(src: &str) -> Res<Series<K>> {
    Series::from_fixture(src).map_err(|e| (FedStatus::Parse, e.to_string()))
}

/// Reads an element from its TOML fixture text.
///
/// # Safety
/// `src` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fed_element_from_fixture(src: *const c_char, out: *mut *mut FedElement) -> FedStatus {
    guard(|| {
        let src = text(src)?;
        let h: Header = toml::from_str(src).map_err(|e| (FedStatus::Parse, e.to_string()))?;
        let e = match h.family {
            Family::Sm => FedElement::Sm(parse_fixture(src)?),
            Family::Polyvector => FedElement::Pv(parse_fixture(src)?),
            Family::Diffop => FedElement::Do(parse_fixture(src)?),
            Family::Eform => FedElement::Ef(parse_fixture(src)?),
            Family::Chain => FedElement::Ch(parse_fixture(src)?),
        };
        put(out, Box::into_raw(Box::new(e)))
    })
}

/// Writes an element as fixture text.
///
/// # Safety
/// `x` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fed_element_to_fixture(x: *const FedElement, out: *mut *mut c_char) -> FedStatus {
    guard(|| put_string(out, with!(handle(x)?, e => e.to_fixture())))
}

/// One-line human-readable form.
///
/// # Safety
/// `x` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fed_element_to_text(x: *const FedElement, out: *mut *mut c_char) -> FedStatus {
    guard(|| put_string(out, with!(handle(x)?, e => e.fmt_text())))
}

/// Number of nonzero terms.
///
/// # Safety
/// `x` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fed_element_term_count(x: *const FedElement, out: *mut usize) -> FedStatus {
    guard(|| put(out, with!(handle(x)?, e => e.len())))
}

/// Keeps the terms of total fiber degree at most `degree`.
///
/// # Safety
/// `x` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fed_element_up_to_degree(
    x: *const FedElement,
    degree: u32,
    out: *mut *mut FedElement,
) -> FedStatus {
    guard(|| put(out, Box::into_raw(Box::new(each!(handle(x)?, e => e.up_to_degree(degree))))))
}

/// `δ`.
///
/// # Safety
/// `x` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fed_element_delta(x: *const FedElement, out: *mut *mut FedElement) -> FedStatus {
    guard(|| put(out, Box::into_raw(Box::new(each!(handle(x)?, e => Fiberwise::delta(e))))))
}

/// `δ⁻¹`, or `h` on chains.
///
/// # Safety
/// `x` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fed_element_delta_inv(x: *const FedElement, out: *mut *mut FedElement) -> FedStatus {
    guard(|| {
        let y = match handle(x)? {
            FedElement::Sm(e) => FedElement::Sm(e.delta_inv()),
            FedElement::Pv(e) => FedElement::Pv(e.delta_inv()),
            FedElement::Do(e) => FedElement::Do(e.delta_inv()),
            FedElement::Ef(e) => FedElement::Ef(e.delta_inv()),
            FedElement::Ch(e) => FedElement::Ch(e.h_chain()),
        };
        put(out, Box::into_raw(Box::new(y)))
    })
}

/// `σ`: the part with no fiber variables and no `dx`.
///
/// # Safety
/// `x` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fed_element_sigma(x: *const FedElement, out: *mut *mut FedElement) -> FedStatus {
    guard(|| {
        let y = match handle(x)? {
            FedElement::Sm(e) => FedElement::Sm(Contractible::sigma(e)),
            FedElement::Pv(e) => FedElement::Pv(Contractible::sigma(e)),
            FedElement::Do(e) => FedElement::Do(Contractible::sigma(e)),
            FedElement::Ef(e) => FedElement::Ef(Contractible::sigma(e)),
            FedElement::Ch(_) => return Err((FedStatus::Unsupported, "σ is not defined on chains".into())),
        };
        put(out, Box::into_raw(Box::new(y)))
    })
}

/// Writes 1 to `out` if the elements are equal, 0 otherwise. Different families compare unequal.
///
/// # Safety
/// `a`, `b` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fed_element_equal(a: *const FedElement, b: *const FedElement, out: *mut i32) -> FedStatus {
    guard(|| {
        let eq = match (handle(a)?, handle(b)?) {
            (FedElement::Sm(x), FedElement::Sm(y)) => x == y,
            (FedElement::Pv(x), FedElement::Pv(y)) => x == y,
            (FedElement::Do(x), FedElement::Do(y)) => x == y,
            (FedElement::Ef(x), FedElement::Ef(y)) => x == y,
            (FedElement::Ch(x), FedElement::Ch(y)) => x == y,
            _ => false,
        };
        put(out, eq as i32)
    })
}

/// # Safety
/// `x` must be null or a live handle; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn fed_element_free(x: *mut FedElement) {
    if !x.is_null() {
        drop(Box::from_raw(x));
    }
}

fn config_status(e: &ConfigError) -> FedStatus {
    match e {
        ConfigError::Syntax { .. } => FedStatus::Parse,
        ConfigError::Capacity { .. } => FedStatus::Capacity,
        ConfigError::Io { .. } | ConfigError::Invalid { .. } => FedStatus::Invalid,
    }
}

/// Runs a scenario given as TOML text. The line-delimited report goes to `report`;
/// `passed` receives 1 if every check passed.
///
/// # Safety
/// `scenario` must be a NUL-terminated string; `report` and `passed` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn fed_run_scenario(
    scenario: *const c_char,
    report: *mut *mut c_char,
    passed: *mut i32,
) -> FedStatus {
    guard(|| {
        let sc = Scenario::parse(text(scenario)?).map_err(|e| (config_status(&e), e.to_string()))?;
        let r = suites::run(&sc);
        put(passed, r.passed() as i32)?;
        put_string(report, r.to_jsonl(&sc.name, sc.seed))
    })
}
