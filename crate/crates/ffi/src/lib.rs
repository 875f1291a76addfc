//! C interface to `superquant`.
//!
//! Values cross the boundary as opaque handles created and destroyed by this
//! library. Every fallible call returns an [`SqStatus`]; on failure a message
//! is available from [`sq_last_error`] until the next call on the same thread.
//! Strings returned by the library must be released with [`sq_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use superquant::json::operator_json;
use superquant::quantize::{quantize, verify_equivariance, Method, QuantizationResult, Status};
use superquant::rational::parse_rational;
use superquant::{lie_op, parse_superfn, DiffOp, Error, HalfInt, Rational, Symbol};

/// Result codes of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SqStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    WeightMismatch = 4,
    ZeroDenominator = 5,
    NoSolution = 6,
    InvalidArgument = 7,
    Panic = 8,
}

/// Quantization method.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SqMethod {
    Iterative = 0,
    ClosedForm = 1,
    Affine = 2,
}

/// Outcome of the iterative solver.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SqSolution {
    Unique = 0,
    NoSolution = 1,
    Ambiguous = 2,
}

/// Opaque superfunction.
pub struct SqSuperFn(superquant::SuperFn);

/// Opaque differential operator.
pub struct SqOperator(DiffOp);

/// Opaque quantization result.
pub struct SqQuantization(QuantizationResult);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(SqStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse { .. } => SqStatus::Parse,
            Error::WeightMismatch { .. } => SqStatus::WeightMismatch,
            Error::ZeroDenominator { .. } => SqStatus::ZeroDenominator,
            _ => SqStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

/// Runs `body`, recording errors and containing panics.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> SqStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => SqStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            SqStatus::Panic
        }
    }
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref()
        .ok_or_else(|| Failure(SqStatus::NullPointer, format!("{what} is null")))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(SqStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(SqStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn rational(p: *const c_char, what: &str) -> Result<Rational, Failure> {
    parse_rational(text(p, what)?).map_err(Failure::from)
}

unsafe fn write_out<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(SqStatus::NullPointer, "output pointer is null".into()));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// Message for the last failed call on this thread, or null. Owned by the library.
#[no_mangle]
pub extern "C" fn sq_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn sq_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn sq_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses an expression such as `"x^2*t1 + 3/2*t2"`.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sq_superfn_parse(text_ptr: *const c_char, out: *mut *mut SqSuperFn) -> SqStatus {
    guard(|| {
        let f = parse_superfn(text(text_ptr, "text")?)?;
        write_out(out, SqSuperFn(f))
    })
}

/// Canonical text form; free with [`sq_string_free`]. Null on a null handle.
///
/// # Safety
/// `f` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn sq_superfn_to_string(f: *const SqSuperFn) -> *mut c_char {
    f.as_ref().map_or(ptr::null_mut(), |f| into_c_string(f.0.to_string()))
}

/// Product `a * b` in the Grassmann algebra.
///
/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sq_superfn_mul(a: *const SqSuperFn, b: *const SqSuperFn, out: *mut *mut SqSuperFn) -> SqStatus {
    guard(|| {
        let product = &borrow(a, "a")?.0 * &borrow(b, "b")?.0;
        write_out(out, SqSuperFn(product))
    })
}

/// # Safety
/// `f` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn sq_superfn_free(f: *mut SqSuperFn) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

fn method(m: SqMethod) -> Method {
    match m {
        SqMethod::Iterative => Method::Iterative,
        SqMethod::ClosedForm => Method::ClosedForm,
        SqMethod::Affine => Method::Affine,
    }
}

/// Quantizes the symbol `(f1, f2)` of degree `k_twice / 2` and weight `delta`
/// on `lambda`-densities. Weights are exact fractions such as `"1/3"`.
///
/// A vanishing pivot still yields `SQ_STATUS_OK`; inspect the result with
/// [`sq_quantization_solution`].
///
/// # Safety
/// String arguments must be nul-terminated; handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sq_quantize(
    k_twice: u32,
    lambda: *const c_char,
    delta: *const c_char,
    f1: *const SqSuperFn,
    f2: *const SqSuperFn,
    m: SqMethod,
    out: *mut *mut SqQuantization,
) -> SqStatus {
    guard(|| {
        let lambda = rational(lambda, "lambda")?;
        let delta = rational(delta, "delta")?;
        let s = Symbol::new(HalfInt(k_twice), delta, borrow(f1, "f1")?.0.clone(), borrow(f2, "f2")?.0.clone())?;
        let r = quantize(&s, &lambda, method(m))?;
        write_out(out, SqQuantization(r))
    })
}

/// # Safety
/// `q` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn sq_quantization_solution(q: *const SqQuantization, out: *mut SqSolution) -> SqStatus {
    guard(|| {
        let q = borrow(q, "quantization")?;
        if out.is_null() {
            return Err(Failure(SqStatus::NullPointer, "output pointer is null".into()));
        }
        *out = match q.0.status {
            Status::Unique => SqSolution::Unique,
            Status::NoSolution => SqSolution::NoSolution,
            Status::Ambiguous => SqSolution::Ambiguous,
        };
        Ok(())
    })
}

/// Copies the quantized operator out of a result. Fails with
/// `SQ_STATUS_NO_SOLUTION` when none exists.
///
/// # Safety
/// `q` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sq_quantization_operator(q: *const SqQuantization, out: *mut *mut SqOperator) -> SqStatus {
    guard(|| {
        let q = borrow(q, "quantization")?;
        let op = q.0.operator.clone().ok_or_else(|| {
            Failure(SqStatus::NoSolution, "no equivariant quantization exists for this symbol".into())
        })?;
        write_out(out, SqOperator(op))
    })
}

/// # Safety
/// `q` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn sq_quantization_free(q: *mut SqQuantization) {
    if !q.is_null() {
        drop(Box::from_raw(q));
    }
}

/// Deterministic JSON form; free with [`sq_string_free`]. Null on a null handle.
///
/// # Safety
/// `op` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn sq_operator_to_json(op: *const SqOperator) -> *mut c_char {
    op.as_ref().map_or(ptr::null_mut(), |op| into_c_string(operator_json(&op.0).to_string()))
}

/// Text form; free with [`sq_string_free`]. Null on a null handle.
///
/// # Safety
/// `op` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn sq_operator_to_string(op: *const SqOperator) -> *mut c_char {
    op.as_ref().map_or(ptr::null_mut(), |op| into_c_string(op.0.to_string()))
}

/// Applies the operator to a density.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sq_operator_apply(op: *const SqOperator, f: *const SqSuperFn, out: *mut *mut SqSuperFn) -> SqStatus {
    guard(|| {
        let g = borrow(op, "operator")?.0.apply(&borrow(f, "f")?.0);
        write_out(out, SqSuperFn(g))
    })
}

/// Lie derivative of the operator along the contact field with Hamiltonian `f`.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sq_lie_op(f: *const SqSuperFn, op: *const SqOperator, out: *mut *mut SqOperator) -> SqStatus {
    guard(|| {
        let d = lie_op(&borrow(f, "f")?.0, &borrow(op, "operator")?.0);
        write_out(out, SqOperator(d))
    })
}

/// `1` when the two operators are equal, `0` otherwise or on null input.
///
/// # Safety
/// Handles must be live or null.
#[no_mangle]
pub unsafe extern "C" fn sq_operator_equal(a: *const SqOperator, b: *const SqOperator) -> i32 {
    match (a.as_ref(), b.as_ref()) {
        (Some(a), Some(b)) => i32::from(a.0 == b.0),
        _ => 0,
    }
}

/// # Safety
/// `op` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn sq_operator_free(op: *mut SqOperator) {
    if !op.is_null() {
        drop(Box::from_raw(op));
    }
}

/// Randomized exact equivariance check; writes the number of generators (out
/// of 8) that passed every trial.
///
/// # Safety
/// String arguments must be nul-terminated; `passed` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sq_verify_equivariance(
    k_twice: u32,
    lambda: *const c_char,
    delta: *const c_char,
    trials: u32,
    seed: u64,
    max_degree: u32,
    m: SqMethod,
    passed: *mut u32,
) -> SqStatus {
    guard(|| {
        let lambda = rational(lambda, "lambda")?;
        let delta = rational(delta, "delta")?;
        if passed.is_null() {
            return Err(Failure(SqStatus::NullPointer, "output pointer is null".into()));
        }
        let report = verify_equivariance(&lambda, &delta, HalfInt(k_twice), trials as usize, seed, max_degree as usize, method(m));
        if let Some(e) = report.errors.first() {
            return Err(Failure(SqStatus::ZeroDenominator, e.clone()));
        }
        *passed = report.passed_generators() as u32;
        Ok(())
    })
}
