//! C interface to `conorm-core`.
//!
//! Instances are opaque handles created from a JSON specification. Every
//! function returns a [`ConormStatus`]; on failure a message is available
//! from [`conorm_last_error`] on the same thread. Strings returned through
//! `out` parameters are owned by the caller and released with
//! [`conorm_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use conorm_core::cli::{check_json, table_csv, verify_json};
use conorm_core::conditions::{decompose_triples, theorem_verdict};
use conorm_core::genop::GeneratedOp;
use conorm_core::numeric::parse_rational;
use conorm_core::oracle;
use conorm_core::spec::InstanceSpec;

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConormStatus {
    Ok = 0,
    /// A null pointer or malformed argument.
    InvalidArgument = 1,
    /// The specification failed to parse or validate.
    InvalidSpec = 2,
    /// The verdict and the brute-force checks disagree.
    Inconsistent = 3,
    Internal = 4,
}

/// A parsed and validated instance.
pub struct ConormInstance {
    spec: InstanceSpec,
    op: GeneratedOp,
}

impl ConormInstance {
    fn name(&self) -> &str {
        self.spec.name().unwrap_or("unnamed")
    }
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<Vec<u8>>) {
    let mut bytes: Vec<u8> = msg.into();
    bytes.retain(|&b| b != 0);
    let msg = CString::new(bytes).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

struct Fail(ConormStatus, String);

fn guard(f: impl FnOnce() -> Result<ConormStatus, Fail>) -> ConormStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => status,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal error");
            ConormStatus::Internal
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(ConormStatus::InvalidArgument, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(ConormStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn instance<'a>(p: *const ConormInstance) -> Result<&'a ConormInstance, Fail> {
    p.as_ref().ok_or_else(|| Fail(ConormStatus::InvalidArgument, "instance is null".into()))
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(ConormStatus::InvalidArgument, "out is null".into()));
    }
    let c = CString::new(s).map_err(|_| Fail(ConormStatus::Internal, "output contains nul".into()))?;
    *out = c.into_raw();
    Ok(())
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("report serializes")
}

/// Parses `json` and stores a new handle in `*out`.
///
/// # Safety
/// `json` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn conorm_instance_from_json(json: *const c_char, out: *mut *mut ConormInstance) -> ConormStatus {
    guard(|| {
        if out.is_null() {
            return Err(Fail(ConormStatus::InvalidArgument, "out is null".into()));
        }
        *out = ptr::null_mut();
        let text = str_arg(json, "json")?;
        let spec = InstanceSpec::parse(text).map_err(|e| Fail(ConormStatus::InvalidSpec, e.to_string()))?;
        let op = spec.build().map_err(|e| Fail(ConormStatus::InvalidSpec, e.to_string()))?;
        *out = Box::into_raw(Box::new(ConormInstance { spec, op }));
        Ok(ConormStatus::Ok)
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `inst` must come from [`conorm_instance_from_json`] and not be used again.
#[no_mangle]
pub unsafe extern "C" fn conorm_instance_free(inst: *mut ConormInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

/// `T(x, y)` as rational text `"p/q"`.
///
/// # Safety
/// Pointers must be valid; `x` and `y` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn conorm_eval(
    inst: *const ConormInstance,
    x: *const c_char,
    y: *const c_char,
    out: *mut *mut c_char,
) -> ConormStatus {
    guard(|| {
        let inst = instance(inst)?;
        let parse = |p, what| -> Result<_, Fail> {
            parse_rational(str_arg(p, what)?).map_err(|e| Fail(ConormStatus::InvalidArgument, format!("{what}: {e}")))
        };
        let (x, y) = (parse(x, "x")?, parse(y, "y")?);
        put_string(out, inst.op.eval(&x, &y).to_string())?;
        Ok(ConormStatus::Ok)
    })
}

/// The verdict report as JSON.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn conorm_check_json(inst: *const ConormInstance, out: *mut *mut c_char) -> ConormStatus {
    guard(|| {
        let inst = instance(inst)?;
        let verdict = theorem_verdict(&inst.op);
        let issues = verdict.consistency_issues();
        put_string(out, pretty(&check_json(inst.name(), &verdict, &issues)))?;
        Ok(if issues.is_empty() { ConormStatus::Ok } else { ConormStatus::Inconsistent })
    })
}

/// The verdict with the brute-force oracle section as JSON. The report is
/// written even when the status is `Inconsistent`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn conorm_verify_json(
    inst: *const ConormInstance,
    denominator: u64,
    witness_budget: u64,
    out: *mut *mut c_char,
) -> ConormStatus {
    guard(|| {
        let inst = instance(inst)?;
        if denominator < 2 {
            return Err(Fail(ConormStatus::InvalidArgument, "denominator must be at least 2".into()));
        }
        let budget = usize::try_from(witness_budget).unwrap_or(usize::MAX);
        let (verdict, report) = oracle::verify(&inst.op, denominator, budget);
        put_string(out, pretty(&verify_json(inst.name(), &verdict, &report)))?;
        Ok(if report.issues.is_empty() { ConormStatus::Ok } else { ConormStatus::Inconsistent })
    })
}

/// The triple decomposition, or the violated constraint, as JSON.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn conorm_decompose_json(inst: *const ConormInstance, out: *mut *mut c_char) -> ConormStatus {
    guard(|| {
        let inst = instance(inst)?;
        let v = match decompose_triples(&inst.op) {
            Ok(t) => serde_json::json!({"instance": inst.name(), "triples": t.triples}),
            Err(e) => serde_json::json!({"instance": inst.name(), "failure": e}),
        };
        put_string(out, pretty(&v))?;
        Ok(ConormStatus::Ok)
    })
}

/// `T` on the grid `0, step, 2·step, …, 1` as CSV.
///
/// # Safety
/// Pointers must be valid; `step` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn conorm_table_csv(
    inst: *const ConormInstance,
    step: *const c_char,
    out: *mut *mut c_char,
) -> ConormStatus {
    guard(|| {
        let inst = instance(inst)?;
        let step = parse_rational(str_arg(step, "step")?)
            .map_err(|e| Fail(ConormStatus::InvalidArgument, format!("step: {e}")))?;
        if step.is_zero() {
            return Err(Fail(ConormStatus::InvalidArgument, "step must be positive".into()));
        }
        put_string(out, table_csv(&inst.op, &step))?;
        Ok(ConormStatus::Ok)
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used again.
#[no_mangle]
pub unsafe extern "C" fn conorm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failure on this thread. Valid until the next call
/// into the library from the same thread.
#[no_mangle]
pub extern "C" fn conorm_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version, static.
#[no_mangle]
pub extern "C" fn conorm_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
