//! C ABI bindings.
//!
//! Instances and solutions are opaque handles owned by the caller and
//! released with the matching `_free` function. Every call returns an
//! [`EdgeaugStatus`]; on failure [`edgeaug_last_error_message`] describes
//! the error for the current thread. Strings returned by the library are
//! released with [`edgeaug_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use edgeaug::io::{parse_instance, serialize_instance, serialize_solution};
use edgeaug::node_conn::solve_node_1_2;
use edgeaug::oracle::{brute_force_solve, Mode, Target};
use edgeaug::zero_two::{branch_solve, solve_no_duplicates};
use edgeaug::{AugError, Instance, Solution, Status};

pub struct EdgeaugInstance(Instance);

pub struct EdgeaugSolution(Solution);

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeaugStatus {
    Ok = 0,
    Infeasible = 1,
    Parse = 2,
    InvalidArgument = 3,
    Precondition = 4,
    SizeLimit = 5,
    Integrity = 6,
    NullPointer = 7,
    Panic = 8,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: &str) {
    let text = CString::new(message.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
}

fn status_of(e: &AugError) -> EdgeaugStatus {
    match e {
        AugError::Parse { .. } => EdgeaugStatus::Parse,
        AugError::InvalidArgument(_) => EdgeaugStatus::InvalidArgument,
        AugError::Precondition(_) => EdgeaugStatus::Precondition,
        AugError::SizeLimit { .. } => EdgeaugStatus::SizeLimit,
        AugError::Integrity(_) => EdgeaugStatus::Integrity,
    }
}

struct Failure(EdgeaugStatus, String);

impl From<AugError> for Failure {
    fn from(e: AugError) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(EdgeaugStatus::NullPointer, format!("{what} is null"))
}

/// Runs `body`, turning errors and panics into a status code.
fn guard(body: impl FnOnce() -> Result<EdgeaugStatus, Failure>) -> EdgeaugStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(status)) => status,
        Ok(Err(Failure(status, message))) => {
            set_error(&message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            EdgeaugStatus::Panic
        }
    }
}

unsafe fn instance<'a>(p: *const EdgeaugInstance) -> Result<&'a Instance, Failure> {
    p.as_ref().map(|i| &i.0).ok_or_else(|| null("instance"))
}

unsafe fn solution<'a>(p: *const EdgeaugSolution) -> Result<&'a Solution, Failure> {
    p.as_ref().map(|s| &s.0).ok_or_else(|| null("solution"))
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

unsafe fn store(out: *mut *mut EdgeaugSolution, sol: Solution) -> Result<EdgeaugStatus, Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    let status = match sol.status {
        Status::Optimal => EdgeaugStatus::Ok,
        Status::Infeasible => EdgeaugStatus::Infeasible,
    };
    *out = Box::into_raw(Box::new(EdgeaugSolution(sol)));
    Ok(status)
}

/// Parses the text instance format into a new handle written to `out`.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn edgeaug_instance_parse(
    text: *const c_char,
    out: *mut *mut EdgeaugInstance,
) -> EdgeaugStatus {
    guard(|| {
        if text.is_null() {
            return Err(null("text"));
        }
        if out.is_null() {
            return Err(null("output pointer"));
        }
        let text = CStr::from_ptr(text)
            .to_str()
            .map_err(|_| Failure(EdgeaugStatus::Parse, "instance text is not UTF-8".into()))?;
        let inst = parse_instance(text)?;
        *out = Box::into_raw(Box::new(EdgeaugInstance(inst)));
        Ok(EdgeaugStatus::Ok)
    })
}

/// # Safety
/// `inst` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn edgeaug_instance_free(inst: *mut EdgeaugInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

/// The instance in the text format; free with [`edgeaug_string_free`].
///
/// # Safety
/// `inst` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn edgeaug_instance_to_text(inst: *const EdgeaugInstance) -> *mut c_char {
    match instance(inst) {
        Ok(i) => to_c_string(serialize_instance(i)),
        Err(_) => ptr::null_mut(),
    }
}

/// Augments to `k`-edge-connectivity through the kernel pipeline.
/// Returns `Ok` or `Infeasible` with a solution handle in `out`.
///
/// # Safety
/// `inst` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn edgeaug_solve(
    inst: *const EdgeaugInstance,
    out: *mut *mut EdgeaugSolution,
) -> EdgeaugStatus {
    guard(|| store(out, edgeaug::solver::solve(instance(inst)?)?))
}

/// Exhaustive reference search.
///
/// # Safety
/// `inst` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn edgeaug_oracle(
    inst: *const EdgeaugInstance,
    multiset: bool,
    node2: bool,
    out: *mut *mut EdgeaugSolution,
) -> EdgeaugStatus {
    guard(|| {
        let i = instance(inst)?;
        let mode = if multiset { Mode::Multiset } else { Mode::Set };
        let target = if node2 {
            Target::NodeConn2
        } else {
            Target::EdgeConn(i.k())
        };
        store(out, brute_force_solve(i, mode, target)?)
    })
}

/// Augments an arbitrary graph to 2-edge-connectivity.
///
/// # Safety
/// `inst` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn edgeaug_zero2(
    inst: *const EdgeaugInstance,
    no_duplicates: bool,
    out: *mut *mut EdgeaugSolution,
) -> EdgeaugStatus {
    guard(|| {
        let i = instance(inst)?;
        let sol = if no_duplicates {
            solve_no_duplicates(i)?
        } else {
            branch_solve(i)?
        };
        store(out, sol)
    })
}

/// Augments a connected graph to 2-node-connectivity.
///
/// # Safety
/// `inst` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn edgeaug_node12(
    inst: *const EdgeaugInstance,
    out: *mut *mut EdgeaugSolution,
) -> EdgeaugStatus {
    guard(|| store(out, solve_node_1_2(instance(inst)?)?))
}

/// `Ok` for an optimal solution, `Infeasible` otherwise.
///
/// # Safety
/// `sol` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn edgeaug_solution_status(sol: *const EdgeaugSolution) -> EdgeaugStatus {
    guard(|| {
        Ok(match solution(sol)?.status {
            Status::Optimal => EdgeaugStatus::Ok,
            Status::Infeasible => EdgeaugStatus::Infeasible,
        })
    })
}

/// Total cost as `num/den`; free with [`edgeaug_string_free`].
///
/// # Safety
/// `sol` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn edgeaug_solution_cost(sol: *const EdgeaugSolution) -> *mut c_char {
    match solution(sol) {
        Ok(s) => to_c_string(s.cost.to_string()),
        Err(_) => ptr::null_mut(),
    }
}

/// # Safety
/// `sol` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn edgeaug_solution_weight(sol: *const EdgeaugSolution) -> u32 {
    solution(sol).map_or(0, |s| s.weight)
}

/// # Safety
/// `sol` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn edgeaug_solution_link_count(sol: *const EdgeaugSolution) -> usize {
    solution(sol).map_or(0, |s| s.links.len())
}

/// Endpoints and weight of the `index`-th chosen link.
///
/// # Safety
/// `sol` must be a live handle; `u`, `v` and `t` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn edgeaug_solution_link(
    sol: *const EdgeaugSolution,
    index: usize,
    u: *mut usize,
    v: *mut usize,
    t: *mut u32,
) -> EdgeaugStatus {
    guard(|| {
        let s = solution(sol)?;
        if u.is_null() || v.is_null() || t.is_null() {
            return Err(null("output pointer"));
        }
        let link = s.links.get(index).ok_or_else(|| {
            Failure(
                EdgeaugStatus::InvalidArgument,
                format!("link index {index} out of range"),
            )
        })?;
        *u = link.u;
        *v = link.v;
        *t = link.t;
        Ok(EdgeaugStatus::Ok)
    })
}

/// The solution as JSON; free with [`edgeaug_string_free`].
///
/// # Safety
/// `sol` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn edgeaug_solution_to_json(sol: *const EdgeaugSolution) -> *mut c_char {
    match solution(sol) {
        Ok(s) => to_c_string(serialize_solution(s)),
        Err(_) => ptr::null_mut(),
    }
}

/// # Safety
/// `sol` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn edgeaug_solution_free(sol: *mut EdgeaugSolution) {
    if !sol.is_null() {
        drop(Box::from_raw(sol));
    }
}

/// # Safety
/// `s` must be a string returned by this library, or null.
#[no_mangle]
pub unsafe extern "C" fn edgeaug_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failed call on this thread, or null. Valid until
/// the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn edgeaug_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}
