//! C ABI for `faultdiag`.
//!
//! Objects cross the boundary as opaque handles created by `fd_*_parse` or
//! `fd_*_gen_*` and released with the matching `fd_*_free`. Every fallible
//! call returns an [`FdStatus`]; on anything but `FD_STATUS_OK` the message
//! is available from [`fd_last_error_message`] on the same thread. Strings
//! handed out by the library are released with [`fd_string_free`].
//!
//! Assignments are arrays of bytes, one per input variable in ascending
//! variable order, each 0 or 1. A null fault pointer means the empty fault.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use faultdiag::constructions::{s1_network, s2_network, vc_reduction_decide, ReductionVariant, VcInstance};
use faultdiag::{io, Assignment, DecisionTree, DiagnosisProblem, Error, Fault, SwitchingNetwork, SymmetricSpec};

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FdStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Fault = 3,
    Arity = 4,
    Range = 5,
    Precondition = 6,
    Resource = 7,
    Structure = 8,
    Network = 9,
    Parse = 10,
    /// The output buffer is too small; the required length was written.
    BufferTooSmall = 11,
    Panic = 12,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FdVariant {
    Q1 = 0,
    Q2 = 1,
}

pub struct FdNetwork(SwitchingNetwork);

pub struct FdFault(Fault);

pub struct FdProblem(DiagnosisProblem);

pub struct FdTree {
    tree: DecisionTree,
    arity: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(FdStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e.code() {
            "E_FAULT" => FdStatus::Fault,
            "E_ARITY" => FdStatus::Arity,
            "E_RANGE" => FdStatus::Range,
            "E_PRECONDITION" => FdStatus::Precondition,
            "E_RESOURCE" => FdStatus::Resource,
            "E_STRUCTURE" => FdStatus::Structure,
            "E_NETWORK" => FdStatus::Network,
            _ => FdStatus::Parse,
        };
        Failure(status, format!("{}: {e}", e.code()))
    }
}

fn null(what: &str) -> Failure {
    Failure(FdStatus::NullArgument, format!("{what} is null"))
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> FdStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            FdStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic".into());
            FdStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(FdStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn ref_arg<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn put<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn put_box<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    put(out, Box::into_raw(Box::new(value)), "out")
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure(FdStatus::Structure, "string contains NUL".into()))?;
    put(out, c.into_raw(), "out")
}

unsafe fn assignment_arg(bits: *const u8, len: usize) -> Result<Assignment, Failure> {
    if bits.is_null() && len > 0 {
        return Err(null("input"));
    }
    let slice = if len == 0 { &[][..] } else { std::slice::from_raw_parts(bits, len) };
    if let Some(b) = slice.iter().find(|&&b| b > 1) {
        return Err(Failure(FdStatus::Range, format!("input byte {b} is not 0 or 1")));
    }
    Ok(Assignment::new(slice.iter().map(|&b| b == 1).collect()))
}

unsafe fn fault_or_empty(fault: *const FdFault, empty: &Fault) -> &Fault {
    match fault.as_ref() {
        Some(f) => &f.0,
        None => empty,
    }
}

/// Message for the last failed call on this thread, or null. Valid until
/// the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn fd_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn fd_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn fd_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fd_network_parse(json: *const c_char, out: *mut *mut FdNetwork) -> FdStatus {
    guard(|| {
        let net = io::parse_network(str_arg(json, "json")?)?;
        put_box(out, FdNetwork(net))
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fd_network_gen_s1(n: usize, out: *mut *mut FdNetwork) -> FdStatus {
    guard(|| put_box(out, FdNetwork(s1_network(n)?)))
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fd_network_gen_s2(n: usize, out: *mut *mut FdNetwork) -> FdStatus {
    guard(|| put_box(out, FdNetwork(s2_network(n)?)))
}

/// Ladder network for the symmetric function whose value on inputs with
/// `k` ones is `spectrum[k]`; `len` is `n + 1`.
///
/// # Safety
/// `spectrum` must point to `len` bytes; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fd_network_gen_shannon(spectrum: *const u8, len: usize, out: *mut *mut FdNetwork) -> FdStatus {
    guard(|| {
        let bits = assignment_arg(spectrum, len)?;
        let spec = SymmetricSpec::new(bits.bits().to_vec())?;
        put_box(out, FdNetwork(faultdiag::shannon_network(&spec)))
    })
}

/// # Safety
/// `net` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fd_network_to_json(net: *const FdNetwork, out: *mut *mut c_char) -> FdStatus {
    guard(|| put_string(out, io::serialize_network(&ref_arg(net, "network")?.0)))
}

/// Number of input variables, or 0 for a null handle.
///
/// # Safety
/// `net` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fd_network_arity(net: *const FdNetwork) -> usize {
    net.as_ref().map_or(0, |n| n.0.arity())
}

/// # Safety
/// `net` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fd_network_edge_count(net: *const FdNetwork) -> usize {
    net.as_ref().map_or(0, |n| n.0.edge_count())
}

/// # Safety
/// `net` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fd_network_free(net: *mut FdNetwork) {
    if !net.is_null() {
        drop(Box::from_raw(net));
    }
}

/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fd_fault_parse(json: *const c_char, out: *mut *mut FdFault) -> FdStatus {
    guard(|| {
        let fault = io::parse_fault(str_arg(json, "json")?)?;
        put_box(out, FdFault(fault))
    })
}

/// # Safety
/// `fault` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fd_fault_to_json(fault: *const FdFault, out: *mut *mut c_char) -> FdStatus {
    guard(|| put_string(out, io::serialize_fault(&ref_arg(fault, "fault")?.0)))
}

/// # Safety
/// `fault` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fd_fault_free(fault: *mut FdFault) {
    if !fault.is_null() {
        drop(Box::from_raw(fault));
    }
}

/// Value of the network under `fault` (null for none) at `input`.
///
/// # Safety
/// `net` must be a live handle, `fault` null or live, `input` must point to
/// `len` bytes and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fd_evaluate(
    net: *const FdNetwork,
    fault: *const FdFault,
    input: *const u8,
    len: usize,
    out: *mut bool,
) -> FdStatus {
    guard(|| {
        let net = &ref_arg(net, "network")?.0;
        let empty = Fault::empty();
        let a = assignment_arg(input, len)?;
        put(out, net.evaluate(fault_or_empty(fault, &empty), &a)?, "out")
    })
}

/// Writes the `2^m` table values (byte `i` for the input with index `i`,
/// bit `j` of `i` being the `j`-th variable) into `buf`. `*len` is set to
/// `2^m` in every case; a short buffer yields `FD_STATUS_BUFFER_TOO_SMALL`.
///
/// # Safety
/// `net` must be live, `fault` null or live, `buf` must hold `cap` bytes
/// and `len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fd_truth_table(
    net: *const FdNetwork,
    fault: *const FdFault,
    buf: *mut u8,
    cap: usize,
    len: *mut usize,
) -> FdStatus {
    guard(|| {
        let net = &ref_arg(net, "network")?.0;
        let empty = Fault::empty();
        let f = faultdiag::truth_table(net, fault_or_empty(fault, &empty))?;
        put(len, f.len(), "len")?;
        if cap < f.len() || buf.is_null() {
            return Err(Failure(
                FdStatus::BufferTooSmall,
                format!("table needs {} bytes, buffer has {cap}", f.len()),
            ));
        }
        for i in 0..f.len() {
            buf.add(i).write(f.value(i) as u8);
        }
        Ok(())
    })
}

/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fd_problem_parse(json: *const c_char, out: *mut *mut FdProblem) -> FdStatus {
    guard(|| {
        let p = io::parse_problem(str_arg(json, "json")?)?;
        put_box(out, FdProblem(p))
    })
}

/// # Safety
/// `problem` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fd_problem_free(problem: *mut FdProblem) {
    if !problem.is_null() {
        drop(Box::from_raw(problem));
    }
}

/// Builds a tree solving the problem: minimum depth if `exact`, greedy
/// otherwise.
///
/// # Safety
/// `problem` must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fd_tree_build(problem: *const FdProblem, exact: bool, out: *mut *mut FdTree) -> FdStatus {
    guard(|| {
        let p = &ref_arg(problem, "problem")?.0;
        let tree = if exact {
            faultdiag::build_tree_exact(p)?
        } else {
            faultdiag::build_tree_greedy(p)?
        };
        put_box(
            out,
            FdTree {
                tree,
                arity: p.network().arity(),
            },
        )
    })
}

/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fd_tree_parse(json: *const c_char, out: *mut *mut FdTree) -> FdStatus {
    guard(|| {
        let (tree, arity) = io::parse_tree(str_arg(json, "json")?)?;
        put_box(out, FdTree { tree, arity })
    })
}

/// # Safety
/// `tree` and `problem` must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fd_tree_verify(tree: *const FdTree, problem: *const FdProblem, out: *mut bool) -> FdStatus {
    guard(|| {
        let ok = faultdiag::verify_tree(&ref_arg(tree, "tree")?.tree, &ref_arg(problem, "problem")?.0)?;
        put(out, ok, "out")
    })
}

/// Depth of the tree, or 0 for a null handle.
///
/// # Safety
/// `tree` must be null or live.
#[no_mangle]
pub unsafe extern "C" fn fd_tree_depth(tree: *const FdTree) -> usize {
    tree.as_ref().map_or(0, |t| t.tree.depth())
}

/// # Safety
/// `tree` must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fd_tree_to_json(tree: *const FdTree, out: *mut *mut c_char) -> FdStatus {
    guard(|| {
        let t = ref_arg(tree, "tree")?;
        put_string(out, io::serialize_tree(&t.tree, t.arity))
    })
}

/// # Safety
/// `tree` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fd_tree_free(tree: *mut FdTree) {
    if !tree.is_null() {
        drop(Box::from_raw(tree));
    }
}

/// Decides whether the graph (`{"n": .., "edges": [[i, j], ..]}`) has a
/// vertex cover of at most `m` vertices, through the diagnosis reduction.
///
/// # Safety
/// `graph_json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fd_vc_decide(
    graph_json: *const c_char,
    m: usize,
    variant: FdVariant,
    out: *mut bool,
) -> FdStatus {
    guard(|| {
        let g = io::parse_graph(str_arg(graph_json, "graph_json")?)?;
        let variant = match variant {
            FdVariant::Q1 => ReductionVariant::Q1,
            FdVariant::Q2 => ReductionVariant::Q2,
        };
        put(out, vc_reduction_decide(&VcInstance::new(g, m)?, variant)?, "out")
    })
}
