//! C ABI for the argstr engine. Handles are opaque pointers, results come
//! back as JSON strings allocated by this library, and every call returns an
//! [`ArgstrStatus`]. On any non-`Ok` status, `argstr_last_error` holds a
//! human-readable message for the calling thread until the next failure.
//!
//! Strings passed in must be NUL-terminated UTF-8. Strings returned through
//! `out_json` must be released with `argstr_string_free`; theory handles
//! with `argstr_theory_free`.

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use libc::c_char;

use argstr::argument::enumerate_arguments;
use argstr::dsl::parse_theory;
use argstr::model::WeightedArgumentationTheory;
use argstr::principles::{
    known_status, probe_principle, GeneratorConfig, PrincipleId, PrincipleVerdict,
};
use argstr::report::summarize_arguments;
use argstr::semantics::{
    grounded_labelling, h_categorizer_degrees, seed_graph_from_theory, Attack, SemanticsError,
    WeightedArgumentationGraph,
};
use argstr::strength::{check_well_behaved, lookup_method, GridSpec, StrengthMethod};

/// Opaque handle to a parsed, immutable theory.
pub struct ArgstrTheory {
    inner: Arc<WeightedArgumentationTheory>,
}

/// Status codes returned by every API call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArgstrStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidTheory = 4,
    UnknownMethod = 5,
    UnknownPrinciple = 6,
    InvalidGraph = 7,
    NoConvergence = 8,
    DomainError = 9,
    InternalError = 10,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn fail(status: ArgstrStatus, message: impl ToString) -> ArgstrStatus {
    let message = message.to_string().replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(message).unwrap_or_default();
    });
    status
}

/// Message for the last failing call on this thread. Valid until the next
/// failing call; never NULL.
#[no_mangle]
pub extern "C" fn argstr_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Engine version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn argstr_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, ArgstrStatus> {
    if ptr.is_null() {
        return Err(fail(ArgstrStatus::NullPointer, "NULL string argument"));
    }
    CStr::from_ptr(ptr)
        .to_str()
        .map_err(|e| fail(ArgstrStatus::InvalidUtf8, e))
}

fn write_json(out_json: *mut *mut c_char, value: &impl serde::Serialize) -> ArgstrStatus {
    if out_json.is_null() {
        return fail(ArgstrStatus::NullPointer, "NULL output pointer");
    }
    let body = match serde_json::to_string_pretty(value) {
        Ok(body) => body,
        Err(e) => return fail(ArgstrStatus::InternalError, e),
    };
    match CString::new(body) {
        Ok(s) => {
            unsafe { *out_json = s.into_raw() };
            ArgstrStatus::Ok
        }
        Err(e) => fail(ArgstrStatus::InternalError, e),
    }
}

fn guarded(body: impl FnOnce() -> ArgstrStatus) -> ArgstrStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => fail(ArgstrStatus::InternalError, "internal panic"),
    }
}

/// Parse theory text into a handle.
///
/// # Safety
/// `text` must be a valid NUL-terminated string; `out_theory` must point to
/// writable pointer storage.
#[no_mangle]
pub unsafe extern "C" fn argstr_theory_parse(
    text: *const c_char,
    out_theory: *mut *mut ArgstrTheory,
) -> ArgstrStatus {
    guarded(|| {
        if out_theory.is_null() {
            return fail(ArgstrStatus::NullPointer, "NULL output pointer");
        }
        let text = match read_str(text) {
            Ok(t) => t,
            Err(status) => return status,
        };
        match parse_theory(text) {
            Ok(doc) => {
                let handle = Box::new(ArgstrTheory {
                    inner: Arc::new(doc.to_theory()),
                });
                *out_theory = Box::into_raw(handle);
                ArgstrStatus::Ok
            }
            Err(diagnostics) => {
                let rendered: Vec<String> = diagnostics.iter().map(|d| d.to_string()).collect();
                fail(ArgstrStatus::ParseError, rendered.join("; "))
            }
        }
    })
}

/// Release a theory handle. NULL is a no-op.
///
/// # Safety
/// `theory` must have come from `argstr_theory_parse` and not been freed.
#[no_mangle]
pub unsafe extern "C" fn argstr_theory_free(theory: *mut ArgstrTheory) {
    if !theory.is_null() {
        drop(Box::from_raw(theory));
    }
}

unsafe fn theory_ref<'a>(theory: *const ArgstrTheory) -> Result<&'a ArgstrTheory, ArgstrStatus> {
    theory
        .as_ref()
        .ok_or_else(|| fail(ArgstrStatus::NullPointer, "NULL theory handle"))
}

/// Validate a theory; writes the violation report as JSON either way.
/// Returns `Ok` for a valid theory and `InvalidTheory` otherwise.
///
/// # Safety
/// `theory` must be a live handle; `out_json` writable pointer storage.
#[no_mangle]
pub unsafe extern "C" fn argstr_theory_validate(
    theory: *const ArgstrTheory,
    out_json: *mut *mut c_char,
) -> ArgstrStatus {
    guarded(|| {
        let handle = match theory_ref(theory) {
            Ok(h) => h,
            Err(status) => return status,
        };
        let report = handle.inner.validate();
        let violations: Vec<String> = report.violations().iter().map(|v| v.to_string()).collect();
        let payload = serde_json::json!({
            "valid": report.is_valid(),
            "violations": violations,
        });
        let status = write_json(out_json, &payload);
        if status != ArgstrStatus::Ok {
            return status;
        }
        if report.is_valid() {
            ArgstrStatus::Ok
        } else {
            fail(ArgstrStatus::InvalidTheory, violations.join("; "))
        }
    })
}

fn resolve_method(name: &str) -> Result<StrengthMethod, ArgstrStatus> {
    lookup_method(name).ok_or_else(|| {
        fail(
            ArgstrStatus::UnknownMethod,
            format!("unknown method `{name}`"),
        )
    })
}

/// Enumerate arguments within `budget` and score them under `method`;
/// writes a JSON array of argument summaries.
///
/// # Safety
/// `theory` must be a live handle; `method` a valid string; `out_json`
/// writable pointer storage.
#[no_mangle]
pub unsafe extern "C" fn argstr_enumerate(
    theory: *const ArgstrTheory,
    budget: usize,
    method: *const c_char,
    out_json: *mut *mut c_char,
) -> ArgstrStatus {
    guarded(|| {
        let handle = match theory_ref(theory) {
            Ok(h) => h,
            Err(status) => return status,
        };
        let method = match read_str(method).and_then(resolve_method) {
            Ok(m) => m,
            Err(status) => return status,
        };
        let args = enumerate_arguments(&handle.inner, budget);
        let summaries = summarize_arguments(&handle.inner, &args, &method);
        write_json(out_json, &summaries)
    })
}

fn parse_graph(text: &str) -> Result<WeightedArgumentationGraph, ArgstrStatus> {
    let graph: WeightedArgumentationGraph =
        serde_json::from_str(text).map_err(|e| fail(ArgstrStatus::InvalidGraph, e))?;
    graph
        .validate()
        .map_err(|e| fail(ArgstrStatus::InvalidGraph, e))?;
    Ok(graph)
}

/// Grounded labelling (accepted/rejected/undecided) of a graph given as
/// JSON.
///
/// # Safety
/// `graph_json` must be a valid string; `out_json` writable pointer storage.
#[no_mangle]
pub unsafe extern "C" fn argstr_grounded(
    graph_json: *const c_char,
    out_json: *mut *mut c_char,
) -> ArgstrStatus {
    guarded(|| {
        let graph = match read_str(graph_json).and_then(parse_graph) {
            Ok(g) => g,
            Err(status) => return status,
        };
        write_json(out_json, &grounded_labelling(&graph))
    })
}

/// Weighted h-categorizer degrees of a graph given as JSON. Requires unit
/// attack weights; returns `NoConvergence` when the iteration stalls.
///
/// # Safety
/// `graph_json` must be a valid string; `out_json` writable pointer storage.
#[no_mangle]
pub unsafe extern "C" fn argstr_degrees(
    graph_json: *const c_char,
    eps: f64,
    max_iterations: usize,
    out_json: *mut *mut c_char,
) -> ArgstrStatus {
    guarded(|| {
        let graph = match read_str(graph_json).and_then(parse_graph) {
            Ok(g) => g,
            Err(status) => return status,
        };
        match h_categorizer_degrees(&graph, eps, max_iterations) {
            Ok(assignment) => write_json(out_json, &assignment),
            Err(e @ SemanticsError::NoConvergence { .. }) => fail(ArgstrStatus::NoConvergence, e),
            Err(e) => fail(ArgstrStatus::InvalidGraph, e),
        }
    })
}

/// Seed a weighted argumentation graph from a theory: nodes are the
/// enumerated arguments, base weights their strengths under `method`.
/// `attacks_json` may be NULL or a JSON object with an `attacks` array
/// referencing argument ids or `A1`-style aliases.
///
/// # Safety
/// `theory` must be a live handle; strings valid; `out_json` writable.
#[no_mangle]
pub unsafe extern "C" fn argstr_seed_graph(
    theory: *const ArgstrTheory,
    method: *const c_char,
    budget: usize,
    attacks_json: *const c_char,
    out_json: *mut *mut c_char,
) -> ArgstrStatus {
    guarded(|| {
        let handle = match theory_ref(theory) {
            Ok(h) => h,
            Err(status) => return status,
        };
        let method = match read_str(method).and_then(resolve_method) {
            Ok(m) => m,
            Err(status) => return status,
        };
        let attacks: Vec<Attack> = if attacks_json.is_null() {
            Vec::new()
        } else {
            #[derive(serde::Deserialize)]
            struct AttackFile {
                #[serde(default)]
                attacks: Vec<Attack>,
            }
            match read_str(attacks_json) {
                Ok(text) => match serde_json::from_str::<AttackFile>(text) {
                    Ok(file) => file.attacks,
                    Err(e) => return fail(ArgstrStatus::InvalidGraph, e),
                },
                Err(status) => return status,
            }
        };
        match seed_graph_from_theory(&handle.inner, &attacks, &method, budget) {
            Ok(graph) => write_json(out_json, &graph),
            Err(e) => fail(ArgstrStatus::InvalidGraph, e),
        }
    })
}

/// Probe one principle (or all thirteen when `principle` is NULL) under a
/// method; writes a JSON array of `{principle, expected, verdict}` rows.
/// A falsification of a registered-positive pair returns `DomainError`.
///
/// # Safety
/// Strings must be valid or NULL as documented; `out_json` writable.
#[no_mangle]
pub unsafe extern "C" fn argstr_probe_principle(
    method: *const c_char,
    principle: *const c_char,
    trials: usize,
    seed: u64,
    out_json: *mut *mut c_char,
) -> ArgstrStatus {
    guarded(|| {
        let method = match read_str(method).and_then(resolve_method) {
            Ok(m) => m,
            Err(status) => return status,
        };
        let selected: Vec<PrincipleId> = if principle.is_null() {
            PrincipleId::ALL.to_vec()
        } else {
            match read_str(principle) {
                Ok(name) => match name.parse::<PrincipleId>() {
                    Ok(p) => vec![p],
                    Err(e) => return fail(ArgstrStatus::UnknownPrinciple, e),
                },
                Err(status) => return status,
            }
        };
        let cfg = GeneratorConfig {
            seed,
            ..Default::default()
        };
        let mut rows: Vec<serde_json::Value> = Vec::new();
        for p in selected {
            match probe_principle(p, &method, &cfg, trials) {
                Ok(verdict) => {
                    let verdict = match &verdict {
                        PrincipleVerdict::Falsified { witness } => serde_json::json!({
                            "status": "falsified",
                            "witness": witness,
                        }),
                        PrincipleVerdict::NoCounterexampleFound { trials } => serde_json::json!({
                            "status": "no-counterexample-found",
                            "trials": trials,
                        }),
                        PrincipleVerdict::KnownByTheorem { theorem, trials } => serde_json::json!({
                            "status": "known-by-theorem",
                            "theorem": theorem,
                            "trials": trials,
                        }),
                    };
                    rows.push(serde_json::json!({
                        "principle": p,
                        "expected": known_status(&method, p),
                        "verdict": verdict,
                    }));
                }
                Err(e) => return fail(ArgstrStatus::DomainError, e),
            }
        }
        write_json(out_json, &rows)
    })
}

/// Check the well-behavedness clauses of an aggregation method. Writes the
/// verdict as JSON; `DomainError` when falsified, `UnknownMethod` for the
/// direct methods.
///
/// # Safety
/// `method` must be a valid string; `out_json` writable pointer storage.
#[no_mangle]
pub unsafe extern "C" fn argstr_check_well_behaved(
    method: *const c_char,
    force_grid: bool,
    out_json: *mut *mut c_char,
) -> ArgstrStatus {
    guarded(|| {
        let method = match read_str(method).and_then(resolve_method) {
            Ok(m) => m,
            Err(status) => return status,
        };
        let StrengthMethod::Aggregation(aggregation) = &method else {
            return fail(
                ArgstrStatus::UnknownMethod,
                "well-behavedness applies to aggregation methods",
            );
        };
        let verdict = check_well_behaved(aggregation, &GridSpec::default(), force_grid);
        let status = write_json(out_json, &verdict);
        if status != ArgstrStatus::Ok {
            return status;
        }
        if verdict.is_well_behaved() {
            ArgstrStatus::Ok
        } else {
            fail(ArgstrStatus::DomainError, "method is not well-behaved")
        }
    })
}

/// Release a string allocated by this library. NULL is a no-op.
///
/// # Safety
/// `s` must have been returned through an `out_json` parameter and not yet
/// freed.
#[no_mangle]
pub unsafe extern "C" fn argstr_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
