//! Exercise the C ABI through the exported symbols, the way a foreign
//! binding would.

use std::ffi::{CStr, CString};
use std::ptr;

use libc::c_char;

use argstr_ffi::*;

const THEORY: &str = "\
axiom k1: a1
prem o1: p1 w=0.5
defeas d1: a1 => c1 w=0.25
strict s1: c1, p1 -> cc
";

const GRAPH: &str = r#"{
  "arguments": [
    {"id": "a", "weight": 1.0},
    {"id": "b", "weight": 1.0},
    {"id": "c", "weight": 1.0},
    {"id": "d", "weight": 1.0},
    {"id": "e", "weight": 1.0}
  ],
  "attacks": [
    {"from": "a", "to": "b", "weight": 1.0},
    {"from": "b", "to": "c", "weight": 1.0},
    {"from": "b", "to": "e", "weight": 1.0},
    {"from": "d", "to": "c", "weight": 1.0}
  ]
}"#;

fn take_string(ptr: *mut c_char) -> String {
    assert!(!ptr.is_null());
    let out = unsafe { CStr::from_ptr(ptr) }.to_str().unwrap().to_string();
    unsafe { argstr_string_free(ptr) };
    out
}

fn parse_ok(text: &str) -> *mut ArgstrTheory {
    let c_text = CString::new(text).unwrap();
    let mut handle: *mut ArgstrTheory = ptr::null_mut();
    let status = unsafe { argstr_theory_parse(c_text.as_ptr(), &mut handle) };
    assert_eq!(status, ArgstrStatus::Ok);
    assert!(!handle.is_null());
    handle
}

#[test]
fn version_is_exposed() {
    let v = unsafe { CStr::from_ptr(argstr_version()) }
        .to_str()
        .unwrap();
    assert!(!v.is_empty());
}

#[test]
fn parse_validate_enumerate_round_trip() {
    let theory = parse_ok(THEORY);

    let mut json: *mut c_char = ptr::null_mut();
    let status = unsafe { argstr_theory_validate(theory, &mut json) };
    assert_eq!(status, ArgstrStatus::Ok);
    let report: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
    assert_eq!(report["valid"], serde_json::json!(true));

    let method = CString::new("sp").unwrap();
    let mut json: *mut c_char = ptr::null_mut();
    let status = unsafe { argstr_enumerate(theory, 8, method.as_ptr(), &mut json) };
    assert_eq!(status, ArgstrStatus::Ok);
    let rows: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
    let strengths: Vec<f64> = rows
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["strength"].as_f64().unwrap())
        .collect();
    let mut sorted = strengths.clone();
    sorted.sort_by(f64::total_cmp);
    assert_eq!(sorted, vec![0.125, 0.25, 0.5, 1.0]);

    unsafe { argstr_theory_free(theory) };
}

#[test]
fn parse_errors_surface_with_messages() {
    let c_text = CString::new("prem p: q w=2\n").unwrap();
    let mut handle: *mut ArgstrTheory = ptr::null_mut();
    let status = unsafe { argstr_theory_parse(c_text.as_ptr(), &mut handle) };
    assert_eq!(status, ArgstrStatus::ParseError);
    assert!(handle.is_null());
    let message = unsafe { CStr::from_ptr(argstr_last_error()) }
        .to_str()
        .unwrap();
    assert!(message.contains("[0, 1)"), "{message}");
}

#[test]
fn graph_semantics_work_over_json() {
    let graph = CString::new(GRAPH).unwrap();

    let mut json: *mut c_char = ptr::null_mut();
    let status = unsafe { argstr_grounded(graph.as_ptr(), &mut json) };
    assert_eq!(status, ArgstrStatus::Ok);
    let labels: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
    assert_eq!(labels["accepted"], serde_json::json!(["a", "d", "e"]));

    let mut json: *mut c_char = ptr::null_mut();
    let status = unsafe { argstr_degrees(graph.as_ptr(), 1e-12, 10_000, &mut json) };
    assert_eq!(status, ArgstrStatus::Ok);
    let degrees: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
    let c = degrees["degrees"]["c"].as_f64().unwrap();
    assert!((c - 0.4).abs() < 1e-9);

    let mut json: *mut c_char = ptr::null_mut();
    let status = unsafe { argstr_degrees(graph.as_ptr(), 1e-12, 1, &mut json) };
    assert_eq!(status, ArgstrStatus::NoConvergence);
}

#[test]
fn seeded_graph_uses_strengths_as_base_weights() {
    let theory = parse_ok(THEORY);
    let method = CString::new("wl").unwrap();
    let attacks = CString::new(r#"{"attacks": [{"from": "A4", "to": "A2"}]}"#).unwrap();
    let mut json: *mut c_char = ptr::null_mut();
    let status =
        unsafe { argstr_seed_graph(theory, method.as_ptr(), 8, attacks.as_ptr(), &mut json) };
    assert_eq!(status, ArgstrStatus::Ok);
    let graph: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
    assert_eq!(graph["arguments"].as_array().unwrap().len(), 4);
    assert_eq!(graph["attacks"].as_array().unwrap().len(), 1);

    let bogus = CString::new(r#"{"attacks": [{"from": "nope", "to": "A1"}]}"#).unwrap();
    let mut json: *mut c_char = ptr::null_mut();
    let status =
        unsafe { argstr_seed_graph(theory, method.as_ptr(), 8, bogus.as_ptr(), &mut json) };
    assert_eq!(status, ArgstrStatus::InvalidGraph);

    unsafe { argstr_theory_free(theory) };
}

#[test]
fn principle_probe_and_well_behavedness() {
    let method = CString::new("lukasiewicz").unwrap();
    let principle = CString::new("resilience").unwrap();
    let mut json: *mut c_char = ptr::null_mut();
    let status =
        unsafe { argstr_probe_principle(method.as_ptr(), principle.as_ptr(), 500, 7, &mut json) };
    assert_eq!(status, ArgstrStatus::Ok);
    let rows: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
    assert_eq!(rows[0]["verdict"]["status"], serde_json::json!("falsified"));

    let mut json: *mut c_char = ptr::null_mut();
    let status = unsafe { argstr_check_well_behaved(method.as_ptr(), false, &mut json) };
    assert_eq!(status, ArgstrStatus::Ok);
    let verdict = take_string(json);
    assert!(verdict.contains("Certified"), "{verdict}");

    let mean = CString::new("prod-mean").unwrap();
    let mut json: *mut c_char = ptr::null_mut();
    let status = unsafe { argstr_check_well_behaved(mean.as_ptr(), false, &mut json) };
    assert_eq!(status, ArgstrStatus::DomainError);
    let verdict = take_string(json);
    assert!(verdict.contains("\"clause\": 7"), "{verdict}");
}

#[test]
fn null_arguments_are_rejected_not_crashing() {
    let mut handle: *mut ArgstrTheory = ptr::null_mut();
    assert_eq!(
        unsafe { argstr_theory_parse(ptr::null(), &mut handle) },
        ArgstrStatus::NullPointer
    );
    let mut json: *mut c_char = ptr::null_mut();
    assert_eq!(
        unsafe { argstr_theory_validate(ptr::null(), &mut json) },
        ArgstrStatus::NullPointer
    );
    unsafe { argstr_theory_free(ptr::null_mut()) };
    unsafe { argstr_string_free(ptr::null_mut()) };
}
