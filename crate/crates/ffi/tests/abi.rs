//! Exercises the exported C ABI: status codes, ownership pairs, value
//! correctness, and that the generated header actually compiles and links
//! from C.

use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use qrecall_ffi::{
    qr_coordination_payoff, qr_simulate_counts, qr_state_bell, qr_state_coordination,
    qr_state_free, qr_state_from_json, qr_state_from_parts, qr_state_report_json,
    qr_state_summary, qr_state_to_json, qr_string_free, qr_sweep_csv, qr_version, QrNoiseKind,
    QrState, QrStatus, QrSummary,
};

const COORDINATION_RE: [f64; 16] = [
    0.25, 0.25, 0.0, 0.0, //
    0.25, 0.25, 0.0, 0.0, //
    0.0, 0.0, 0.25, -0.25, //
    0.0, 0.0, -0.25, 0.25,
];

fn zero_summary() -> QrSummary {
    QrSummary {
        entropy_a: 0.0,
        entropy_b: 0.0,
        entropy_joint: 0.0,
        mutual_information: 0.0,
        d_ba_fixed: 0.0,
        d_ab_fixed: 0.0,
        d_ba_opt: 0.0,
        d_ab_opt: 0.0,
        negativity: 0.0,
        chsh_max: 0.0,
    }
}

fn take_string(p: *mut std::ffi::c_char) -> String {
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string();
    unsafe { qr_string_free(p) };
    s
}

#[test]
fn version_is_a_static_semver_string() {
    let v = unsafe { CStr::from_ptr(qr_version()) }.to_str().unwrap();
    assert_eq!(v.split('.').count(), 3);
}

#[test]
fn coordination_summary_and_payoff_match_the_advertised_values() {
    let state = qr_state_coordination();
    assert!(!state.is_null());

    let mut s = zero_summary();
    let status = unsafe { qr_state_summary(state, 36, &mut s) };
    assert_eq!(status, QrStatus::Ok);
    assert!((s.entropy_a - 1.0).abs() < 1e-9);
    assert!((s.entropy_b - 1.0).abs() < 1e-9);
    assert!((s.entropy_joint - 1.0).abs() < 1e-9);
    assert!((s.mutual_information - 1.0).abs() < 1e-9);
    assert!(s.d_ba_fixed.abs() < 1e-9);
    assert!((s.d_ab_fixed - 1.0).abs() < 1e-9);
    assert!(s.d_ba_opt.abs() < 1e-6);
    assert!(s.d_ab_opt.abs() < 1e-6);
    assert!(s.negativity.abs() < 1e-9);
    assert!((s.chsh_max - 2.0).abs() < 1e-9);

    let mut payoff = 0.0;
    let status = unsafe { qr_coordination_payoff(state, &mut payoff) };
    assert_eq!(status, QrStatus::Ok);
    assert!((payoff - 1.0).abs() < 1e-9);

    unsafe { qr_state_free(state) };
}

#[test]
fn bell_state_shows_entanglement_through_the_abi() {
    let state = qr_state_bell();
    let mut s = zero_summary();
    assert_eq!(unsafe { qr_state_summary(state, 12, &mut s) }, QrStatus::Ok);
    assert!((s.negativity - 0.5).abs() < 1e-9);
    assert!((s.chsh_max - 2.0 * 2.0_f64.sqrt()).abs() < 1e-9);
    assert!((s.mutual_information - 2.0).abs() < 1e-9);
    unsafe { qr_state_free(state) };
}

#[test]
fn json_roundtrip_preserves_the_state() {
    let state = qr_state_coordination();
    let mut json: *mut std::ffi::c_char = ptr::null_mut();
    assert_eq!(unsafe { qr_state_to_json(state, &mut json) }, QrStatus::Ok);
    let text = take_string(json);
    assert!(text.contains("\"dim\": 4"));

    let c = CString::new(text).unwrap();
    let mut back: *mut QrState = ptr::null_mut();
    assert_eq!(
        unsafe { qr_state_from_json(c.as_ptr(), &mut back) },
        QrStatus::Ok
    );
    let mut a = zero_summary();
    let mut b = zero_summary();
    assert_eq!(unsafe { qr_state_summary(state, 8, &mut a) }, QrStatus::Ok);
    assert_eq!(unsafe { qr_state_summary(back, 8, &mut b) }, QrStatus::Ok);
    assert_eq!(a, b);
    unsafe {
        qr_state_free(state);
        qr_state_free(back);
    }
}

#[test]
fn from_json_distinguishes_error_classes() {
    let mut out: *mut QrState = ptr::null_mut();

    let garbage = CString::new("definitely not json").unwrap();
    assert_eq!(
        unsafe { qr_state_from_json(garbage.as_ptr(), &mut out) },
        QrStatus::ParseError
    );
    assert!(out.is_null());

    let bad_trace =
        CString::new(r#"{"dim": 2, "re": [[0.5, 0.0], [0.0, 0.4]], "im": [[0.0, 0.0], [0.0, 0.0]]}"#)
            .unwrap();
    assert_eq!(
        unsafe { qr_state_from_json(bad_trace.as_ptr(), &mut out) },
        QrStatus::ValidationError
    );
    assert!(out.is_null());

    assert_eq!(
        unsafe { qr_state_from_json(ptr::null(), &mut out) },
        QrStatus::NullPointer
    );

    let invalid = [0xffu8, 0xfe, 0x00];
    assert_eq!(
        unsafe { qr_state_from_json(invalid.as_ptr() as *const _, &mut out) },
        QrStatus::InvalidUtf8
    );
}

#[test]
fn from_parts_builds_validates_and_rejects() {
    let mut out: *mut QrState = ptr::null_mut();
    let status = unsafe { qr_state_from_parts(4, COORDINATION_RE.as_ptr(), ptr::null(), &mut out) };
    assert_eq!(status, QrStatus::Ok);
    let mut payoff = 0.0;
    assert_eq!(unsafe { qr_coordination_payoff(out, &mut payoff) }, QrStatus::Ok);
    assert!((payoff - 1.0).abs() < 1e-9);
    unsafe { qr_state_free(out) };

    let bad = [0.5, 0.0, 0.0, 0.4];
    assert_eq!(
        unsafe { qr_state_from_parts(2, bad.as_ptr(), ptr::null(), &mut out) },
        QrStatus::ValidationError
    );
    assert_eq!(
        unsafe { qr_state_from_parts(0, COORDINATION_RE.as_ptr(), ptr::null(), &mut out) },
        QrStatus::InvalidArgument
    );
    assert_eq!(
        unsafe { qr_state_from_parts(4, ptr::null(), ptr::null(), &mut out) },
        QrStatus::NullPointer
    );
}

#[test]
fn simulate_counts_are_deterministic_with_empty_off_cells() {
    let state = qr_state_coordination();
    let mut first = [0u64; 4];
    let mut second = [0u64; 4];
    assert_eq!(
        unsafe { qr_simulate_counts(state, 42, 100_000, first.as_mut_ptr()) },
        QrStatus::Ok
    );
    assert_eq!(
        unsafe { qr_simulate_counts(state, 42, 100_000, second.as_mut_ptr()) },
        QrStatus::Ok
    );
    assert_eq!(first, second);
    // order is (L,L), (L,R), (R,L), (R,R)
    assert_eq!(first[0], 0);
    assert_eq!(first[3], 0);
    assert_eq!(first.iter().sum::<u64>(), 100_000);

    assert_eq!(
        unsafe { qr_simulate_counts(state, 42, 0, first.as_mut_ptr()) },
        QrStatus::InvalidArgument
    );
    assert_eq!(
        unsafe { qr_simulate_counts(ptr::null(), 42, 10, first.as_mut_ptr()) },
        QrStatus::NullPointer
    );
    unsafe { qr_state_free(state) };
}

#[test]
fn sweep_csv_has_the_pinned_header_and_row_count() {
    let state = qr_state_coordination();
    let mut csv: *mut std::ffi::c_char = ptr::null_mut();
    assert_eq!(
        unsafe { qr_sweep_csv(state, QrNoiseKind::Depolarizing, 5, &mut csv) },
        QrStatus::Ok
    );
    let text = take_string(csv);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "strength,payoff,I,D_BA_fixed,D_AB_fixed,D_BA_opt,D_AB_opt,negativity,chsh"
    );
    assert_eq!(lines.count(), 5);

    assert_eq!(
        unsafe { qr_sweep_csv(state, QrNoiseKind::Dephasing, 1, &mut csv) },
        QrStatus::ValidationError
    );
    unsafe { qr_state_free(state) };
}

#[test]
fn report_json_is_the_documented_schema() {
    let state = qr_state_coordination();
    let mut json: *mut std::ffi::c_char = ptr::null_mut();
    assert_eq!(
        unsafe { qr_state_report_json(state, 8, &mut json) },
        QrStatus::Ok
    );
    let doc: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
    assert!((doc["mutual_information"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    assert_eq!(doc["fixed"].as_array().unwrap().len(), 4);
    assert_eq!(doc["optimized"].as_array().unwrap().len(), 2);
    unsafe { qr_state_free(state) };
}

#[test]
fn rejects_misuse_without_crashing() {
    // frees of null are no-ops
    unsafe {
        qr_state_free(ptr::null_mut());
        qr_string_free(ptr::null_mut());
    }
    let mut s = zero_summary();
    assert_eq!(
        unsafe { qr_state_summary(ptr::null(), 36, &mut s) },
        QrStatus::NullPointer
    );
    // a single-qubit state is rejected by the two-qubit measures
    let one_qubit = [1.0, 0.0, 0.0, 0.0];
    let mut state: *mut QrState = ptr::null_mut();
    assert_eq!(
        unsafe { qr_state_from_parts(2, one_qubit.as_ptr(), ptr::null(), &mut state) },
        QrStatus::Ok
    );
    assert_eq!(
        unsafe { qr_state_summary(state, 36, &mut s) },
        QrStatus::ValidationError
    );
    // an undersized grid is a validation failure, not a crash
    let coord = qr_state_coordination();
    assert_eq!(
        unsafe { qr_state_summary(coord, 1, &mut s) },
        QrStatus::ValidationError
    );
    unsafe {
        qr_state_free(state);
        qr_state_free(coord);
    }
}

#[test]
fn generated_header_compiles_and_links_from_c() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let include_dir = manifest.join("include");
    assert!(include_dir.join("qrecall.h").exists(), "header not generated");

    // target/debug holds the cdylib; the test binary runs from its deps dir
    let debug_dir = std::env::current_exe()
        .unwrap()
        .parent()
        .unwrap()
        .parent()
        .unwrap()
        .to_path_buf();

    let dir = tempfile::tempdir().unwrap();
    let c_path = dir.path().join("smoke.c");
    std::fs::write(
        &c_path,
        r#"
#include <math.h>
#include <stddef.h>
#include "qrecall.h"

int main(void) {
    QrState *state = qr_state_coordination();
    if (!state) return 1;
    QrSummary summary;
    if (qr_state_summary(state, 12, &summary) != QR_STATUS_OK) return 2;
    if (fabs(summary.mutual_information - 1.0) > 1e-9) return 3;
    if (fabs(summary.chsh_max - 2.0) > 1e-9) return 4;
    double payoff = 0.0;
    if (qr_coordination_payoff(state, &payoff) != QR_STATUS_OK) return 5;
    if (fabs(payoff - 1.0) > 1e-9) return 6;
    char *csv = NULL;
    if (qr_sweep_csv(state, QR_NOISE_KIND_DEPHASING, 3, &csv) != QR_STATUS_OK) return 7;
    if (csv == NULL) return 8;
    qr_string_free(csv);
    uint64_t counts[4];
    if (qr_simulate_counts(state, 7, 1000, counts) != QR_STATUS_OK) return 9;
    if (counts[0] != 0 || counts[3] != 0) return 10;
    qr_state_free(state);
    return 0;
}
"#,
    )
    .unwrap();

    let exe = dir.path().join("smoke");
    let compile = Command::new("cc")
        .arg(&c_path)
        .arg("-I")
        .arg(&include_dir)
        .arg("-L")
        .arg(&debug_dir)
        .arg("-lqrecall_ffi")
        .arg("-lm")
        .arg("-o")
        .arg(&exe)
        .output()
        .expect("cc runs");
    assert!(
        compile.status.success(),
        "cc failed: {}",
        String::from_utf8_lossy(&compile.stderr)
    );

    let run = Command::new(&exe)
        .env("LD_LIBRARY_PATH", &debug_dir)
        .output()
        .expect("smoke test runs");
    assert_eq!(
        run.status.code(),
        Some(0),
        "C smoke test exited {:?}",
        run.status.code()
    );
}
