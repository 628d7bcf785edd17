//! C ABI over the engine: opaque state handles, integer status codes, and
//! heap-allocated UTF-8 strings for the JSON/CSV payloads.
//!
//! Conventions:
//! - Every fallible call returns a [`QrStatus`]; out-parameters are written
//!   only on `Ok` and set to null/zero otherwise.
//! - Strings returned through `char**` are NUL-terminated UTF-8 owned by the
//!   caller; release them with [`qr_string_free`]. States from the
//!   constructors are released with [`qr_state_free`].
//! - The library never unwinds across the boundary; internal panics surface
//!   as `InternalError`.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qrecall::games::{ExtensiveGame, GameVariant};
use qrecall::linalg::Subsystem;
use qrecall::measures::{correlation_report, GridSpec};
use qrecall::noise::{rows_to_csv, sweep, NoiseKind, NoiseTarget};
use qrecall::qstate::{bell_state, coordination_state, DensityMatrix, StateDoc};
use qrecall::qstrategy::{
    coordination_scheme, expected_quantum_payoff, sample_play, ACTION_PAIRS,
};
use qrecall::Error;

/// Opaque two-qubit (or single-qubit) density-matrix handle.
pub struct QrState {
    inner: DensityMatrix,
}

/// Status code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QrStatus {
    /// Success.
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// The input could not be parsed (malformed JSON or document shape).
    ParseError = 3,
    /// The input parsed but failed validation (not a state, bad range, ...).
    ValidationError = 4,
    /// A scalar argument was out of range.
    InvalidArgument = 5,
    /// An internal invariant failed; the call did not complete.
    InternalError = 6,
}

/// Noise channel family for [`qr_sweep_csv`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QrNoiseKind {
    Depolarizing = 0,
    Dephasing = 1,
}

/// Headline scalar measures of one state. Discord fields carry the measured
/// side in the name: `d_ba_*` measures qubit A (information about B),
/// `d_ab_*` measures qubit B.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QrSummary {
    pub entropy_a: f64,
    pub entropy_b: f64,
    pub entropy_joint: f64,
    pub mutual_information: f64,
    pub d_ba_fixed: f64,
    pub d_ab_fixed: f64,
    pub d_ba_opt: f64,
    pub d_ab_opt: f64,
    pub negativity: f64,
    pub chsh_max: f64,
}

fn status_of(e: &Error) -> QrStatus {
    if e.is_parse() {
        QrStatus::ParseError
    } else {
        QrStatus::ValidationError
    }
}

fn guarded<F: FnOnce() -> QrStatus>(f: F) -> QrStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(QrStatus::InternalError)
}

fn into_handle(state: DensityMatrix) -> *mut QrState {
    Box::into_raw(Box::new(QrState { inner: state }))
}

fn export_string(s: String, out: *mut *mut c_char) -> QrStatus {
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            QrStatus::Ok
        }
        Err(_) => QrStatus::InternalError,
    }
}

/// Version of the library as a static NUL-terminated string. Never freed.
#[no_mangle]
pub extern "C" fn qr_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// New handle to the canonical coordination state. Never fails.
#[no_mangle]
pub extern "C" fn qr_state_coordination() -> *mut QrState {
    into_handle(coordination_state())
}

/// New handle to the maximally entangled Bell state. Never fails.
#[no_mangle]
pub extern "C" fn qr_state_bell() -> *mut QrState {
    into_handle(bell_state())
}

/// Parse a state from its JSON document `{"dim": n, "re": [[..]], "im":
/// [[..]]}` and validate it.
///
/// # Safety
/// `json` must point to a NUL-terminated string; `out` must be a valid
/// pointer. On success `*out` owns the new handle.
#[no_mangle]
pub unsafe extern "C" fn qr_state_from_json(
    json: *const c_char,
    out: *mut *mut QrState,
) -> QrStatus {
    if json.is_null() || out.is_null() {
        return QrStatus::NullPointer;
    }
    *out = ptr::null_mut();
    let text = match CStr::from_ptr(json).to_str() {
        Ok(t) => t,
        Err(_) => return QrStatus::InvalidUtf8,
    };
    guarded(|| match DensityMatrix::from_json_str(text) {
        Ok(state) => {
            unsafe { *out = into_handle(state) };
            QrStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// Build and validate a state from row-major entry arrays of length
/// `dim * dim`. `im` may be null for a real matrix.
///
/// # Safety
/// `re` (and `im` when non-null) must point to `dim * dim` readable doubles;
/// `out` must be a valid pointer. On success `*out` owns the new handle.
#[no_mangle]
pub unsafe extern "C" fn qr_state_from_parts(
    dim: usize,
    re: *const f64,
    im: *const f64,
    out: *mut *mut QrState,
) -> QrStatus {
    if re.is_null() || out.is_null() {
        return QrStatus::NullPointer;
    }
    *out = ptr::null_mut();
    if dim == 0 || dim > 64 {
        return QrStatus::InvalidArgument;
    }
    let n = dim * dim;
    let re = std::slice::from_raw_parts(re, n);
    let im = if im.is_null() {
        None
    } else {
        Some(std::slice::from_raw_parts(im, n))
    };
    guarded(|| {
        let row = |src: Option<&[f64]>, i: usize| match src {
            Some(s) => s[i * dim..(i + 1) * dim].to_vec(),
            None => vec![0.0; dim],
        };
        let doc = StateDoc {
            dim,
            re: (0..dim).map(|i| row(Some(re), i)).collect(),
            im: (0..dim).map(|i| row(im, i)).collect(),
        };
        match DensityMatrix::try_from(doc) {
            Ok(state) => {
                unsafe { *out = into_handle(state) };
                QrStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Serialize a state to its JSON document.
///
/// # Safety
/// `state` must be a live handle from this library; `out` must be valid.
/// On success `*out` owns a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn qr_state_to_json(
    state: *const QrState,
    out: *mut *mut c_char,
) -> QrStatus {
    if state.is_null() || out.is_null() {
        return QrStatus::NullPointer;
    }
    *out = ptr::null_mut();
    let state = &*state;
    guarded(|| export_string(state.inner.to_json_string(), out))
}

/// Fill `out` with the headline measures of a two-qubit state. The
/// basis-optimized discord search runs on a grid with `grid_divisions`
/// polar divisions (36 is the default resolution; minimum 2) plus local
/// refinement.
///
/// # Safety
/// `state` must be a live handle; `out` must point to a writable
/// [`QrSummary`].
#[no_mangle]
pub unsafe extern "C" fn qr_state_summary(
    state: *const QrState,
    grid_divisions: usize,
    out: *mut QrSummary,
) -> QrStatus {
    if state.is_null() || out.is_null() {
        return QrStatus::NullPointer;
    }
    let state = &*state;
    guarded(|| {
        let grid = match GridSpec::new(grid_divisions) {
            Ok(g) => g,
            Err(e) => return status_of(&e),
        };
        let report = match correlation_report(&state.inner, grid) {
            Ok(r) => r,
            Err(e) => return status_of(&e),
        };
        let fixed = |side: Subsystem| {
            report
                .fixed
                .iter()
                .find(|f| f.measured == side && f.basis == "computational")
                .map(|f| f.d)
                .unwrap_or(f64::NAN)
        };
        let opt = |side: Subsystem| {
            report
                .optimized
                .iter()
                .find(|o| o.measured == side)
                .map(|o| o.d)
                .unwrap_or(f64::NAN)
        };
        unsafe {
            *out = QrSummary {
                entropy_a: report.entropy_a,
                entropy_b: report.entropy_b,
                entropy_joint: report.entropy_joint,
                mutual_information: report.mutual_information,
                d_ba_fixed: fixed(Subsystem::A),
                d_ab_fixed: fixed(Subsystem::B),
                d_ba_opt: opt(Subsystem::A),
                d_ab_opt: opt(Subsystem::B),
                negativity: report.negativity,
                chsh_max: report.chsh_max,
            };
        }
        QrStatus::Ok
    })
}

/// Full correlation report of a two-qubit state as a JSON string (same
/// schema as the CLI's `analyze --format json`).
///
/// # Safety
/// `state` must be a live handle; `out` must be valid. On success `*out`
/// owns a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn qr_state_report_json(
    state: *const QrState,
    grid_divisions: usize,
    out: *mut *mut c_char,
) -> QrStatus {
    if state.is_null() || out.is_null() {
        return QrStatus::NullPointer;
    }
    *out = ptr::null_mut();
    let state = &*state;
    guarded(|| {
        let grid = match GridSpec::new(grid_divisions) {
            Ok(g) => g,
            Err(e) => return status_of(&e),
        };
        match correlation_report(&state.inner, grid) {
            Ok(report) => export_string(report.to_json_string(), out),
            Err(e) => status_of(&e),
        }
    })
}

/// Expected payoff of the canonical measurement strategy (measure A in Z for
/// stage 1, B in X for stage 2, alternation payoff) played on `state`.
///
/// # Safety
/// `state` must be a live two-qubit handle; `out` must point to a writable
/// double.
#[no_mangle]
pub unsafe extern "C" fn qr_coordination_payoff(
    state: *const QrState,
    out: *mut f64,
) -> QrStatus {
    if state.is_null() || out.is_null() {
        return QrStatus::NullPointer;
    }
    let state = &*state;
    guarded(|| {
        let game = ExtensiveGame::alternation(GameVariant::SingleInfoSet);
        match expected_quantum_payoff(&state.inner, &coordination_scheme(), &game) {
            Ok(v) => {
                unsafe { *out = v };
                QrStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Sample `plays` rounds of the canonical strategy on `state` with a seeded
/// deterministic generator. `out_counts` receives four counts in the order
/// (L,L), (L,R), (R,L), (R,R).
///
/// # Safety
/// `state` must be a live two-qubit handle; `out_counts` must point to four
/// writable uint64 values.
#[no_mangle]
pub unsafe extern "C" fn qr_simulate_counts(
    state: *const QrState,
    seed: u64,
    plays: u64,
    out_counts: *mut u64,
) -> QrStatus {
    if state.is_null() || out_counts.is_null() {
        return QrStatus::NullPointer;
    }
    if plays == 0 {
        return QrStatus::InvalidArgument;
    }
    let state = &*state;
    guarded(|| {
        match sample_play(&state.inner, &coordination_scheme(), seed, plays) {
            Ok(counts) => {
                for (k, (a1, a2)) in ACTION_PAIRS.iter().enumerate() {
                    unsafe { *out_counts.add(k) = counts.count(*a1, *a2) };
                }
                QrStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Robustness sweep of `state` under a noise family applied to both qubits,
/// as CSV with a fixed header (same format as the CLI's `sweep`). `steps`
/// strengths are sampled evenly on [0, 1]; minimum 2.
///
/// # Safety
/// `state` must be a live two-qubit handle; `out` must be valid. On success
/// `*out` owns a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn qr_sweep_csv(
    state: *const QrState,
    kind: QrNoiseKind,
    steps: usize,
    out: *mut *mut c_char,
) -> QrStatus {
    if state.is_null() || out.is_null() {
        return QrStatus::NullPointer;
    }
    *out = ptr::null_mut();
    let state = &*state;
    let kind = match kind {
        QrNoiseKind::Depolarizing => NoiseKind::Depolarizing,
        QrNoiseKind::Dephasing => NoiseKind::Dephasing,
    };
    guarded(|| {
        match sweep(
            &state.inner,
            kind,
            NoiseTarget::Both,
            steps,
            GridSpec::default(),
        ) {
            Ok(rows) => export_string(rows_to_csv(&rows), out),
            Err(e) => status_of(&e),
        }
    })
}

/// Release a state handle. Null is a no-op.
///
/// # Safety
/// `state` must be null or a handle returned by this library that has not
/// been freed yet.
#[no_mangle]
pub unsafe extern "C" fn qr_state_free(state: *mut QrState) {
    if !state.is_null() {
        drop(Box::from_raw(state));
    }
}

/// Release a string returned by this library. Null is a no-op.
///
/// # Safety
/// `s` must be null or a string returned by this library that has not been
/// freed yet.
#[no_mangle]
pub unsafe extern "C" fn qr_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
