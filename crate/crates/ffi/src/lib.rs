//! C interface to `hkg-core`.
//!
//! Handles are opaque and owned by the caller once returned; release them
//! with the matching `*_free`. Every fallible call returns an [`HkgStatus`]
//! and records a message retrievable with [`hkg_last_error_message`] on the
//! calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hkg_core::io::{export_ideal, CurveDocument, ExportOptions, Format};
use hkg_core::oracle::{deg2_kernel_basis, deg3_generation_check, quotient_dim_check, span_compare};
use hkg_core::relations::{assemble_j, G0Mode};
use hkg_core::{Error, Lattice, QuadForm, Tower};

/// Status codes; 1 to 3 match the exit codes of the command-line tool.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HkgStatus {
    Ok = 0,
    Invalid = 1,
    VerificationFailed = 2,
    Parse = 3,
    NullArgument = 4,
    Internal = 5,
}

/// A validated tower with its differential basis.
pub struct HkgTower {
    lattice: Lattice,
}

/// Quadratic generators of the canonical ideal of a tower.
pub struct HkgIdeal {
    lattice: Lattice,
    forms: Vec<QuadForm>,
    skipped: usize,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct HkgVerifyResult {
    pub dim_j: usize,
    pub dim_kernel: usize,
    pub span_equal: bool,
    pub survivors: usize,
    pub classes: usize,
    pub quotient_pass: bool,
    /// Only meaningful when degree 3 was requested.
    pub deg3_checked: bool,
    pub deg3_pass: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn status_of(e: &Error) -> HkgStatus {
    match e.exit_code() {
        2 => HkgStatus::VerificationFailed,
        3 => HkgStatus::Parse,
        _ => HkgStatus::Invalid,
    }
}

fn guard(f: impl FnOnce() -> Result<(), (HkgStatus, String)>) -> HkgStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => HkgStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            HkgStatus::Internal
        }
    }
}

fn core_err(e: Error) -> (HkgStatus, String) {
    (status_of(&e), e.to_string())
}

fn null() -> (HkgStatus, String) {
    (HkgStatus::NullArgument, "null argument".to_string())
}

unsafe fn c_str<'a>(s: *const c_char) -> Result<&'a str, (HkgStatus, String)> {
    if s.is_null() {
        return Err(null());
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| (HkgStatus::Parse, "string is not valid UTF-8".to_string()))
}

/// Message of the last failed call on this thread, or NULL. The pointer is
/// valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn hkg_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parses a curve document and builds its tower.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hkg_tower_from_json(json: *const c_char, out: *mut *mut HkgTower) -> HkgStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        *out = ptr::null_mut();
        let text = c_str(json)?;
        let spec = CurveDocument::from_json(text).and_then(|d| d.to_spec()).map_err(core_err)?;
        let lattice = Tower::new(spec).and_then(Lattice::new).map_err(core_err)?;
        *out = Box::into_raw(Box::new(HkgTower { lattice }));
        Ok(())
    })
}

/// # Safety
/// `tower` must come from [`hkg_tower_from_json`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn hkg_tower_free(tower: *mut HkgTower) {
    if !tower.is_null() {
        drop(Box::from_raw(tower));
    }
}

/// Genus of the top curve; 0 for a NULL handle.
///
/// # Safety
/// `tower` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hkg_tower_genus(tower: *const HkgTower) -> u64 {
    tower.as_ref().map_or(0, |t| t.lattice.genus())
}

/// Whether every Petri gate passes.
///
/// # Safety
/// `tower` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hkg_tower_petri_ok(tower: *const HkgTower) -> bool {
    tower.as_ref().is_some_and(|t| t.lattice.tower().petri_report().verdict)
}

/// Builds the generating set.
///
/// # Safety
/// `tower` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hkg_ideal_build(tower: *const HkgTower, out: *mut *mut HkgIdeal) -> HkgStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        *out = ptr::null_mut();
        let t = tower.as_ref().ok_or_else(null)?;
        let ideal = assemble_j(&t.lattice, G0Mode::AllPairs).map_err(core_err)?;
        *out = Box::into_raw(Box::new(HkgIdeal {
            lattice: t.lattice.clone(),
            forms: ideal.forms(),
            skipped: ideal.diagnostics.len(),
        }));
        Ok(())
    })
}

/// # Safety
/// `ideal` must come from [`hkg_ideal_build`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn hkg_ideal_free(ideal: *mut HkgIdeal) {
    if !ideal.is_null() {
        drop(Box::from_raw(ideal));
    }
}

/// Number of generators; 0 for a NULL handle.
///
/// # Safety
/// `ideal` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hkg_ideal_len(ideal: *const HkgIdeal) -> usize {
    ideal.as_ref().map_or(0, |i| i.forms.len())
}

/// Number of candidate relations skipped during construction.
///
/// # Safety
/// `ideal` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hkg_ideal_skipped(ideal: *const HkgIdeal) -> usize {
    ideal.as_ref().map_or(0, |i| i.skipped)
}

/// Serializes the generators in `format` ("plain", "json", "singular",
/// "macaulay2"). The string in `out` is released with [`hkg_string_free`].
///
/// # Safety
/// `ideal` must be a live handle, `format` NUL-terminated, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn hkg_ideal_export(
    ideal: *const HkgIdeal,
    format: *const c_char,
    canonical_coeffs: bool,
    out: *mut *mut c_char,
) -> HkgStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        *out = ptr::null_mut();
        let i = ideal.as_ref().ok_or_else(null)?;
        let format: Format = c_str(format)?.parse().map_err(core_err)?;
        let text = export_ideal(&i.lattice, &i.forms, format, ExportOptions { canonical_coeffs });
        *out = CString::new(text).map_err(|e| (HkgStatus::Internal, e.to_string()))?.into_raw();
        Ok(())
    })
}

/// Runs the oracle checks. Returns `HKG_STATUS_VERIFICATION_FAILED` with
/// `out` filled in when a check fails.
///
/// # Safety
/// `ideal` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hkg_ideal_verify(
    ideal: *const HkgIdeal,
    deg3: bool,
    deg3_ceiling: usize,
    out: *mut HkgVerifyResult,
) -> HkgStatus {
    guard(|| {
        let i = ideal.as_ref().ok_or_else(null)?;
        let out = out.as_mut().ok_or_else(null)?;
        let kernel = deg2_kernel_basis(&i.lattice);
        let span = span_compare(&i.lattice, &i.forms, &kernel);
        let q = quotient_dim_check(&i.lattice, &i.forms).map_err(core_err)?;
        let mut r = HkgVerifyResult {
            dim_j: span.dim_j,
            dim_kernel: span.dim_kernel,
            span_equal: span.equal,
            survivors: q.survivors,
            classes: q.classes,
            quotient_pass: q.pass,
            ..Default::default()
        };
        let mut pass = span.equal && q.pass;
        if deg3 {
            let d = deg3_generation_check(&i.lattice, &i.forms, deg3_ceiling);
            r.deg3_checked = true;
            r.deg3_pass = d.passed();
            pass &= d.passed();
        }
        *out = r;
        if pass {
            Ok(())
        } else {
            Err((HkgStatus::VerificationFailed, "verification failed".to_string()))
        }
    })
}

/// # Safety
/// `s` must be NULL or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn hkg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
