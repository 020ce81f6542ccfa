//! C ABI over the om-factor library. Every call returns a status code and
//! (on success or mathematical failure) an opaque report handle whose JSON
//! body matches the omf CLI output.

use om_factor::arith::Prime;
use om_factor::cli::{parse_poly, run, Command, Request};
use om_factor::error::Error;
use std::ffi::{c_char, CStr, CString};
use std::str::FromStr;

/// Status codes returned by every entry point.
pub const OMF_OK: i32 = 0;
/// Bad arguments: null pointers, malformed prime or polynomial.
pub const OMF_EUSAGE: i32 = 1;
/// Mathematical failure (inseparable input, non-monic, and so on).
pub const OMF_EMATH: i32 = 2;
/// Internal failure; the report carries diagnostics.
pub const OMF_EINTERNAL: i32 = 3;

/// Opaque report handle; read with omf_report_json, release with
/// omf_report_free.
pub struct OmfReport {
    json: CString,
}

fn build_request(
    prime: *const c_char,
    poly: *const c_char,
    command: Command,
    precision: i64,
    seed: u64,
    no_lift: bool,
) -> Result<Request, i32> {
    if prime.is_null() || poly.is_null() {
        return Err(OMF_EUSAGE);
    }
    let prime = unsafe { CStr::from_ptr(prime) }.to_str().map_err(|_| OMF_EUSAGE)?;
    let poly = unsafe { CStr::from_ptr(poly) }.to_str().map_err(|_| OMF_EUSAGE)?;
    let p = num_bigint::BigInt::from_str(prime).map_err(|_| OMF_EUSAGE)?;
    let p = Prime::new(p).map_err(|_| OMF_EUSAGE)?;
    let poly = parse_poly(poly).map_err(|_| OMF_EUSAGE)?;
    Ok(Request {
        command,
        poly,
        p,
        precision: if precision > 0 { Some(precision) } else { None },
        seed,
        json: true,
        no_lift,
        level: 1,
        type_json: None,
    })
}

fn finish(req: &Request, out: *mut *mut OmfReport) -> i32 {
    if out.is_null() {
        return OMF_EUSAGE;
    }
    let (code, body) = run(req);
    let json = CString::new(body).unwrap_or_else(|_| CString::new("{}").unwrap());
    unsafe {
        *out = Box::into_raw(Box::new(OmfReport { json }));
    }
    match code {
        0 => OMF_OK,
        2 => OMF_EUSAGE,
        _ => OMF_EMATH,
    }
}

/// OM factorization of `poly` over Z_p; precision <= 0 selects delta+1.
#[no_mangle]
pub extern "C" fn omf_factor(
    prime: *const c_char,
    poly: *const c_char,
    precision: i64,
    seed: u64,
    no_lift: i32,
    out: *mut *mut OmfReport,
) -> i32 {
    match build_request(prime, poly, Command::Factor, precision, seed, no_lift != 0) {
        Ok(req) => finish(&req, out),
        Err(code) => code,
    }
}

/// Irreducibility test with witness.
#[no_mangle]
pub extern "C" fn omf_irreducible(
    prime: *const c_char,
    poly: *const c_char,
    seed: u64,
    out: *mut *mut OmfReport,
) -> i32 {
    match build_request(prime, poly, Command::Irreducible, 0, seed, false) {
        Ok(req) => finish(&req, out),
        Err(code) => code,
    }
}

/// Okutsu invariant report for an irreducible polynomial.
#[no_mangle]
pub extern "C" fn omf_invariants(
    prime: *const c_char,
    poly: *const c_char,
    seed: u64,
    out: *mut *mut OmfReport,
) -> i32 {
    match build_request(prime, poly, Command::Invariants, 0, seed, false) {
        Ok(req) => finish(&req, out),
        Err(code) => code,
    }
}

/// Borrow the NUL-terminated JSON body; owned by the report.
#[no_mangle]
pub extern "C" fn omf_report_json(report: *const OmfReport) -> *const c_char {
    if report.is_null() {
        return std::ptr::null();
    }
    unsafe { (*report).json.as_ptr() }
}

/// Release a report handle. Null is allowed.
#[no_mangle]
pub extern "C" fn omf_report_free(report: *mut OmfReport) {
    if !report.is_null() {
        drop(unsafe { Box::from_raw(report) });
    }
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn omf_status_message(code: i32) -> *const c_char {
    let msg: &'static [u8] = match code {
        OMF_OK => b"ok\0",
        OMF_EUSAGE => b"usage error\0",
        OMF_EMATH => b"mathematical error\0",
        OMF_EINTERNAL => b"internal error\0",
        _ => b"unknown status\0",
    };
    msg.as_ptr() as *const c_char
}

// keep the unused-crate check quiet; the header generation needs the error
// kinds exported by the core crate
const _: fn(&Error) -> &'static str = om_factor::serial::error_kind;
