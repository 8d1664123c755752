//! C ABI over `theta-kernel`.
//!
//! Every function returns a `TkStatus` and writes its result through an out
//! pointer. On failure the message is kept per thread and can be read with
//! `tk_last_error_message`. Spaces are opaque handles created by
//! `tk_space_new*` and released with `tk_space_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use num_complex::Complex64;
use theta_kernel::coeffs::{coeff, gaussian_char_sum, CoeffIndex};
use theta_kernel::elliptic::theta_identity_residual;
use theta_kernel::error::Error;
use theta_kernel::hermite::hermite_eval;
use theta_kernel::kernel::ThetaFockSpace;
use theta_kernel::lattice::Lattice;
use theta_kernel::pseudochar::PseudoCharacter;
use theta_kernel::sum::SumResult;
use theta_kernel::zeros::zero_count;

/// Result codes. `TK_STATUS_OK` is zero; every other value names the failure.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TkStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    DegenerateLattice = 3,
    NonIntegralDimension = 4,
    NotUnitModulus = 5,
    Overflow = 6,
    NomeOutOfRange = 7,
    PoleAtLatticePoint = 8,
    ZeroGamma = 9,
    InconsistentMu = 10,
    NoConvergence = 11,
    NotRealCharacter = 12,
    NotOneDimensional = 13,
    IdenticallyZero = 14,
    PathUnstable = 15,
    RefinementFailed = 16,
    Panic = 17,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct TkComplex {
    pub re: f64,
    pub im: f64,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct TkSumResult {
    pub value: TkComplex,
    /// Bound on the omitted tail.
    pub tail_bound: f64,
    pub shells_used: usize,
    /// Sum of the moduli of the included terms.
    pub mass: f64,
}

/// Opaque handle to a theta Fock space.
pub struct TkSpace(ThetaFockSpace);

impl From<TkComplex> for Complex64 {
    fn from(z: TkComplex) -> Self {
        Complex64::new(z.re, z.im)
    }
}

impl From<Complex64> for TkComplex {
    fn from(z: Complex64) -> Self {
        TkComplex { re: z.re, im: z.im }
    }
}

impl From<SumResult> for TkSumResult {
    fn from(s: SumResult) -> Self {
        TkSumResult {
            value: s.value.into(),
            tail_bound: s.tail_bound,
            shells_used: s.shells_used,
            mass: s.mass,
        }
    }
}

fn status_of(e: &Error) -> TkStatus {
    match e {
        Error::DegenerateLattice { .. } => TkStatus::DegenerateLattice,
        Error::NonIntegralDimension { .. } => TkStatus::NonIntegralDimension,
        Error::NotUnitModulus { .. } => TkStatus::NotUnitModulus,
        Error::Overflow { .. } | Error::ExponentOverflow { .. } => TkStatus::Overflow,
        Error::NomeOutOfRange { .. } => TkStatus::NomeOutOfRange,
        Error::PoleAtLatticePoint { .. } => TkStatus::PoleAtLatticePoint,
        Error::ZeroGamma => TkStatus::ZeroGamma,
        Error::InconsistentMu { .. } => TkStatus::InconsistentMu,
        Error::NoConvergence { .. } => TkStatus::NoConvergence,
        Error::NotRealCharacter => TkStatus::NotRealCharacter,
        Error::NotOneDimensional { .. } => TkStatus::NotOneDimensional,
        Error::IdenticallyZero { .. } => TkStatus::IdenticallyZero,
        Error::PathUnstable { .. } => TkStatus::PathUnstable,
        Error::RefinementFailed { .. } => TkStatus::RefinementFailed,
        Error::InvalidInput(_) => TkStatus::InvalidInput,
    }
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).expect("interior nuls removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

/// Runs `f`, storing its error message and mapping it to a status.
fn guard<F>(f: F) -> TkStatus
where
    F: FnOnce() -> Result<(), TkError>,
{
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error(String::new());
            TkStatus::Ok
        }
        Ok(Err(TkError::Null(what))) => {
            set_error(format!("null pointer passed as {what}"));
            TkStatus::NullPointer
        }
        Ok(Err(TkError::Lib(e))) => {
            set_error(format!("{}: {e}", e.name()));
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic".into());
            TkStatus::Panic
        }
    }
}

enum TkError {
    Null(&'static str),
    Lib(Error),
}

impl From<Error> for TkError {
    fn from(e: Error) -> Self {
        TkError::Lib(e)
    }
}

/// Writes `value` through `out`.
///
/// # Safety
/// `out` must be null or valid for writes of `T`.
unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), TkError> {
    if out.is_null() {
        return Err(TkError::Null("out"));
    }
    out.write(value);
    Ok(())
}

/// # Safety
/// `sp` must be null or a live handle from `tk_space_new*`.
unsafe fn space_ref<'a>(sp: *const TkSpace) -> Result<&'a ThetaFockSpace, TkError> {
    sp.as_ref().map(|s| &s.0).ok_or(TkError::Null("space"))
}

fn build_space(
    omega1: TkComplex,
    omega2: TkComplex,
    nu: f64,
    chi: Option<(TkComplex, TkComplex)>,
) -> Result<ThetaFockSpace, Error> {
    let lattice = Lattice::new(omega1.into(), omega2.into())?;
    match chi {
        None => ThetaFockSpace::weierstrass(lattice, nu),
        Some((u1, u2)) => Ok(ThetaFockSpace::new(PseudoCharacter::from_generators(
            lattice,
            nu,
            u1.into(),
            u2.into(),
        )?)),
    }
}

/// Creates the space for lattice `(omega1, omega2)`, magnitude `nu` and the
/// character with generator values `u1 = χ(ω₁)`, `u2 = χ(ω₂)`.
///
/// # Safety
/// `out` must be valid for writes. On success it receives a handle that must
/// be released with `tk_space_free`.
#[no_mangle]
pub unsafe extern "C" fn tk_space_new(
    omega1: TkComplex,
    omega2: TkComplex,
    nu: f64,
    u1: TkComplex,
    u2: TkComplex,
    out: *mut *mut TkSpace,
) -> TkStatus {
    guard(|| {
        if out.is_null() {
            return Err(TkError::Null("out"));
        }
        let sp = build_space(omega1, omega2, nu, Some((u1, u2)))?;
        write_out(out, Box::into_raw(Box::new(TkSpace(sp))))
    })
}

/// As `tk_space_new` with the Weierstrass character `u1 = u2 = −1`.
///
/// # Safety
/// See `tk_space_new`.
#[no_mangle]
pub unsafe extern "C" fn tk_space_new_weierstrass(
    omega1: TkComplex,
    omega2: TkComplex,
    nu: f64,
    out: *mut *mut TkSpace,
) -> TkStatus {
    guard(|| {
        if out.is_null() {
            return Err(TkError::Null("out"));
        }
        let sp = build_space(omega1, omega2, nu, None)?;
        write_out(out, Box::into_raw(Box::new(TkSpace(sp))))
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `sp` must be null or a handle from `tk_space_new*` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tk_space_free(sp: *mut TkSpace) {
    if !sp.is_null() {
        drop(Box::from_raw(sp));
    }
}

/// # Safety
/// `sp` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tk_space_dimension(sp: *const TkSpace, out: *mut u32) -> TkStatus {
    guard(|| write_out(out, space_ref(sp)?.dimension()))
}

/// `K(z, w)` by lattice summation to tolerance `eps`.
///
/// # Safety
/// `sp` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tk_kernel_eval(
    sp: *const TkSpace,
    z: TkComplex,
    w: TkComplex,
    eps: f64,
    out: *mut TkSumResult,
) -> TkStatus {
    guard(|| {
        let r = space_ref(sp)?.kernel_eval(z.into(), w.into(), eps)?;
        write_out(out, r.into())
    })
}

/// The coefficient `a^{p,q}_{m,n}`.
///
/// # Safety
/// `sp` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tk_coeff(
    sp: *const TkSpace,
    m: usize,
    n: usize,
    p: usize,
    q: usize,
    eps: f64,
    out: *mut TkSumResult,
) -> TkStatus {
    guard(|| {
        let r = coeff(space_ref(sp)?, CoeffIndex::new(m, n, p, q), eps)?;
        write_out(out, r.into())
    })
}

/// Poincaré series of `z^m` evaluated at `z`.
///
/// # Safety
/// `sp` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tk_poincare_monomial(
    sp: *const TkSpace,
    m: usize,
    z: TkComplex,
    eps: f64,
    out: *mut TkSumResult,
) -> TkStatus {
    guard(|| {
        let r = space_ref(sp)?.poincare_monomial(m, z.into(), eps)?;
        write_out(out, r.into())
    })
}

/// Zeros of `K(·, w)` in one cell, by the argument principle with `nodes`
/// Gauss nodes per edge.
///
/// # Safety
/// `sp` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tk_zero_count(sp: *const TkSpace, w: TkComplex, nodes: usize, out: *mut u32) -> TkStatus {
    guard(|| {
        let r = zero_count(space_ref(sp)?, w.into(), nodes)?;
        write_out(out, r.count)
    })
}

/// `Σ (−1)^{m+n+mn} e^{−(tπ/2)(m²+n²)}` over all integer pairs.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tk_gaussian_char_sum(t: f64, out: *mut f64) -> TkStatus {
    guard(|| write_out(out, gaussian_char_sum(t)?))
}

/// Weighted complex Hermite polynomial `H^ν_{m,n}(ξ, ξ̄)`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tk_hermite(nu: f64, m: usize, n: usize, xi: TkComplex, out: *mut TkComplex) -> TkStatus {
    guard(|| write_out(out, hermite_eval(nu, m, n, xi.into())?.into()))
}

/// Residual of the printed theta-constant identity at `nu`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tk_theta_identity_residual(nu: f64, out: *mut f64) -> TkStatus {
    guard(|| write_out(out, theta_identity_residual(nu)?))
}

/// Message of the last failed call on this thread, empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn tk_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Name of a status code, e.g. `"IdenticallyZero"`. Static storage.
#[no_mangle]
pub extern "C" fn tk_status_name(status: TkStatus) -> *const c_char {
    let name: &'static CStr = match status {
        TkStatus::Ok => c"Ok",
        TkStatus::NullPointer => c"NullPointer",
        TkStatus::InvalidInput => c"InvalidInput",
        TkStatus::DegenerateLattice => c"DegenerateLattice",
        TkStatus::NonIntegralDimension => c"NonIntegralDimension",
        TkStatus::NotUnitModulus => c"NotUnitModulus",
        TkStatus::Overflow => c"Overflow",
        TkStatus::NomeOutOfRange => c"NomeOutOfRange",
        TkStatus::PoleAtLatticePoint => c"PoleAtLatticePoint",
        TkStatus::ZeroGamma => c"ZeroGamma",
        TkStatus::InconsistentMu => c"InconsistentMu",
        TkStatus::NoConvergence => c"NoConvergence",
        TkStatus::NotRealCharacter => c"NotRealCharacter",
        TkStatus::NotOneDimensional => c"NotOneDimensional",
        TkStatus::IdenticallyZero => c"IdenticallyZero",
        TkStatus::PathUnstable => c"PathUnstable",
        TkStatus::RefinementFailed => c"RefinementFailed",
        TkStatus::Panic => c"Panic",
    };
    name.as_ptr()
}

/// Library version string. Static storage.
#[no_mangle]
pub extern "C" fn tk_version() -> *const c_char {
    static VERSION: &CStr = match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
        Ok(v) => v,
        Err(_) => panic!("version contains a nul byte"),
    };
    VERSION.as_ptr()
}
