//! C ABI over `photon-wf`.
//!
//! Every entry point returns a [`PwfStatus`] and writes its result through an
//! out-pointer. Parameter sets and assembled fields are opaque handles that
//! must be released with their `_free` function. Panics are caught at the
//! boundary and reported as [`PwfStatus::Panic`].

use std::ffi::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};

use num_complex::Complex64;
use photon_wf::closed_form::{h_exact_combination, residue_coeffs, Combination};
use photon_wf::field::{self, AssembleOptions, Component, Part, Treatment, Zone};
use photon_wf::model::{default_hydrogen_params, xi_decompose, SpacetimePoint, TransitionParams};
use photon_wf::numerics::expint_ei;
use photon_wf::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PwfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidOrder = 3,
    /// Ei at the origin.
    Domain = 4,
    Overflow = 5,
    LightconeSingular = 6,
    NotApplicable = 7,
    ToleranceNotMet = 8,
    NumericFailure = 9,
    Panic = 10,
}

impl From<&Error> for PwfStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::EiAtZero => PwfStatus::Domain,
            Error::Overflow(_) => PwfStatus::Overflow,
            Error::InvalidOrder(_) => PwfStatus::InvalidOrder,
            Error::InvalidArgument(_) | Error::RadiusTooLarge { .. } => PwfStatus::InvalidArgument,
            Error::LightconeSingular => PwfStatus::LightconeSingular,
            Error::NotApplicable(_) => PwfStatus::NotApplicable,
            Error::ToleranceNotMet { .. } => PwfStatus::ToleranceNotMet,
            Error::ContinuedFraction(_) | Error::ContourRefinement(_) => PwfStatus::NumericFailure,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct PwfComplex {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for PwfComplex {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

/// Residue coefficients; `gamma0`/`gamma1` belong to `+iκ`, the `_lower`
/// fields to `-iκ`.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct PwfResidues {
    pub g0: PwfComplex,
    pub gamma0: PwfComplex,
    pub gamma1: PwfComplex,
    pub gamma0_lower: PwfComplex,
    pub gamma1_lower: PwfComplex,
    pub origin: PwfComplex,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct PwfPoleAndPv {
    pub pole: PwfComplex,
    pub pv: PwfComplex,
    pub total: PwfComplex,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PwfCombination {
    Difference = 0,
    Sum = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PwfTreatment {
    Standard = 0,
    Dipole = 1,
    Exact = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PwfZone {
    Far = 0,
    Mid = 1,
    Near = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PwfPart {
    Pole = 0,
    Pv = 1,
    Total = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PwfComponent {
    Transverse = 0,
    Radial = 1,
}

/// Opaque model parameters.
pub struct PwfParams(TransitionParams);

/// Opaque assembled field at one spacetime point.
pub struct PwfField(field::FieldBreakdown);

fn guard(f: impl FnOnce() -> Result<(), PwfStatus>) -> PwfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PwfStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => PwfStatus::Panic,
    }
}

fn lift<T>(r: photon_wf::Result<T>) -> Result<T, PwfStatus> {
    r.map_err(|e| PwfStatus::from(&e))
}

unsafe fn write<T>(out: *mut T, v: T) -> Result<(), PwfStatus> {
    if out.is_null() {
        return Err(PwfStatus::NullPointer);
    }
    out.write(v);
    Ok(())
}

unsafe fn params_ref<'a>(p: *const PwfParams) -> Result<&'a TransitionParams, PwfStatus> {
    p.as_ref().map(|p| &p.0).ok_or(PwfStatus::NullPointer)
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn pwf_status_message(status: PwfStatus) -> *const c_char {
    let s: &'static std::ffi::CStr = match status {
        PwfStatus::Ok => c"ok",
        PwfStatus::NullPointer => c"null pointer argument",
        PwfStatus::InvalidArgument => c"invalid argument",
        PwfStatus::InvalidOrder => c"multipole order must be 1, 2 or 3",
        PwfStatus::Domain => c"exponential integral diverges at the origin",
        PwfStatus::Overflow => c"result overflows",
        PwfStatus::LightconeSingular => c"quantity is singular on the lightcone",
        PwfStatus::NotApplicable => c"cell not defined for this treatment",
        PwfStatus::ToleranceNotMet => c"quadrature tolerance not met",
        PwfStatus::NumericFailure => c"numerical failure",
        PwfStatus::Panic => c"internal panic",
    };
    s.as_ptr()
}

/// Hydrogen parameters with `Γ = ω_LS = 0`. Release with [`pwf_params_free`].
#[no_mangle]
pub extern "C" fn pwf_params_hydrogen() -> *mut PwfParams {
    Box::into_raw(Box::new(PwfParams(default_hydrogen_params())))
}

/// Hydrogen parameters with `κ`, `Γ/ω0` and `ω_LS/ω0` replaced.
///
/// # Safety
/// `out` must be null or valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn pwf_params_new(kappa: f64, gamma: f64, lamb: f64, out: *mut *mut PwfParams) -> PwfStatus {
    guard(|| {
        let p = default_hydrogen_params().with_kappa(kappa).with_decay(gamma, lamb);
        lift(p.validate())?;
        write(out, Box::into_raw(Box::new(PwfParams(p))))
    })
}

/// # Safety
/// `params` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pwf_params_free(params: *mut PwfParams) {
    if !params.is_null() {
        drop(Box::from_raw(params));
    }
}

/// # Safety
/// `params` must be a live handle; `out` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn pwf_params_kappa(params: *const PwfParams, out: *mut f64) -> PwfStatus {
    guard(|| write(out, params_ref(params)?.kappa))
}

/// Principal-branch `Ei(z)`.
///
/// # Safety
/// `out` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn pwf_expint_ei(z: PwfComplex, out: *mut PwfComplex) -> PwfStatus {
    guard(|| write(out, lift(expint_ei(Complex64::new(z.re, z.im)))?.into()))
}

/// # Safety
/// `params` must be a live handle; `out` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn pwf_residue_coeffs(params: *const PwfParams, n: i32, out: *mut PwfResidues) -> PwfStatus {
    guard(|| {
        let r = lift(residue_coeffs(n, params_ref(params)?))?;
        write(
            out,
            PwfResidues {
                g0: r.g0.into(),
                gamma0: r.gamma0.into(),
                gamma1: r.gamma1.into(),
                gamma0_lower: r.gamma0_lower.into(),
                gamma1_lower: r.gamma1_lower.into(),
                origin: r.origin.into(),
            },
        )
    })
}

/// Exact-coupling `H_n^+ ∓ H_n^-` split into pole and principal-value parts.
/// `n = 3` accepts only the difference.
///
/// # Safety
/// `params` must be a live handle; `out` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn pwf_h_exact_combination(
    params: *const PwfParams,
    n: i32,
    x: f64,
    t: f64,
    combination: PwfCombination,
    out: *mut PwfPoleAndPv,
) -> PwfStatus {
    guard(|| {
        let p = params_ref(params)?;
        let pt = lift(SpacetimePoint::new(x, t))?;
        let comb = match combination {
            PwfCombination::Difference => Combination::Difference,
            PwfCombination::Sum => Combination::Sum,
        };
        let h = lift(h_exact_combination(n, &pt, p, comb))?;
        write(out, PwfPoleAndPv { pole: h.pole.into(), pv: h.pv.into(), total: h.total.into() })
    })
}

/// Assembles the field at `(x, t)` for polarization `m2` seen along
/// `direction` (three doubles, normalized here). Release with
/// [`pwf_field_free`].
///
/// # Safety
/// `params` must be a live handle, `direction` must point to three readable
/// doubles and `out` must be valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn pwf_field_assemble(
    params: *const PwfParams,
    treatment: PwfTreatment,
    x: f64,
    t: f64,
    m2: i32,
    direction: *const f64,
    g0_suppressed: bool,
    out: *mut *mut PwfField,
) -> PwfStatus {
    guard(|| {
        let p = params_ref(params)?;
        if direction.is_null() {
            return Err(PwfStatus::NullPointer);
        }
        let d = std::slice::from_raw_parts(direction, 3);
        let n = (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt();
        if !(n.is_finite() && n > 0.0) {
            return Err(PwfStatus::InvalidArgument);
        }
        let xi = lift(xi_decompose(m2, [d[0] / n, d[1] / n, d[2] / n]))?;
        let pt = lift(SpacetimePoint::new(x, t))?;
        let treatment = match treatment {
            PwfTreatment::Standard => Treatment::Standard,
            PwfTreatment::Dipole => Treatment::Dipole,
            PwfTreatment::Exact => Treatment::Exact,
        };
        let opts = AssembleOptions { g0_suppressed, ..Default::default() };
        let fb = lift(field::assemble(treatment, &pt, p, &xi, &opts))?;
        write(out, Box::into_raw(Box::new(PwfField(fb))))
    })
}

/// One cell of an assembled field. Cells singular on the lightcone hold NaN.
///
/// # Safety
/// `field` must be a live handle; `out` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn pwf_field_cell(
    field: *const PwfField,
    zone: PwfZone,
    part: PwfPart,
    component: PwfComponent,
    out: *mut PwfComplex,
) -> PwfStatus {
    guard(|| {
        let fb = &field.as_ref().ok_or(PwfStatus::NullPointer)?.0;
        let zone = match zone {
            PwfZone::Far => Zone::Far,
            PwfZone::Mid => Zone::Mid,
            PwfZone::Near => Zone::Near,
        };
        let part = match part {
            PwfPart::Pole => Part::Pole,
            PwfPart::Pv => Part::Pv,
            PwfPart::Total => Part::Total,
        };
        let component = match component {
            PwfComponent::Transverse => Component::Transverse,
            PwfComponent::Radial => Component::Radial,
        };
        write(out, lift(fb.get(zone, part, component))?.into())
    })
}

/// # Safety
/// `field` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pwf_field_free(field: *mut PwfField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_status_has_a_message() {
        for s in [PwfStatus::Ok, PwfStatus::Panic, PwfStatus::Domain] {
            let m = unsafe { std::ffi::CStr::from_ptr(pwf_status_message(s)) };
            assert!(!m.to_bytes().is_empty());
        }
    }

    #[test]
    fn error_mapping() {
        assert_eq!(PwfStatus::from(&Error::EiAtZero), PwfStatus::Domain);
        assert_eq!(PwfStatus::from(&Error::InvalidOrder(4)), PwfStatus::InvalidOrder);
    }
}
