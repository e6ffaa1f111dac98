//! Transition constants, dimensionless units, polarization geometry and
//! hydrogen orbitals.
//!
//! Everything downstream works in units `ω0 = c = 1`: distances in `c/ω0`,
//! times in `1/ω0`, wavenumbers in `ω0/c`.

use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// CODATA 2018.
pub mod codata {
    pub const BOHR_RADIUS_M: f64 = 5.291_772_109_03e-11;
    pub const FINE_STRUCTURE: f64 = 7.297_352_569_3e-3;
    pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
    pub const HBAR: f64 = 1.054_571_817e-34;
    pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;
    pub const ELECTRON_MASS: f64 = 9.109_383_701_5e-31;
    pub const VACUUM_PERMITTIVITY: f64 = 8.854_187_812_8e-12;
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransitionParams {
    /// `c·k_X/ω0`.
    pub kappa: f64,
    /// `Γ/ω0`.
    pub gamma: f64,
    /// `ω_LS/ω0`.
    pub lamb: f64,
    pub a0_m: f64,
    pub omega0_rad_s: f64,
    /// Value taken by every step function at the origin.
    pub heaviside_at_zero: f64,
}

impl Default for TransitionParams {
    fn default() -> Self {
        default_hydrogen_params()
    }
}

/// Lyman-α constants with `Γ = ω_LS = 0`.
///
/// `ħω0 = (3/4)·α²m_ec²/2` gives `ω0 = 3αc/(8a0)`, hence `κ = (3/2)/(a0ω0/c) = 4/α`.
pub fn default_hydrogen_params() -> TransitionParams {
    let a0 = codata::BOHR_RADIUS_M;
    let omega0 = 3.0 * codata::FINE_STRUCTURE * codata::SPEED_OF_LIGHT / (8.0 * a0);
    TransitionParams {
        kappa: 1.5 / (a0 * omega0 / codata::SPEED_OF_LIGHT),
        gamma: 0.0,
        lamb: 0.0,
        a0_m: a0,
        omega0_rad_s: omega0,
        heaviside_at_zero: 0.5,
    }
}

impl TransitionParams {
    pub fn with_kappa(self, kappa: f64) -> Self {
        Self { kappa, ..self }
    }

    pub fn with_decay(self, gamma: f64, lamb: f64) -> Self {
        Self { gamma, lamb, ..self }
    }

    /// `Ω0/ω0 = 1 + ω_LS/ω0 - iΓ/(2ω0)`.
    pub fn omega(&self) -> Complex64 {
        Complex64::new(1.0 + self.lamb, -0.5 * self.gamma)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.kappa, self.gamma, self.lamb, self.a0_m, self.omega0_rad_s, self.heaviside_at_zero]
            .iter()
            .all(|v| v.is_finite());
        if !finite {
            return Err(Error::InvalidArgument("parameters must be finite".into()));
        }
        if self.kappa <= 0.0 {
            return Err(Error::InvalidArgument(format!("kappa must be positive, got {}", self.kappa)));
        }
        if self.gamma < 0.0 {
            return Err(Error::InvalidArgument(format!("gamma must be non-negative, got {}", self.gamma)));
        }
        if !(0.0..=1.0).contains(&self.heaviside_at_zero) {
            return Err(Error::InvalidArgument("heaviside_at_zero must lie in [0, 1]".into()));
        }
        Ok(())
    }

    pub fn theta(&self, u: f64) -> f64 {
        crate::numerics::heaviside_with(u, self.heaviside_at_zero)
    }

    /// `c/ω0` in meters.
    pub fn lightcone_unit_m(&self) -> f64 {
        codata::SPEED_OF_LIGHT / self.omega0_rad_s
    }

    /// `k_X = 3/(2a0)` in 1/m.
    pub fn kx_per_m(&self) -> f64 {
        1.5 / self.a0_m
    }
}

/// Dimensionless radius and time, `X = (ω0/c)·|x|`, `T = ω0·t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpacetimePoint {
    pub x: f64,
    pub t: f64,
}

impl SpacetimePoint {
    pub fn new(x: f64, t: f64) -> Result<Self> {
        let p = Self { x, t };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.x.is_finite() && self.t.is_finite()) || self.x < 0.0 || self.t < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "spacetime point needs finite X >= 0 and T >= 0, got ({}, {})",
                self.x, self.t
            )));
        }
        Ok(())
    }

    pub fn on_lightcone(&self) -> bool {
        self.x == self.t
    }
}

/// `ξ_{m2}` split along and across an observation direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XiDecomposition {
    pub xi_par: Complex64,
    pub xi_perp: [Complex64; 2],
}

impl XiDecomposition {
    pub fn perp_norm(&self) -> f64 {
        (self.xi_perp[0].norm_sqr() + self.xi_perp[1].norm_sqr()).sqrt()
    }
}

/// Spherical basis vector `ξ_0 = e_z`, `ξ_{±1} = ∓(e_x ± i e_y)/√2`.
pub fn xi_vector(m2: i32) -> Result<[Complex64; 3]> {
    let s = 1.0 / SQRT_2;
    match m2 {
        0 => Ok([Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]),
        1 => Ok([Complex64::new(-s, 0.0), Complex64::new(0.0, -s), Complex64::new(0.0, 0.0)]),
        -1 => Ok([Complex64::new(s, 0.0), Complex64::new(0.0, -s), Complex64::new(0.0, 0.0)]),
        _ => Err(Error::InvalidArgument(format!("m2 must be -1, 0 or 1, got {m2}"))),
    }
}

/// Orthonormal pair spanning the plane normal to `d`, seeded from the
/// canonical axis least aligned with `d`.
pub fn transverse_basis(d: [f64; 3]) -> [[f64; 3]; 2] {
    let abs = d.map(f64::abs);
    let axis = if abs[0] <= abs[1] && abs[0] <= abs[2] {
        0
    } else if abs[1] <= abs[2] {
        1
    } else {
        2
    };
    let mut e = [0.0; 3];
    e[axis] = 1.0;
    let proj = dot(e, d);
    let mut u = [e[0] - proj * d[0], e[1] - proj * d[1], e[2] - proj * d[2]];
    let n = dot(u, u).sqrt();
    u = u.map(|v| v / n);
    let v = cross(d, u);
    [u, v]
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn cdot(xi: [Complex64; 3], d: [f64; 3]) -> Complex64 {
    xi[0] * d[0] + xi[1] * d[1] + xi[2] * d[2]
}

pub fn xi_decompose(m2: i32, direction: [f64; 3]) -> Result<XiDecomposition> {
    let xi = xi_vector(m2)?;
    let norm = dot(direction, direction).sqrt();
    if !norm.is_finite() || (norm - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidArgument(format!("direction must be a unit vector, |d| = {norm}")));
    }
    let [u, v] = transverse_basis(direction);
    Ok(XiDecomposition {
        xi_par: cdot(xi, direction),
        xi_perp: [cdot(xi, u), cdot(xi, v)],
    })
}

/// `ψ_1s` in units of `a0^{-3/2}`.
pub fn orbital_1s(r_over_a0: f64) -> f64 {
    (-r_over_a0).exp() / PI.sqrt()
}

/// `ψ_2p,m2 = e^{-r/2}·(r·ξ_{m2})/√(32π)` in units of `a0^{-3/2}`.
pub fn orbital_2p(r: [f64; 3], m2: i32) -> Result<Complex64> {
    let xi = xi_vector(m2)?;
    let rad = dot(r, r).sqrt();
    Ok(cdot(xi, r) * ((-rad / 2.0).exp() / (32.0 * PI).sqrt()))
}

/// `2^{9/2}/3^4`: the form factor at `k = 0`.
pub const COUPLING_AT_ZERO: f64 = 0.279_350_827_135_426_2;

/// Scalar form factor `2^{9/2}/3^4·[1 + (k/k_X)²]^{-2}`.
pub fn coupling_magnitude(k_over_kx: f64) -> Result<f64> {
    if !(k_over_kx >= 0.0) {
        return Err(Error::InvalidArgument(format!("wavenumber must be non-negative, got {k_over_kx}")));
    }
    let b = 1.0 + k_over_kx * k_over_kx;
    Ok(COUPLING_AT_ZERO / (b * b))
}

/// `ħ²e/(m_e a0)·(ħ/(ε0 c))^{1/2}` in SI units.
pub fn coupling_si_scale(params: &TransitionParams) -> f64 {
    use codata::*;
    HBAR * HBAR * ELEMENTARY_CHARGE / (ELECTRON_MASS * params.a0_m)
        * (HBAR / (VACUUM_PERMITTIVITY * SPEED_OF_LIGHT)).sqrt()
}

/// Global factor multiplying the dimensionless bracket of the exact and
/// dipole treatments: `2^{7/2}/3^4·ħe/(ε0 m_e a0 (2π)²)·(ω0/c)³/ω0`, in V/m.
pub fn si_prefactor(params: &TransitionParams) -> f64 {
    use codata::*;
    let k = params.omega0_rad_s / SPEED_OF_LIGHT;
    2f64.powf(3.5) / 81.0 * HBAR * ELEMENTARY_CHARGE
        / (VACUUM_PERMITTIVITY * ELECTRON_MASS * params.a0_m * (2.0 * PI).powi(2))
        * k.powi(3)
        / params.omega0_rad_s
}

/// Global factor of the standard treatment, `2^{5/2}/(3^4π)·ħe/(ε0 m_e a0 ω0)·(ω0/c)³`.
pub fn si_prefactor_standard(params: &TransitionParams) -> f64 {
    use codata::*;
    let k = params.omega0_rad_s / SPEED_OF_LIGHT;
    2f64.powf(2.5) / (81.0 * PI) * HBAR * ELEMENTARY_CHARGE
        / (VACUUM_PERMITTIVITY * ELECTRON_MASS * params.a0_m * params.omega0_rad_s)
        * k.powi(3)
}
