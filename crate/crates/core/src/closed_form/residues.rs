use num_complex::Complex64;
use serde::Serialize;

use crate::error::Result;
use crate::model::TransitionParams;

use super::check_order;

/// Residue data of `κ⁴k^{2-n}/((k²+κ²)²(k-Ω))·e^{-iku}`.
///
/// At `k = Ω` the residue is `G0·e^{-iΩu}`; at the double poles `q = ±iκ` it is
/// `e^{-iqu}(γ0 + γ1·u)`. `gamma0`/`gamma1` refer to `+iκ`, the `_lower`
/// fields to `-iκ`. For `n = 3` the pole at the origin has residue `origin`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResidueCoeffs {
    pub n: i32,
    pub g0: Complex64,
    pub gamma0: Complex64,
    pub gamma1: Complex64,
    pub gamma0_lower: Complex64,
    pub gamma1_lower: Complex64,
    pub origin: Complex64,
}

fn double_pole(q: Complex64, m: i32, kappa: f64, omega: Complex64) -> (Complex64, Complex64) {
    let k4 = kappa.powi(4);
    let v = k4 * q.powi(m) / ((2.0 * q).powi(2) * (q - omega));
    let dlog = (m as f64 - 1.0) / q - (q - omega).inv();
    (v * dlog, -Complex64::i() * v)
}

pub fn residue_coeffs(n: i32, params: &TransitionParams) -> Result<ResidueCoeffs> {
    let m = check_order(n)?;
    let kappa = params.kappa;
    let omega = params.omega();
    let k2 = kappa * kappa;
    let g0 = k2 * k2 * omega.powi(m) / (omega * omega + k2).powi(2);
    let (gamma0, gamma1) = double_pole(Complex64::new(0.0, kappa), m, kappa, omega);
    let (gamma0_lower, gamma1_lower) = double_pole(Complex64::new(0.0, -kappa), m, kappa, omega);
    let origin = if n == 3 { -omega.inv() } else { Complex64::new(0.0, 0.0) };
    Ok(ResidueCoeffs { n, g0, gamma0, gamma1, gamma0_lower, gamma1_lower, origin })
}

/// Rational closed forms of the `+iκ` coefficients:
/// `γ0 = κ(iκ)^{2-n}[-i(n-1)Ω - nκ]/(4(κ+iΩ)²)`, `γ1 = κ²(iκ)^{2-n}/(4(κ+iΩ))`.
pub fn upper_gamma_closed(n: i32, params: &TransitionParams) -> Result<(Complex64, Complex64)> {
    let m = check_order(n)?;
    let kappa = params.kappa;
    let omega = params.omega();
    let i = Complex64::i();
    let ik_m = (i * kappa).powi(m);
    let denom = kappa + i * omega;
    let nf = n as f64;
    let gamma0 = kappa * ik_m * (-i * (nf - 1.0) * omega - nf * kappa) / (4.0 * denom * denom);
    let gamma1 = kappa * kappa * ik_m / (4.0 * denom);
    Ok((gamma0, gamma1))
}
