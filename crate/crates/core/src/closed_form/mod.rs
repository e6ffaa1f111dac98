//! Analytic results for the three coupling treatments.
//!
//! `H_n^±(X,T) = ∫_0^∞ dk R_n(k)·e^{±ikX}·(1 - e^{-i(k-Ω)T})` with
//! `R_n(k) = k^{2-n}/([1+(k/κ)²]²(k-Ω))` splits as
//! `H_n^± = ½·f̄_n(∓X) + C_n(∓X)`, where `f̄_n` is the Fourier transform of the
//! integrand extended to the real line and `C_n = -(i/2π)·(vp 1/· * f̄_n)`.
//! The first term is the pole part, the second the principal-value part.

mod asymptotic;
mod dipole;
mod exact;
mod residues;
mod standard;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::TransitionParams;
use crate::numerics::phase_diff_kernel;

pub use asymptotic::{asymptote_large_x, asymptote_small_x};
pub use dipole::{c_dipole, c_dipole_branch, fbar_dipole, pm_diff_dipole};
pub use exact::{c_exact, fbar_exact, h_exact, h_exact_combination, pm_diff_exact, PoleSet};
pub use residues::{residue_coeffs, upper_gamma_closed, ResidueCoeffs};
pub use standard::{h_standard, psi_standard};

/// Which of `H^±` is meant; `H^±` pairs with `f̄(∓X)` and `C(∓X)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

/// `g(-X) - g(X)` or `g(-X) + g(X)`, i.e. `H^+ - H^-` or `H^+ + H^-`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Combination {
    Difference,
    Sum,
}

impl Combination {
    fn apply(self, at_minus_x: Complex64, at_x: Complex64) -> Complex64 {
        match self {
            Combination::Difference => at_minus_x - at_x,
            Combination::Sum => at_minus_x + at_x,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PoleAndPV {
    pub pole: Complex64,
    pub pv: Complex64,
    /// `pole + pv`.
    pub total: Complex64,
}

impl PoleAndPV {
    pub fn new(pole: Complex64, pv: Complex64) -> Self {
        Self { pole, pv, total: pole + pv }
    }
}

/// Returns `m = 2 - n`.
pub(crate) fn check_order(n: i32) -> Result<i32> {
    if (1..=3).contains(&n) {
        Ok(2 - n)
    } else {
        Err(Error::InvalidOrder(n))
    }
}

pub(crate) fn two_pi_i() -> Complex64 {
    Complex64::new(0.0, 2.0 * std::f64::consts::PI)
}

/// `∫_0^T e^{i(k-Ω)t'} dt' = i(1 - e^{i(k-Ω)T})/(k - Ω)`.
pub fn time_integral(k: f64, t: f64, params: &TransitionParams) -> Complex64 {
    let a = k - params.omega();
    -Complex64::i() * t * phase_diff_kernel(-a * t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::default_hydrogen_params;

    #[test]
    fn time_integral_resonant_and_empty() {
        let p = default_hydrogen_params();
        assert!((time_integral(1.0, 3.5, &p) - Complex64::new(3.5, 0.0)).norm() < 1e-15);
        assert_eq!(time_integral(2.0, 0.0, &p).norm(), 0.0);
    }

    #[test]
    fn time_integral_matches_antiderivative() {
        let p = default_hydrogen_params().with_decay(0.1, 0.02);
        let (k, t) = (2.0, 3.0);
        let a = k - p.omega();
        let want = Complex64::i() * (1.0 - (Complex64::i() * a * t).exp()) / a;
        assert!((time_integral(k, t, &p) - want).norm() < 1e-15);
    }
}
