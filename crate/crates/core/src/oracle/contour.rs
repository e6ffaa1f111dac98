//! Residues by trapezoidal quadrature on small circles.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::closed_form::check_order;
use crate::error::{Error, Result};
use crate::model::TransitionParams;

const M_COARSE: usize = 64;
const M_FINE: usize = 128;
const REFINEMENT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PoleSite {
    /// `k = Ω`.
    Resonance,
    /// `k = +iκ`.
    UpperCutoff,
    /// `k = -iκ`.
    LowerCutoff,
}

/// `g_n(k) = R_n(k)` or `h_n(k, T) = R_n(k)·e^{-i(k-Ω)T}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ResiduePart {
    G,
    H,
}

/// Residue of `f(k)·e^{-ikX}` at a pole `q`, normalized so that it reads
/// `c0 + c1·s` with `s = X` for `g` and `s = X + T` for `h`, after the factor
/// `e^{-iqX}` (`e^{iΩT}e^{-iq(X+T)}` for `h`) is taken out.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ContourResidue {
    pub c0: Complex64,
    pub c1: Complex64,
}

fn location(site: PoleSite, params: &TransitionParams) -> Complex64 {
    match site {
        PoleSite::Resonance => params.omega(),
        PoleSite::UpperCutoff => Complex64::new(0.0, params.kappa),
        PoleSite::LowerCutoff => Complex64::new(0.0, -params.kappa),
    }
}

fn separation(site: PoleSite, n: i32, params: &TransitionParams) -> f64 {
    let q = location(site, params);
    let mut others = vec![
        params.omega(),
        Complex64::new(0.0, params.kappa),
        Complex64::new(0.0, -params.kappa),
    ];
    if n == 3 {
        others.push(Complex64::new(0.0, 0.0));
    }
    others
        .into_iter()
        .map(|p| (p - q).norm())
        .filter(|&d| d > 0.0)
        .fold(f64::INFINITY, f64::min)
}

/// A quarter of the distance to the nearest other singularity.
pub fn default_radius(site: PoleSite, n: i32, params: &TransitionParams) -> f64 {
    0.25 * separation(site, n, params)
}

fn r_n(k: Complex64, m: i32, kappa: f64, omega: Complex64) -> Complex64 {
    let b = 1.0 + (k / kappa) * (k / kappa);
    k.powi(m) / (b * b * (k - omega))
}

/// `(1/2πi)∮ R_n(k)·e^{-i(k-q)s} dk` with `M` nodes.
fn circle(q: Complex64, radius: f64, s: f64, m: i32, params: &TransitionParams, nodes: usize) -> Complex64 {
    let omega = params.omega();
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..nodes {
        let dz = Complex64::from_polar(radius, 2.0 * PI * j as f64 / nodes as f64);
        let k = q + dz;
        acc += r_n(k, m, params.kappa, omega) * (-Complex64::i() * dz * s).exp() * dz;
    }
    acc / nodes as f64
}

fn refined(q: Complex64, radius: f64, s: f64, m: i32, params: &TransitionParams) -> Result<Complex64> {
    let coarse = circle(q, radius, s, m, params, M_COARSE);
    let fine = circle(q, radius, s, m, params, M_FINE);
    let gap = (fine - coarse).norm();
    if gap > REFINEMENT_TOL * fine.norm().max(1e-300) {
        return Err(Error::ContourRefinement(gap));
    }
    Ok(fine)
}

/// Residue coefficients of `g_n` or `h_n` at `site`, from contour integrals of
/// radius `radius`. Simple poles give `c1 = 0`; the double poles at `±iκ` are
/// sampled at two shifts `s` to separate `c0` and `c1`.
pub fn contour_residue(
    site: PoleSite,
    n: i32,
    part: ResiduePart,
    params: &TransitionParams,
    t: f64,
    radius: f64,
) -> Result<ContourResidue> {
    let m = check_order(n)?;
    params.validate()?;
    let limit = 0.5 * separation(site, n, params);
    if !(radius > 0.0 && radius < limit) {
        return Err(Error::RadiusTooLarge { radius, limit });
    }
    let q = location(site, params);
    // h_n·e^{-ikX} = e^{iΩT}·g_n·e^{-ik(X+T)}, sampled from X = 0
    let s0 = match part {
        ResiduePart::G => 0.0,
        ResiduePart::H => t,
    };
    let first = refined(q, radius, s0, m, params)?;
    if site == PoleSite::Resonance {
        return Ok(ContourResidue { c0: first, c1: Complex64::new(0.0, 0.0) });
    }
    let ds = 1.0 / radius;
    let second = refined(q, radius, s0 + ds, m, params)?;
    let c1 = (second - first) / ds;
    Ok(ContourResidue { c0: first - c1 * s0, c1 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_form::residue_coeffs;
    use crate::model::default_hydrogen_params;

    #[test]
    fn matches_partial_fractions() {
        for kappa in [5.0, 548.0] {
            let p = default_hydrogen_params().with_kappa(kappa);
            for n in 1..=3 {
                let r = residue_coeffs(n, &p).unwrap();
                for (site, c0, c1) in [
                    (PoleSite::Resonance, r.g0, Complex64::new(0.0, 0.0)),
                    (PoleSite::UpperCutoff, r.gamma0, r.gamma1),
                    (PoleSite::LowerCutoff, r.gamma0_lower, r.gamma1_lower),
                ] {
                    let rad = default_radius(site, n, &p);
                    let got = contour_residue(site, n, ResiduePart::G, &p, 0.0, rad).unwrap();
                    assert!((got.c0 - c0).norm() <= 1e-10 * c0.norm(), "n={n} {site:?}");
                    assert!((got.c1 - c1).norm() <= 1e-10 * c1.norm().max(1e-300), "n={n} {site:?}");
                }
            }
        }
    }

    #[test]
    fn radius_guard() {
        let p = default_hydrogen_params().with_kappa(5.0);
        let err = contour_residue(PoleSite::Resonance, 3, ResiduePart::G, &p, 0.0, 0.6);
        assert!(matches!(err, Err(Error::RadiusTooLarge { .. })));
    }
}
