//! Dipole approximation: the form factor is dropped, leaving
//! `R_n(k) = k^{2-n}/(k - Ω)`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{SpacetimePoint, TransitionParams};
use crate::numerics::EiBranch;

use super::exact::{require_positive_x, PoleSet};
use super::{check_order, two_pi_i, Combination};

/// `2πi·Ω^{2-n}·e^{-iΩu}·[-θ(u) + θ(u+T)]` for `n ∈ {1, 2}`.
pub fn fbar_dipole(n: i32, u: f64, t: f64, params: &TransitionParams) -> Result<Complex64> {
    let m = check_order(n)?;
    if n == 3 {
        return Err(Error::InvalidArgument("n = 3 transform exists only as f(-X) - f(X)".into()));
    }
    let omega = params.omega();
    let step = -params.theta(u) + params.theta(u + t);
    Ok(two_pi_i() * omega.powi(m) * (-Complex64::i() * omega * u).exp() * step)
}

/// `f̄(-X) ∓ f̄(X)`.
///
/// `n ∈ {1, 2}`: `2πi·Ω^{2-n}·e^{iΩX}·θ(T-X)` for either combination.
/// `n = 3`, difference only: `(2πi/Ω)·[θ(T-X)(e^{iΩX} - e^{iΩT}) - (1 - e^{iΩT})]`.
pub fn pm_diff_dipole(n: i32, pt: &SpacetimePoint, params: &TransitionParams, comb: Combination) -> Result<Complex64> {
    let m = check_order(n)?;
    require_positive_x(pt)?;
    let omega = params.omega();
    let i = Complex64::i();
    let inside = params.theta(pt.t - pt.x);
    let wave = (i * omega * pt.x).exp();
    if n < 3 {
        return Ok(two_pi_i() * omega.powi(m) * wave * inside);
    }
    if comb == Combination::Sum {
        return Err(Error::InvalidArgument("n = 3 is only defined as H+ - H-".into()));
    }
    let e = (i * omega * pt.t).exp();
    Ok(two_pi_i() / omega * (inside * (wave - e) - (1.0 - e)))
}

/// `C(-X) ∓ C(X)` with the principal branch of Ei.
///
/// `C(y) = Ω^{2-n}·e^{-iΩy}·[-Ei(iΩy) + Ei(iΩ(y+T))]`; the `n = 3` difference
/// adds `(1/Ω)·e^{iΩT}·ln((X+T)/|T-X|)`.
pub fn c_dipole(n: i32, pt: &SpacetimePoint, params: &TransitionParams, comb: Combination) -> Result<Complex64> {
    c_dipole_branch(n, pt, params, comb, EiBranch::Principal)
}

/// [`c_dipole`] on a chosen Ei branch. [`EiBranch::Continued`] reproduces the
/// large-κ limit of the form-factor result.
pub fn c_dipole_branch(
    n: i32,
    pt: &SpacetimePoint,
    params: &TransitionParams,
    comb: Combination,
    branch: EiBranch,
) -> Result<Complex64> {
    PoleSet::dipole(n, params, branch)?.c_diff(pt, comb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::default_hydrogen_params;
    use std::f64::consts::PI;

    fn pt(x: f64, t: f64) -> SpacetimePoint {
        SpacetimePoint::new(x, t).unwrap()
    }

    #[test]
    fn fbar_examples() {
        let p = default_hydrogen_params();
        assert_eq!(fbar_dipole(1, 0.5, 2.0, &p).unwrap().norm(), 0.0);
        let v = fbar_dipole(2, -0.5, 2.0, &p).unwrap();
        assert!((v - two_pi_i() * Complex64::from_polar(1.0, 0.5)).norm() < 1e-15);
        assert_eq!(fbar_dipole(2, -3.0, 2.0, &p).unwrap().norm(), 0.0);
        assert!(fbar_dipole(3, -0.5, 2.0, &p).is_err());
    }

    #[test]
    fn pm_diff_matches_generic_engine() {
        let p = default_hydrogen_params().with_decay(0.05, 0.01);
        for n in 1..=3 {
            let poles = PoleSet::dipole(n, &p, EiBranch::Principal).unwrap();
            for &(x, t) in &[(0.3, 2.0), (2.0, 0.3), (1.5, 1.5)] {
                let q = pt(x, t);
                let a = pm_diff_dipole(n, &q, &p, Combination::Difference).unwrap();
                let b = poles.pm_diff(&q, Combination::Difference).unwrap();
                assert!((a - b).norm() < 1e-13, "n={n} ({x},{t})");
                if n < 3 {
                    let a = fbar_dipole(n, -x, t, &p).unwrap() + fbar_dipole(n, x, t, &p).unwrap();
                    assert!((a - pm_diff_dipole(n, &q, &p, Combination::Sum).unwrap()).norm() < 1e-13);
                }
            }
        }
    }

    #[test]
    fn n3_outside_cone_noncausal_term() {
        let p = default_hydrogen_params();
        let v = pm_diff_dipole(3, &pt(5.0, 1.0), &p, Combination::Difference).unwrap();
        let e = Complex64::from_polar(1.0, 1.0);
        assert!((v + two_pi_i() * (1.0 - e)).norm() < 1e-14);
        let v = pm_diff_dipole(3, &pt(8.0, 2.0 * PI), &p, Combination::Difference).unwrap();
        assert!(v.norm() < 1e-14);
    }

    #[test]
    fn causal_outside_cone_for_n_1_2() {
        let p = default_hydrogen_params();
        assert_eq!(pm_diff_dipole(1, &pt(3.0, 1.0), &p, Combination::Difference).unwrap().norm(), 0.0);
    }

    #[test]
    fn c_small_x_limit_principal() {
        let p = default_hydrogen_params();
        let v = c_dipole(1, &pt(1e-6, 50.0), &p, Combination::Difference).unwrap();
        assert!((v - Complex64::new(0.0, PI)).norm() < 0.02 * PI);
    }

    #[test]
    fn c_dipole_zero_time() {
        let p = default_hydrogen_params();
        assert_eq!(c_dipole(2, &pt(1.0, 0.0), &p, Combination::Sum).unwrap().norm(), 0.0);
    }

    #[test]
    fn c_dipole_singular_on_cone() {
        let p = default_hydrogen_params();
        assert_eq!(c_dipole(1, &pt(2.0, 2.0), &p, Combination::Difference), Err(Error::LightconeSingular));
    }
}
