//! Standard treatment: the integration range is extended to negative
//! frequencies, which leaves only the causal outgoing wave.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::{Component, FieldBreakdown, Part, Treatment, Zone};
use crate::model::{SpacetimePoint, TransitionParams, XiDecomposition};

use super::{check_order, two_pi_i};

/// `(H⁺, H⁻) = (2πi·θ(T-X)·Ω^{3-n}·e^{iΩX}, 0)`.
pub fn h_standard(n: i32, pt: &SpacetimePoint, params: &TransitionParams) -> Result<(Complex64, Complex64)> {
    check_order(n)?;
    pt.validate()?;
    let omega = params.omega();
    let plus = two_pi_i() * params.theta(pt.t - pt.x) * omega.powi(3 - n) * (Complex64::i() * omega * pt.x).exp();
    Ok((plus, Complex64::new(0.0, 0.0)))
}

/// Dimensionless field `θ(T-X)·Ω³·[ξ⊥(1/w + i/w² - 1/w³); -2ξ∥(i/w² - 1/w³)]·e^{iΩ(X-T)}`
/// with `w = ΩX`. Every cell is pure pole.
pub fn psi_standard(pt: &SpacetimePoint, params: &TransitionParams, xi: &XiDecomposition) -> Result<FieldBreakdown> {
    pt.validate()?;
    if pt.x <= 0.0 {
        return Err(Error::InvalidArgument("X must be positive".into()));
    }
    let omega = params.omega();
    let i = Complex64::i();
    let w = omega * pt.x;
    let common = params.theta(pt.t - pt.x) * omega.powi(3) * (i * omega * (pt.x - pt.t)).exp();
    let far = common / w;
    let mid = common * i / (w * w);
    let near = -common / (w * w * w);
    let perp = xi.perp_norm();

    let mut fb = FieldBreakdown::new(Treatment::Standard, *pt, false);
    let zero = Complex64::new(0.0, 0.0);
    let cells = [
        (Zone::Far, perp * far, zero),
        (Zone::Mid, perp * mid, -2.0 * xi.xi_par * mid),
        (Zone::Near, perp * near, -2.0 * xi.xi_par * near),
    ];
    for (zone, transverse, radial) in cells {
        for (component, value) in [(Component::Transverse, transverse), (Component::Radial, radial)] {
            fb.set(zone, Part::Pole, component, Some(value));
            fb.set(zone, Part::Pv, component, Some(zero));
            fb.set(zone, Part::Total, component, Some(value));
        }
    }
    Ok(fb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{default_hydrogen_params, xi_decompose};
    use std::f64::consts::PI;

    #[test]
    fn h_standard_examples() {
        let p = default_hydrogen_params();
        let (hp, hm) = h_standard(2, &SpacetimePoint::new(3.0, 1.0).unwrap(), &p).unwrap();
        assert_eq!((hp.norm(), hm.norm()), (0.0, 0.0));
        let (hp, _) = h_standard(3, &SpacetimePoint::new(0.0, 1.0).unwrap(), &p).unwrap();
        assert!((hp - Complex64::new(0.0, 2.0 * PI)).norm() < 1e-15);
        let (hp, _) = h_standard(1, &SpacetimePoint::new(PI / 2.0, 2.0 * PI).unwrap(), &p).unwrap();
        assert!((hp - Complex64::new(-2.0 * PI, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn transverse_bracket_at_unit_distance() {
        let p = default_hydrogen_params();
        let xi = xi_decompose(0, [1.0, 0.0, 0.0]).unwrap();
        let fb = psi_standard(&SpacetimePoint::new(1.0, 2.0).unwrap(), &p, &xi).unwrap();
        let phase = Complex64::from_polar(1.0, -1.0);
        let i = Complex64::i();
        let sum: Complex64 = [Zone::Far, Zone::Mid, Zone::Near]
            .iter()
            .map(|&z| fb.get(z, Part::Total, Component::Transverse).unwrap())
            .sum();
        assert!((sum - (1.0 + i - 1.0) * phase).norm() < 1e-15);
        assert_eq!(fb.get(Zone::Far, Part::Total, Component::Radial).unwrap().norm(), 0.0);
    }

    #[test]
    fn outside_cone_is_zero() {
        let p = default_hydrogen_params();
        let xi = xi_decompose(1, [0.6, 0.0, 0.8]).unwrap();
        let fb = psi_standard(&SpacetimePoint::new(2.0, 1.0).unwrap(), &p, &xi).unwrap();
        assert!(fb.all_zero());
    }
}
