//! Leading terms of the dipole principal-value combinations.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{SpacetimePoint, TransitionParams};

/// `X ≫ max(1, T)`.
///
/// * `n = 1`, `C(-X) - C(X)`: `2i(e^{iΩT} - 1)/X`
/// * `n = 2`, `C(-X) + C(X)`: `[2 + e^{iΩT}(-2 + 2iΩT)]/(ΩX)²`
pub fn asymptote_large_x(n: i32, pt: &SpacetimePoint, params: &TransitionParams) -> Result<Complex64> {
    pt.validate()?;
    let omega = params.omega();
    let i = Complex64::i();
    let e = (i * omega * pt.t).exp();
    match n {
        1 => Ok(2.0 * i * (e - 1.0) / pt.x),
        2 => Ok((2.0 + e * (-2.0 + 2.0 * i * omega * pt.t)) / (omega * pt.x).powi(2)),
        _ => Err(Error::InvalidOrder(n)),
    }
}

/// `X → 0`, `n = 1`, `C(-X) - C(X) → iπΩ` on the principal branch.
pub fn asymptote_small_x(params: &TransitionParams) -> Complex64 {
    Complex64::new(0.0, std::f64::consts::PI) * params.omega()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::default_hydrogen_params;

    #[test]
    fn examples() {
        let p = default_hydrogen_params();
        let pt = SpacetimePoint::new(100.0, 1.0).unwrap();
        let e = Complex64::from_polar(1.0, 1.0);
        let i = Complex64::i();
        assert!((asymptote_large_x(1, &pt, &p).unwrap() - 2.0 * i * (e - 1.0) / 100.0).norm() < 1e-16);
        let want = (2.0 + e * (-2.0 + 2.0 * i)) / 1e4;
        assert!((asymptote_large_x(2, &pt, &p).unwrap() - want).norm() < 1e-18);
        assert!(asymptote_large_x(3, &pt, &p).is_err());
        assert_eq!(asymptote_small_x(&p), Complex64::new(0.0, std::f64::consts::PI));
    }
}
