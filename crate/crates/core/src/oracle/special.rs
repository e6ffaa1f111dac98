//! Exponential integral by quadrature, for checking the series, continued
//! fraction and asymptotic branches of `numerics`.

use num_complex::Complex64;

use super::gk::integrate;
use crate::error::{Error, Result};
use crate::numerics::EULER_GAMMA;

const PANELS: usize = 16;

/// `Ei(z) = γ + log z + ∫_0^1 (e^{zs} - 1)/s ds` on the principal branch,
/// with `log|x|` on the negative real axis. Meant for `|z| ≲ 50`.
pub fn ei_quadrature(z: Complex64) -> Result<Complex64> {
    if z == Complex64::new(0.0, 0.0) {
        return Err(Error::EiAtZero);
    }
    let f = |s: f64| ((z * s).exp() - 1.0) / s;
    let breaks: Vec<f64> = (0..=PANELS).map(|j| j as f64 / PANELS as f64).collect();
    let est = integrate(&f, &breaks, 0.0, 1e-14, 20_000);
    if !est.converged {
        return Err(Error::ToleranceNotMet { achieved: est.error, requested: 1e-14 });
    }
    let log = if z.im == 0.0 { Complex64::new(z.re.abs().ln(), 0.0) } else { z.ln() };
    Ok(EULER_GAMMA + log + est.value)
}

/// `e^{-x}Ei(x) = vp ∫_0^∞ e^{-t}/(x - t) dt` for `x > 0`. The pole is removed
/// by pairing `[0, 2x]` symmetrically, which leaves `e^{-x}·expm1(u)/u` with
/// `u = x - t`.
pub fn ei_scaled_quadrature(x: f64) -> Result<f64> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::InvalidArgument(format!("x must be positive, got {x}")));
    }
    let near = |t: f64| {
        let u = x - t;
        let r = if u == 0.0 { 1.0 } else { u.exp_m1() / u };
        Complex64::new((-x).exp() * r, 0.0)
    };
    let far = |t: f64| Complex64::new((-t).exp() / (x - t), 0.0);
    let mut breaks: Vec<f64> = (0..=PANELS).map(|j| 2.0 * x * j as f64 / PANELS as f64).collect();
    // the integrand decays like e^{-t} away from the origin
    breaks.extend((1..40).map(|j| (j as f64).min(2.0 * x)));
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    let a = integrate(&near, &breaks, 0.0, 1e-14, 50_000);
    let tail_breaks: Vec<f64> = (0..=60).map(|j| 2.0 * x + j as f64).collect();
    let b = integrate(&far, &tail_breaks, 0.0, 1e-14, 50_000);
    if !(a.converged && b.converged) {
        return Err(Error::ToleranceNotMet { achieved: a.error + b.error, requested: 1e-14 });
    }
    Ok(a.value.re + b.value.re)
}
