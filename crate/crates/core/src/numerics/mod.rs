//! Special functions and small stable kernels shared by the closed forms and
//! the quadrature oracle.

mod expint;

use num_complex::Complex64;

pub use expint::{
    ei_real, ei_real_scaled, expint_ei, expint_ei_branch, expint_ei_scaled, EiBranch, EULER_GAMMA,
};

/// Below this modulus the kernel is summed from its Taylor series.
pub const KERNEL_SERIES_RADIUS: f64 = 0.5;
const KERNEL_SERIES_TERMS: usize = 24;

/// `(1 - e^{-iz})/z`, analytic through `z = 0` where it equals `i`.
pub fn phase_diff_kernel(z: Complex64) -> Complex64 {
    if z.norm() < KERNEL_SERIES_RADIUS {
        // i·Σ (-iz)^j/(j+1)!, summed Horner-style from the tail
        let w = Complex64::new(z.im, -z.re);
        let mut acc = Complex64::new(0.0, 0.0);
        for j in (0..KERNEL_SERIES_TERMS).rev() {
            acc = acc * w / ((j + 2) as f64) + 1.0;
        }
        Complex64::i() * acc
    } else {
        let w = Complex64::new(z.im, -z.re);
        -(w.exp() - 1.0) / z
    }
}

/// Step function with the symmetric value `1/2` at the origin.
pub fn heaviside(u: f64) -> f64 {
    heaviside_with(u, 0.5)
}

/// Step function with a caller-chosen value at the origin.
pub fn heaviside_with(u: f64, at_zero: f64) -> f64 {
    if u > 0.0 {
        1.0
    } else if u < 0.0 {
        0.0
    } else {
        at_zero
    }
}
