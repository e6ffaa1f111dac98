//! Exponential integral Ei on real and complex arguments.
//!
//! Regions for complex `z`:
//! * `|z| <= 4` with `Re z > -1`, or `4 < |z| < 40` hugging the positive real
//!   axis (`|z| - Re z < 8`): power series `γ + ln z + Σ z^k/(k·k!)`.
//! * `|z| >= 40`, `Re z >= 0`: asymptotic series with optimal truncation.
//! * everything else: modified Lentz continued fraction for `e^w E1(w)`,
//!   `w = -z`.
//!
//! The plain real `Ei(x)` for `x > 0` sums the series up to the overflow
//! threshold; the asymptotic form only feeds the scaled kernel `e^{-x} Ei(x)`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const SERIES_RADIUS: f64 = 4.0;
const ASYMPTOTIC_RADIUS: f64 = 40.0;
const SECTOR_WIDTH: f64 = 8.0;
const EXP_LIMIT: f64 = 709.782_712_893_384;
const CF_MAX_ITER: usize = 20_000;
const SERIES_MAX_TERMS: usize = 4_000;

/// Which sheet of Ei is used off the real axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EiBranch {
    /// `Ei(z) = -E1(-z) + sign(Im z)·iπ`, continuous onto the classical
    /// principal value from both half-planes.
    #[default]
    Principal,
    /// Principal value plus `iπ` below the real axis, i.e. `-E1(-z) + iπ`
    /// above and `-E1(-z)` below. This is the sheet produced by
    /// `vp ∫_0^∞ e^{-ipσ}/(y-σ) dσ = e^{-ipy} Ei(ipy)` for real `p`.
    Continued,
}

enum Region {
    Series,
    Asymptotic,
    ContinuedFraction,
}

fn region(z: Complex64) -> Region {
    let r = z.norm();
    if r >= ASYMPTOTIC_RADIUS && z.re >= 0.0 {
        Region::Asymptotic
    } else if (r <= SERIES_RADIUS && z.re > -1.0) || (z.re > 0.0 && r - z.re < SECTOR_WIDTH) {
        Region::Series
    } else {
        Region::ContinuedFraction
    }
}

fn sign_im(z: Complex64) -> f64 {
    if z.im > 0.0 {
        1.0
    } else if z.im < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// `γ + ln z + Σ z^k/(k·k!)`. On the negative real axis `ln|z|` is used, which
/// gives the real value `-E1(|z|)`.
fn series(z: Complex64) -> Complex64 {
    let log = if z.im == 0.0 {
        Complex64::new(z.re.abs().ln(), 0.0)
    } else {
        z.ln()
    };
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 1..SERIES_MAX_TERMS {
        let kf = k as f64;
        term *= z / kf;
        let add = term / kf;
        sum += add;
        if add.norm() <= f64::EPSILON * 0.25 * sum.norm() {
            break;
        }
    }
    Complex64::new(EULER_GAMMA, 0.0) + log + sum
}

/// `e^{-z}·(Ei(z) - sign(Im z)·iπ)` from `(1/z)·Σ k!/z^k`, truncated at the
/// smallest term.
fn asymptotic_scaled(z: Complex64) -> Complex64 {
    let inv = z.inv();
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut last = 1.0;
    for k in 1..SERIES_MAX_TERMS {
        let next = term * (k as f64) * inv;
        let size = next.norm();
        if size >= last {
            break;
        }
        term = next;
        sum += term;
        last = size;
        if size <= f64::EPSILON * 0.25 * sum.norm() {
            break;
        }
    }
    sum * inv
}

/// `e^w E1(w)` by the modified Lentz algorithm.
fn e1_cf_scaled(w: Complex64) -> Result<Complex64> {
    let tiny = 1e-300;
    let mut b = w + 1.0;
    let mut c = Complex64::new(1.0 / tiny, 0.0);
    let mut d = b.inv();
    let mut h = d;
    for i in 1..CF_MAX_ITER {
        let an = -((i * i) as f64);
        b += 2.0;
        d = an * d + b;
        if d.norm() < tiny {
            d = Complex64::new(tiny, 0.0);
        }
        d = d.inv();
        c = b + an / c;
        if c.norm() < tiny {
            c = Complex64::new(tiny, 0.0);
        }
        let del = c * d;
        h *= del;
        if (del - 1.0).norm() < 1e-16 {
            return Ok(h);
        }
    }
    Err(Error::ContinuedFraction(w))
}

fn check_nonzero(z: Complex64) -> Result<()> {
    if z.re == 0.0 && z.im == 0.0 {
        Err(Error::EiAtZero)
    } else {
        Ok(())
    }
}

fn branch_shift(z: Complex64, branch: EiBranch) -> Complex64 {
    match branch {
        EiBranch::Continued if z.im < 0.0 => Complex64::new(0.0, PI),
        _ => Complex64::new(0.0, 0.0),
    }
}

/// Principal-branch exponential integral.
pub fn expint_ei(z: Complex64) -> Result<Complex64> {
    expint_ei_branch(z, EiBranch::Principal)
}

pub fn expint_ei_branch(z: Complex64, branch: EiBranch) -> Result<Complex64> {
    check_nonzero(z)?;
    if z.im == 0.0 {
        return ei_real(z.re).map(|v| Complex64::new(v, 0.0));
    }
    let principal = match region(z) {
        Region::Series => series(z),
        Region::Asymptotic => {
            if z.re > EXP_LIMIT {
                return Err(Error::Overflow(z));
            }
            asymptotic_scaled(z) * z.exp() + Complex64::new(0.0, sign_im(z) * PI)
        }
        Region::ContinuedFraction => {
            let w = -z;
            -e1_cf_scaled(w)? * z.exp() + Complex64::new(0.0, sign_im(z) * PI)
        }
    };
    Ok(principal + branch_shift(z, branch))
}

/// `e^{-z}·Ei(z)` on the requested branch, free of overflow for large `Re z`.
pub fn expint_ei_scaled(z: Complex64, branch: EiBranch) -> Result<Complex64> {
    check_nonzero(z)?;
    if z.im == 0.0 {
        return ei_real_scaled(z.re).map(|v| Complex64::new(v, 0.0));
    }
    let pi_term = Complex64::new(0.0, sign_im(z) * PI) + branch_shift(z, branch);
    let scaled = match region(z) {
        Region::Series => (series(z) + branch_shift(z, branch)) * (-z).exp(),
        Region::Asymptotic => asymptotic_scaled(z) + pi_term * (-z).exp(),
        Region::ContinuedFraction => -e1_cf_scaled(-z)? + pi_term * (-z).exp(),
    };
    Ok(scaled)
}

/// Classical real Ei: principal value for `x > 0`, `-E1(-x)` for `x < 0`.
pub fn ei_real(x: f64) -> Result<f64> {
    if x == 0.0 {
        return Err(Error::EiAtZero);
    }
    if x > EXP_LIMIT {
        return Err(Error::Overflow(Complex64::new(x, 0.0)));
    }
    if x > -1.0 {
        return Ok(series(Complex64::new(x, 0.0)).re);
    }
    let w = Complex64::new(-x, 0.0);
    Ok(-(e1_cf_scaled(w)?.re) * x.exp())
}

/// `e^{-x}·Ei(x)`, finite for every nonzero real `x`.
pub fn ei_real_scaled(x: f64) -> Result<f64> {
    if x == 0.0 {
        return Err(Error::EiAtZero);
    }
    if x >= ASYMPTOTIC_RADIUS {
        return Ok(asymptotic_scaled(Complex64::new(x, 0.0)).re);
    }
    if x > -1.0 {
        return Ok(series(Complex64::new(x, 0.0)).re * (-x).exp());
    }
    Ok(-e1_cf_scaled(Complex64::new(-x, 0.0))?.re)
}
