//! Pole and principal-value parts from a generic set of poles.
//!
//! With the Wigner-Weisskopf pole shifted below the axis,
//! `F(u) = ∫ R(k)e^{-iku} dk` is
//!
//! ```text
//! u > 0:  -2πi [G0 e^{-iΩu} + e^{-κu}(a⁻ + b⁻u) + z0]
//! u < 0:   2πi  e^{κu}(a⁺ + b⁺u)
//! ```
//!
//! and `f̄(u) = F(u) - e^{iΩT} F(u+T)`. Convolving each term with `vp 1/·`
//! gives `C(y) = Q(y) - e^{iΩT} Q(y+T)` where
//!
//! ```text
//! Q(y) = -[G0 J(y) + (a⁻ + b⁻y) s(κy) - b⁻/κ] - (a⁺ + b⁺y) s(-κy) - b⁺/κ
//! J(y) = e^{-iΩy} Ei(iΩy),   s(w) = e^{-w} Ei(w)
//! ```
//!
//! The origin pole (`n = 3`) only survives in `C(-X) - C(X)`, as
//! `-z0·e^{iΩT}·ln((X+T)/|T-X|)`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{SpacetimePoint, TransitionParams};
use crate::numerics::{ei_real_scaled, expint_ei_scaled, EiBranch, EULER_GAMMA};

use super::{check_order, residue_coeffs, two_pi_i, Combination, PoleAndPV, Sign};

#[derive(Debug, Clone, Copy, PartialEq)]
struct CutoffPoles {
    kappa: f64,
    a_lower: Complex64,
    b_lower: Complex64,
    a_upper: Complex64,
    b_upper: Complex64,
}

/// Residues of one `R_n`, plus the conventions needed to evaluate `f̄` and `C`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoleSet {
    pub n: i32,
    omega: Complex64,
    g0: Complex64,
    origin: Complex64,
    cutoff: Option<CutoffPoles>,
    branch: EiBranch,
    theta0: f64,
}

impl PoleSet {
    /// Form-factor coupling: poles at `Ω`, `±iκ` and, for `n = 3`, the origin.
    pub fn exact(n: i32, params: &TransitionParams) -> Result<Self> {
        let r = residue_coeffs(n, params)?;
        Ok(Self {
            n,
            omega: params.omega(),
            g0: r.g0,
            origin: r.origin,
            cutoff: Some(CutoffPoles {
                kappa: params.kappa,
                a_lower: r.gamma0_lower,
                b_lower: r.gamma1_lower,
                a_upper: r.gamma0,
                b_upper: r.gamma1,
            }),
            branch: EiBranch::Continued,
            theta0: params.heaviside_at_zero,
        })
    }

    /// Dipole approximation: `k^{2-n}/(k-Ω)`, no cutoff poles.
    pub fn dipole(n: i32, params: &TransitionParams, branch: EiBranch) -> Result<Self> {
        let m = check_order(n)?;
        let omega = params.omega();
        let origin = if n == 3 { -omega.inv() } else { Complex64::new(0.0, 0.0) };
        Ok(Self {
            n,
            omega,
            g0: omega.powi(m),
            origin,
            cutoff: None,
            branch,
            theta0: params.heaviside_at_zero,
        })
    }

    /// Drops the poles on or near the real axis, keeping only `±iκ`.
    pub fn without_real_axis_poles(self) -> Self {
        Self { g0: Complex64::new(0.0, 0.0), origin: Complex64::new(0.0, 0.0), ..self }
    }

    fn theta(&self, u: f64) -> f64 {
        crate::numerics::heaviside_with(u, self.theta0)
    }

    fn big_f(&self, u: f64) -> Complex64 {
        let pos = self.theta(u);
        let neg = self.theta(-u);
        let mut acc = Complex64::new(0.0, 0.0);
        if pos != 0.0 {
            let mut v = self.g0 * (-Complex64::i() * self.omega * u).exp() + self.origin;
            if let Some(c) = &self.cutoff {
                v += (-c.kappa * u).exp() * (c.a_lower + c.b_lower * u);
            }
            acc -= pos * v;
        }
        if neg != 0.0 {
            if let Some(c) = &self.cutoff {
                acc += neg * (c.kappa * u).exp() * (c.a_upper + c.b_upper * u);
            }
        }
        two_pi_i() * acc
    }

    /// `f̄(u, T)`.
    pub fn fbar(&self, u: f64, t: f64) -> Complex64 {
        self.big_f(u) - (Complex64::i() * self.omega * t).exp() * self.big_f(u + t)
    }

    /// `f̄(-X) ∓ f̄(X)` written out for `X > 0`.
    pub fn pm_diff(&self, pt: &SpacetimePoint, comb: Combination) -> Result<Complex64> {
        require_positive_x(pt)?;
        if self.n == 3 && comb == Combination::Sum {
            return Err(Error::InvalidArgument("n = 3 is only defined as H+ - H-".into()));
        }
        let (x, t) = (pt.x, pt.t);
        let i = Complex64::i();
        let e = (i * self.omega * t).exp();
        let inside = self.theta(t - x);
        let outside = self.theta(x - t);

        let mut at_x = self.origin * (e - 1.0);
        let mut at_minus_x = inside * (self.g0 * (i * self.omega * x).exp() + e * self.origin);
        if let Some(c) = &self.cutoff {
            let k = c.kappa;
            at_x += e * (-k * (x + t)).exp() * (c.a_lower + c.b_lower * (x + t))
                - (-k * x).exp() * (c.a_lower + c.b_lower * x);
            at_minus_x += (-k * x).exp() * (c.a_upper - c.b_upper * x);
            if inside != 0.0 {
                at_minus_x += inside * e * (-k * (t - x)).exp() * (c.a_lower + c.b_lower * (t - x));
            }
            if outside != 0.0 {
                at_minus_x -= outside * e * (-k * (x - t)).exp() * (c.a_upper + c.b_upper * (t - x));
            }
        }
        Ok(two_pi_i() * comb.apply(at_minus_x, at_x))
    }

    fn j_omega(&self, y: f64) -> Result<Complex64> {
        expint_ei_scaled(Complex64::i() * self.omega * y, self.branch)
    }

    fn q(&self, y: f64) -> Result<Complex64> {
        if y == 0.0 {
            return self.q_at_zero();
        }
        let mut v = -(self.g0 * self.j_omega(y)?);
        if let Some(c) = &self.cutoff {
            let k = c.kappa;
            v -= (c.a_lower + c.b_lower * y) * ei_real_scaled(k * y)? - c.b_lower / k;
            v -= (c.a_upper + c.b_upper * y) * ei_real_scaled(-k * y)? + c.b_upper / k;
        }
        Ok(v)
    }

    /// Finite limit of `Q` at the origin, which exists when the log terms
    /// `(G0 + a⁻ + a⁺)·ln|y|` cancel.
    fn q_at_zero(&self) -> Result<Complex64> {
        let Some(c) = &self.cutoff else {
            return Err(Error::LightconeSingular);
        };
        let sum = self.g0 + c.a_lower + c.a_upper;
        let scale = self.g0.norm() + c.a_lower.norm() + c.a_upper.norm();
        if sum.norm() > 1e-10 * scale || self.branch != EiBranch::Continued {
            return Err(Error::LightconeSingular);
        }
        let log_k = EULER_GAMMA + c.kappa.ln();
        let log_omega = EULER_GAMMA + self.omega.ln() + Complex64::new(0.0, std::f64::consts::FRAC_PI_2);
        Ok(-(self.g0 * log_omega + c.a_lower * log_k - c.b_lower / c.kappa) - c.a_upper * log_k
            - c.b_upper / c.kappa)
    }

    /// `C(y, T)` for a single argument; not available for `n = 3`.
    pub fn c_single(&self, y: f64, t: f64) -> Result<Complex64> {
        if self.n == 3 {
            return Err(Error::InvalidArgument("n = 3 principal value exists only as C(-X) - C(X)".into()));
        }
        self.c_single_unchecked(y, t)
    }

    fn c_single_unchecked(&self, y: f64, t: f64) -> Result<Complex64> {
        if t == 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let e = (Complex64::i() * self.omega * t).exp();
        Ok(self.q(y)? - e * self.q(y + t)?)
    }

    /// `C(-X) ∓ C(X)`.
    pub fn c_diff(&self, pt: &SpacetimePoint, comb: Combination) -> Result<Complex64> {
        require_positive_x(pt)?;
        if self.n == 3 && comb == Combination::Sum {
            return Err(Error::InvalidArgument("n = 3 is only defined as H+ - H-".into()));
        }
        let (x, t) = (pt.x, pt.t);
        if t == 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let mut v = comb.apply(self.c_single_unchecked(-x, t)?, self.c_single_unchecked(x, t)?);
        if self.origin != Complex64::new(0.0, 0.0) {
            if x == t {
                return Err(Error::LightconeSingular);
            }
            let e = (Complex64::i() * self.omega * t).exp();
            v -= self.origin * e * ((x + t) / (t - x).abs()).ln();
        }
        Ok(v)
    }

    /// `H^+ ∓ H^-` split into pole and principal-value parts.
    pub fn h_combination(&self, pt: &SpacetimePoint, comb: Combination) -> Result<PoleAndPV> {
        Ok(PoleAndPV::new(0.5 * self.pm_diff(pt, comb)?, self.c_diff(pt, comb)?))
    }

    /// Single `H^±` for `n ∈ {1, 2}`.
    pub fn h_single(&self, pt: &SpacetimePoint, sign: Sign) -> Result<PoleAndPV> {
        let y = match sign {
            Sign::Plus => -pt.x,
            Sign::Minus => pt.x,
        };
        let pv = self.c_single(y, pt.t)?;
        Ok(PoleAndPV::new(0.5 * self.fbar(y, pt.t), pv))
    }
}

pub(crate) fn require_positive_x(pt: &SpacetimePoint) -> Result<()> {
    pt.validate()?;
    if pt.x <= 0.0 {
        return Err(Error::InvalidArgument("X must be positive".into()));
    }
    Ok(())
}

pub fn fbar_exact(n: i32, u: f64, t: f64, params: &TransitionParams) -> Result<Complex64> {
    Ok(PoleSet::exact(n, params)?.fbar(u, t))
}

pub fn pm_diff_exact(n: i32, pt: &SpacetimePoint, params: &TransitionParams, comb: Combination) -> Result<Complex64> {
    PoleSet::exact(n, params)?.pm_diff(pt, comb)
}

pub fn c_exact(n: i32, pt: &SpacetimePoint, params: &TransitionParams, comb: Combination) -> Result<Complex64> {
    PoleSet::exact(n, params)?.c_diff(pt, comb)
}

/// `H_n^±` for `n ∈ {1, 2}`.
pub fn h_exact(n: i32, pt: &SpacetimePoint, params: &TransitionParams, sign: Sign) -> Result<PoleAndPV> {
    PoleSet::exact(n, params)?.h_single(pt, sign)
}

/// `H_n^+ ∓ H_n^-`, the only form available for `n = 3`.
pub fn h_exact_combination(
    n: i32,
    pt: &SpacetimePoint,
    params: &TransitionParams,
    comb: Combination,
) -> Result<PoleAndPV> {
    PoleSet::exact(n, params)?.h_combination(pt, comb)
}
