//! Assembly of the photon wave function into far/mid/near cells.
//!
//! For the dipole and exact treatments, with `D1 = H1⁺ - H1⁻`,
//! `D2 = H2⁺ + H2⁻` and `D3 = H3⁺ - H3⁻`,
//!
//! ```text
//! transverse: -(|ξ⊥|/X)·D1 - (i|ξ⊥|/X²)·D2 + (|ξ⊥|/X³)·D3
//! radial:                    (2iξ∥/X²)·D2 - (2ξ∥/X³)·D3
//! ```

use num_complex::Complex64;
use serde::Serialize;

use crate::closed_form::{psi_standard, Combination, PoleAndPV, PoleSet};
use crate::error::{Error, Result};
use crate::model::{si_prefactor, si_prefactor_standard, SpacetimePoint, TransitionParams, XiDecomposition};
use crate::numerics::EiBranch;
use crate::oracle::{quad_h_exact_combination, DEFAULT_REL_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Treatment {
    Standard,
    Dipole,
    Exact,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Zone {
    Far,
    Mid,
    Near,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Part {
    Pole,
    Pv,
    Total,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Component {
    Transverse,
    Radial,
}

/// Where the exact-treatment `H` values come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Backend {
    #[default]
    ClosedForm,
    Oracle,
}

impl Treatment {
    pub fn as_str(self) -> &'static str {
        match self {
            Treatment::Standard => "standard",
            Treatment::Dipole => "dipole",
            Treatment::Exact => "exact",
        }
    }
}

impl Zone {
    pub const ALL: [Zone; 3] = [Zone::Far, Zone::Mid, Zone::Near];

    pub fn as_str(self) -> &'static str {
        match self {
            Zone::Far => "far",
            Zone::Mid => "mid",
            Zone::Near => "near",
        }
    }
}

impl Part {
    pub const ALL: [Part; 3] = [Part::Pole, Part::Pv, Part::Total];

    pub fn as_str(self) -> &'static str {
        match self {
            Part::Pole => "pole",
            Part::Pv => "pv",
            Part::Total => "total",
        }
    }
}

impl Component {
    pub const ALL: [Component; 2] = [Component::Transverse, Component::Radial];

    pub fn as_str(self) -> &'static str {
        match self {
            Component::Transverse => "transverse",
            Component::Radial => "radial",
        }
    }
}

impl Backend {
    pub fn as_str(self) -> &'static str {
        match self {
            Backend::ClosedForm => "closed-form",
            Backend::Oracle => "oracle",
        }
    }
}

/// Complex amplitude per (zone, part, component). `None` marks a cell the
/// treatment does not define; a cell singular on the lightcone holds NaN.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldBreakdown {
    cells: [[[Option<Complex64>; 2]; 3]; 3],
    pub treatment: Treatment,
    pub point: SpacetimePoint,
    /// `X == T`.
    pub boundary: bool,
    pub g0_suppressed: bool,
}

impl FieldBreakdown {
    pub fn new(treatment: Treatment, point: SpacetimePoint, g0_suppressed: bool) -> Self {
        Self {
            cells: [[[None; 2]; 3]; 3],
            treatment,
            point,
            boundary: point.on_lightcone(),
            g0_suppressed,
        }
    }

    pub(crate) fn set(&mut self, zone: Zone, part: Part, component: Component, value: Option<Complex64>) {
        self.cells[zone as usize][part as usize][component as usize] = value;
    }

    pub fn get(&self, zone: Zone, part: Part, component: Component) -> Result<Complex64> {
        self.cells[zone as usize][part as usize][component as usize]
            .ok_or(Error::NotApplicable("near-field pole/pv split exists only for the standard treatment"))
    }

    pub fn is_applicable(&self, zone: Zone, part: Part, component: Component) -> bool {
        self.cells[zone as usize][part as usize][component as usize].is_some()
    }

    /// Every applicable cell is exactly zero.
    pub fn all_zero(&self) -> bool {
        self.cells.iter().flatten().flatten().flatten().all(|c| c.re == 0.0 && c.im == 0.0)
    }

    fn scale(&mut self, factor: Complex64) {
        for c in self.cells.iter_mut().flatten().flatten().flatten() {
            *c *= factor;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AssembleOptions {
    /// Drop the resonance (and origin) poles from the pole/pv split.
    pub g0_suppressed: bool,
    pub backend: Backend,
    pub dipole_branch: EiBranch,
    pub oracle_rel_tol: f64,
    /// Multiply by the SI prefactor and the treatment phase.
    pub si: bool,
}

impl Default for AssembleOptions {
    fn default() -> Self {
        Self {
            g0_suppressed: false,
            backend: Backend::ClosedForm,
            dipole_branch: EiBranch::Principal,
            oracle_rel_tol: DEFAULT_REL_TOL,
            si: false,
        }
    }
}

fn nan_pair() -> PoleAndPV {
    let nan = Complex64::new(f64::NAN, f64::NAN);
    PoleAndPV { pole: nan, pv: nan, total: nan }
}

fn combination_of(
    treatment: Treatment,
    n: i32,
    comb: Combination,
    pt: &SpacetimePoint,
    params: &TransitionParams,
    opts: &AssembleOptions,
) -> Result<PoleAndPV> {
    let mut poles = match treatment {
        Treatment::Exact => PoleSet::exact(n, params)?,
        Treatment::Dipole => PoleSet::dipole(n, params, opts.dipole_branch)?,
        Treatment::Standard => unreachable!("standard treatment is assembled directly"),
    };
    if opts.g0_suppressed {
        poles = poles.without_real_axis_poles();
    }
    let closed = match poles.h_combination(pt, comb) {
        Err(Error::LightconeSingular) => return Ok(nan_pair()),
        other => other?,
    };
    if opts.backend == Backend::ClosedForm {
        return Ok(closed);
    }
    let total = quad_h_exact_combination(n, pt, params, comb, opts.oracle_rel_tol)?.value;
    Ok(PoleAndPV { pole: closed.pole, pv: total - closed.pole, total })
}

/// Full breakdown of the field at `pt`.
pub fn assemble(
    treatment: Treatment,
    pt: &SpacetimePoint,
    params: &TransitionParams,
    xi: &XiDecomposition,
    opts: &AssembleOptions,
) -> Result<FieldBreakdown> {
    pt.validate()?;
    params.validate()?;
    if pt.x <= 0.0 {
        return Err(Error::InvalidArgument("X must be positive".into()));
    }
    if opts.backend == Backend::Oracle {
        if treatment != Treatment::Exact {
            return Err(Error::InvalidArgument("the oracle backend only covers the exact treatment".into()));
        }
        if opts.g0_suppressed {
            return Err(Error::InvalidArgument("the oracle backend cannot suppress G0".into()));
        }
    }

    if treatment == Treatment::Standard {
        let mut fb = psi_standard(pt, params, xi)?;
        fb.g0_suppressed = opts.g0_suppressed;
        if opts.si {
            fb.scale(Complex64::new(si_prefactor_standard(params), 0.0));
        }
        return Ok(fb);
    }

    let d1 = combination_of(treatment, 1, Combination::Difference, pt, params, opts)?;
    let d2 = combination_of(treatment, 2, Combination::Sum, pt, params, opts)?;
    let d3 = combination_of(treatment, 3, Combination::Difference, pt, params, opts)?;

    let x = pt.x;
    let i = Complex64::i();
    let perp = xi.perp_norm();
    let far_t = Complex64::new(-perp / x, 0.0);
    let mid_t = -i * perp / (x * x);
    let near_t = Complex64::new(perp / (x * x * x), 0.0);
    let mid_r = 2.0 * i * xi.xi_par / (x * x);
    let near_r = -2.0 * xi.xi_par / (x * x * x);

    let mut fb = FieldBreakdown::new(treatment, *pt, opts.g0_suppressed);
    let zero = Complex64::new(0.0, 0.0);
    for (part, pick) in [
        (Part::Pole, (|d: &PoleAndPV| d.pole) as fn(&PoleAndPV) -> Complex64),
        (Part::Pv, |d: &PoleAndPV| d.pv),
        (Part::Total, |d: &PoleAndPV| d.total),
    ] {
        fb.set(Zone::Far, part, Component::Transverse, Some(far_t * pick(&d1)));
        fb.set(Zone::Far, part, Component::Radial, Some(zero));
        fb.set(Zone::Mid, part, Component::Transverse, Some(mid_t * pick(&d2)));
        fb.set(Zone::Mid, part, Component::Radial, Some(mid_r * pick(&d2)));
    }
    fb.set(Zone::Near, Part::Total, Component::Transverse, Some(near_t * d3.total));
    fb.set(Zone::Near, Part::Total, Component::Radial, Some(near_r * d3.total));

    if opts.si {
        let phase = -i * (-i * params.omega() * pt.t).exp();
        fb.scale(si_prefactor(params) * phase);
    }
    Ok(fb)
}

/// `|amplitude|²` of one cell.
pub fn square_modulus(fb: &FieldBreakdown, zone: Zone, part: Part, component: Component) -> Result<f64> {
    Ok(fb.get(zone, part, component)?.norm_sqr())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_form::pm_diff_exact;
    use crate::model::{default_hydrogen_params, xi_decompose};

    fn pt(x: f64, t: f64) -> SpacetimePoint {
        SpacetimePoint::new(x, t).unwrap()
    }

    #[test]
    fn total_is_pole_plus_pv() {
        let p = default_hydrogen_params().with_kappa(20.0);
        let xi = xi_decompose(1, [0.3, -0.4, 0.75f64.sqrt()]).unwrap();
        for treatment in [Treatment::Standard, Treatment::Dipole, Treatment::Exact] {
            for &(x, t) in &[(0.5, 3.0), (3.0, 0.5), (2.0, 2.1)] {
                let fb = assemble(treatment, &pt(x, t), &p, &xi, &AssembleOptions::default()).unwrap();
                for zone in [Zone::Far, Zone::Mid] {
                    for c in Component::ALL {
                        let pole = fb.get(zone, Part::Pole, c).unwrap();
                        let pv = fb.get(zone, Part::Pv, c).unwrap();
                        let total = fb.get(zone, Part::Total, c).unwrap();
                        assert!((pole + pv - total).norm() <= 1e-13 * total.norm().max(1.0));
                    }
                }
                for part in Part::ALL {
                    assert_eq!(fb.get(Zone::Far, part, Component::Radial).unwrap().norm(), 0.0);
                }
            }
        }
    }

    #[test]
    fn near_split_not_applicable() {
        let p = default_hydrogen_params();
        let xi = xi_decompose(0, [1.0, 0.0, 0.0]).unwrap();
        let fb = assemble(Treatment::Dipole, &pt(1.0, 2.0), &p, &xi, &AssembleOptions::default()).unwrap();
        assert!(matches!(fb.get(Zone::Near, Part::Pv, Component::Transverse), Err(Error::NotApplicable(_))));
        assert!(fb.get(Zone::Near, Part::Total, Component::Transverse).is_ok());
        assert!(square_modulus(&fb, Zone::Near, Part::Pole, Component::Radial).is_err());
    }

    #[test]
    fn far_transverse_unpacks_pm_diff() {
        let p = default_hydrogen_params().with_kappa(30.0);
        let xi = xi_decompose(0, [1.0, 0.0, 0.0]).unwrap();
        let q = pt(0.7, 2.5);
        let fb = assemble(Treatment::Exact, &q, &p, &xi, &AssembleOptions::default()).unwrap();
        let want = -xi.perp_norm() / q.x * 0.5 * pm_diff_exact(1, &q, &p, Combination::Difference).unwrap();
        let got = fb.get(Zone::Far, Part::Pole, Component::Transverse).unwrap();
        assert!((got - want).norm() < 1e-14 * want.norm());
    }

    #[test]
    fn lightcone_near_cell_is_nan() {
        let p = default_hydrogen_params().with_kappa(30.0);
        let xi = xi_decompose(1, [0.0, 0.0, 1.0]).unwrap();
        let fb = assemble(Treatment::Exact, &pt(2.0, 2.0), &p, &xi, &AssembleOptions::default()).unwrap();
        assert!(fb.boundary);
        assert!(fb.get(Zone::Near, Part::Total, Component::Radial).unwrap().re.is_nan());
        assert!(fb.get(Zone::Far, Part::Total, Component::Transverse).unwrap().re.is_finite());
    }

    #[test]
    fn oracle_backend_guards() {
        let p = default_hydrogen_params();
        let xi = xi_decompose(0, [1.0, 0.0, 0.0]).unwrap();
        let opts = AssembleOptions { backend: Backend::Oracle, ..Default::default() };
        assert!(assemble(Treatment::Dipole, &pt(1.0, 2.0), &p, &xi, &opts).is_err());
        let opts = AssembleOptions { g0_suppressed: true, ..opts };
        assert!(assemble(Treatment::Exact, &pt(1.0, 2.0), &p, &xi, &opts).is_err());
    }

    #[test]
    fn suppressed_dipole_vanishes() {
        let p = default_hydrogen_params();
        let xi = xi_decompose(-1, [0.0, 1.0, 0.0]).unwrap();
        let opts = AssembleOptions { g0_suppressed: true, ..Default::default() };
        let fb = assemble(Treatment::Dipole, &pt(1.0, 2.0), &p, &xi, &opts).unwrap();
        assert!(fb.all_zero());
    }
}
