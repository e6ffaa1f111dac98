use std::f64::consts::PI;

use clap::{Args, ValueEnum};
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::Serialize;

use crate::closed_form::{
    asymptote_large_x, c_dipole, fbar_exact, h_exact, h_exact_combination, pm_diff_dipole, pm_diff_exact,
    residue_coeffs, time_integral, upper_gamma_closed, Combination, Sign,
};
use crate::error::Result;
use crate::field::{assemble, AssembleOptions, Backend, Component, Part, Treatment, Zone};
use crate::model::{default_hydrogen_params, xi_decompose, SpacetimePoint, TransitionParams};
use crate::numerics::{ei_real_scaled, expint_ei, phase_diff_kernel};
use crate::oracle::{
    contour_residue, default_radius, ei_quadrature, ei_scaled_quadrature, quad_h_exact, quad_h_exact_combination,
    quad_time_integral, PoleSite, ResiduePart, DEFAULT_REL_TOL,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    SpecialFunctions,
    Residues,
    OracleEquivalence,
    Limits,
    Asymptotics,
    All,
}

impl Suite {
    const EACH: [Suite; 5] =
        [Suite::SpecialFunctions, Suite::Residues, Suite::OracleEquivalence, Suite::Limits, Suite::Asymptotics];

    fn as_str(self) -> &'static str {
        match self {
            Suite::SpecialFunctions => "special-functions",
            Suite::Residues => "residues",
            Suite::OracleEquivalence => "oracle-equivalence",
            Suite::Limits => "limits",
            Suite::Asymptotics => "asymptotics",
            Suite::All => "all",
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub suite: Suite,
    /// Replace every check's tolerance.
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub status: Status,
    /// For slope checks, the slope deviation relative to the expected slope.
    pub max_rel_err: f64,
    pub tolerance: f64,
    pub points: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Check {
    fn judge(mut self, tol: Option<f64>) -> Self {
        if let Some(t) = tol {
            self.tolerance = t;
        }
        let ok = self.error.is_none() && self.max_rel_err <= self.tolerance;
        self.status = if ok { Status::Pass } else { Status::Fail };
        self
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub suite: &'static str,
    pub status: Status,
    pub checks: Vec<Check>,
}

fn check(name: &'static str, tolerance: f64, measured: Result<(f64, usize)>) -> Check {
    let (max_rel_err, points, error) = match measured {
        Ok((e, n)) => (e, n, None),
        Err(e) => (f64::NAN, 0, Some(e.to_string())),
    };
    Check { name, status: Status::Fail, max_rel_err, tolerance, points, error }
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / (b.norm() + 1e-300)
}

/// Max of `errs`, with NaN propagated.
fn worst(errs: impl IntoIterator<Item = f64>) -> f64 {
    errs.into_iter().fold(0.0, |m, e| if e.is_nan() || m.is_nan() { f64::NAN } else { m.max(e) })
}

fn pt(x: f64, t: f64) -> SpacetimePoint {
    SpacetimePoint { x, t }
}

fn log_space(a: f64, b: f64, n: usize) -> Vec<f64> {
    super::sweep::grid(a, b, n, true)
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

/// 5×5 log grid on `X ∈ [0.01, 30]`, `T ∈ [0.1, 30]` without `|X - T| < 0.01`.
pub fn oracle_grid() -> Vec<SpacetimePoint> {
    let xs = log_space(0.01, 30.0, 5);
    let ts = log_space(0.1, 30.0, 5);
    xs.iter()
        .flat_map(|&x| ts.iter().map(move |&t| pt(x, t)))
        .filter(|p| (p.x - p.t).abs() >= 0.01)
        .collect()
}

fn special_functions() -> Vec<Check> {
    let golden = || -> Result<(f64, usize)> {
        let pinned = [(1.0, 1.895_117_816_355_936_8), (-1.0, -0.219_383_934_395_520_26)];
        let mut errs = Vec::new();
        for (x, want) in pinned {
            let z = Complex64::new(x, 0.0);
            let got = expint_ei(z)?;
            errs.push(rel(got, ei_quadrature(z)?));
            errs.push(rel(got, Complex64::new(want, 0.0)));
        }
        for y in [0.5, 2.0, 10.0] {
            for z in [Complex64::new(0.0, y), Complex64::new(0.0, -y)] {
                errs.push(rel(expint_ei(z)?, ei_quadrature(z)?));
            }
        }
        Ok((worst(errs), 8))
    };
    let asymptotic = || -> Result<(f64, usize)> {
        let xs = log_space(30.0, 700.0, 40);
        let errs = xs
            .iter()
            .map(|&x| Ok((ei_real_scaled(x)? / ei_scaled_quadrature(x)? - 1.0).abs()))
            .collect::<Result<Vec<_>>>()?;
        Ok((worst(errs), xs.len()))
    };
    let kernel = || -> Result<(f64, usize)> {
        let i = Complex64::i();
        let tiny = Complex64::new(1e-8, 0.0);
        // two terms of (1 - e^{-iz})/z = i + z/2 - iz²/6 + ...
        let series = i + tiny / 2.0 - i * tiny * tiny / 6.0;
        let errs = [
            rel(phase_diff_kernel(Complex64::new(0.0, 0.0)), i),
            rel(phase_diff_kernel(Complex64::new(PI, 0.0)), Complex64::new(2.0 / PI, 0.0)),
            rel(phase_diff_kernel(tiny), series),
        ];
        Ok((worst(errs), 3))
    };
    vec![
        check("ei-golden-values", 1e-10, golden()),
        check("ei-asymptotic-truncation", 1e-12, asymptotic()),
        check("phase-diff-kernel", 1e-14, kernel()),
    ]
}

fn residues() -> Vec<Check> {
    let sites = [PoleSite::Resonance, PoleSite::UpperCutoff, PoleSite::LowerCutoff];
    let cases: Vec<(f64, i32)> = [5.0, 548.0].iter().flat_map(|&k| (1..=3).map(move |n| (k, n))).collect();
    let contour = |part: ResiduePart, t: f64| -> Result<(f64, usize)> {
        let mut errs = Vec::new();
        for &(kappa, n) in &cases {
            let p = default_hydrogen_params().with_kappa(kappa);
            let r = residue_coeffs(n, &p)?;
            let (g0, g1) = upper_gamma_closed(n, &p)?;
            for site in sites {
                // e^{-i(k-q)s} on the circle grows like e^{r·s}
                let radius = default_radius(site, n, &p).min(0.5 / t.max(1e-3));
                let got = contour_residue(site, n, part, &p, t, radius)?;
                match site {
                    PoleSite::Resonance => errs.push(rel(got.c0, r.g0)),
                    PoleSite::UpperCutoff => {
                        errs.extend([rel(got.c0, r.gamma0), rel(got.c1, r.gamma1), rel(got.c0, g0), rel(got.c1, g1)])
                    }
                    PoleSite::LowerCutoff => errs.extend([rel(got.c0, r.gamma0_lower), rel(got.c1, r.gamma1_lower)]),
                }
            }
        }
        Ok((worst(errs), cases.len() * sites.len()))
    };
    let conjugation = || -> Result<(f64, usize)> {
        let mut errs = Vec::new();
        for &(kappa, n) in &cases {
            let p = default_hydrogen_params().with_kappa(kappa);
            let up = PoleSite::UpperCutoff;
            let lo = PoleSite::LowerCutoff;
            let a = contour_residue(up, n, ResiduePart::G, &p, 0.0, default_radius(up, n, &p))?;
            let b = contour_residue(lo, n, ResiduePart::G, &p, 0.0, default_radius(lo, n, &p))?;
            errs.push(rel(a.c0, b.c0.conj()));
            errs.push(rel(a.c1, -b.c1.conj()));
        }
        Ok((worst(errs), cases.len()))
    };
    vec![
        check("residues-g-contour", 1e-8, contour(ResiduePart::G, 0.0)),
        check("residues-h-contour", 1e-8, contour(ResiduePart::H, 1.3)),
        check("residue-conjugation", 1e-10, conjugation()),
    ]
}

fn oracle_equivalence() -> Vec<Check> {
    let p = default_hydrogen_params();
    let grid = oracle_grid();
    let singles = || -> Result<(f64, usize)> {
        let errs = grid
            .par_iter()
            .flat_map_iter(|q| {
                [(1, Sign::Plus), (1, Sign::Minus), (2, Sign::Plus), (2, Sign::Minus)].map(|(n, s)| {
                    let closed = h_exact(n, q, &p, s)?.total;
                    Ok(rel(closed, quad_h_exact(n, q, &p, s, DEFAULT_REL_TOL)?.value))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((worst(errs), grid.len()))
    };
    let combos = || -> Result<(f64, usize)> {
        let errs = grid
            .par_iter()
            .flat_map_iter(|q| {
                [(1, Combination::Difference), (2, Combination::Sum), (3, Combination::Difference)].map(|(n, c)| {
                    let closed = h_exact_combination(n, q, &p, c)?.total;
                    Ok(rel(closed, quad_h_exact_combination(n, q, &p, c, DEFAULT_REL_TOL)?.value))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((worst(errs), grid.len()))
    };
    let backends = || -> Result<(f64, usize)> {
        let xi = xi_decompose(0, [1.0, 0.0, 0.0])?;
        let ts = log_space(0.1, 10.0, 8);
        let errs = ts
            .par_iter()
            .map(|&t| {
                let q = pt(1.0, t);
                let closed = assemble(Treatment::Exact, &q, &p, &xi, &AssembleOptions::default())?;
                let opts = AssembleOptions { backend: Backend::Oracle, ..Default::default() };
                let quad = assemble(Treatment::Exact, &q, &p, &xi, &opts)?;
                Ok(worst(Component::ALL.map(|c| {
                    let a = closed.get(Zone::Mid, Part::Total, c).unwrap_or_default();
                    let b = quad.get(Zone::Mid, Part::Total, c).unwrap_or_default();
                    if b.norm() == 0.0 { (a - b).norm() } else { rel(a, b) }
                })))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((worst(errs), ts.len()))
    };
    let time = || -> Result<(f64, usize)> {
        let mut rng = StdRng::seed_from_u64(7);
        let samples: Vec<(f64, f64, f64)> = (0..100)
            .map(|_| (rng.random_range(0.0..5.0), rng.random_range(0.0..20.0), rng.random_range(0.0..0.5)))
            .collect();
        let errs = samples
            .par_iter()
            .map(|&(k, t, g)| {
                let p = default_hydrogen_params().with_decay(g, 0.0);
                let closed = time_integral(k, t, &p);
                Ok(rel(closed, quad_time_integral(k, t, &p)?))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((worst(errs), samples.len()))
    };
    vec![
        check("h-exact-singles", 1e-6, singles()),
        check("h-exact-combinations", 1e-6, combos()),
        check("field-backend-agreement", 1e-6, backends()),
        check("time-integral", 1e-10, time()),
    ]
}

fn limits() -> Vec<Check> {
    let causality = || -> Result<(f64, usize)> {
        let p = default_hydrogen_params();
        let mut rng = StdRng::seed_from_u64(11);
        let mut worst_cell = 0f64;
        let n = 1000;
        for _ in 0..n {
            let t = rng.random_range(0.0..50.0);
            let x = t + rng.random_range(1e-9..50.0);
            let m2 = rng.random_range(-1..=1);
            let d = random_direction(&mut rng);
            let fb = assemble(Treatment::Standard, &pt(x, t), &p, &xi_decompose(m2, d)?, &AssembleOptions::default())?;
            for z in Zone::ALL {
                for part in Part::ALL {
                    for c in Component::ALL {
                        if let Ok(v) = fb.get(z, part, c) {
                            worst_cell = worst_cell.max(v.norm());
                        }
                    }
                }
            }
        }
        Ok((worst_cell, n))
    };
    let dipole = || -> Result<(f64, usize)> {
        let p = default_hydrogen_params().with_kappa(1e4);
        let pts: Vec<SpacetimePoint> = log_space(0.01, 10.0, 8)
            .into_iter()
            .flat_map(|x| log_space(0.1, 10.0, 8).into_iter().map(move |t| pt(x, t)))
            .filter(|q| (q.x - q.t).abs() >= 0.01)
            .collect();
        let mut errs = Vec::new();
        for q in &pts {
            for (n, c) in [(1, Combination::Difference), (2, Combination::Sum)] {
                let (a, b) = (pm_diff_exact(n, q, &p, c)?, pm_diff_dipole(n, q, &p, c)?);
                // outside the cone the dipole value is exactly zero and only the κ-tail remains
                errs.push(if q.x < q.t { rel(a, b) } else { (a - b).norm() / (2.0 * PI) });
            }
        }
        Ok((worst(errs), pts.len()))
    };
    let identity = || -> Result<(f64, usize)> {
        let p = default_hydrogen_params().with_kappa(20.0);
        let mut rng = StdRng::seed_from_u64(13);
        let mut errs = Vec::new();
        for _ in 0..100 {
            let q = pt(rng.random_range(0.01..5.0), rng.random_range(0.0..5.0));
            if q.on_lightcone() {
                continue;
            }
            for n in 1..=2 {
                let minus = fbar_exact(n, -q.x, q.t, &p)?;
                let plus = fbar_exact(n, q.x, q.t, &p)?;
                for (c, want) in [(Combination::Difference, minus - plus), (Combination::Sum, minus + plus)] {
                    let got = pm_diff_exact(n, &q, &p, c)?;
                    errs.push((got - want).norm() / want.norm().max(1.0));
                }
            }
        }
        Ok((worst(errs), 100))
    };
    vec![
        check("standard-causality", 0.0, causality()),
        check("dipole-limit", 3e-4, dipole()),
        check("pm-diff-identity", 1e-13, identity()),
    ]
}

fn random_direction(rng: &mut StdRng) -> [f64; 3] {
    loop {
        let v: [f64; 3] = [rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)];
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if n > 0.1 && n <= 1.0 {
            return v.map(|c| c / n);
        }
    }
}

/// `|pv|²` of the dipole field along `xs` at fixed `t`.
fn dipole_pv_sq(zone: Zone, xs: &[f64], t: f64, p: &TransitionParams) -> Result<Vec<f64>> {
    let xi = xi_decompose(0, [1.0, 0.0, 0.0])?;
    xs.iter()
        .map(|&x| {
            let fb = assemble(Treatment::Dipole, &pt(x, t), p, &xi, &AssembleOptions::default())?;
            Ok(fb.get(zone, Part::Pv, Component::Transverse)?.norm_sqr())
        })
        .collect()
}

fn asymptotics() -> Vec<Check> {
    let p = default_hydrogen_params();
    let small_x = || -> Result<(f64, usize)> {
        let got = c_dipole(1, &pt(1e-4, 50.0), &p, Combination::Difference)?;
        Ok((rel(got, Complex64::new(0.0, PI)), 1))
    };
    let large_x = || -> Result<(f64, usize)> {
        let xs = log_space(50.0, 500.0, 10);
        let mut errs = Vec::new();
        for &x in &xs {
            let q = pt(x, 1.0);
            errs.push(rel(c_dipole(1, &q, &p, Combination::Difference)?, asymptote_large_x(1, &q, &p)?));
            errs.push(rel(c_dipole(2, &q, &p, Combination::Sum)?, asymptote_large_x(2, &q, &p)?));
        }
        Ok((worst(errs), xs.len()))
    };
    let slope = |zone: Zone, expected: f64| {
        move || -> Result<(f64, usize)> {
            let xs = log_space(10.0, 1000.0, 64);
            let ys = dipole_pv_sq(zone, &xs, 1.0, &p)?;
            Ok(((loglog_slope(&xs, &ys) - expected).abs() / expected.abs(), xs.len()))
        }
    };
    let ratio = || -> Result<(f64, usize)> {
        let xi = xi_decompose(0, [1.0, 0.0, 0.0])?;
        let xs = log_space(0.001, 0.1, 20);
        let mut errs = Vec::new();
        for &x in &xs {
            let fb = assemble(Treatment::Dipole, &pt(x, 20.0), &p, &xi, &AssembleOptions::default())?;
            let pole = fb.get(Zone::Far, Part::Pole, Component::Transverse)?.norm_sqr();
            let pv = fb.get(Zone::Far, Part::Pv, Component::Transverse)?.norm_sqr();
            errs.push((pv / pole - 1.0).abs());
        }
        Ok((worst(errs), xs.len()))
    };
    vec![
        check("small-x-limit", 0.02, small_x()),
        check("large-x-asymptote", 0.01, large_x()),
        // -4.0 ± 0.1 and -8.0 ± 0.2
        check("far-pv-slope", 0.025, slope(Zone::Far, -4.0)()),
        check("mid-pv-slope", 0.025, slope(Zone::Mid, -8.0)()),
        check("pole-pv-indistinguishable", 0.1, ratio()),
    ]
}

fn run_suite(s: Suite) -> Vec<Check> {
    match s {
        Suite::SpecialFunctions => special_functions(),
        Suite::Residues => residues(),
        Suite::OracleEquivalence => oracle_equivalence(),
        Suite::Limits => limits(),
        Suite::Asymptotics => asymptotics(),
        Suite::All => unreachable!(),
    }
}

pub fn report(args: &VerifyArgs) -> Report {
    let suites: Vec<Suite> = match args.suite {
        Suite::All => Suite::EACH.to_vec(),
        s => vec![s],
    };
    let checks: Vec<Check> = suites
        .par_iter()
        .map(|&s| run_suite(s))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .map(|c| c.judge(args.tol))
        .collect();
    let status = if checks.iter().all(|c| c.status == Status::Pass) { Status::Pass } else { Status::Fail };
    Report { suite: args.suite.as_str(), status, checks }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_of_power_law() {
        let xs = log_space(1.0, 100.0, 10);
        let ys: Vec<f64> = xs.iter().map(|x| 3.0 * x.powf(-2.5)).collect();
        assert!((loglog_slope(&xs, &ys) + 2.5).abs() < 1e-12);
    }

    #[test]
    fn grid_has_24_points() {
        assert_eq!(oracle_grid().len(), 24);
    }

    #[test]
    fn judge_flags_errors_and_nan() {
        let c = check("x", 1.0, Err(crate::Error::EiAtZero)).judge(None);
        assert_eq!(c.status, Status::Fail);
        let c = check("x", 1.0, Ok((f64::NAN, 1))).judge(None);
        assert_eq!(c.status, Status::Fail);
        let c = check("x", 1.0, Ok((0.5, 1))).judge(Some(0.1));
        assert_eq!(c.status, Status::Fail);
    }
}
