use std::io::Write;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use rayon::prelude::*;

use super::config::ParamArgs;
use super::Failure;
use crate::error::Error;
use crate::field::{assemble, AssembleOptions, Backend, Component, FieldBreakdown, Part, Treatment, Zone};
use crate::model::{xi_decompose, SpacetimePoint};
use crate::numerics::EiBranch;
use crate::oracle::DEFAULT_REL_TOL;

pub const HEADER: [&str; 11] =
    ["axis_value", "X", "T", "re", "im", "abs2", "zone", "part", "component", "treatment", "boundary_flag"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Axis {
    /// Vary X at fixed T.
    Space,
    /// Vary T at fixed X.
    Time,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BranchArg {
    Principal,
    Continued,
}

impl From<BranchArg> for EiBranch {
    fn from(b: BranchArg) -> Self {
        match b {
            BranchArg::Principal => EiBranch::Principal,
            BranchArg::Continued => EiBranch::Continued,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub treatment: Treatment,
    #[arg(long, value_enum)]
    pub zone: Zone,
    #[arg(long, value_enum, default_value = "total")]
    pub part: Part,
    /// Emit one component only; both by default.
    #[arg(long, value_enum)]
    pub component: Option<Component>,
    #[arg(long, value_enum)]
    pub axis: Axis,
    /// T for a space sweep, X for a time sweep.
    #[arg(long)]
    pub fixed: f64,
    #[arg(long)]
    pub min: f64,
    #[arg(long)]
    pub max: f64,
    #[arg(long, default_value_t = 50)]
    pub points: usize,
    /// Logarithmic spacing.
    #[arg(long)]
    pub log: bool,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    pub m2: i32,
    /// Observation direction as `x,y,z`; normalized.
    #[arg(long, default_value = "1,0,0", value_parser = parse_direction, allow_hyphen_values = true)]
    pub direction: [f64; 3],
    /// Drop the real-axis (G0) poles from the closed forms.
    #[arg(long)]
    pub g0_suppressed: bool,
    /// Multiply by the SI prefactor (V/m).
    #[arg(long)]
    pub si: bool,
    #[arg(long, value_enum, default_value = "closed-form")]
    pub backend: Backend,
    /// Ei sheet for the dipole principal-value terms.
    #[arg(long, value_enum, default_value = "principal")]
    pub ei_branch: BranchArg,
    /// Relative tolerance of the oracle backend.
    #[arg(long, default_value_t = DEFAULT_REL_TOL)]
    pub rel_tol: f64,
    /// Write CSV here instead of stdout.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    #[command(flatten)]
    pub params: ParamArgs,
}

fn parse_direction(s: &str) -> Result<[f64; 3], String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|c| c.trim().parse::<f64>().map_err(|e| format!("{c:?}: {e}")))
        .collect::<Result<_, _>>()?;
    let [x, y, z] = v[..] else {
        return Err(format!("expected three comma-separated numbers, got {}", v.len()));
    };
    let n = (x * x + y * y + z * z).sqrt();
    if !(n.is_finite() && n > 0.0) {
        return Err("direction must be a finite nonzero vector".into());
    }
    Ok([x / n, y / n, z / n])
}

/// Grid values from `min` to `max` inclusive.
pub fn grid(min: f64, max: f64, points: usize, log: bool) -> Vec<f64> {
    if points == 1 {
        return vec![min];
    }
    let last = (points - 1) as f64;
    (0..points)
        .map(|i| {
            if i == 0 {
                return min;
            }
            if i == points - 1 {
                return max;
            }
            let f = i as f64 / last;
            if log {
                (min.ln() + f * (max.ln() - min.ln())).exp()
            } else {
                min + f * (max - min)
            }
        })
        .collect()
}

fn check(args: &SweepArgs) -> Result<(), String> {
    let near_split = args.zone == Zone::Near && args.part != Part::Total && args.treatment != Treatment::Standard;
    if near_split {
        return Err(format!(
            "the near-field {} part is not defined for the {} treatment",
            args.part.as_str(),
            args.treatment.as_str()
        ));
    }
    if args.backend == Backend::Oracle && args.treatment != Treatment::Exact {
        return Err("--backend oracle requires --treatment exact".into());
    }
    if args.backend == Backend::Oracle && args.g0_suppressed {
        return Err("--backend oracle cannot be combined with --g0-suppressed".into());
    }
    if !(args.min.is_finite() && args.max.is_finite() && args.fixed.is_finite()) {
        return Err("--min, --max and --fixed must be finite".into());
    }
    if args.points == 0 {
        return Err("--points must be at least 1".into());
    }
    if args.min > args.max {
        return Err("--min must not exceed --max".into());
    }
    if args.log && args.min <= 0.0 {
        return Err("--log needs --min > 0".into());
    }
    let (x_floor, t_floor) = match args.axis {
        Axis::Space => (args.min, args.fixed),
        Axis::Time => (args.fixed, args.min),
    };
    if x_floor <= 0.0 {
        return Err("X must be positive".into());
    }
    if t_floor < 0.0 {
        return Err("T must be non-negative".into());
    }
    if !(-1..=1).contains(&args.m2) {
        return Err(format!("--m2 must be -1, 0 or 1, got {}", args.m2));
    }
    if !(args.rel_tol >= 1e-10) {
        return Err("--rel-tol must be at least 1e-10".into());
    }
    Ok(())
}

fn fmt(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn run(args: &SweepArgs, stdout: &mut dyn Write) -> Result<(), Failure> {
    check(args).map_err(Failure::Usage)?;
    let params = args.params.resolve().map_err(Failure::Usage)?;
    let xi = xi_decompose(args.m2, args.direction).map_err(|e| Failure::Usage(e.to_string()))?;
    let opts = AssembleOptions {
        g0_suppressed: args.g0_suppressed,
        backend: args.backend,
        dipole_branch: args.ei_branch.into(),
        oracle_rel_tol: args.rel_tol,
        si: args.si,
    };
    let axis = grid(args.min, args.max, args.points, args.log);
    let points: Vec<(f64, f64)> = axis
        .iter()
        .map(|&a| match args.axis {
            Axis::Space => (a, args.fixed),
            Axis::Time => (args.fixed, a),
        })
        .collect();
    let results: Vec<Result<FieldBreakdown, (f64, f64, Error)>> = points
        .par_iter()
        .map(|&(x, t)| {
            SpacetimePoint::new(x, t)
                .and_then(|pt| assemble(args.treatment, &pt, &params, &xi, &opts))
                .map_err(|e| (x, t, e))
        })
        .collect();

    let components = match args.component {
        Some(c) => vec![c],
        None => Component::ALL.to_vec(),
    };
    let mut rows = Vec::with_capacity(points.len() * components.len());
    for (a, res) in axis.iter().zip(results) {
        let fb = res.map_err(|(x, t, e)| Failure::Numeric(format!("at X = {x:e}, T = {t:e}: {e}")))?;
        for &c in &components {
            let v = fb.get(args.zone, args.part, c).map_err(|e| Failure::Usage(e.to_string()))?;
            rows.push([
                fmt(*a),
                fmt(fb.point.x),
                fmt(fb.point.t),
                fmt(v.re),
                fmt(v.im),
                fmt(v.norm_sqr()),
                args.zone.as_str().to_string(),
                args.part.as_str().to_string(),
                c.as_str().to_string(),
                args.treatment.as_str().to_string(),
                u8::from(fb.boundary).to_string(),
            ]);
        }
    }

    let sink: Box<dyn Write + '_> = match &args.output {
        Some(path) => Box::new(
            std::fs::File::create(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?,
        ),
        None => Box::new(stdout),
    };
    let mut w = csv::Writer::from_writer(sink);
    let io = |e: csv::Error| Failure::Io(e.to_string());
    w.write_record(HEADER).map_err(io)?;
    for r in &rows {
        w.write_record(r).map_err(io)?;
    }
    w.flush().map_err(|e| Failure::Io(e.to_string()))?;
    Ok(())
}
