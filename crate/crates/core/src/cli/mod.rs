//! `photon-wf` command line: `sweep`, `verify` and `constants`.
//!
//! Exit codes: 0 success, 1 failed verification, 2 invalid arguments,
//! 3 numerical failure (also used for I/O errors).

mod config;
mod sweep;
mod verify;

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

pub use config::{Config, ParamArgs};
pub use sweep::{grid, Axis, SweepArgs, HEADER};
pub use verify::{loglog_slope, oracle_grid, report, Check, Report, Status, Suite, VerifyArgs};

use crate::model::si_prefactor;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "photon-wf", version, about = "Photon wave function of the hydrogen 2p-1s decay")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Tabulate one field cell along X or T as CSV.
    Sweep(SweepArgs),
    /// Run verification suites and print a JSON report.
    Verify(VerifyArgs),
    /// Print the physical constants and scales as JSON.
    Constants(ConstantsArgs),
}

#[derive(Debug, Args)]
struct ConstantsArgs {
    #[command(flatten)]
    params: ParamArgs,
}

#[derive(Debug, Serialize)]
pub struct Constants {
    pub kappa: f64,
    pub a0_m: f64,
    pub omega0_rad_s: f64,
    pub lightcone_unit_m: f64,
    #[serde(rename = "kX_per_m")]
    pub kx_per_m: f64,
    pub si_prefactor: f64,
}

#[derive(Debug)]
pub(crate) enum Failure {
    Usage(String),
    Numeric(String),
    Io(String),
}

pub fn run() -> i32 {
    run_with(std::env::args_os(), &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

/// [`run`] with explicit arguments and streams.
pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                return EXIT_USAGE;
            }
            let _ = write!(stdout, "{text}");
            return EXIT_OK;
        }
    };
    let outcome = match cli.command {
        Command::Sweep(a) => sweep::run(&a, stdout).map(|_| EXIT_OK),
        Command::Verify(a) => {
            let r = report(&a);
            write_json(stdout, &r).map(|_| if r.status == Status::Pass { EXIT_OK } else { EXIT_VERIFY_FAILED })
        }
        Command::Constants(a) => a.params.resolve().map_err(Failure::Usage).and_then(|p| {
            let c = Constants {
                kappa: p.kappa,
                a0_m: p.a0_m,
                omega0_rad_s: p.omega0_rad_s,
                lightcone_unit_m: p.lightcone_unit_m(),
                kx_per_m: p.kx_per_m(),
                si_prefactor: si_prefactor(&p),
            };
            write_json(stdout, &c).map(|_| EXIT_OK)
        }),
    };
    match outcome {
        Ok(code) => code,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(stderr, "error: {m}");
            EXIT_USAGE
        }
        Err(Failure::Numeric(m)) => {
            let _ = writeln!(stderr, "numerical failure {m}");
            EXIT_NUMERIC
        }
        Err(Failure::Io(m)) => {
            let _ = writeln!(stderr, "i/o error: {m}");
            EXIT_NUMERIC
        }
    }
}

fn write_json<T: Serialize>(out: &mut dyn Write, v: &T) -> Result<(), Failure> {
    serde_json::to_writer_pretty(&mut *out, v).map_err(|e| Failure::Io(e.to_string()))?;
    writeln!(out).map_err(|e| Failure::Io(e.to_string()))
}
