//! Command-line front end of the `osc-sphere` binary.
//!
//! Every command prints one envelope `{command, parameters, schema_version, data}`
//! as JSON, or its main table as CSV. Exit codes: 0 success, 1 numerical or
//! consistency failure (including failed checks), 2 usage error.

use std::ffi::OsString;
use std::io::Write;
use std::ops::RangeInclusive;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;

pub mod commands;
pub mod output;

pub use output::{Format, Output, Table};

#[derive(Debug, Parser)]
#[command(name = "osc-sphere", version, about = "Isotropic oscillator on the three-sphere")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Include wall-clock timings in verification reports.
    #[arg(long, global = true)]
    pub timings: bool,
    #[command(subcommand)]
    pub command: Command,
}

/// ν directly, or the physical constants it is derived from.
#[derive(Debug, Clone, Args)]
pub struct PhysicalArgs {
    /// Dimensionless coupling ν ≥ 0.
    #[arg(long)]
    pub nu: Option<f64>,
    /// Particle mass (default 1).
    #[arg(long)]
    pub mass: Option<f64>,
    /// Oscillator frequency; ν then follows from the constants.
    #[arg(long)]
    pub omega: Option<f64>,
    /// Reduced Planck constant (default 1).
    #[arg(long)]
    pub hbar: Option<f64>,
    /// Curvature radius (default 1).
    #[arg(long = "R")]
    pub r: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    Bases,
    Interbasis,
    Elliptic,
    Limits,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    F43,
    Racah,
    Quadrature,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BasisArg {
    Spherical,
    Cylindrical,
    Elliptic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CoordsArg {
    Spherical,
    Cylindrical,
    Ambient,
}

fn parse_range(s: &str) -> Result<RangeInclusive<u32>, String> {
    let parse = |t: &str| t.trim().parse::<u32>().map_err(|e| format!("`{t}`: {e}"));
    match s.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (parse(a)?, parse(b.strip_prefix('=').unwrap_or(b))?);
            if a > b {
                return Err(format!("empty range {a}..{b}"));
            }
            Ok(a..=b)
        }
        None => parse(s).map(|n| n..=n),
    }
}

fn parse_point(s: &str) -> Result<Vec<f64>, String> {
    s.split(',').map(|t| t.trim().parse::<f64>().map_err(|e| format!("`{t}`: {e}"))).collect()
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Energy levels and degeneracies.
    Spectrum {
        /// Level or inclusive range `a..b`.
        #[arg(long = "N", value_parser = parse_range)]
        n: RangeInclusive<u32>,
        #[command(flatten)]
        physical: PhysicalArgs,
    },
    /// Spherical-to-cylindrical transition block at fixed (N, m).
    Interbasis {
        #[arg(long = "N")]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        m: i32,
        #[arg(long, value_enum, default_value_t = MethodArg::F43)]
        method: MethodArg,
        #[command(flatten)]
        physical: PhysicalArgs,
    },
    /// Elliptic-basis eigenpairs in both expansions.
    Elliptic {
        #[arg(long = "N")]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        m: i32,
        /// Elliptic parameter a ≥ −1.
        #[arg(long, allow_hyphen_values = true)]
        a: f64,
        #[command(flatten)]
        physical: PhysicalArgs,
    },
    /// Runs a verification suite; exits 1 if any check fails.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, hide = true, default_value_t = 0.0, allow_hyphen_values = true)]
        perturb_energy: f64,
    },
    /// Evaluates a basis function at points.
    Wavefunction {
        #[arg(long, value_enum)]
        basis: BasisArg,
        #[arg(long = "N")]
        n: u32,
        #[arg(long)]
        l: Option<u32>,
        #[arg(long, allow_hyphen_values = true)]
        m: i32,
        #[arg(long)]
        n3: Option<u32>,
        /// Index of the elliptic eigenpair (ascending λ).
        #[arg(long)]
        q: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        a: Option<f64>,
        /// Coordinate system of `--point`.
        #[arg(long, value_enum, default_value_t = CoordsArg::Spherical)]
        coords: CoordsArg,
        /// Comma-separated point; repeatable.
        #[arg(long = "point", value_parser = parse_point, allow_hyphen_values = true)]
        points: Vec<Vec<f64>>,
        /// Number of pseudo-random hemisphere points to add.
        #[arg(long, default_value_t = 0)]
        random: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[command(flatten)]
        physical: PhysicalArgs,
    },
}

/// Process exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Usage(_) | Error::Domain(_) => 2,
        Error::Singular(_) | Error::Consistency(_) => 1,
    }
}

/// Parses `args` (including the program name), runs the command and writes
/// the result to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let (result, failed) = match commands::execute(&cli) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "osc-sphere: {e}");
            return exit_code(&e);
        }
    };
    match result.render(cli.format) {
        Ok(text) => {
            if out.write_all(text.as_bytes()).and_then(|_| out.flush()).is_err() {
                return 1;
            }
        }
        Err(e) => {
            let _ = writeln!(err, "osc-sphere: {e}");
            return exit_code(&e);
        }
    }
    if failed {
        let _ = writeln!(err, "osc-sphere: one or more checks failed");
        1
    } else {
        0
    }
}
