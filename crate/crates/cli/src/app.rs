//! Argument parsing and dispatch.

use std::ffi::OsString;
use std::path::PathBuf;
use std::str::FromStr;

use arrival_core::{HalfInt, OscillatorConfig, SlitGeometry, TwoModeConfig};
use clap::{Parser, Subcommand};
use serde_json::json;

use crate::acceptance;
use crate::commands::{self, Axis, CalibrateSystem, QuantizeSystem};
use crate::output::{emit, Cell, Format, RunManifest, Table, Units};
use crate::{CliError, EXIT_FAILED_CHECKS, EXIT_OK};

/// `ħ,ω,k` as given to `--units`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitArg(pub Units);

impl FromStr for UnitArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<f64> = s
            .split(',')
            .map(|p| p.trim().parse::<f64>().map_err(|e| format!("bad number {p:?}: {e}")))
            .collect::<Result<_, _>>()?;
        let [hbar, omega, k] = parts[..] else {
            return Err(format!("expected HBAR,OMEGA,K, got {s:?}"));
        };
        if !(hbar > 0.0 && omega > 0.0 && k > 0.0) || ![hbar, omega, k].iter().all(|v| v.is_finite()) {
            return Err(format!("units must be positive and finite, got {s:?}"));
        }
        Ok(UnitArg(Units { hbar, omega, k }))
    }
}

#[derive(Debug, Parser)]
#[command(name = "arrival", version, about = "Semiclassical arrival-time amplitudes compared against exact results")]
pub struct Cli {
    /// Unit system as HBAR,OMEGA,K.
    #[arg(long, global = true, default_value = "1,1,2", value_name = "HBAR,OMEGA,K")]
    pub units: UnitArg,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file; a `<path>.manifest.json` sidecar is written next to it.
    /// Relative paths are resolved under `OUTPUT_DIR` when it is set.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Oscillator eigenfunction on an x grid.
    HoWavefunction {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = -3.0, allow_negative_numbers = true)]
        x_min: f64,
        #[arg(long, default_value_t = 3.0, allow_negative_numbers = true)]
        x_max: f64,
        #[arg(long, default_value_t = 601)]
        steps: usize,
    },
    /// Photon-number distribution of a quadrature eigenstate.
    HoPhotons {
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
        #[arg(long, default_value_t = 40)]
        n_max: u32,
        /// Report probabilities for an interval dx instead of densities.
        #[arg(long)]
        dx: Option<f64>,
    },
    /// Two-mode output statistics of a 50:50 beam splitter.
    Twomode {
        #[arg(long)]
        photons: u32,
        /// Fixed photon-number difference (integer or half-integer).
        #[arg(long, allow_hyphen_values = true)]
        m: HalfInt,
        /// Index that is scanned; the other one is held at --m.
        #[arg(long, value_enum, default_value_t = Axis::Output)]
        axis: Axis,
    },
    /// Energy levels from the action quantization condition.
    Quantize {
        #[arg(long, value_enum)]
        system: QuantizeSystem,
        #[arg(long)]
        levels: usize,
    },
    /// Arrival times and fringe period of the double slit.
    Doubleslit {
        #[arg(long)]
        d: f64,
        #[arg(long = "L", alias = "l")]
        l: f64,
        #[arg(long)]
        p0: f64,
        #[arg(long = "F", alias = "force", default_value_t = 1.0)]
        f: f64,
    },
    /// Uncertainty corrections and recovered constants.
    Calibrate {
        #[arg(long, value_enum)]
        system: CalibrateSystem,
        /// Oscillation amplitude (ho) or maximal fringe amplitude (twomode).
        #[arg(long)]
        amplitude: Option<f64>,
        /// Photon number (twomode only).
        #[arg(long)]
        photons: Option<u32>,
        /// Add the worst relative error of a forward/correct round trip.
        #[arg(long)]
        round_trip: bool,
    },
    /// Runs all acceptance checks; exits 0 only if every one passes.
    CompareAll,
}

fn build(cli: &Cli) -> Result<Table, CliError> {
    let u = cli.units.0;
    let ho = || OscillatorConfig::new(u.k, u.omega, u.hbar).map_err(CliError::from);
    match &cli.command {
        Command::HoWavefunction { n, x_min, x_max, steps } => {
            commands::ho_wavefunction(*n, *x_min, *x_max, *steps, &ho()?)
        }
        Command::HoPhotons { x, n_max, dx } => commands::ho_photons(*x, *n_max, *dx, &ho()?),
        Command::Twomode { photons, m, axis } => {
            commands::twomode(*photons, *m, *axis, &TwoModeConfig::new(*photons, u.hbar)?)
        }
        Command::Quantize { system, levels } => commands::quantize(*system, *levels, &ho()?),
        Command::Doubleslit { d, l, p0, f } => commands::doubleslit(&SlitGeometry::new(*d, *l, *p0, *f)?, u.hbar),
        Command::Calibrate { system: CalibrateSystem::Ho, amplitude, photons, round_trip } => {
            if photons.is_some() {
                return Err(CliError::Usage("--photons applies to --system twomode only".into()));
            }
            commands::calibrate_ho(amplitude.unwrap_or(1.0), *round_trip, &ho()?)
        }
        Command::Calibrate { system: CalibrateSystem::Twomode, amplitude, photons, round_trip } => {
            commands::calibrate_twomode(*photons, *amplitude, *round_trip, u.hbar)
        }
        Command::CompareAll => {
            let mut t = Table::new("compare-all", json!({}), vec!["criterion", "title", "status", "detail"]);
            for r in acceptance::run_all() {
                eprintln!("{}", r.line());
                let status = if r.passed { "pass" } else { "fail" };
                t.push(vec![Cell::Int(i64::from(r.id)), r.title.into(), status.into(), r.detail.into()]);
            }
            Ok(t)
        }
    }
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let table = match build(&cli) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    let argv = args.iter().map(|a| a.to_string_lossy().into_owned()).collect();
    let manifest = RunManifest::new(&table, cli.units.0, argv);
    if let Err(e) = emit(&table, &manifest, cli.format, cli.output.as_deref()) {
        eprintln!("error: {e}");
        return CliError::from(e).exit_code();
    }
    let failed =
        matches!(cli.command, Command::CompareAll) && table.rows.iter().any(|r| r[2] == Cell::Text("fail".into()));
    if failed {
        EXIT_FAILED_CHECKS
    } else {
        EXIT_OK
    }
}
