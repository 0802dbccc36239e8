//! Table builders behind each subcommand.

use arrival_core::doubleslit::{self, SlitGeometry};
use arrival_core::engine::quantized_energies;
use arrival_core::harmonic::{self, action_difference};
use arrival_core::specfun::{beam_splitter_amplitude_exact, ho_eigenfunction_exact};
use arrival_core::twomode;
use arrival_core::uncertainty::{
    coherent_budget, ho_amplitude, ho_correct, ho_energy_from_amplitude, ho_expectation_forward, ho_first_order_factor,
    intensity_calibration, twomode_correct, twomode_expectation_forward, twomode_first_order_factor,
};
use arrival_core::{HalfInt, OscillatorConfig, TwoModeConfig};
use serde_json::json;

use crate::output::{Cell, Table};
use crate::CliError;

fn comparison_columns(abscissa: &'static str) -> Vec<&'static str> {
    vec![abscissa, "semiclassical", "exact", "regime", "abs_error"]
}

fn comparison_row(abscissa: Cell, semi: f64, exact: f64, regime: &str) -> Vec<Cell> {
    vec![abscissa, semi.into(), exact.into(), regime.into(), (semi - exact).abs().into()]
}

pub fn ho_wavefunction(
    n: u32,
    x_min: f64,
    x_max: f64,
    steps: usize,
    cfg: &OscillatorConfig,
) -> Result<Table, CliError> {
    if steps < 2 {
        return Err(CliError::Usage(format!("--steps must be at least 2, got {steps}")));
    }
    if !(x_min.is_finite() && x_max.is_finite() && x_min < x_max) {
        return Err(CliError::Usage(format!("need finite --x-min < --x-max, got [{x_min}, {x_max}]")));
    }
    let params = json!({ "n": n, "x_min": x_min, "x_max": x_max, "steps": steps });
    let mut t = Table::new("ho-wavefunction", params, comparison_columns("x"));
    let h = (x_max - x_min) / (steps - 1) as f64;
    for i in 0..steps {
        let x = if i == steps - 1 { x_max } else { x_min + h * i as f64 };
        let semi = harmonic::wavefunction(n, x, cfg);
        let exact = ho_eigenfunction_exact(n, x, cfg);
        t.push(comparison_row(x.into(), semi, exact, harmonic::regime(n, x, cfg).tag()));
    }
    Ok(t)
}

/// Photon-number distribution at fixed `x`. Values are densities per unit
/// `x` unless `dx` is given, in which case they are multiplied by it.
pub fn ho_photons(x: f64, n_max: u32, dx: Option<f64>, cfg: &OscillatorConfig) -> Result<Table, CliError> {
    if !x.is_finite() {
        return Err(CliError::Usage(format!("--x must be finite, got {x}")));
    }
    if let Some(d) = dx {
        if !(d > 0.0 && d.is_finite()) {
            return Err(CliError::Usage(format!("--dx must be positive, got {d}")));
        }
    }
    let scale = dx.unwrap_or(1.0);
    let params = json!({ "x": x, "n_max": n_max, "dx": dx });
    let mut t = Table::new("ho-photons", params, comparison_columns("n"));
    for n in 0..=n_max {
        let semi = harmonic::photon_probability(x, n, cfg) * scale;
        let exact = ho_eigenfunction_exact(n, x, cfg).powi(2) * scale;
        t.push(comparison_row(n.into(), semi, exact, harmonic::regime(n, x, cfg).tag()));
    }
    Ok(t)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Axis {
    /// Scan the input difference `m1` at fixed output difference.
    Input,
    /// Scan the output difference `m2` at fixed input difference.
    Output,
}

pub fn twomode(photons: u32, fixed: HalfInt, axis: Axis, cfg: &TwoModeConfig) -> Result<Table, CliError> {
    fixed.check_lattice(photons)?;
    let axis_name = match axis {
        Axis::Input => "input",
        Axis::Output => "output",
    };
    let params = json!({ "photons": photons, "m": fixed.to_string(), "axis": axis_name });
    let mut t = Table::new("twomode", params, comparison_columns("m"));
    for m in cfg.lattice() {
        let (m2, m1) = match axis {
            Axis::Output => (m, fixed),
            Axis::Input => (fixed, m),
        };
        let semi = twomode::probability(m2, m1, cfg)?;
        let exact = beam_splitter_amplitude_exact(photons, m1, m2)?.powi(2);
        t.push(comparison_row(m.to_string().into(), semi, exact, twomode::regime(m2, m1, cfg)?.tag()));
    }
    Ok(t)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum QuantizeSystem {
    Ho,
}

/// Levels `n = 0..levels` from the action condition, compared against
/// `ħω(n + 1/2)`.
pub fn quantize(system: QuantizeSystem, levels: usize, cfg: &OscillatorConfig) -> Result<Table, CliError> {
    let QuantizeSystem::Ho = system;
    let params = json!({ "system": "ho", "levels": levels });
    let mut t = Table::new("quantize", params, vec!["n", "energy", "abs_error", "spacing"]);
    if levels == 0 {
        return Ok(t);
    }
    let hi = (levels as f64 + 2.0) * cfg.quantum();
    let energies = quantized_energies(|e| action_difference(e, cfg), levels - 1, (0.0, hi), cfg.hbar)?;
    for (n, &e) in energies.iter().enumerate() {
        let spacing = (n > 0).then(|| e - energies[n - 1]);
        let err = (e - cfg.level_energy(n as u32)).abs();
        t.push(vec![Cell::Int(n as i64), e.into(), err.into(), spacing.into()]);
    }
    Ok(t)
}

pub fn doubleslit(g: &SlitGeometry, hbar: f64) -> Result<Table, CliError> {
    let params = json!({ "d": g.d, "L": g.l, "p0": g.p0, "F": g.f });
    let cols = vec!["t_plus", "t_minus", "x_mod", "x_mod_from_arrival_times"];
    let mut t = Table::new("doubleslit", params, cols);
    let (tp, tm) = doubleslit::arrival_times(g);
    let direct = doubleslit::fringe_period(g, hbar);
    let via = doubleslit::fringe_period_from_arrival_times(g, hbar)?;
    t.push(vec![tp.into(), tm.into(), direct.into(), via.into()]);
    Ok(t)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum CalibrateSystem {
    Ho,
    Twomode,
}

/// Fixed `(t, E)` and `(φ, J1)` samples used by the round-trip report.
fn round_trip_samples() -> impl Iterator<Item = (f64, f64)> {
    (0..100).map(|i| {
        let i = f64::from(i);
        (0.173 * i - 7.9, 0.61 + 0.37 * i)
    })
}

pub fn calibrate_ho(amplitude: f64, round_trip: bool, cfg: &OscillatorConfig) -> Result<Table, CliError> {
    if !(amplitude >= 0.0 && amplitude.is_finite()) {
        return Err(CliError::Usage(format!("--amplitude must be non-negative, got {amplitude}")));
    }
    let params = json!({ "system": "ho", "amplitude": amplitude, "round_trip": round_trip });
    let mut t = Table::new("calibrate", params, vec!["quantity", "value"]);
    let raw = 0.5 * cfg.k * amplitude * amplitude;
    let corrected = ho_energy_from_amplitude(amplitude, cfg);
    t.push(vec!["amplitude".into(), amplitude.into()]);
    t.push(vec!["energy_raw".into(), raw.into()]);
    t.push(vec!["energy_corrected".into(), corrected.into()]);
    t.push(vec!["zero_point_offset".into(), (corrected - raw).into()]);
    if corrected > cfg.quantum() / 2.0 {
        let b = coherent_budget(corrected, cfg)?;
        let measured = ho_expectation_forward(0.0, corrected, &b, cfg)?;
        t.push(vec!["coherent_measured_amplitude".into(), measured.into()]);
        t.push(vec!["first_order_factor".into(), ho_first_order_factor(corrected, cfg).into()]);
    }
    if round_trip {
        let mut worst: f64 = 0.0;
        for (time, quanta) in round_trip_samples() {
            let e = quanta * cfg.quantum();
            let truth = ho_amplitude(e, cfg)? * (cfg.omega * time).cos();
            let b = coherent_budget(e, cfg)?;
            let back = ho_correct(ho_expectation_forward(time, e, &b, cfg)?, time, e, &b, cfg)?;
            worst = worst.max((back - truth).abs() / truth.abs().max(f64::MIN_POSITIVE));
        }
        t.push(vec!["round_trip_max_rel_error".into(), worst.into()]);
    }
    Ok(t)
}

/// Two-mode calibration from either a photon number or a measured maximal
/// fringe amplitude.
pub fn calibrate_twomode(
    photons: Option<u32>,
    a_max: Option<f64>,
    round_trip: bool,
    hbar: f64,
) -> Result<Table, CliError> {
    let a_max = match (photons, a_max) {
        (Some(n), None) => hbar * f64::from(n) / 2.0,
        (None, Some(a)) => a,
        _ => return Err(CliError::Usage("twomode calibration needs exactly one of --photons, --amplitude".into())),
    };
    let params = json!({ "system": "twomode", "photons": photons, "amplitude": a_max, "round_trip": round_trip });
    let mut t = Table::new("calibrate", params, vec!["quantity", "value"]);
    let cal = intensity_calibration(a_max, hbar)?;
    if cal.photons.is_none() {
        eprintln!("warning: A_max/ħ = {} is not on the N/2 lattice", a_max / hbar);
    }
    t.push(vec!["amplitude_max".into(), a_max.into()]);
    t.push(vec!["intensity".into(), cal.intensity.into()]);
    t.push(vec!["photons".into(), cal.photons.map_or(Cell::Empty, Cell::from)]);
    if let Some(n) = cal.photons {
        t.push(vec!["first_order_factor_j1_0".into(), twomode_first_order_factor(0.0, n, hbar)?.into()]);
        if round_trip {
            let i = cal.intensity;
            let mut worst: f64 = 0.0;
            for (phi, frac) in round_trip_samples() {
                let j1 = (frac / 40.0 - 0.5) * i;
                let truth = (i * i - j1 * j1).sqrt() * phi.cos();
                let back = twomode_correct(twomode_expectation_forward(phi, j1, n, hbar)?, phi, j1, n, hbar)?;
                worst = worst.max((back - truth).abs() / truth.abs().max(f64::MIN_POSITIVE));
            }
            t.push(vec!["round_trip_max_rel_error".into(), worst.into()]);
        }
    }
    Ok(t)
}
