//! Calibration of measured expectation values against the deterministic
//! energy-time relations.
//!
//! Finite uncertainties `δt`, `δE` shrink an expectation value by
//! second-order error propagation, `<B> ≈ B + ½ ∂²_t B δt² + ½ ∂²_E B δE²`.
//! The forward models apply that shrinkage, and the `*_correct` functions
//! undo it exactly.

use nalgebra::{DMatrix, DVector};

use crate::error::{finite, positive, Error, Result};
use crate::harmonic::OscillatorConfig;

/// `δt`, `δE` for the oscillator. In the two-mode role they hold `δφ`, `δJ1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UncertaintyBudget {
    pub dt: f64,
    pub de: f64,
}

impl UncertaintyBudget {
    pub fn new(dt: f64, de: f64) -> Result<Self> {
        if !(dt >= 0.0 && de >= 0.0 && dt.is_finite() && de.is_finite()) {
            return Err(Error::Domain(format!("uncertainties must be finite and non-negative, got ({dt}, {de})")));
        }
        Ok(Self { dt, de })
    }

    pub fn product(&self) -> f64 {
        self.dt * self.de
    }
}

/// Oscillation amplitude `A(E) = sqrt(2(E - ħω/2)/k)`.
pub fn ho_amplitude(e: f64, cfg: &OscillatorConfig) -> Result<f64> {
    finite("E", e)?;
    let excess = e - cfg.quantum() / 2.0;
    if excess <= 0.0 {
        return Err(Error::Domain(format!("E = {e} is not above the zero-point energy {}", cfg.quantum() / 2.0)));
    }
    Ok((2.0 * excess / cfg.k).sqrt())
}

/// Corrected energy relation `E = kA²/2 + ħω/2`.
pub fn ho_energy_from_amplitude(a: f64, cfg: &OscillatorConfig) -> f64 {
    0.5 * cfg.k * a * a + cfg.quantum() / 2.0
}

/// Shrinkage factor `1 - (ω²/2) δt² - δE²/(8E²)`.
pub fn ho_forward_factor(e: f64, budget: &UncertaintyBudget, cfg: &OscillatorConfig) -> f64 {
    1.0 - 0.5 * cfg.omega.powi(2) * budget.dt.powi(2) - budget.de.powi(2) / (8.0 * e * e)
}

/// Expectation value of `x(t; E) = A(E) cos(ωt)` under the budget.
pub fn ho_expectation_forward(t: f64, e: f64, budget: &UncertaintyBudget, cfg: &OscillatorConfig) -> Result<f64> {
    finite("t", t)?;
    let a = ho_amplitude(e, cfg)?;
    Ok(a * (cfg.omega * t).cos() * ho_forward_factor(e, budget, cfg))
}

/// Recovers the deterministic value from a measured expectation value.
pub fn ho_correct(measured: f64, t: f64, e: f64, budget: &UncertaintyBudget, cfg: &OscillatorConfig) -> Result<f64> {
    finite("measured", measured)?;
    finite("t", t)?;
    ho_amplitude(e, cfg)?;
    let factor = ho_forward_factor(e, budget, cfg);
    if factor <= 0.0 {
        return Err(Error::Domain(format!("uncertainties too large to invert (factor {factor})")));
    }
    Ok(measured / factor)
}

/// First-order form `1 + ħω/(4E)` of the coherent-state correction.
pub fn ho_first_order_factor(e: f64, cfg: &OscillatorConfig) -> f64 {
    1.0 + cfg.quantum() / (4.0 * e)
}

/// Minimal-uncertainty budget with coherent-state energy spread `δE² = Eħω`.
pub fn coherent_budget(e: f64, cfg: &OscillatorConfig) -> Result<UncertaintyBudget> {
    positive("E", e)?;
    let de = (e * cfg.quantum()).sqrt();
    Ok(UncertaintyBudget { dt: cfg.hbar / (2.0 * de), de })
}

fn twomode_radius(n: u32, hbar: f64) -> f64 {
    hbar * (f64::from(n) + 1.0) / 2.0
}

fn check_j1(j1: f64, i: f64) -> Result<f64> {
    finite("J1", j1)?;
    let rest = i * i - j1 * j1;
    if rest <= 0.0 {
        return Err(Error::Domain(format!("|J1| = {} must stay below I = {i}", j1.abs())));
    }
    Ok(rest)
}

/// Binomial shot noise: `δJ1² = (ħ/2)(I² - J1²)/I` and `δφ² = (ħ/2) I/(I² - J1²)`.
pub fn twomode_budget(j1: f64, n: u32, hbar: f64) -> Result<UncertaintyBudget> {
    positive("hbar", hbar)?;
    let i = twomode_radius(n, hbar);
    let rest = check_j1(j1, i)?;
    Ok(UncertaintyBudget { dt: (0.5 * hbar * i / rest).sqrt(), de: (0.5 * hbar * rest / i).sqrt() })
}

/// Shrinkage factor `1 - ħI/(2(I² - J1²))` of the fringe `J2 = sqrt(I² - J1²) cos φ`.
pub fn twomode_forward_factor(j1: f64, n: u32, hbar: f64) -> Result<f64> {
    let i = twomode_radius(n, hbar);
    let rest = check_j1(j1, i)?;
    Ok(1.0 - hbar * i / (2.0 * rest))
}

/// Expectation value of the output difference `J2` under shot noise.
pub fn twomode_expectation_forward(phi: f64, j1: f64, n: u32, hbar: f64) -> Result<f64> {
    finite("phi", phi)?;
    let i = twomode_radius(n, hbar);
    let rest = check_j1(j1, i)?;
    Ok(rest.sqrt() * phi.cos() * twomode_forward_factor(j1, n, hbar)?)
}

/// Recovers the deterministic `J2` from a measured expectation value.
pub fn twomode_correct(measured_j2: f64, phi: f64, j1: f64, n: u32, hbar: f64) -> Result<f64> {
    finite("measured_j2", measured_j2)?;
    finite("phi", phi)?;
    let factor = twomode_forward_factor(j1, n, hbar)?;
    if factor <= 0.0 {
        return Err(Error::Domain(format!("shot noise too large to invert (factor {factor})")));
    }
    Ok(measured_j2 / factor)
}

/// First-order form `1 + ħI/(2(I² - J1²))` of the two-mode correction.
pub fn twomode_first_order_factor(j1: f64, n: u32, hbar: f64) -> Result<f64> {
    let i = twomode_radius(n, hbar);
    let rest = check_j1(j1, i)?;
    Ok(1.0 + hbar * i / (2.0 * rest))
}

/// `|J1| = sqrt((I - ħ/2)² - A²)` from the fringe amplitude `A`.
pub fn twomode_j1_from_amplitude(a: f64, n: u32, hbar: f64) -> Result<f64> {
    let reach = twomode_radius(n, hbar) - hbar / 2.0;
    let d = reach * reach - a * a;
    if d < 0.0 {
        return Err(Error::Domain(format!("amplitude {a} exceeds the maximum {reach}")));
    }
    Ok(d.sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntensityCalibration {
    pub intensity: f64,
    /// Photon number when `A_max/ħ` lies on the lattice `N/2`, otherwise `None`.
    pub photons: Option<u32>,
}

/// `I = A_max + ħ/2` from the largest fringe amplitude `A_max = ħN/2`.
pub fn intensity_calibration(a_max: f64, hbar: f64) -> Result<IntensityCalibration> {
    positive("A_max", a_max)?;
    positive("hbar", hbar)?;
    let twice = 2.0 * a_max / hbar;
    let photons = ((twice - twice.round()).abs() <= 1e-9 && twice.round() >= 1.0).then(|| twice.round() as u32);
    Ok(IntensityCalibration { intensity: a_max + hbar / 2.0, photons })
}

/// Expectation values of a coherent state built in a truncated number basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FockCheck {
    /// `<H>`.
    pub energy: f64,
    /// `<x>` at `t = 0`, the oscillation amplitude.
    pub amplitude: f64,
    /// `kA²/2 + ħω/2` from the measured amplitude.
    pub relation_energy: f64,
    pub dimension: usize,
}

impl FockCheck {
    pub fn relative_mismatch(&self) -> f64 {
        (self.relation_energy - self.energy).abs() / self.energy
    }
}

/// Builds a real coherent state of mean energy `e` and evaluates `<H>` and
/// `<x>` with dense operators. The basis is at least `10 E/ħω` states and is
/// extended until the discarded Poisson tail is below 1e-12.
pub fn coherent_state_check(e: f64, cfg: &OscillatorConfig) -> Result<FockCheck> {
    let quanta = e / cfg.quantum() - 0.5;
    if !quanta.is_finite() || quanta <= 0.0 {
        return Err(Error::Domain(format!("E = {e} must exceed ħω/2")));
    }
    let alpha = quanta.sqrt();

    let mut coeffs = vec![(-quanta / 2.0).exp()];
    let mut captured = coeffs[0] * coeffs[0];
    let floor = (10.0 * e / cfg.quantum()).ceil() as usize;
    while coeffs.len() < floor || 1.0 - captured > 1e-12 {
        let n = coeffs.len() as f64;
        let next = coeffs[coeffs.len() - 1] * alpha / n.sqrt();
        captured += next * next;
        coeffs.push(next);
        if coeffs.len() > 100_000 {
            return Err(Error::Domain("coherent state needs an impractically large basis".into()));
        }
    }
    let dim = coeffs.len();
    let psi = DVector::from_vec(coeffs);

    let x_scale = (cfg.quantum() / (2.0 * cfg.k)).sqrt();
    let x_op = DMatrix::from_fn(dim, dim, |i, j| {
        if j == i + 1 {
            x_scale * (j as f64).sqrt()
        } else if i == j + 1 {
            x_scale * (i as f64).sqrt()
        } else {
            0.0
        }
    });
    let h_op = DMatrix::from_diagonal(&DVector::from_fn(dim, |n, _| cfg.quantum() * (n as f64 + 0.5)));

    let norm = psi.dot(&psi);
    let energy = psi.dot(&(&h_op * &psi)) / norm;
    let amplitude = psi.dot(&(&x_op * &psi)) / norm;
    Ok(FockCheck { energy, amplitude, relation_energy: ho_energy_from_amplitude(amplitude, cfg), dimension: dim })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_budget_is_identity() {
        let cfg = OscillatorConfig::default();
        let b = UncertaintyBudget::new(0.0, 0.0).unwrap();
        let x = ho_expectation_forward(0.3, 2.0, &b, &cfg).unwrap();
        assert_eq!(x, ho_amplitude(2.0, &cfg).unwrap() * 0.3f64.cos());
    }

    #[test]
    fn quarter_period_vanishes() {
        let cfg = OscillatorConfig::default();
        let b = coherent_budget(3.0, &cfg).unwrap();
        let x = ho_expectation_forward(cfg.period() / 4.0, 3.0, &b, &cfg).unwrap();
        assert!(x.abs() < 1e-15);
    }

    #[test]
    fn coherent_budget_examples() {
        let cfg = OscillatorConfig::new(2.0, 1.5, 0.8).unwrap();
        let b = coherent_budget(cfg.quantum(), &cfg).unwrap();
        assert!((b.de - cfg.quantum()).abs() < 1e-15);
        assert!((b.product() - cfg.hbar / 2.0).abs() < 1e-15);
        assert!(coherent_budget(0.0, &cfg).is_err());
    }

    #[test]
    fn zero_point_limit() {
        let cfg = OscillatorConfig::default();
        assert_eq!(ho_energy_from_amplitude(0.0, &cfg), 0.5);
        assert!((ho_energy_from_amplitude(1.0, &cfg) - 1.5).abs() < 1e-15);
        assert!(ho_amplitude(0.5, &cfg).is_err());
    }

    #[test]
    fn intensity_examples() {
        let c = intensity_calibration(6.0, 1.0).unwrap();
        assert_eq!(c.intensity, 6.5);
        assert_eq!(c.photons, Some(12));
        assert_eq!(intensity_calibration(1.0, 1.0).unwrap().intensity, 1.5);
        let off = intensity_calibration(1.3, 1.0).unwrap();
        assert_eq!(off.photons, None);
        assert_eq!(off.intensity, 1.8);
    }

    #[test]
    fn twomode_zero_noise_limit() {
        let n = 12;
        let j1_phys = 1.5;
        let raw = 3.0;
        let mut prev = f64::INFINITY;
        for hbar in [1e-1, 1e-3, 1e-6] {
            let j1 = j1_phys;
            let n_scaled = (f64::from(n) / hbar) as u32;
            let c = twomode_correct(raw, 0.0, j1, n_scaled, hbar).unwrap();
            let d = (c - raw).abs();
            assert!(d < prev);
            prev = d;
        }
        assert!(prev < 1e-5);
    }

    #[test]
    fn twomode_domain() {
        assert!(twomode_correct(1.0, 0.0, 6.5, 12, 1.0).is_err());
        assert!(twomode_budget(7.0, 12, 1.0).is_err());
    }
}
