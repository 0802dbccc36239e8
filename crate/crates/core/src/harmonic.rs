//! Harmonic oscillator treated with the arrival-action engine.
//!
//! The observable is the quadrature `x` with `B(t; E) = A(E) cos(ωt)`. Its
//! classical energy relation is `E = (ω²/2k) p² + (k/2) x²`, so the effective
//! mass is `k/ω²`.

use std::f64::consts::PI;

use crate::engine::{
    airy_amplitude, airy_argument, branch_amplitude, regime_select, Branch, Interval, QuantizationSpec, Regime,
    TurningPoint, CROSSOVER_ARGUMENT,
};
use crate::error::{finite, positive, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorConfig {
    pub k: f64,
    pub omega: f64,
    pub hbar: f64,
}

impl Default for OscillatorConfig {
    /// `ħ = ω = 1`, `k = 2ħω`.
    fn default() -> Self {
        Self { k: 2.0, omega: 1.0, hbar: 1.0 }
    }
}

impl OscillatorConfig {
    pub fn new(k: f64, omega: f64, hbar: f64) -> Result<Self> {
        positive("k", k)?;
        positive("omega", omega)?;
        positive("hbar", hbar)?;
        Ok(Self { k, omega, hbar })
    }

    pub fn period(&self) -> f64 {
        2.0 * PI / self.omega
    }

    /// `ħω`
    pub fn quantum(&self) -> f64 {
        self.hbar * self.omega
    }

    /// `ħω(n + 1/2)`
    pub fn level_energy(&self, n: u32) -> f64 {
        self.quantum() * (f64::from(n) + 0.5)
    }

    /// Classical turning point `sqrt(2E/k)`.
    pub fn turning_point(&self, e: f64) -> f64 {
        (2.0 * e / self.k).sqrt()
    }

    /// Potential-like threshold `(k/2) x²` at which `x` becomes a turning point.
    pub fn threshold(&self, x: f64) -> f64 {
        0.5 * self.k * x * x
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HOPoint {
    pub x: f64,
    pub e: f64,
}

impl HOPoint {
    pub fn new(x: f64, e: f64) -> Self {
        Self { x, e }
    }

    pub fn allowed(&self, cfg: &OscillatorConfig) -> bool {
        self.e > cfg.threshold(self.x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

fn check_reachable(p: &HOPoint, cfg: &OscillatorConfig) -> Result<()> {
    finite("x", p.x)?;
    finite("E", p.e)?;
    if p.e <= 0.0 || p.e < cfg.threshold(p.x) {
        return Err(Error::Forbidden { b: p.x, e: p.e });
    }
    Ok(())
}

fn cos_arg(p: &HOPoint, cfg: &OscillatorConfig) -> f64 {
    (p.x * (cfg.k / (2.0 * p.e)).sqrt()).clamp(-1.0, 1.0)
}

/// Arrival time `±(1/ω) arccos(x sqrt(k/2E)) + n_cycle T`.
///
/// Negative `x` goes straight through `arccos`, which is the same as
/// evaluating at `|x|` and reflecting the time through `T/2`.
pub fn arrival_time(p: &HOPoint, sign: Sign, n_cycle: i32, cfg: &OscillatorConfig) -> Result<f64> {
    check_reachable(p, cfg)?;
    Ok(sign.value() * cos_arg(p, cfg).acos() / cfg.omega + f64::from(n_cycle) * cfg.period())
}

/// Action of the `+` branch; the `-` branch carries `-S_+`.
pub fn action_plus(p: &HOPoint, cfg: &OscillatorConfig) -> Result<f64> {
    check_reachable(p, cfg)?;
    Ok(action_plus_unchecked(p, cfg))
}

fn action_plus_unchecked(p: &HOPoint, cfg: &OscillatorConfig) -> f64 {
    action_from_cos_arg(cos_arg(p, cfg), p.e, cfg)
}

/// `S_+` written in `u = x sqrt(k/2E)`: `(E/ω)(arccos u - u sqrt(1 - u²)) - πħ/4`.
fn action_from_cos_arg(u: f64, e: f64, cfg: &OscillatorConfig) -> f64 {
    e / cfg.omega * (u.acos() - u * (1.0 - u * u).max(0.0).sqrt()) - PI * cfg.hbar / 4.0
}

/// `S_+(-A, E) - S_+(A, E)` between the two turning points, equal to `πE/ω`.
///
/// The turning points enter as `u = ±1` exactly, since rounding `A` would
/// otherwise leak through the square-root singularity of `S`.
pub fn action_difference(e: f64, cfg: &OscillatorConfig) -> f64 {
    action_from_cos_arg(-1.0, e, cfg) - action_from_cos_arg(1.0, e, cfg)
}

/// Oscillator arrival branch usable by the generic engine.
#[derive(Debug, Clone, Copy)]
pub struct OscillatorBranch {
    pub sign: Sign,
    pub n_cycle: i32,
    pub cfg: OscillatorConfig,
}

impl Branch for OscillatorBranch {
    fn index(&self) -> i32 {
        2 * self.n_cycle + if self.sign == Sign::Plus { 0 } else { 1 }
    }

    fn arrival_time(&self, b: f64, e: f64) -> f64 {
        self.sign.value() * cos_arg(&HOPoint::new(b, e), &self.cfg).acos() / self.cfg.omega
            + f64::from(self.n_cycle) * self.cfg.period()
    }

    fn action(&self, b: f64, e: f64) -> f64 {
        self.sign.value() * action_plus_unchecked(&HOPoint::new(b, e), &self.cfg)
            + f64::from(self.n_cycle) * self.cfg.period() * e
    }

    fn contains(&self, b: f64, e: f64) -> bool {
        e > self.cfg.threshold(b)
    }

    fn mixed_derivative(&self, b: f64, e: f64) -> f64 {
        -self.sign.value() * self.cfg.k.sqrt() / (self.cfg.omega * (2.0 * e - self.cfg.k * b * b).sqrt())
    }
}

/// The two arrival branches of one oscillation cycle.
pub fn branches(cfg: &OscillatorConfig) -> [OscillatorBranch; 2] {
    [
        OscillatorBranch { sign: Sign::Plus, n_cycle: 0, cfg: *cfg },
        OscillatorBranch { sign: Sign::Minus, n_cycle: 0, cfg: *cfg },
    ]
}

/// Local turning-point model at `x ≠ 0`: `V = kx²/2`, `γ = 2/(ω² k x²)`.
pub fn turning_point_model(x: f64, cfg: &OscillatorConfig) -> Result<TurningPoint> {
    if x == 0.0 {
        return Err(Error::Domain("the turning-point model needs x ≠ 0".into()));
    }
    TurningPoint::new(cfg.threshold(x), 2.0 / (cfg.omega * cfg.omega * cfg.k * x * x), cfg.k * x.abs())
}

fn density_spec(cfg: &OscillatorConfig) -> QuantizationSpec {
    QuantizationSpec { delta_e: cfg.quantum(), delta_b: Interval::Continuous }
}

/// Regime used by [`wavefunction`] at `(n, x)`.
pub fn regime(n: u32, x: f64, cfg: &OscillatorConfig) -> Regime {
    match turning_point_model(x.abs(), cfg) {
        Ok(tp) => regime_select(cfg.level_energy(n), &tp, cfg.hbar),
        Err(_) => Regime::SeparatedBranches,
    }
}

/// Positive `x` where level `n` switches to the Airy patch.
///
/// The Airy argument rises monotonically from `-∞` at `x = 0` to zero at the
/// classical turning point, so the switch is found by bisection.
pub fn crossover_position(n: u32, cfg: &OscillatorConfig) -> f64 {
    let e = cfg.level_energy(n);
    let arg = |x: f64| match turning_point_model(x, cfg) {
        Ok(tp) => airy_argument(e, &tp, cfg.hbar),
        Err(_) => f64::NEG_INFINITY,
    };
    let (mut lo, mut hi) = (0.0, cfg.turning_point(e));
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if arg(mid) < CROSSOVER_ARGUMENT {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Semiclassical eigenfunction `<x|n>` at `E_n = ħω(n + 1/2)`.
///
/// The two-branch sum is used away from the turning point and the Airy
/// profile near and beyond it, switching without blending. Negative `x` is
/// evaluated at `|x|` with the sign `(-1)^n`.
pub fn wavefunction(n: u32, x: f64, cfg: &OscillatorConfig) -> f64 {
    let e = cfg.level_energy(n);
    let ax = x.abs();
    let parity = if x < 0.0 && n % 2 == 1 { -1.0 } else { 1.0 };
    if ax == 0.0 && n % 2 == 1 {
        return 0.0;
    }
    let q = density_spec(cfg);
    let value = match regime(n, ax, cfg) {
        Regime::AiryPatch => {
            let tp = turning_point_model(ax, cfg).expect("x ≠ 0 in the Airy regime");
            airy_amplitude(e, &tp, &q, cfg.hbar).expect("γ > 0 by construction")
        }
        Regime::SeparatedBranches => {
            let [plus, minus] = branches(cfg);
            branch_amplitude(&[&plus, &minus], ax, e, &q, cfg.hbar)
                .expect("separated regime lies inside the turning points")
                .re
        }
    };
    parity * value
}

/// `|<x|n>|²` as a density in `x`.
pub fn photon_probability(x: f64, n: u32, cfg: &OscillatorConfig) -> f64 {
    wavefunction(n, x, cfg).powi(2)
}

/// Small-`x` limit of [`photon_probability`]: `cos²` for even `n`, `sin²` for odd `n`.
pub fn small_x_parity_probability(n: u32, x: f64, cfg: &OscillatorConfig) -> f64 {
    let level = f64::from(n) + 0.5;
    let envelope = 2.0 / PI * (cfg.k / (2.0 * cfg.quantum() * level)).sqrt();
    let phase = (2.0 * cfg.k / cfg.quantum() * level).sqrt() * x;
    if n.is_multiple_of(2) {
        envelope * phase.cos().powi(2)
    } else {
        envelope * phase.sin().powi(2)
    }
}

/// Energy `E_1` at which the even-`n` probability first drops to zero.
pub fn first_even_minimum_energy(x: f64, cfg: &OscillatorConfig) -> Result<f64> {
    finite("x", x)?;
    if x == 0.0 {
        return Err(Error::Domain("x = 0 has no even-n minimum".into()));
    }
    Ok((PI / 4.0).powi(2) * cfg.quantum().powi(2) / cfg.threshold(x))
}

/// Inverse of [`first_even_minimum_energy`] for `x > 0`.
pub fn estimate_x_from_minimum(e1: f64, cfg: &OscillatorConfig) -> Result<f64> {
    positive("E1", e1)?;
    Ok(PI / 4.0 * cfg.quantum() / (0.5 * cfg.k * e1).sqrt())
}

/// `∂S_+/∂x` by centered difference. Its magnitude is the momentum.
pub fn momentum_from_action(p: &HOPoint, cfg: &OscillatorConfig) -> Result<f64> {
    check_reachable(p, cfg)?;
    if !p.allowed(cfg) {
        return Err(Error::Forbidden { b: p.x, e: p.e });
    }
    let edge = cfg.turning_point(p.e) - p.x.abs();
    let h = (1e-6 * cfg.turning_point(p.e)).min(0.5 * edge);
    let s = |x: f64| action_plus_unchecked(&HOPoint::new(x, p.e), cfg);
    Ok((s(p.x + h) - s(p.x - h)) / (2.0 * h))
}

/// Momentum magnitude from the energy relation, `sqrt((2k/ω²)(E - kx²/2))`.
pub fn momentum_magnitude(p: &HOPoint, cfg: &OscillatorConfig) -> f64 {
    (2.0 * cfg.k / (cfg.omega * cfg.omega) * (p.e - cfg.threshold(p.x)).max(0.0)).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::ho_eigenfunction_exact;

    fn cfg() -> OscillatorConfig {
        OscillatorConfig::default()
    }

    #[test]
    fn arrival_time_examples() {
        let c = cfg();
        let t = arrival_time(&HOPoint::new(0.0, 2.3), Sign::Plus, 0, &c).unwrap();
        assert!((t - c.period() / 4.0).abs() < 1e-15);
        let a = c.turning_point(2.3);
        assert_eq!(arrival_time(&HOPoint::new(a, 2.3), Sign::Minus, 0, &c).unwrap(), 0.0);
        assert!(matches!(arrival_time(&HOPoint::new(3.0, 2.0), Sign::Plus, 0, &c), Err(Error::Forbidden { .. })));
    }

    #[test]
    fn negative_x_is_reflection_through_half_period() {
        let c = cfg();
        let p = HOPoint::new(0.7, 3.0);
        let q = HOPoint::new(-0.7, 3.0);
        let t = arrival_time(&p, Sign::Plus, 0, &c).unwrap();
        let t_ref = arrival_time(&q, Sign::Plus, 0, &c).unwrap();
        assert!((t_ref - (c.period() / 2.0 - t)).abs() < 1e-14);
    }

    #[test]
    fn action_examples() {
        let c = cfg();
        let e = 4.5;
        let a = c.turning_point(e);
        // S has a square-root singularity at the turning point, so the rounding
        // of `a` itself shows up at the 1e-8 level.
        assert!((action_plus(&HOPoint::new(a, e), &c).unwrap() + PI / 4.0).abs() < 1e-6);
        let mid = action_plus(&HOPoint::new(0.0, e), &c).unwrap();
        assert!((mid - (PI / 2.0 * e - PI / 4.0)).abs() < 1e-14);
        assert!((action_difference(e, &c) - PI * e).abs() < 1e-12);
    }

    #[test]
    fn wavefunction_examples() {
        let c = cfg();
        assert_eq!(wavefunction(1, 0.0, &c), 0.0);
        assert!((wavefunction(0, 0.0, &c) - 0.9489).abs() < 1e-4);
        assert!((ho_eigenfunction_exact(0, 0.0, &c) - 0.8932).abs() < 1e-4);
    }

    #[test]
    fn closed_form_separated_regime() {
        let c = cfg();
        for n in [3u32, 7, 12] {
            let e = c.level_energy(n);
            for &x in &[0.1, 0.6, 1.3] {
                if regime(n, x, &c) != Regime::SeparatedBranches {
                    continue;
                }
                let s = action_plus(&HOPoint::new(x, e), &c).unwrap();
                let closed = (2.0 / PI * (c.k / (2.0 * e - c.k * x * x)).sqrt()).sqrt() * (s / c.hbar).cos();
                assert!((wavefunction(n, x, &c) - closed).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn closed_form_airy_regime_at_x3() {
        let c = OscillatorConfig::new(2.0, 1.3, 0.8).unwrap();
        let x = 3.0;
        let tp = turning_point_model(x, &c).unwrap();
        let q = QuantizationSpec { delta_e: c.quantum(), delta_b: Interval::Continuous };
        for n in [4u32, 10, 12] {
            let e = c.level_energy(n);
            let hw = c.quantum();
            let arg = -(2.0 * hw / (c.k * x * x)).cbrt() * (e - c.k * x * x / 2.0) / hw;
            let closed = (4.0 * c.k / (hw * x)).powf(1.0 / 6.0) * crate::specfun::airy_ai(arg).unwrap();
            let via_engine = airy_amplitude(e, &tp, &q, c.hbar).unwrap();
            assert!((closed - via_engine).abs() < 1e-13, "n={n}");
        }
    }

    #[test]
    fn small_x_examples() {
        let c = cfg();
        assert_eq!(small_x_parity_probability(3, 0.0, &c), 0.0);
        let even = small_x_parity_probability(4, 0.0, &c);
        assert!((even - 2.0 / PI * (2.0 / (2.0 * 4.5f64)).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn minimum_energy_examples() {
        let c = cfg();
        let e1 = first_even_minimum_energy(0.225, &c).unwrap();
        assert!((e1 - 12.2).abs() < 0.05);
        let e1b = first_even_minimum_energy(0.9, &c).unwrap();
        assert!((e1 / e1b - 16.0).abs() < 1e-12);
        assert!(first_even_minimum_energy(0.0, &c).is_err());
        assert!(estimate_x_from_minimum(0.0, &c).is_err());
        assert!((estimate_x_from_minimum(12.5, &c).unwrap() - 0.222).abs() < 5e-4);
        assert!((estimate_x_from_minimum(9.5, &c).unwrap() - 0.255).abs() < 5e-4);
        assert!((estimate_x_from_minimum(8.5, &c).unwrap() - 0.270).abs() < 1e-3);
    }

    #[test]
    fn momentum_examples() {
        let c = cfg();
        let e = 3.0;
        let p0 = momentum_from_action(&HOPoint::new(0.0, e), &c).unwrap();
        assert!((p0.abs() - (2.0 * c.k * e).sqrt() / c.omega).abs() < 1e-6);
        let xm = (e / c.k).sqrt();
        let pm = momentum_from_action(&HOPoint::new(xm, e), &c).unwrap();
        assert!((pm.abs() - (c.k * e).sqrt() / c.omega).abs() < 1e-5);
        let near = HOPoint::new(c.turning_point(e) * (1.0 - 1e-10), e);
        assert!(momentum_magnitude(&near, &c) < 1e-3);
    }
}
