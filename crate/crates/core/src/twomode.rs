//! Two-mode N-photon interference at a 50:50 beam splitter.
//!
//! `J1 = ħ m1` is the photon-number difference of the inputs and `J2 = ħ m2`
//! that of the outputs. Classically the fringe relation is
//! `J2 = sqrt(I² - J1²) cos φ` on a sphere of radius `I = ħ(N + 1)/2`, and
//! the phase `φ` plays the role of time. `-J1` is the energy-like variable,
//! so that `∂S/∂(-J1) = φ`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::engine::{
    airy_amplitude, airy_argument, branch_amplitude, regime_select, Branch, Interval, QuantizationSpec, Regime,
    TurningPoint,
};
use crate::error::{positive, Error, Result};
use crate::harmonic::Sign;
use crate::specfun::beam_splitter_amplitude_exact;

/// A value on the integer or half-integer lattice, stored as twice itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfInt(i64);

impl HalfInt {
    pub const fn from_twice(twice: i64) -> Self {
        Self(twice)
    }

    pub const fn from_int(v: i64) -> Self {
        Self(2 * v)
    }

    pub const fn twice(self) -> i64 {
        self.0
    }

    pub fn value(self) -> f64 {
        self.0 as f64 / 2.0
    }

    pub const fn abs(self) -> Self {
        Self(self.0.abs())
    }

    /// Valid as a quantum number `m ∈ {-N/2, ..., N/2}` for `N` photons.
    pub fn check_lattice(self, n: u32) -> Result<()> {
        let n2 = i64::from(n);
        if self.0.abs() > n2 {
            return Err(Error::OutOfRange { n, twice_m: self.0 });
        }
        if (n2 - self.0) % 2 != 0 {
            return Err(Error::ParityMismatch { n, twice_m: self.0 });
        }
        Ok(())
    }

    /// Photon count `N/2 + m` in the first mode. Assumes a valid lattice value.
    pub(crate) fn photons_first(self, n: u32) -> u32 {
        ((i64::from(n) + self.0) / 2) as u32
    }

    /// `N/2 - m` as an integer. Assumes a valid lattice value.
    pub fn pairs_below(self, n: u32) -> i64 {
        (i64::from(n) - self.0) / 2
    }
}

impl std::ops::Neg for HalfInt {
    type Output = Self;
    fn neg(self) -> Self {
        Self(-self.0)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl FromStr for HalfInt {
    type Err = Error;

    /// Accepts `3`, `-1.5` or `-3/2`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Domain(format!("'{s}' is not an integer or half-integer"));
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            let num: i64 = num.trim().parse().map_err(|_| bad())?;
            return match den.trim() {
                "1" => Ok(Self(2 * num)),
                "2" => Ok(Self(num)),
                _ => Err(bad()),
            };
        }
        let v: f64 = s.parse().map_err(|_| bad())?;
        let twice = 2.0 * v;
        if !twice.is_finite() || twice.fract() != 0.0 || twice.abs() > 1e15 {
            return Err(bad());
        }
        Ok(Self(twice as i64))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoModeConfig {
    pub photons: u32,
    pub hbar: f64,
}

impl TwoModeConfig {
    pub fn new(photons: u32, hbar: f64) -> Result<Self> {
        if photons == 0 {
            return Err(Error::Domain("at least one photon is required".into()));
        }
        positive("hbar", hbar)?;
        Ok(Self { photons, hbar })
    }

    /// Sphere radius `I = ħ(N + 1)/2`.
    pub fn radius(&self) -> f64 {
        self.hbar * (f64::from(self.photons) + 1.0) / 2.0
    }

    /// All quantum numbers `-N/2, -N/2 + 1, ..., N/2`.
    pub fn lattice(&self) -> Vec<HalfInt> {
        let n = i64::from(self.photons);
        (0..=n).map(|i| HalfInt::from_twice(-n + 2 * i)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinPoint {
    pub j1: f64,
    pub j2: f64,
}

impl SpinPoint {
    pub fn from_quantum(m1: HalfInt, m2: HalfInt, cfg: &TwoModeConfig) -> Self {
        Self { j1: cfg.hbar * m1.value(), j2: cfg.hbar * m2.value() }
    }

    pub fn interior(&self, cfg: &TwoModeConfig) -> bool {
        self.j1 * self.j1 + self.j2 * self.j2 < cfg.radius().powi(2)
    }
}

fn ratio_acos(num: f64, den_sq: f64) -> f64 {
    (num / den_sq.sqrt()).clamp(-1.0, 1.0).acos()
}

/// Arrival phase `±arccos(J2 / sqrt(I² - J1²)) + 2π n_cycle`.
pub fn arrival_phase(p: &SpinPoint, cfg: &TwoModeConfig, sign: Sign, n_cycle: i32) -> Result<f64> {
    if !p.interior(cfg) {
        return Err(Error::Forbidden { b: p.j2, e: p.j1 });
    }
    let i2 = cfg.radius().powi(2);
    Ok(sign.value() * ratio_acos(p.j2, i2 - p.j1 * p.j1) + 2.0 * PI * f64::from(n_cycle))
}

fn action_plus_unchecked(j1: f64, j2: f64, cfg: &TwoModeConfig) -> f64 {
    let i = cfg.radius();
    let i2 = i * i;
    -j1 * ratio_acos(j2, i2 - j1 * j1) - j2 * ratio_acos(j1, i2 - j2 * j2)
        + i * ratio_acos(j1 * j2, (i2 - j1 * j1) * (i2 - j2 * j2))
        - PI * cfg.hbar / 4.0
}

/// Branch action, symmetric under `J1 ↔ J2`. Defined up to and including the
/// turning-point circle `J1² + J2² = I²`.
pub fn action_jact(p: &SpinPoint, cfg: &TwoModeConfig, sign: Sign) -> Result<f64> {
    let i2 = cfg.radius().powi(2);
    if p.j1 * p.j1 + p.j2 * p.j2 > i2 {
        return Err(Error::Forbidden { b: p.j2, e: p.j1 });
    }
    Ok(sign.value() * action_plus_unchecked(p.j1, p.j2, cfg))
}

/// Two-mode arrival branch for the engine: observable `J2`, energy `-J1`.
#[derive(Debug, Clone, Copy)]
pub struct TwoModeBranch {
    pub sign: Sign,
    pub cfg: TwoModeConfig,
}

impl Branch for TwoModeBranch {
    fn index(&self) -> i32 {
        if self.sign == Sign::Plus {
            0
        } else {
            1
        }
    }

    fn arrival_time(&self, b: f64, e: f64) -> f64 {
        let j1 = -e;
        self.sign.value() * ratio_acos(b, self.cfg.radius().powi(2) - j1 * j1)
    }

    fn action(&self, b: f64, e: f64) -> f64 {
        self.sign.value() * action_plus_unchecked(-e, b, &self.cfg)
    }

    fn contains(&self, b: f64, e: f64) -> bool {
        SpinPoint { j1: -e, j2: b }.interior(&self.cfg)
    }

    fn mixed_derivative(&self, b: f64, e: f64) -> f64 {
        let rest = self.cfg.radius().powi(2) - e * e - b * b;
        -self.sign.value() / rest.sqrt()
    }
}

pub fn branches(cfg: &TwoModeConfig) -> [TwoModeBranch; 2] {
    [TwoModeBranch { sign: Sign::Plus, cfg: *cfg }, TwoModeBranch { sign: Sign::Minus, cfg: *cfg }]
}

/// Turning point met when `J1` grows towards `R = sqrt(I² - J2²)` at fixed
/// `J2 > 0`. In the engine's variables `E = -J1` and `V = -R`.
fn patch_model(j2: f64, cfg: &TwoModeConfig) -> Option<TurningPoint> {
    if j2 <= 0.0 {
        return None;
    }
    let r = (cfg.radius().powi(2) - j2 * j2).sqrt();
    TurningPoint::new(-r, 2.0 * r / (j2 * j2), j2 / r).ok()
}

/// Airy argument of the patch along `J1` at fixed `J2`, for `J1, J2 ≥ 0`.
/// `None` when `J2 = 0`, where no turning point is reachable.
pub fn patch_argument(m2: HalfInt, m1: HalfInt, cfg: &TwoModeConfig) -> Option<f64> {
    let p = SpinPoint::from_quantum(m1.abs(), m2.abs(), cfg);
    patch_model(p.j2, cfg).map(|tp| airy_argument(-p.j1, &tp, cfg.hbar))
}

fn check(m2: HalfInt, m1: HalfInt, cfg: &TwoModeConfig) -> Result<()> {
    m1.check_lattice(cfg.photons)?;
    m2.check_lattice(cfg.photons)
}

/// Regime used by [`inner_product`].
pub fn regime(m2: HalfInt, m1: HalfInt, cfg: &TwoModeConfig) -> Result<Regime> {
    check(m2, m1, cfg)?;
    let p = SpinPoint::from_quantum(m1.abs(), m2.abs(), cfg);
    Ok(match patch_model(p.j2, cfg) {
        Some(tp) => regime_select(-p.j1, &tp, cfg.hbar),
        None => Regime::SeparatedBranches,
    })
}

fn parity_sign(k: i64) -> f64 {
    if k.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Semiclassical amplitude `<m2|m1>`.
///
/// The first quadrant `m1, m2 ≥ 0` is computed directly. The other quadrants
/// follow from the reflections `S(-J1) = πħ(N/2 - m2) - S(J1)` and its
/// partner in `J2`, applied as signs.
pub fn inner_product(m2: HalfInt, m1: HalfInt, cfg: &TwoModeConfig) -> Result<f64> {
    check(m2, m1, cfg)?;
    let p = SpinPoint::from_quantum(m1.abs(), m2.abs(), cfg);
    let q = QuantizationSpec { delta_e: cfg.hbar, delta_b: Interval::Discrete(cfg.hbar) };
    let value = match patch_model(p.j2, cfg) {
        Some(tp) if regime_select(-p.j1, &tp, cfg.hbar) == Regime::AiryPatch => {
            airy_amplitude(-p.j1, &tp, &q, cfg.hbar)?
        }
        _ => {
            let [plus, minus] = branches(cfg);
            branch_amplitude(&[&plus, &minus], p.j2, -p.j1, &q, cfg.hbar)?.re
        }
    };
    let mut sign = 1.0;
    if m1.twice() < 0 {
        sign *= parity_sign(m2.pairs_below(cfg.photons));
    }
    if m2.twice() < 0 {
        sign *= parity_sign(m1.abs().pairs_below(cfg.photons));
    }
    Ok(sign * value)
}

/// `|<m2|m1>|²` from [`inner_product`].
pub fn probability(m2: HalfInt, m1: HalfInt, cfg: &TwoModeConfig) -> Result<f64> {
    Ok(inner_product(m2, m1, cfg)?.powi(2))
}

/// Closed-form probability for an output difference of two photons as a
/// function of the input `m1`. Alternates between a rising and a falling
/// profile with the parity of `N/2 - m1`.
pub fn m2one_probability(m1: HalfInt, cfg: &TwoModeConfig) -> Result<f64> {
    if cfg.photons < 2 {
        return Err(Error::Domain("at least two photons are required".into()));
    }
    let r2 = (f64::from(cfg.photons) + 1.0).powi(2) / 4.0;
    let m = m1.value();
    if m * m >= r2 {
        return Err(Error::OutOfRange { n: cfg.photons, twice_m: m1.twice() });
    }
    m1.check_lattice(cfg.photons)?;
    let ratio = m * m / r2;
    let shape = if m1.pairs_below(cfg.photons) % 2 == 0 { ratio } else { 1.0 - ratio };
    Ok(2.0 / PI / (r2 - m * m).sqrt() * shape)
}

/// Semiclassical matrix indexed `[m2][m1]` over the lattice.
pub fn semiclassical_matrix(cfg: &TwoModeConfig) -> Result<Vec<Vec<f64>>> {
    let lat = cfg.lattice();
    lat.iter().map(|&m2| lat.iter().map(|&m1| inner_product(m2, m1, cfg)).collect()).collect()
}

/// Exact matrix indexed `[m2][m1]` over the lattice.
pub fn exact_matrix(cfg: &TwoModeConfig) -> Result<Vec<Vec<f64>>> {
    let lat = cfg.lattice();
    lat.iter().map(|&m2| lat.iter().map(|&m1| beam_splitter_amplitude_exact(cfg.photons, m1, m2)).collect()).collect()
}

/// True when the column `m1` stays clear of the turning-point region in both
/// patch orientations at its central entry.
pub fn interior_column(m1: HalfInt, cfg: &TwoModeConfig) -> bool {
    let central = HalfInt::from_twice(i64::from(cfg.photons % 2));
    let clear = |arg: Option<f64>| arg.is_none_or(|a| a < crate::engine::CROSSOVER_ARGUMENT);
    clear(patch_argument(central, m1, cfg)) && clear(patch_argument(m1, central, cfg))
}

/// `max |MᵀM - 1|` over the given columns of `m` (indexed `[row][col]`).
pub fn orthogonality_defect(m: &[Vec<f64>], columns: &[usize]) -> f64 {
    let mut worst: f64 = 0.0;
    for &a in columns {
        for &b in columns {
            let dot: f64 = m.iter().map(|row| row[a] * row[b]).sum();
            let target = if a == b { 1.0 } else { 0.0 };
            worst = worst.max((dot - target).abs());
        }
    }
    worst
}
