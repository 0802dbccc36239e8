//! System-agnostic arrival-action engine.
//!
//! A system supplies its arrival-time branches `t_ν(B, E)` together with the
//! actions `S_ν(B, E)` whose energy derivative they are. The engine turns
//! them into amplitudes: van Vleck weights, the branch sum, quantization of
//! the energy, interference periods, and the Airy patch that replaces the
//! two-branch sum near a turning point.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use crate::error::{finite, positive, Error, Result};
use crate::specfun::airy_ai_unchecked;

/// Airy argument at which the separated-branch sum and the Airy profile are
/// stitched together.
pub const CROSSOVER_ARGUMENT: f64 = -1.42;

/// One arrival-time solution of `B(t; E) = B`.
///
/// `action` must be an energy antiderivative of `arrival_time`. Both are only
/// meaningful where `contains` holds.
pub trait Branch: Send + Sync {
    fn index(&self) -> i32;
    fn arrival_time(&self, b: f64, e: f64) -> f64;
    fn action(&self, b: f64, e: f64) -> f64;
    fn contains(&self, b: f64, e: f64) -> bool;

    /// `∂²S/∂B∂E = ∂t/∂B`. The default is a centered difference of the
    /// arrival time; systems with a closed form should override it.
    fn mixed_derivative(&self, b: f64, e: f64) -> f64 {
        let h = fd_step(b);
        (self.arrival_time(b + h, e) - self.arrival_time(b - h, e)) / (2.0 * h)
    }
}

/// Step used for finite differences in the observable.
pub fn fd_step(scale: f64) -> f64 {
    (1e-6 * scale.abs()).max(1e-9)
}

/// Quantization interval of the observable, or the density convention.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Interval {
    Discrete(f64),
    /// Continuous observable: the interval is dropped and results are
    /// densities in `B`.
    Continuous,
}

impl Interval {
    fn factor(self) -> f64 {
        match self {
            Interval::Discrete(v) => v,
            Interval::Continuous => 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuantizationSpec {
    pub delta_e: f64,
    pub delta_b: Interval,
}

impl QuantizationSpec {
    pub fn new(delta_e: f64, delta_b: Interval) -> Result<Self> {
        positive("delta_e", delta_e)?;
        if let Interval::Discrete(v) = delta_b {
            positive("delta_b", v)?;
        }
        Ok(Self { delta_e, delta_b })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchContribution {
    pub amplitude: f64,
    pub action: f64,
}

/// Local model of a turning point: `E - V ≈ t²/γ` with threshold `V(B)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TurningPoint {
    pub threshold: f64,
    pub gamma: f64,
    pub dv_db: f64,
}

impl TurningPoint {
    pub fn new(threshold: f64, gamma: f64, dv_db: f64) -> Result<Self> {
        positive("gamma", gamma)?;
        Ok(Self { threshold, gamma, dv_db })
    }

    /// Pair of arrival times `±sqrt(γ (E - V))` implied by the local model.
    pub fn arrival_times(&self, e: f64) -> Option<(f64, f64)> {
        let d = e - self.threshold;
        (d >= 0.0).then(|| {
            let t = (self.gamma * d).sqrt();
            (t, -t)
        })
    }

    /// Action of the `+` branch in the local model, with the turning-point
    /// phase `-πħ/4` included. The `-` branch carries the opposite sign.
    pub fn action_plus(&self, e: f64, hbar: f64) -> Option<f64> {
        let d = e - self.threshold;
        (d >= 0.0).then(|| 2.0 / 3.0 * self.gamma.sqrt() * d.powf(1.5) - PI * hbar / 4.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    SeparatedBranches,
    AiryPatch,
}

impl Regime {
    pub fn tag(self) -> &'static str {
        match self {
            Regime::SeparatedBranches => "separated",
            Regime::AiryPatch => "airy",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Density (or probability, for a discrete observable) weight of one branch.
pub fn van_vleck_amplitude(d2s_dbde: f64, q: &QuantizationSpec, hbar: f64) -> f64 {
    (q.delta_b.factor() / (2.0 * PI * hbar) * d2s_dbde.abs()).sqrt()
}

/// Weight and phase of a branch at `(b, e)`.
pub fn contribution(
    branch: &dyn Branch,
    b: f64,
    e: f64,
    q: &QuantizationSpec,
    hbar: f64,
) -> Result<BranchContribution> {
    if !branch.contains(b, e) {
        return Err(Error::Forbidden { b, e });
    }
    Ok(BranchContribution {
        amplitude: van_vleck_amplitude(branch.mixed_derivative(b, e), q, hbar),
        action: branch.action(b, e),
    })
}

/// `Σ_ν A_ν exp(i S_ν / ħ)`.
pub fn superpose(contribs: &[BranchContribution], hbar: f64) -> Result<Complex64> {
    if contribs.is_empty() {
        return Err(Error::EmptyBranchSet);
    }
    Ok(contribs.iter().map(|c| Complex64::from_polar(c.amplitude, c.action / hbar)).sum())
}

/// Amplitude `<b|n>` from all branches present at `(b, e)`, including the
/// `sqrt(ΔE_Q)` prefactor.
pub fn branch_amplitude(
    branches: &[&dyn Branch],
    b: f64,
    e: f64,
    q: &QuantizationSpec,
    hbar: f64,
) -> Result<Complex64> {
    let contribs = branches
        .iter()
        .filter(|br| br.contains(b, e))
        .map(|br| contribution(*br, b, e, q, hbar))
        .collect::<Result<Vec<_>>>()?;
    Ok(q.delta_e.sqrt() * superpose(&contribs, hbar)?)
}

/// Relative mismatch between a centered difference of the action in energy
/// and the arrival time. The step shrinks until both stencil points lie in
/// the branch domain.
pub fn action_time_residual(branch: &dyn Branch, b: f64, e: f64) -> Result<f64> {
    if !branch.contains(b, e) {
        return Err(Error::Forbidden { b, e });
    }
    let mut h = 1e-5 * e.abs().max(1e-3);
    while !(branch.contains(b, e - h) && branch.contains(b, e + h)) {
        h *= 0.5;
        if h < 1e-12 * e.abs().max(1.0) {
            return Err(Error::Domain(format!("no finite-difference stencil fits inside the branch at ({b}, {e})")));
        }
    }
    let fd = (branch.action(b, e + h) - branch.action(b, e - h)) / (2.0 * h);
    let t = branch.arrival_time(b, e);
    Ok((fd - t).abs() / t.abs().max(1e-12))
}

/// Energy spacing `2πħ/T` enforced by recurrence with period `T`.
pub fn quantization_interval(period: f64, hbar: f64) -> Result<f64> {
    positive("period", period)?;
    Ok(2.0 * PI * hbar / period)
}

/// Solves `action_diff(E_n) = πħ(n + 1/2)` for `n = 0..=n_max` by bisection.
///
/// `action_diff` is the difference of the `+` branch action between the two
/// turning points and has to increase monotonically on the bracket.
/// Monotonicity is checked on a 64-point grid before any root is sought.
pub fn quantized_energies<F>(action_diff: F, n_max: usize, bracket: (f64, f64), hbar: f64) -> Result<Vec<f64>>
where
    F: Fn(f64) -> f64,
{
    let (lo, hi) = bracket;
    finite("bracket.0", lo)?;
    finite("bracket.1", hi)?;
    if lo >= hi {
        return Err(Error::Domain(format!("empty bracket [{lo}, {hi}]")));
    }
    const GRID: usize = 64;
    let mut prev = action_diff(lo);
    for i in 1..=GRID {
        let e = lo + (hi - lo) * i as f64 / GRID as f64;
        let v = action_diff(e);
        if v.partial_cmp(&prev) != Some(std::cmp::Ordering::Greater) {
            return Err(Error::NotMonotone { lo, hi });
        }
        prev = v;
    }

    (0..=n_max)
        .map(|n| {
            let target = PI * hbar * (n as f64 + 0.5);
            let g = |e: f64| action_diff(e) - target;
            let (mut a, mut b) = (lo, hi);
            if g(a) > 0.0 || g(b) < 0.0 {
                return Err(Error::RootNotBracketed { level: n, lo, hi });
            }
            for _ in 0..200 {
                let mid = 0.5 * (a + b);
                if mid <= a || mid >= b {
                    break;
                }
                if g(mid) < 0.0 {
                    a = mid;
                } else {
                    b = mid;
                }
            }
            Ok(0.5 * (a + b))
        })
        .collect()
}

/// Energy period `2πħ/|t2 - t1|` of the fringes from two arrival times.
pub fn modulation_period(t1: f64, t2: f64, hbar: f64) -> Result<f64> {
    let dt = (t2 - t1).abs();
    if dt == 0.0 || !dt.is_finite() {
        return Err(Error::MergedBranches { t: t1 });
    }
    Ok(2.0 * PI * hbar / dt)
}

/// Two equal-weight branches: `2 ΔE_Q A² (1 + cos((S2 - S1)/ħ))`.
pub fn interference_probability(a: f64, s1: f64, s2: f64, delta_e: f64, hbar: f64) -> f64 {
    2.0 * delta_e * a * a * (1.0 + ((s2 - s1) / hbar).cos())
}

/// Dimensionless Airy argument `-(γ/ħ²)^(1/3) (E - V)`.
pub fn airy_argument(e: f64, tp: &TurningPoint, hbar: f64) -> f64 {
    -(tp.gamma / (hbar * hbar)).cbrt() * (e - tp.threshold)
}

/// Airy profile `sqrt(ρ_N) Ai(...)` that replaces the two-branch sum near a
/// turning point.
pub fn airy_amplitude(e: f64, tp: &TurningPoint, q: &QuantizationSpec, hbar: f64) -> Result<f64> {
    positive("gamma", tp.gamma)?;
    let scale = (tp.gamma / (hbar * hbar)).cbrt();
    let rho = q.delta_e * q.delta_b.factor() * scale * scale * tp.dv_db.abs();
    Ok(rho.sqrt() * airy_ai_unchecked(airy_argument(e, tp, hbar)))
}

/// Classification of an Airy argument: the patch applies strictly above the
/// crossover.
pub fn regime_for_argument(arg: f64) -> Regime {
    if arg > CROSSOVER_ARGUMENT {
        Regime::AiryPatch
    } else {
        Regime::SeparatedBranches
    }
}

/// `AiryPatch` iff `E < V + 1.42 (ħ²/γ)^(1/3)`.
pub fn regime_select(e: f64, tp: &TurningPoint, hbar: f64) -> Regime {
    let edge = tp.threshold - CROSSOVER_ARGUMENT * (hbar * hbar / tp.gamma).cbrt();
    if e < edge {
        Regime::AiryPatch
    } else {
        Regime::SeparatedBranches
    }
}

/// The two local-model branches of a turning point, summed with the engine.
///
/// Used to compare the separated form with the Airy profile at the stitch.
pub fn turning_point_branch_sum(e: f64, tp: &TurningPoint, q: &QuantizationSpec, hbar: f64) -> Result<f64> {
    let (t, _) = tp.arrival_times(e).ok_or(Error::Forbidden { b: tp.threshold, e })?;
    let s = tp.action_plus(e, hbar).ok_or(Error::Forbidden { b: tp.threshold, e })?;
    // t² = γ(E - V) with dE/dB = dV/dB at fixed t gives ∂t/∂B = -γ V'/(2t).
    let dt_db = tp.gamma * tp.dv_db / (2.0 * t);
    let a = van_vleck_amplitude(dt_db, q, hbar);
    let contribs = [BranchContribution { amplitude: a, action: s }, BranchContribution { amplitude: a, action: -s }];
    Ok(q.delta_e.sqrt() * superpose(&contribs, hbar)?.re)
}
