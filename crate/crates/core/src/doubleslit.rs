//! Double slit run backwards in time.
//!
//! A uniform force `F` along the screen maps screen position to energy,
//! `E = F x`. The two slits are then reached at the arrival times
//! `t_± = ±d p0 / (2 L F)`, and their energy-independent difference fixes the
//! fringe period on the screen.

use crate::engine::modulation_period;
use crate::error::{positive, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlitGeometry {
    pub d: f64,
    pub l: f64,
    pub p0: f64,
    pub f: f64,
}

impl SlitGeometry {
    pub fn new(d: f64, l: f64, p0: f64, f: f64) -> Result<Self> {
        positive("d", d)?;
        positive("L", l)?;
        positive("p0", p0)?;
        positive("F", f)?;
        Ok(Self { d, l, p0, f })
    }
}

/// `(t_+, t_-)`.
pub fn arrival_times(g: &SlitGeometry) -> (f64, f64) {
    let t = g.d * g.p0 / (2.0 * g.l * g.f);
    (t, -t)
}

/// Fringe period `(2πħ/p0)(L/d)`.
pub fn fringe_period(g: &SlitGeometry, hbar: f64) -> f64 {
    2.0 * std::f64::consts::PI * hbar / g.p0 * (g.l / g.d)
}

/// The same period obtained from the arrival-time difference through the
/// energy modulation period and `E = F x`.
pub fn fringe_period_from_arrival_times(g: &SlitGeometry, hbar: f64) -> Result<f64> {
    let (tp, tm) = arrival_times(g);
    Ok(modulation_period(tm, tp, hbar)? / g.f)
}
