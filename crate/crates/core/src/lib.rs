//! Quantum probability amplitudes rebuilt from classical energy-time arrival
//! relations.
//!
//! Each arrival branch `t_ν(B, E)` of a deterministic relation `B(t; E)`
//! contributes `A_ν exp(i S_ν/ħ)` to `<b|n>`, where `S_ν` is the energy
//! integral of the arrival time and `A_ν` its van Vleck weight. Near turning
//! points, where two branches merge, an Airy profile takes over.
//!
//! Modules:
//! - [`specfun`]: Airy function plus exact oracles (Hermite eigenfunctions,
//!   beam-splitter amplitudes).
//! - [`engine`]: the system-agnostic machinery.
//! - [`harmonic`]: oscillator eigenfunctions and quadrature photon statistics.
//! - [`twomode`]: N-photon interference at a 50:50 beam splitter.
//! - [`uncertainty`]: calibration of measured expectation values.
//! - [`doubleslit`]: fringe period from two arrival times.

pub mod doubleslit;
pub mod engine;
mod error;
pub mod harmonic;
pub mod specfun;
pub mod twomode;
pub mod uncertainty;

pub use doubleslit::SlitGeometry;
pub use engine::{Branch, BranchContribution, Interval, QuantizationSpec, Regime, TurningPoint};
pub use error::{Error, Result};
pub use harmonic::{HOPoint, OscillatorConfig, Sign};
pub use specfun::PrecisionBudget;
pub use twomode::{HalfInt, SpinPoint, TwoModeConfig};
pub use uncertainty::UncertaintyBudget;
