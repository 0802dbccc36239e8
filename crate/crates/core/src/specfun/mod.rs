//! Special functions and exact oracles.
//!
//! The Airy function feeds the turning-point patch. The Hermite eigenfunctions
//! and beam-splitter amplitudes are exact references that the semiclassical
//! results are checked against.

mod airy;
mod beamsplitter;
mod dd;
mod hermite;

pub(crate) use airy::airy_ai_unchecked;
pub use airy::{airy_ai, airy_ai_reference, AIP_ZERO_NEG, AI_ZERO};
pub use beamsplitter::{beam_splitter_amplitude_exact, ln_binomial, ln_factorial};
pub use hermite::{hermite_phys, ho_eigenfunction_exact};

/// Accuracy target and truncation bound for series evaluations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrecisionBudget {
    pub abs_tol: f64,
    pub max_terms: usize,
}

impl PrecisionBudget {
    pub fn new(abs_tol: f64, max_terms: usize) -> crate::Result<Self> {
        crate::error::positive("abs_tol", abs_tol)?;
        if max_terms == 0 {
            return Err(crate::Error::Domain("max_terms must be at least 1".into()));
        }
        Ok(Self { abs_tol, max_terms })
    }
}

impl Default for PrecisionBudget {
    fn default() -> Self {
        Self { abs_tol: 1e-10, max_terms: 200 }
    }
}
