use std::f64::consts::PI;

use crate::harmonic::OscillatorConfig;

/// Physicists' Hermite polynomial `H_n(x)` by upward recurrence.
pub fn hermite_phys(n: u32, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 2.0 * x;
    for j in 1..n {
        let next = 2.0 * x * cur - 2.0 * f64::from(j) * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Normalized oscillator eigenfunction for mass `k/ω²` and spring constant `k`.
///
/// Uses the orthonormal recurrence in `ξ = sqrt(k/ħω)·x`, which never forms
/// `H_n` or `n!` explicitly and so stays finite for large `n`.
pub fn ho_eigenfunction_exact(n: u32, x: f64, cfg: &OscillatorConfig) -> f64 {
    let scale = cfg.k / (cfg.hbar * cfg.omega);
    let xi = scale.sqrt() * x;
    let mut prev = (scale / PI).powf(0.25) * (-0.5 * xi * xi).exp();
    if n == 0 {
        return prev;
    }
    let mut cur = 2f64.sqrt() * xi * prev;
    for j in 1..n {
        let j = f64::from(j);
        let next = (2.0 / (j + 1.0)).sqrt() * xi * cur - (j / (j + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
    }
    cur
}
