use crate::error::Result;
use crate::twomode::HalfInt;

/// `ln(n!)` by direct summation. Relative error grows like `n·ε`, which is
/// ~1e-14 for the photon numbers used here.
pub fn ln_factorial(n: u32) -> f64 {
    (2..=n).map(|k| f64::from(k).ln()).sum()
}

/// `ln C(n, k)`; `-inf` when `k > n`.
pub fn ln_binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k)
}

/// Exact binomial coefficient, `None` on overflow.
fn binomial_u128(n: u32, k: u32) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut c: u128 = 1;
    for i in 0..k {
        c = c.checked_mul(u128::from(n - i))? / u128::from(i + 1);
    }
    Some(c)
}

/// Routing sum `Σ_i C(p,i) C(q,r-i) (-1)^(q-r+i)` in exact integers.
fn routing_sum_exact(p: u32, q: u32, r: u32) -> Option<i128> {
    let mut sum: i128 = 0;
    for i in r.saturating_sub(q)..=p.min(r) {
        let j = r - i;
        let term = i128::try_from(binomial_u128(p, i)?.checked_mul(binomial_u128(q, j)?)?).ok()?;
        sum = if (q - j).is_multiple_of(2) { sum.checked_add(term)? } else { sum.checked_sub(term)? };
    }
    Some(sum)
}

/// Same sum with log-space terms and sign tracking, for photon numbers
/// beyond the reach of 128-bit integers. Returned as `(ln|sum|, sign)`.
fn routing_sum_float(p: u32, q: u32, r: u32) -> (f64, f64) {
    let lo = r.saturating_sub(q);
    let hi = p.min(r);
    let logs: Vec<(f64, f64)> = (lo..=hi)
        .map(|i| {
            let j = r - i;
            let sign = if (q - j).is_multiple_of(2) { 1.0 } else { -1.0 };
            (ln_binomial(p, i) + ln_binomial(q, j), sign)
        })
        .collect();
    let peak = logs.iter().map(|l| l.0).fold(f64::NEG_INFINITY, f64::max);
    let scaled: f64 = logs.iter().map(|(l, s)| s * (l - peak).exp()).sum();
    (peak + scaled.abs().ln(), scaled.signum())
}

/// Exact output amplitude `<m2|m1>` of a 50:50 beam splitter.
///
/// Input modes hold `p = N/2 + m1` and `q = N/2 - m1` photons. The creation
/// operators map as `a1† -> (b1† + b2†)/√2` and `a2† -> (b1† - b2†)/√2`, and
/// the amplitude for `r = N/2 + m2` photons in the first output sums over
/// how many of them came from the first input:
///
/// `sqrt(r! s! / (p! q! 2^N)) Σ_i C(p,i) C(q,r-i) (-1)^(q-r+i)`
///
/// The alternating sum cancels heavily, so it is formed in exact integer
/// arithmetic while it fits (all `N ≤ 100`). The normalization prefactor is
/// taken in log space.
pub fn beam_splitter_amplitude_exact(n: u32, m1: HalfInt, m2: HalfInt) -> Result<f64> {
    m1.check_lattice(n)?;
    m2.check_lattice(n)?;
    let p = m1.photons_first(n);
    let q = n - p;
    let r = m2.photons_first(n);
    let s = n - r;
    let prefactor = 0.5 * (ln_factorial(r) + ln_factorial(s) - ln_factorial(p) - ln_factorial(q))
        - 0.5 * f64::from(n) * std::f64::consts::LN_2;
    let (ln_sum, sign) = match routing_sum_exact(p, q, r) {
        Some(0) => return Ok(0.0),
        Some(v) => ((v.unsigned_abs() as f64).ln(), v.signum() as f64),
        None => routing_sum_float(p, q, r),
    };
    Ok(sign * (ln_sum + prefactor).exp())
}
