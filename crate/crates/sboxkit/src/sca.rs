//! Side-channel design metrics: DPA signal-to-noise ratio and
//! transparency order. Both are computed from exact integer spectra;
//! floating point enters only in the final root and division.

use crate::sbox::SBox;
use crate::spectral::{autocorrelation_table, walsh_spectrum};
use crate::Result;

/// DPA signal-to-noise ratio:
/// m * 2^{2n} * ( sum_a ( sum_{j} W(e_j, a) )^4 )^{-1/2},
/// the inner sum running over the m single-bit output masks.
///
/// Returns +infinity when the quartic sum is zero (degenerate maps).
pub fn dpa_snr(s: &SBox) -> Result<f64> {
    let walsh = walsh_spectrum(s)?;
    let mut quartic: u128 = 0;
    for a in 0..s.len() as u32 {
        let inner: i64 = (0..s.m()).map(|j| walsh.entry(1 << j, a) as i64).sum();
        let sq = (inner * inner) as u128;
        quartic += sq * sq;
    }
    if quartic == 0 {
        return Ok(f64::INFINITY);
    }
    let scale = s.m() as f64 * (s.len() as f64) * (s.len() as f64);
    Ok(scale / (quartic as f64).sqrt())
}

/// Transparency order (subtraction form):
/// max_beta ( |m - 2 wt(beta)|
///            - 1/(2^{2n} - 2^n) * sum_{gamma != 0}
///              | sum_{j} (-1)^{e_j . beta} ACT(gamma, e_j) | ).
pub fn transparency_order(s: &SBox) -> Result<f64> {
    let act = autocorrelation_table(s)?;
    let size = s.len() as i64;
    let denominator = (size * size - size) as f64;
    let mut best = f64::NEG_INFINITY;
    for beta in 0..1u32 << s.m() {
        let mut total: i64 = 0;
        for gamma in 1..s.len() as u32 {
            let inner: i64 = (0..s.m())
                .map(|j| {
                    let sign = if beta >> j & 1 == 0 { 1 } else { -1 };
                    sign * act.entry(gamma, 1 << j) as i64
                })
                .sum();
            total += inner.abs();
        }
        let value = (s.m() as i64 - 2 * beta.count_ones() as i64).abs() as f64
            - total as f64 / denominator;
        best = best.max(value);
    }
    Ok(best)
}
