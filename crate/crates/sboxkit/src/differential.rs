//! Differential-cryptanalysis metrics: DDT, differential uniformity,
//! differential branch number, propagation criteria, undisturbed bits.

use crate::sbox::SBox;
use crate::spectral::{autocorrelation_table, SpectrumKind, SpectrumTable};
use crate::{Error, Result};

/// ddt(dx, dy) = #{x : S(x xor dx) xor S(x) = dy}.
pub fn ddt(s: &SBox) -> Result<SpectrumTable> {
    let rows = s.len();
    let cols = 1usize << s.m();
    let mut table = SpectrumTable::zeroed(SpectrumKind::Ddt, rows, cols);
    for dx in 0..rows as u32 {
        for x in 0..rows as u32 {
            table.add(dx, s.eval(x ^ dx) ^ s.eval(x), 1);
        }
    }
    Ok(table)
}

/// Maximum DDT entry over dx != 0.
pub fn differential_uniformity(s: &SBox) -> Result<u32> {
    let table = ddt(s)?;
    let mut max = 0;
    for dx in 1..table.rows() {
        for &v in table.row_slice(dx) {
            max = max.max(v);
        }
    }
    Ok(max as u32)
}

/// Minimum wt(dx) + wt(dy) over feasible nonzero differentials.
pub fn differential_branch_number(s: &SBox) -> Result<u32> {
    if s.n() != s.m() {
        return Err(Error::NotSquare { n: s.n(), m: s.m() });
    }
    let table = ddt(s)?;
    let mut best = u32::MAX;
    for dx in 1..table.rows() as u32 {
        for dy in 0..table.cols() as u32 {
            if table.entry(dx, dy) > 0 {
                best = best.min(dx.count_ones() + dy.count_ones());
            }
        }
    }
    Ok(best)
}

/// Largest l such that every derivative direction of weight 1..=l is
/// balanced, read off the ACT zeros.
pub fn propagation_criteria_order(s: &SBox) -> Result<u32> {
    let act = autocorrelation_table(s)?;
    let mut order = 0;
    for l in 1..=s.n() {
        let ok = (1..act.rows() as u32)
            .filter(|gamma| (1..=l).contains(&gamma.count_ones()))
            .all(|gamma| (1..act.cols() as u32).all(|rho| act.entry(gamma, rho) == 0));
        if ok {
            order = l;
        } else {
            break;
        }
    }
    Ok(order)
}

/// One undisturbed bit: for input difference `delta_in`, output-difference
/// bit `bit` equals `value` across every reachable output difference.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct UndisturbedBit {
    pub delta_in: u32,
    pub bit: u32,
    pub value: u8,
}

/// Undisturbed bits in the input-difference -> output-bits direction.
pub fn undisturbed_bits(s: &SBox) -> Result<Vec<UndisturbedBit>> {
    let table = ddt(s)?;
    let mut witnesses = Vec::new();
    for delta_in in 1..table.rows() as u32 {
        // AND / OR across reachable output differences per bit
        let mut all_ones = (1u32 << s.m()) - 1;
        let mut any_ones = 0u32;
        for dy in 0..table.cols() as u32 {
            if table.entry(delta_in, dy) > 0 {
                all_ones &= dy;
                any_ones |= dy;
            }
        }
        for bit in 0..s.m() {
            if all_ones >> bit & 1 == 1 {
                witnesses.push(UndisturbedBit { delta_in, bit, value: 1 });
            } else if any_ones >> bit & 1 == 0 {
                witnesses.push(UndisturbedBit { delta_in, bit, value: 0 });
            }
        }
    }
    Ok(witnesses)
}

/// Undisturbed bits of the inverse S-box as well, for callers that want
/// both directions.
pub fn undisturbed_bits_bidirectional(s: &SBox) -> Result<(Vec<UndisturbedBit>, Vec<UndisturbedBit>)> {
    let forward = undisturbed_bits(s)?;
    let backward = undisturbed_bits(&s.inverse()?)?;
    Ok((forward, backward))
}
