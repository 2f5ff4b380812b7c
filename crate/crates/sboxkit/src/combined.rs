//! Boomerang and differential-linear tables and uniformities.

use crate::ratio::Ratio;
use crate::sbox::{dot, SBox};
use crate::spectral::{autocorrelation_table, SpectrumKind, SpectrumTable};
use crate::{Error, Result};

/// Boomerang analysis is cubic in the table size; widths above 8 are
/// rejected by policy.
pub const MAX_BCT_WIDTH: u32 = 8;

fn check_bct_pre(s: &SBox) -> Result<()> {
    if !s.is_bijective() {
        return Err(Error::NotBijective);
    }
    if s.n() > MAX_BCT_WIDTH {
        return Err(Error::WidthPolicy {
            n: s.n(),
            limit: MAX_BCT_WIDTH,
        });
    }
    Ok(())
}

/// Boomerang connectivity table.
///
/// Uses the reformulation bct(dx, nabla) = #{x : g(x) = g(x xor dx)} with
/// g(x) = x xor S^-1(S(x) xor nabla): entries are accumulated by pairing
/// inputs inside each level set of g, which avoids the literal triple loop.
pub fn bct(s: &SBox) -> Result<SpectrumTable> {
    check_bct_pre(s)?;
    let size = s.len();
    let inverse = s.inverse()?;
    let mut table = SpectrumTable::zeroed(SpectrumKind::Bct, size, size);
    let mut buckets: Vec<Vec<u32>> = vec![Vec::new(); size];
    for nabla in 0..size as u32 {
        for b in buckets.iter_mut() {
            b.clear();
        }
        for x in 0..size as u32 {
            let g = x ^ inverse.eval(s.eval(x) ^ nabla);
            buckets[g as usize].push(x);
        }
        for bucket in &buckets {
            for &x in bucket {
                for &y in bucket {
                    table.add(x ^ y, nabla, 1);
                }
            }
        }
    }
    Ok(table)
}

/// Boomerang connectivity table by the literal triple loop. Oracle path.
pub fn bct_naive(s: &SBox) -> Result<SpectrumTable> {
    check_bct_pre(s)?;
    let size = s.len();
    let inverse = s.inverse()?;
    let mut table = SpectrumTable::zeroed(SpectrumKind::Bct, size, size);
    for dx in 0..size as u32 {
        for nabla in 0..size as u32 {
            let count = (0..size as u32)
                .filter(|&x| {
                    inverse.eval(s.eval(x) ^ nabla) ^ inverse.eval(s.eval(x ^ dx) ^ nabla) == dx
                })
                .count();
            table.set(dx, nabla, count as i32);
        }
    }
    Ok(table)
}

/// Maximum BCT entry over nonzero difference pairs.
pub fn boomerang_uniformity(s: &SBox) -> Result<u32> {
    let table = bct(s)?;
    let mut max = 0;
    for dx in 1..table.rows() as u32 {
        for nabla in 1..table.cols() as u32 {
            max = max.max(table.entry(dx, nabla));
        }
    }
    Ok(max as u32)
}

/// dlct(dx, rho) = #{x : rho.S(x) = rho.S(x xor dx)} - 2^{n-1}; exactly
/// half the ACT entrywise.
pub fn dlct(s: &SBox) -> Result<SpectrumTable> {
    let act = autocorrelation_table(s)?;
    let mut table = SpectrumTable::zeroed(SpectrumKind::Dlct, act.rows(), act.cols());
    for dx in 0..act.rows() as u32 {
        for rho in 0..act.cols() as u32 {
            let v = act.entry(dx, rho);
            debug_assert_eq!(v % 2, 0);
            table.set(dx, rho, v / 2);
        }
    }
    Ok(table)
}

/// DLCT by direct counting. Oracle path.
pub fn dlct_naive(s: &SBox) -> Result<SpectrumTable> {
    let rows = s.len();
    let cols = 1usize << s.m();
    let half = (rows / 2) as i32;
    let mut table = SpectrumTable::zeroed(SpectrumKind::Dlct, rows, cols);
    for dx in 0..rows as u32 {
        for rho in 0..cols as u32 {
            let count: i32 = (0..rows as u32)
                .filter(|&x| dot(rho, s.eval(x)) == dot(rho, s.eval(x ^ dx)))
                .count() as i32;
            table.set(dx, rho, count - half);
        }
    }
    Ok(table)
}

/// Differential-linear uniformity: the maximum |DLCT| over nonzero cells,
/// plus the normalized ratio published in comparative tables
/// (max |DLCT| / 2^n, conventionally printed with denominator 2^{n-1}
/// after halving the numerator).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DlUniformity {
    pub abs: u32,
    pub signed_max: i32,
    pub normalized: Ratio,
}

pub fn differential_linear_uniformity(s: &SBox) -> Result<DlUniformity> {
    let table = dlct(s)?;
    let mut abs = 0i32;
    let mut signed_max = i32::MIN;
    for dx in 1..table.rows() as u32 {
        for rho in 1..table.cols() as u32 {
            let v = table.entry(dx, rho);
            abs = abs.max(v.abs());
            signed_max = signed_max.max(v);
        }
    }
    Ok(DlUniformity {
        abs: abs as u32,
        signed_max,
        normalized: Ratio::new(abs as i64, s.len() as i64),
    })
}
