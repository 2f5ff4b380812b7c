//! Walsh spectrum, autocorrelation transform and algebraic normal form,
//! each with a fast butterfly path and a naive definitional path, plus the
//! scalar indicators derived from them.
//!
//! Convention used everywhere downstream: `walsh.entry(gamma, rho)` is
//! `sum_x (-1)^{gamma.S(x) xor rho.x}` with `gamma` masking the output and
//! `rho` masking the input.

use crate::sbox::{dot, BooleanComponent, SBox};
use crate::{Error, Result};

/// Widths above this would need multi-gigabyte spectrum tables.
pub const MAX_TABLE_WIDTH: u32 = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumKind {
    Walsh,
    Act,
    LatRaw,
    LatCentered,
    Ddt,
    Bct,
    Dlct,
}

/// Dense signed-integer table indexed by a (row mask, column mask) pair.
///
/// The axis meaning depends on the producer: Walsh rows are output masks,
/// ACT/DDT/BCT/DLCT rows are input differences, LAT rows are input masks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumTable {
    pub kind: SpectrumKind,
    rows: usize,
    cols: usize,
    entries: Vec<i32>,
}

impl SpectrumTable {
    pub(crate) fn zeroed(kind: SpectrumKind, rows: usize, cols: usize) -> Self {
        SpectrumTable {
            kind,
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn entry(&self, row: u32, col: u32) -> i32 {
        self.entries[row as usize * self.cols + col as usize]
    }

    #[inline]
    pub(crate) fn set(&mut self, row: u32, col: u32, value: i32) {
        self.entries[row as usize * self.cols + col as usize] = value;
    }

    #[inline]
    pub(crate) fn add(&mut self, row: u32, col: u32, value: i32) {
        self.entries[row as usize * self.cols + col as usize] += value;
    }

    pub fn row_slice(&self, row: usize) -> &[i32] {
        &self.entries[row * self.cols..(row + 1) * self.cols]
    }

    pub(crate) fn row_slice_mut(&mut self, row: usize) -> &mut [i32] {
        &mut self.entries[row * self.cols..(row + 1) * self.cols]
    }

    /// Maximum absolute entry over rows != 0 and cols != 0.
    pub fn max_abs_nontrivial(&self) -> i32 {
        let mut max = 0;
        for r in 1..self.rows {
            for &v in &self.row_slice(r)[1..] {
                max = max.max(v.abs());
            }
        }
        max
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for r in 0..self.rows {
            let row: Vec<String> = self.row_slice(r).iter().map(|v| v.to_string()).collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

fn check_width(s: &SBox) -> Result<()> {
    if s.n() > MAX_TABLE_WIDTH || s.m() > MAX_TABLE_WIDTH {
        return Err(Error::WidthPolicy {
            n: s.n().max(s.m()),
            limit: MAX_TABLE_WIDTH,
        });
    }
    Ok(())
}

/// In-place Walsh–Hadamard butterfly.
pub fn fwht(data: &mut [i32]) {
    let mut step = 1;
    while step < data.len() {
        for block in (0..data.len()).step_by(2 * step) {
            for i in block..block + step {
                let (a, b) = (data[i], data[i + step]);
                data[i] = a + b;
                data[i + step] = a - b;
            }
        }
        step *= 2;
    }
}

/// Signs `(-1)^{mask.S(x)}` of one component, as a +-1 vector.
fn component_signs(s: &SBox, mask: u32) -> Vec<i32> {
    s.table()
        .iter()
        .map(|&y| if dot(mask, y) == 0 { 1 } else { -1 })
        .collect()
}

/// Walsh spectrum via per-component fast Walsh–Hadamard transforms.
/// Row index is the output mask gamma, column index the input mask rho.
pub fn walsh_spectrum(s: &SBox) -> Result<SpectrumTable> {
    check_width(s)?;
    let rows = 1usize << s.m();
    let cols = s.len();
    let mut table = SpectrumTable::zeroed(SpectrumKind::Walsh, rows, cols);
    for gamma in 0..rows {
        let mut signs = component_signs(s, gamma as u32);
        fwht(&mut signs);
        table.row_slice_mut(gamma).copy_from_slice(&signs);
    }
    Ok(table)
}

/// Walsh spectrum by the definitional double sum. Oracle path.
pub fn walsh_spectrum_naive(s: &SBox) -> Result<SpectrumTable> {
    check_width(s)?;
    let rows = 1usize << s.m();
    let cols = s.len();
    let mut table = SpectrumTable::zeroed(SpectrumKind::Walsh, rows, cols);
    for gamma in 0..rows as u32 {
        for rho in 0..cols as u32 {
            let sum: i32 = (0..cols as u32)
                .map(|x| {
                    if dot(gamma, s.eval(x)) ^ dot(rho, x) == 0 {
                        1
                    } else {
                        -1
                    }
                })
                .sum();
            table.set(gamma, rho, sum);
        }
    }
    Ok(table)
}

/// Autocorrelation table via the Wiener–Khinchin route: per component, the
/// inverse Walsh transform of the squared Walsh spectrum, divided by 2^n.
/// Row index is the input shift gamma, column index the output mask rho.
pub fn autocorrelation_table(s: &SBox) -> Result<SpectrumTable> {
    check_width(s)?;
    let rows = s.len();
    let cols = 1usize << s.m();
    let size = s.len() as i32;
    let mut table = SpectrumTable::zeroed(SpectrumKind::Act, rows, cols);
    for rho in 0..cols as u32 {
        let mut spec = component_signs(s, rho);
        fwht(&mut spec);
        for v in spec.iter_mut() {
            *v *= *v;
        }
        fwht(&mut spec);
        for (gamma, v) in spec.iter().enumerate() {
            debug_assert_eq!(v % size, 0);
            table.set(gamma as u32, rho, v / size);
        }
    }
    Ok(table)
}

/// Autocorrelation table by the definitional sum. Oracle path.
pub fn autocorrelation_table_naive(s: &SBox) -> Result<SpectrumTable> {
    check_width(s)?;
    let rows = s.len();
    let cols = 1usize << s.m();
    let mut table = SpectrumTable::zeroed(SpectrumKind::Act, rows, cols);
    for gamma in 0..rows as u32 {
        for rho in 0..cols as u32 {
            let sum: i32 = (0..rows as u32)
                .map(|x| {
                    if dot(rho, s.eval(x ^ gamma) ^ s.eval(x)) == 0 {
                        1
                    } else {
                        -1
                    }
                })
                .sum();
            table.set(gamma, rho, sum);
        }
    }
    Ok(table)
}

/// Maximum |ACT entry| over nonzero shifts and nonzero masks.
pub fn absolute_indicator(s: &SBox) -> Result<u32> {
    Ok(autocorrelation_table(s)?.max_abs_nontrivial() as u32)
}

/// Index range for the sum-of-squares indicator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SsiConvention {
    /// Every (gamma, rho) cell, trivial row and column included.
    All,
    /// gamma != 0 and rho != 0 only.
    Nonzero,
}

/// Sum of squared ACT entries under the given index convention.
pub fn sum_of_squares_indicator(s: &SBox, convention: SsiConvention) -> Result<u128> {
    let act = autocorrelation_table(s)?;
    let start = match convention {
        SsiConvention::All => 0,
        SsiConvention::Nonzero => 1,
    };
    let mut total: u128 = 0;
    for gamma in start..act.rows() {
        for rho in start..act.cols() {
            let v = act.entry(gamma as u32, rho as u32) as i128;
            total += (v * v) as u128;
        }
    }
    Ok(total)
}

/// Maximum over nonzero components of the per-component squared ACT mass
/// (all shifts, gamma = 0 included). This is the index convention that
/// reproduces published per-S-box SSI figures.
pub fn sum_of_squares_indicator_component_max(s: &SBox) -> Result<u128> {
    let act = autocorrelation_table(s)?;
    let mut best: u128 = 0;
    for rho in 1..act.cols() {
        let mut total: u128 = 0;
        for gamma in 0..act.rows() {
            let v = act.entry(gamma as u32, rho as u32) as i128;
            total += (v * v) as u128;
        }
        best = best.max(total);
    }
    Ok(best)
}

/// Multilinear coefficient set of a Boolean function. Bit `u` of
/// `coefficients` is the coefficient of the monomial over the variable set
/// encoded by `u`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnfPolynomial {
    pub n: u32,
    pub coefficients: Vec<u8>,
}

impl AnfPolynomial {
    /// Highest Hamming weight among indices with a nonzero coefficient;
    /// 0 for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.coefficients
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(u, _)| u.count_ones())
            .max()
            .unwrap_or(0)
    }
}

/// Binary Möbius transform of a truth table; its own inverse.
pub fn anf(component: &BooleanComponent) -> AnfPolynomial {
    let mut coefficients = component.truth.clone();
    let mut step = 1;
    while step < coefficients.len() {
        for block in (0..coefficients.len()).step_by(2 * step) {
            for i in block..block + step {
                coefficients[i + step] ^= coefficients[i];
            }
        }
        step *= 2;
    }
    AnfPolynomial {
        n: coefficients.len().trailing_zeros(),
        coefficients,
    }
}

/// Möbius transform by the definitional subset sum. Oracle path.
pub fn anf_naive(component: &BooleanComponent) -> AnfPolynomial {
    let len = component.truth.len();
    let coefficients = (0..len)
        .map(|u| {
            let mut acc = 0u8;
            for (x, &t) in component.truth.iter().enumerate() {
                if x & !u == 0 {
                    acc ^= t;
                }
            }
            acc
        })
        .collect();
    AnfPolynomial {
        n: len.trailing_zeros(),
        coefficients,
    }
}

/// Per-coordinate ANF degrees, index j = output bit position.
pub fn coordinate_degrees(s: &SBox) -> Vec<u32> {
    (0..s.m())
        .map(|j| anf(&s.component(1 << j)).degree())
        .collect()
}

/// Maximum coordinate-function degree.
pub fn algebraic_degree(s: &SBox) -> u32 {
    coordinate_degrees(s).into_iter().max().unwrap_or(0)
}

/// Minimum degree over nonzero component functions, reported as auxiliary
/// data alongside the algebraic degree.
pub fn min_component_degree(s: &SBox) -> u32 {
    (1..1u32 << s.m())
        .map(|mask| anf(&s.component(mask)).degree())
        .min()
        .unwrap_or(0)
}
