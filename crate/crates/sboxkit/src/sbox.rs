//! S-box data model, parsing and elementary structural metrics.

use crate::{Error, Result};

/// Maximum supported input width. Tables above this are rejected outright;
/// individual metrics impose tighter per-metric limits.
pub const MAX_WIDTH: u32 = 16;

/// Lookup table of a vectorial Boolean function `F_2^n -> F_2^m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SBox {
    n: u32,
    m: u32,
    table: Vec<u32>,
    pub name: Option<String>,
    pub source: String,
}

/// Truth table of one component function `x -> mask . S(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BooleanComponent {
    pub mask: u32,
    pub truth: Vec<u8>,
}

/// Parity of `a & b`, the GF(2) dot product of two bit vectors.
#[inline]
pub fn dot(a: u32, b: u32) -> u8 {
    ((a & b).count_ones() & 1) as u8
}

impl SBox {
    /// Builds an S-box from an explicit table and output width.
    pub fn from_table(table: Vec<u32>, m: u32, source: &str) -> Result<SBox> {
        let len = table.len();
        if len == 0 {
            return Err(Error::EmptyInput);
        }
        if !len.is_power_of_two() {
            return Err(Error::LengthNotPowerOfTwo(len));
        }
        let n = len.trailing_zeros();
        if n == 0 || n > MAX_WIDTH {
            return Err(Error::UnsupportedWidth(n));
        }
        if m == 0 || m > MAX_WIDTH {
            return Err(Error::UnsupportedWidth(m));
        }
        for (index, &entry) in table.iter().enumerate() {
            if m < 32 && entry >> m != 0 {
                return Err(Error::EntryOutOfRange { entry, index, m });
            }
        }
        Ok(SBox {
            n,
            m,
            table,
            name: None,
            source: source.to_string(),
        })
    }

    /// Builds an S-box, inferring the output width from the largest entry.
    pub fn from_table_inferred(table: Vec<u32>, source: &str) -> Result<SBox> {
        let max = table.iter().copied().max().ok_or(Error::EmptyInput)?;
        let m = (32 - max.leading_zeros()).max(1);
        SBox::from_table(table, m, source)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    /// Number of table entries, `2^n`.
    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn eval(&self, x: u32) -> u32 {
        self.table[x as usize]
    }

    /// True iff n = m and the table is a permutation of `0..2^n`.
    pub fn is_bijective(&self) -> bool {
        if self.n != self.m {
            return false;
        }
        let mut seen = vec![false; self.table.len()];
        for &y in &self.table {
            if seen[y as usize] {
                return false;
            }
            seen[y as usize] = true;
        }
        true
    }

    /// True iff every nonzero component function takes the value 1 exactly
    /// `2^{n-1}` times.
    pub fn is_balanced(&self) -> bool {
        let half = (self.table.len() / 2) as u32;
        (1..1u32 << self.m).all(|mask| {
            let ones: u32 = self.table.iter().map(|&y| dot(mask, y) as u32).sum();
            ones == half
        })
    }

    /// Truth table of the component function for `mask`.
    pub fn component(&self, mask: u32) -> BooleanComponent {
        BooleanComponent {
            mask,
            truth: self.table.iter().map(|&y| dot(mask, y)).collect(),
        }
    }

    /// Cycle lengths of the permutation, sorted ascending.
    pub fn cycle_lengths(&self) -> Result<Vec<usize>> {
        if !self.is_bijective() {
            return Err(Error::NotBijective);
        }
        let mut seen = vec![false; self.table.len()];
        let mut cycles = Vec::new();
        for start in 0..self.table.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.table[x] as usize;
                len += 1;
            }
            cycles.push(len);
        }
        cycles.sort_unstable();
        Ok(cycles)
    }

    /// Least k >= 1 with S composed k times equal to the identity; the lcm
    /// of the cycle lengths.
    pub fn permutation_order(&self) -> Result<u64> {
        let cycles = self.cycle_lengths()?;
        Ok(cycles.into_iter().fold(1u64, |acc, c| lcm(acc, c as u64)))
    }

    /// Length of the longest cycle. This is the quantity published as "OP"
    /// in comparative S-box surveys; see the report module.
    pub fn max_cycle_length(&self) -> Result<u64> {
        let cycles = self.cycle_lengths()?;
        Ok(*cycles.last().expect("at least one cycle") as u64)
    }

    /// Inputs with S(x) = x.
    pub fn fixed_points(&self) -> Result<Vec<u32>> {
        if self.n != self.m {
            return Err(Error::NotSquare { n: self.n, m: self.m });
        }
        Ok((0..self.table.len() as u32)
            .filter(|&x| self.table[x as usize] == x)
            .collect())
    }

    /// Inputs with S(x) equal to the bitwise complement of x within n bits.
    pub fn opposite_fixed_points(&self) -> Result<Vec<u32>> {
        if self.n != self.m {
            return Err(Error::NotSquare { n: self.n, m: self.m });
        }
        let full = (self.table.len() - 1) as u32;
        Ok((0..self.table.len() as u32)
            .filter(|&x| self.table[x as usize] == x ^ full)
            .collect())
    }

    /// The inverse permutation.
    pub fn inverse(&self) -> Result<SBox> {
        if !self.is_bijective() {
            return Err(Error::NotBijective);
        }
        let mut inv = vec![0u32; self.table.len()];
        for (x, &y) in self.table.iter().enumerate() {
            inv[y as usize] = x as u32;
        }
        SBox::from_table(inv, self.m, &format!("inverse of {}", self.source))
    }

    /// Serializes as whitespace-separated hex entries, format (a).
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for (i, &y) in self.table.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            out.push_str(&format!("{:#x}", y));
        }
        out
    }
}

/// Parses an S-box from text. Accepted formats, auto-detected:
///
/// (a) whitespace/comma-separated decimal or 0x-hex integers,
/// (b) a compact hex string, one hex digit per entry (m <= 4 only),
/// (c) line-oriented input where lines starting with '#' are comments.
///
/// `width` overrides the inferred output width.
pub fn parse_sbox(text: &str, width: Option<u32>) -> Result<SBox> {
    let body: String = text
        .lines()
        .filter(|line| !line.trim_start().starts_with('#'))
        .collect::<Vec<_>>()
        .join(" ");
    let tokens: Vec<&str> = body
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .collect();
    if tokens.is_empty() {
        return Err(Error::EmptyInput);
    }

    // A single token without separators that is longer than one digit and
    // not a 0x literal is treated as compact hex.
    let table: Vec<u32> = if tokens.len() == 1
        && tokens[0].len() > 1
        && !tokens[0].starts_with("0x")
        && !tokens[0].starts_with("0X")
        && tokens[0].chars().all(|c| c.is_ascii_hexdigit())
    {
        if let Some(m) = width {
            if m > 4 {
                return Err(Error::CompactHexWidth(m));
            }
        }
        tokens[0]
            .chars()
            .map(|c| c.to_digit(16).expect("hex digit"))
            .collect()
    } else {
        let mut table = Vec::with_capacity(tokens.len());
        for (position, tok) in tokens.iter().enumerate() {
            let parsed = if let Some(hex) = tok.strip_prefix("0x").or_else(|| tok.strip_prefix("0X")) {
                u32::from_str_radix(hex, 16)
            } else {
                tok.parse::<u32>()
            };
            match parsed {
                Ok(v) => table.push(v),
                Err(_) => {
                    return Err(Error::MalformedToken {
                        token: tok.to_string(),
                        position,
                    })
                }
            }
        }
        table
    };

    match width {
        Some(m) => SBox::from_table(table, m, "parsed"),
        None => SBox::from_table_inferred(table, "parsed"),
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}
