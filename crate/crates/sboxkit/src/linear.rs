//! Linear-cryptanalysis metrics: LAT, linear approximation probability,
//! nonlinearity, linear branch number, linear structures, correlation
//! immunity.

use crate::ratio::Ratio;
use crate::sbox::SBox;
use crate::spectral::{autocorrelation_table, walsh_spectrum, SpectrumKind, SpectrumTable};
use crate::{Error, Result};

/// Raw and centered linear approximation tables. Row index is the input
/// mask, column index the output mask.
#[derive(Debug, Clone)]
pub struct Lat {
    pub raw: SpectrumTable,
    pub centered: SpectrumTable,
}

/// LAT by direct counting: raw(rho, psi) = #{x : rho.x = psi.S(x)},
/// centered = raw - 2^{n-1}.
pub fn lat(s: &SBox) -> Result<Lat> {
    let rows = s.len();
    let cols = 1usize << s.m();
    let half = (rows / 2) as i32;
    let mut raw = SpectrumTable::zeroed(SpectrumKind::LatRaw, rows, cols);
    let mut centered = SpectrumTable::zeroed(SpectrumKind::LatCentered, rows, cols);
    for rho in 0..rows as u32 {
        for psi in 0..cols as u32 {
            let count: i32 = (0..rows as u32)
                .map(|x| {
                    (crate::sbox::dot(rho, x) == crate::sbox::dot(psi, s.eval(x))) as i32
                })
                .sum();
            raw.set(rho, psi, count);
            centered.set(rho, psi, count - half);
        }
    }
    // raw(0,0) is the full count, leave centered(0,0) consistent with the
    // same shift.
    Ok(Lat { raw, centered })
}

/// LAT derived from the Walsh spectrum: centered(rho, psi) = W(psi, rho)/2.
/// Dual route to `lat`.
pub fn lat_from_walsh(s: &SBox) -> Result<Lat> {
    let walsh = walsh_spectrum(s)?;
    let rows = s.len();
    let cols = 1usize << s.m();
    let half = (rows / 2) as i32;
    let mut raw = SpectrumTable::zeroed(SpectrumKind::LatRaw, rows, cols);
    let mut centered = SpectrumTable::zeroed(SpectrumKind::LatCentered, rows, cols);
    for rho in 0..rows as u32 {
        for psi in 0..cols as u32 {
            let w = walsh.entry(psi, rho);
            debug_assert_eq!(w % 2, 0);
            centered.set(rho, psi, w / 2);
            raw.set(rho, psi, w / 2 + half);
        }
    }
    Ok(Lat { raw, centered })
}

/// Maximum |centered LAT| over nonzero mask pairs, divided by 2^n.
/// Lies in [0, 1/2].
pub fn linear_approximation_probability(s: &SBox) -> Result<Ratio> {
    let walsh = walsh_spectrum(s)?;
    let mut max = 0;
    for psi in 1..walsh.rows() as u32 {
        for rho in 1..walsh.cols() as u32 {
            max = max.max(walsh.entry(psi, rho).abs() / 2);
        }
    }
    Ok(Ratio::new(max as i64, s.len() as i64))
}

/// 2^{n-1} - max |W(gamma, rho)| / 2 over gamma != 0, all rho.
pub fn nonlinearity(s: &SBox) -> Result<u32> {
    let walsh = walsh_spectrum(s)?;
    let mut max = 0;
    for gamma in 1..walsh.rows() {
        for &w in walsh.row_slice(gamma) {
            max = max.max(w.abs());
        }
    }
    Ok((s.len() / 2) as u32 - (max / 2) as u32)
}

/// Minimum wt(gamma) + wt(rho) over nonzero mask pairs with a nonzero
/// Walsh correlation. The unrestricted minimum is constantly 2 and carries
/// no information.
pub fn linear_branch_number(s: &SBox) -> Result<u32> {
    if s.n() != s.m() {
        return Err(Error::NotSquare { n: s.n(), m: s.m() });
    }
    let walsh = walsh_spectrum(s)?;
    let mut best = u32::MAX;
    for gamma in 1..walsh.rows() as u32 {
        for rho in 1..walsh.cols() as u32 {
            if walsh.entry(gamma, rho) != 0 {
                best = best.min(gamma.count_ones() + rho.count_ones());
            }
        }
    }
    Ok(best)
}

/// One linear-structure witness: the derivative of component `rho` along
/// shift `gamma` is the constant `c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct LinearStructure {
    pub rho: u32,
    pub gamma: u32,
    pub constant: u8,
}

/// All ordered pairs (rho != 0, gamma != 0) whose component derivative is
/// constant; equivalently the ACT cells of magnitude 2^n.
pub fn linear_structures(s: &SBox) -> Result<Vec<LinearStructure>> {
    let act = autocorrelation_table(s)?;
    let full = s.len() as i32;
    let mut witnesses = Vec::new();
    for rho in 1..act.cols() as u32 {
        for gamma in 1..act.rows() as u32 {
            let v = act.entry(gamma, rho);
            if v == full {
                witnesses.push(LinearStructure { rho, gamma, constant: 0 });
            } else if v == -full {
                witnesses.push(LinearStructure { rho, gamma, constant: 1 });
            }
        }
    }
    Ok(witnesses)
}

/// Largest k such that W(gamma, rho) = 0 for every gamma != 0 and every
/// input mask rho with 1 <= wt(rho) <= k.
pub fn correlation_immunity_order(s: &SBox) -> Result<u32> {
    let walsh = walsh_spectrum(s)?;
    let mut order = 0;
    for k in 1..=s.n() {
        let ok = (1..walsh.cols() as u32)
            .filter(|rho| (1..=k).contains(&rho.count_ones()))
            .all(|rho| (1..walsh.rows() as u32).all(|gamma| walsh.entry(gamma, rho) == 0));
        if ok {
            order = k;
        } else {
            break;
        }
    }
    Ok(order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sbox::parse_sbox;

    fn identity(n: u32) -> SBox {
        SBox::from_table((0..1u32 << n).collect(), n, "identity").unwrap()
    }

    #[test]
    fn lat_trivial_cell() {
        let s = parse_sbox("C56B90AD3EF84712", None).unwrap();
        let t = lat(&s).unwrap();
        assert_eq!(t.raw.entry(0, 0), 16);
        assert_eq!(t.centered.entry(0, 0), 8);
    }

    #[test]
    fn lat_identity_centered() {
        let t = lat(&identity(4)).unwrap();
        for rho in 1..16 {
            for psi in 1..16 {
                let expected = if rho == psi { 8 } else { 0 };
                assert_eq!(t.centered.entry(rho, psi).abs(), expected);
            }
        }
    }

    #[test]
    fn lat_counting_equals_walsh_route() {
        let s = parse_sbox("4 11 31 20 26 21 9 2 27 5 8 18 29 3 6 28 30 19 7 14 0 13 17 24 16 12 1 25 22 10 15 23", None).unwrap();
        let a = lat(&s).unwrap();
        let b = lat_from_walsh(&s).unwrap();
        assert_eq!(a.raw, b.raw);
        assert_eq!(a.centered, b.centered);
    }

    #[test]
    fn lap_extremes() {
        assert_eq!(
            linear_approximation_probability(&identity(4)).unwrap(),
            Ratio::new(1, 2)
        );
        let two_bit = SBox::from_table(vec![0, 1, 2, 3], 2, "id2").unwrap();
        assert_eq!(
            linear_approximation_probability(&two_bit).unwrap(),
            Ratio::new(1, 2)
        );
    }

    #[test]
    fn nonlinearity_identity_zero() {
        assert_eq!(nonlinearity(&identity(4)).unwrap(), 0);
    }

    #[test]
    fn lbn_identity() {
        assert_eq!(linear_branch_number(&identity(4)).unwrap(), 2);
    }

    #[test]
    fn linear_structures_identity_full() {
        let ws = linear_structures(&identity(4)).unwrap();
        assert_eq!(ws.len(), 225);
        for w in &ws {
            assert_eq!(w.constant, crate::sbox::dot(w.rho, w.gamma));
        }
    }

    #[test]
    fn ci_identity_zero() {
        assert_eq!(correlation_immunity_order(&identity(4)).unwrap(), 0);
    }
}
