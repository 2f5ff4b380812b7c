//! Affine transformations S'(x) = B.S(A.x xor a) xor b and the invariance
//! test harness built on them.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::sbox::{dot, SBox};
use crate::{Error, Result};

/// Square bit-matrix over GF(2); `rows[i]` is the mask of row i.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BitMatrix {
    pub size: u32,
    pub rows: Vec<u32>,
}

impl BitMatrix {
    pub fn identity(size: u32) -> BitMatrix {
        BitMatrix {
            size,
            rows: (0..size).map(|i| 1 << i).collect(),
        }
    }

    /// Matrix-vector product over GF(2).
    pub fn apply(&self, x: u32) -> u32 {
        self.rows
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &row)| acc | ((dot(row, x) as u32) << i))
    }

    pub fn is_invertible(&self) -> bool {
        self.clone().rank() == self.size
    }

    fn rank(mut self) -> u32 {
        let mut rank = 0;
        for col in 0..self.size {
            if let Some(pivot) = (rank..self.size).find(|&r| self.rows[r as usize] >> col & 1 == 1)
            {
                self.rows.swap(rank as usize, pivot as usize);
                for r in 0..self.size {
                    if r != rank && self.rows[r as usize] >> col & 1 == 1 {
                        self.rows[r as usize] ^= self.rows[rank as usize];
                    }
                }
                rank += 1;
            }
        }
        rank
    }

    /// Inverse by Gauss–Jordan elimination with deterministic pivoting.
    pub fn inverse(&self) -> Result<BitMatrix> {
        let mut work = self.rows.clone();
        let mut inv = BitMatrix::identity(self.size).rows;
        let mut pivot_row = 0usize;
        for col in 0..self.size {
            let found = (pivot_row..self.size as usize).find(|&r| work[r] >> col & 1 == 1);
            let r = found.ok_or(Error::SingularMatrix)?;
            work.swap(pivot_row, r);
            inv.swap(pivot_row, r);
            for other in 0..self.size as usize {
                if other != pivot_row && work[other] >> col & 1 == 1 {
                    work[other] ^= work[pivot_row];
                    inv[other] ^= inv[pivot_row];
                }
            }
            pivot_row += 1;
        }
        Ok(BitMatrix {
            size: self.size,
            rows: inv,
        })
    }
}

/// Bi-affine equivalence transform: input side (A, a), output side (B, b).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineTransform {
    pub input_matrix: BitMatrix,
    pub input_constant: u32,
    pub output_matrix: BitMatrix,
    pub output_constant: u32,
}

impl AffineTransform {
    pub fn identity(n: u32, m: u32) -> AffineTransform {
        AffineTransform {
            input_matrix: BitMatrix::identity(n),
            input_constant: 0,
            output_matrix: BitMatrix::identity(m),
            output_constant: 0,
        }
    }

    /// The transform t^-1 with t^-1(t(s)) = s.
    pub fn inverse(&self) -> Result<AffineTransform> {
        let a_inv = self.input_matrix.inverse()?;
        let b_inv = self.output_matrix.inverse()?;
        // S(x) = B^-1 . S'(A^-1 (x xor a) ... solved for the same shape:
        // S = B^-1 . S'(A^-1 . x xor A^-1 a) xor B^-1 b
        let input_constant = a_inv.apply(self.input_constant);
        let output_constant = b_inv.apply(self.output_constant);
        Ok(AffineTransform {
            input_matrix: a_inv,
            input_constant,
            output_matrix: b_inv,
            output_constant,
        })
    }
}

/// S'(x) = B.S(A.x xor a) xor b over all inputs.
pub fn apply_affine(s: &SBox, t: &AffineTransform) -> Result<SBox> {
    if t.input_matrix.size != s.n() || t.output_matrix.size != s.m() {
        return Err(Error::DimensionMismatch {
            t_n: t.input_matrix.size,
            t_m: t.output_matrix.size,
            s_n: s.n(),
            s_m: s.m(),
        });
    }
    if !t.input_matrix.is_invertible() || !t.output_matrix.is_invertible() {
        return Err(Error::SingularMatrix);
    }
    let table = (0..s.len() as u32)
        .map(|x| {
            let inner = t.input_matrix.apply(x) ^ t.input_constant;
            t.output_matrix.apply(s.eval(inner)) ^ t.output_constant
        })
        .collect();
    SBox::from_table(table, s.m(), &format!("affine image of {}", s.source))
}

/// Seed-deterministic random transform with invertible matrices.
pub fn random_affine(n: u32, m: u32, seed: u64) -> AffineTransform {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let input_matrix = random_invertible(n, &mut rng);
    let input_constant = rng.gen_range(0..1u32 << n);
    let output_matrix = random_invertible(m, &mut rng);
    let output_constant = rng.gen_range(0..1u32 << m);
    AffineTransform {
        input_matrix,
        input_constant,
        output_matrix,
        output_constant,
    }
}

fn random_invertible(size: u32, rng: &mut ChaCha8Rng) -> BitMatrix {
    loop {
        let rows = (0..size).map(|_| rng.gen_range(0..1u32 << size)).collect();
        let candidate = BitMatrix { size, rows };
        if candidate.is_invertible() {
            return candidate;
        }
    }
}

/// Per-property outcome of an invariance experiment.
#[derive(Debug, Clone, Serialize)]
pub struct InvarianceEntry {
    pub property: String,
    pub before: String,
    pub after: String,
    pub asserted_invariant: bool,
    pub preserved: bool,
}

/// Computes the affine-invariant metric set on s and t(s) and reports
/// equality; affine-variant metrics are listed side by side without any
/// claim. Entries with `asserted_invariant` are the mathematically safe
/// invariants under general bi-affine equivalence.
pub fn invariance_report(s: &SBox, t: &AffineTransform) -> Result<Vec<InvarianceEntry>> {
    let image = apply_affine(s, t)?;
    let mut entries = Vec::new();
    let mut push = |property: &str, before: String, after: String, asserted: bool| {
        let preserved = before == after;
        entries.push(InvarianceEntry {
            property: property.to_string(),
            before,
            after,
            asserted_invariant: asserted,
            preserved,
        });
    };

    // invariant set
    push(
        "bijectivity",
        s.is_bijective().to_string(),
        image.is_bijective().to_string(),
        true,
    );
    push(
        "balancedness",
        s.is_balanced().to_string(),
        image.is_balanced().to_string(),
        true,
    );
    push(
        "nl",
        crate::linear::nonlinearity(s)?.to_string(),
        crate::linear::nonlinearity(&image)?.to_string(),
        true,
    );
    push(
        "lap",
        crate::linear::linear_approximation_probability(s)?.to_string(),
        crate::linear::linear_approximation_probability(&image)?.to_string(),
        true,
    );
    push(
        "du",
        crate::differential::differential_uniformity(s)?.to_string(),
        crate::differential::differential_uniformity(&image)?.to_string(),
        true,
    );
    push(
        "ai",
        crate::spectral::absolute_indicator(s)?.to_string(),
        crate::spectral::absolute_indicator(&image)?.to_string(),
        true,
    );
    push(
        "ssi_nonzero",
        crate::spectral::sum_of_squares_indicator(s, crate::spectral::SsiConvention::Nonzero)?
            .to_string(),
        crate::spectral::sum_of_squares_indicator(&image, crate::spectral::SsiConvention::Nonzero)?
            .to_string(),
        true,
    );
    push(
        "ad",
        crate::spectral::algebraic_degree(s).to_string(),
        crate::spectral::algebraic_degree(&image).to_string(),
        true,
    );
    push(
        "dlu_abs",
        crate::combined::differential_linear_uniformity(s)?.abs.to_string(),
        crate::combined::differential_linear_uniformity(&image)?.abs.to_string(),
        true,
    );
    if s.is_bijective() && s.n() <= crate::combined::MAX_BCT_WIDTH {
        push(
            "bu",
            crate::combined::boomerang_uniformity(s)?.to_string(),
            crate::combined::boomerang_uniformity(&image)?.to_string(),
            true,
        );
    }

    // variant set, reported without assertion
    if s.is_bijective() {
        push(
            "op",
            s.permutation_order()?.to_string(),
            image.permutation_order()?.to_string(),
            false,
        );
        push(
            "fp",
            s.fixed_points()?.len().to_string(),
            image.fixed_points()?.len().to_string(),
            false,
        );
        push(
            "ofp",
            s.opposite_fixed_points()?.len().to_string(),
            image.opposite_fixed_points()?.len().to_string(),
            false,
        );
    }
    push(
        "sac",
        crate::avalanche::sac_scalar(s).to_string(),
        crate::avalanche::sac_scalar(&image).to_string(),
        false,
    );
    if s.m() >= 2 {
        push(
            "bic",
            format!("{:.6}", crate::avalanche::bic_scalar(s)?),
            format!("{:.6}", crate::avalanche::bic_scalar(&image)?),
            false,
        );
    }
    if s.n() == s.m() {
        push(
            "lbn",
            crate::linear::linear_branch_number(s)?.to_string(),
            crate::linear::linear_branch_number(&image)?.to_string(),
            false,
        );
        push(
            "dbn",
            crate::differential::differential_branch_number(s)?.to_string(),
            crate::differential::differential_branch_number(&image)?.to_string(),
            false,
        );
    }
    push(
        "ls_count",
        crate::linear::linear_structures(s)?.len().to_string(),
        crate::linear::linear_structures(&image)?.len().to_string(),
        false,
    );
    push(
        "dpa_snr",
        format!("{:.6}", crate::sca::dpa_snr(s)?),
        format!("{:.6}", crate::sca::dpa_snr(&image)?),
        false,
    );
    push(
        "to",
        format!("{:.6}", crate::sca::transparency_order(s)?),
        format!("{:.6}", crate::sca::transparency_order(&image)?),
        false,
    );

    Ok(entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sbox::parse_sbox;

    #[test]
    fn identity_transform_is_noop() {
        let s = parse_sbox("C56B90AD3EF84712", None).unwrap();
        let t = AffineTransform::identity(4, 4);
        assert_eq!(apply_affine(&s, &t).unwrap().table(), s.table());
    }

    #[test]
    fn output_complement() {
        let s = parse_sbox("C56B90AD3EF84712", None).unwrap();
        let t = AffineTransform {
            output_constant: 0xF,
            ..AffineTransform::identity(4, 4)
        };
        let image = apply_affine(&s, &t).unwrap();
        for x in 0..16 {
            assert_eq!(image.eval(x), s.eval(x) ^ 0xF);
        }
    }

    #[test]
    fn random_affine_is_deterministic() {
        assert_eq!(random_affine(4, 4, 0), random_affine(4, 4, 0));
        assert_ne!(random_affine(4, 4, 0), random_affine(4, 4, 1));
    }

    #[test]
    fn generated_matrices_invert() {
        for seed in 0..1000 {
            let t = random_affine(4, 4, seed);
            assert!(t.input_matrix.is_invertible());
            let inv = t.input_matrix.inverse().unwrap();
            for x in 0..16 {
                assert_eq!(inv.apply(t.input_matrix.apply(x)), x);
            }
        }
    }

    #[test]
    fn transform_then_inverse_restores_table() {
        let s = parse_sbox("C56B90AD3EF84712", None).unwrap();
        for seed in 0..20 {
            let t = random_affine(4, 4, seed);
            let image = apply_affine(&s, &t).unwrap();
            let back = apply_affine(&image, &t.inverse().unwrap()).unwrap();
            assert_eq!(back.table(), s.table());
        }
    }

    #[test]
    fn nonlinearity_invariant_under_random_transform() {
        let s = parse_sbox("C56B90AD3EF84712", None).unwrap();
        for seed in 0..10 {
            let t = random_affine(4, 4, seed);
            let image = apply_affine(&s, &t).unwrap();
            assert_eq!(
                crate::linear::nonlinearity(&image).unwrap(),
                crate::linear::nonlinearity(&s).unwrap()
            );
        }
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let s = parse_sbox("C56B90AD3EF84712", None).unwrap();
        let t = AffineTransform::identity(5, 5);
        assert!(matches!(
            apply_affine(&s, &t),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn singular_matrix_rejected() {
        let s = parse_sbox("C56B90AD3EF84712", None).unwrap();
        let mut t = AffineTransform::identity(4, 4);
        t.input_matrix.rows = vec![1, 1, 2, 4];
        assert!(matches!(apply_affine(&s, &t), Err(Error::SingularMatrix)));
    }

    #[test]
    fn invariance_report_asserted_rows_hold() {
        let s = parse_sbox("C56B90AD3EF84712", None).unwrap();
        let t = random_affine(4, 4, 7);
        for entry in invariance_report(&s, &t).unwrap() {
            if entry.asserted_invariant {
                assert!(entry.preserved, "{} changed", entry.property);
            }
        }
    }
}
