//! Univariate interpolation of an S-box over GF(2^n).

use crate::sbox::SBox;
use crate::{Error, Result};

/// Binary field GF(2^n) defined by an irreducible modulus polynomial,
/// encoded as an (n+1)-bit integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FieldSpec {
    n: u32,
    modulus: u32,
}

/// Default moduli per width: the usual low-weight irreducibles, so reports
/// are reproducible without a flag.
pub fn default_modulus(n: u32) -> u32 {
    match n {
        1 => 0b11,          // x + 1
        2 => 0b111,         // x^2 + x + 1
        3 => 0b1011,        // x^3 + x + 1
        4 => 0b1_0011,      // x^4 + x + 1
        5 => 0b10_0101,     // x^5 + x^2 + 1
        6 => 0b100_0011,    // x^6 + x + 1
        7 => 0b1000_1001,   // x^7 + x^3 + 1
        8 => 0b1_0001_1011, // x^8 + x^4 + x^3 + x + 1
        _ => {
            // lexicographically first irreducible of the given degree
            let lo = 1u32 << n;
            (lo..2 * lo).find(|&p| poly_irreducible(p)).expect("irreducible exists")
        }
    }
}

fn poly_degree(p: u32) -> u32 {
    31 - p.leading_zeros()
}

fn poly_mod(mut a: u64, m: u32) -> u32 {
    let md = poly_degree(m);
    while a >> md != 0 {
        let shift = 63 - a.leading_zeros() - md;
        a ^= (m as u64) << shift;
    }
    a as u32
}

fn poly_mulmod(a: u32, b: u32, m: u32) -> u32 {
    let mut acc = 0u64;
    let mut b64 = b as u64;
    let mut i = 0;
    while b64 != 0 {
        if b64 & 1 == 1 {
            acc ^= (a as u64) << i;
        }
        b64 >>= 1;
        i += 1;
    }
    poly_mod(acc, m)
}

/// Trial division by every polynomial of degree 1..=deg/2.
fn poly_irreducible(p: u32) -> bool {
    let deg = poly_degree(p);
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        for q in (1u32 << d)..(1u32 << (d + 1)) {
            // long division remainder of p by q
            let mut r = p as u64;
            let qd = poly_degree(q);
            while r != 0 && 63 - r.leading_zeros() >= qd {
                let shift = 63 - r.leading_zeros() - qd;
                r ^= (q as u64) << shift;
            }
            if r == 0 {
                return false;
            }
        }
    }
    true
}

impl FieldSpec {
    pub fn new(n: u32, modulus: u32) -> Result<FieldSpec> {
        if n == 0 || n > 16 {
            return Err(Error::UnsupportedWidth(n));
        }
        if poly_degree(modulus.max(1)) != n || !poly_irreducible(modulus) {
            return Err(Error::ReducibleModulus { modulus, degree: n });
        }
        Ok(FieldSpec { n, modulus })
    }

    pub fn with_default_modulus(n: u32) -> Result<FieldSpec> {
        FieldSpec::new(n, default_modulus(n))
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn order(&self) -> u32 {
        1 << self.n
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        a ^ b
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        poly_mulmod(a, b, self.modulus)
    }

    pub fn pow(&self, mut base: u32, mut exp: u32) -> u32 {
        let mut acc = 1u32;
        while exp != 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "zero has no inverse");
        self.pow(a, self.order() - 2)
    }
}

/// Polynomial over GF(2^n), coefficient index = power.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldPolynomial {
    pub field: FieldSpec,
    pub coefficients: Vec<u32>,
}

impl FieldPolynomial {
    fn trimmed(field: FieldSpec, mut coefficients: Vec<u32>) -> FieldPolynomial {
        while coefficients.len() > 1 && *coefficients.last().unwrap() == 0 {
            coefficients.pop();
        }
        FieldPolynomial { field, coefficients }
    }

    /// Degree, with the zero polynomial assigned degree 0.
    pub fn degree(&self) -> u32 {
        self.coefficients
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &c)| c != 0)
            .map(|(i, _)| i as u32)
            .unwrap_or(0)
    }

    pub fn term_count(&self) -> u32 {
        self.coefficients.iter().filter(|&&c| c != 0).count() as u32
    }

    pub fn eval(&self, x: u32) -> u32 {
        let mut acc = 0;
        for &c in self.coefficients.iter().rev() {
            acc = self.field.add(self.field.mul(acc, x), c);
        }
        acc
    }

    /// Rendering as a sum of monomials with hex coefficients, highest
    /// power first.
    pub fn to_monomial_string(&self) -> String {
        let terms: Vec<String> = self
            .coefficients
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match i {
                0 => format!("{:#x}", c),
                1 if c == 1 => "x".to_string(),
                1 => format!("{:#x}*x", c),
                _ if c == 1 => format!("x^{}", i),
                _ => format!("{:#x}*x^{}", c, i),
            })
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    }
}

/// The unique polynomial of degree < 2^n agreeing with the table at every
/// field element, via the char-2 expansion of sum_a S(a)(1 + (x+a)^{q-1}):
/// coefficient i < q-1 is sum_{a != 0} S(a) a^{q-1-i}, with the a = 0 term
/// feeding only the constant and x^{q-1} coefficients.
pub fn interpolation_polynomial(s: &SBox, field: FieldSpec) -> Result<FieldPolynomial> {
    if s.n() != s.m() {
        return Err(Error::NotSquare { n: s.n(), m: s.m() });
    }
    if field.n() != s.n() {
        return Err(Error::UnsupportedWidth(field.n()));
    }
    let q = field.order();
    let mut coefficients = vec![0u32; q as usize];
    for a in 0..q {
        let y = s.eval(a);
        if y == 0 {
            continue;
        }
        if a == 0 {
            // (x + 0)^{q-1} = x^{q-1}; plus the constant from the leading 1
            coefficients[0] ^= y;
            coefficients[(q - 1) as usize] ^= y;
        } else {
            coefficients[0] ^= y;
            // powers a^{q-1-i} walked down from a^{q-1} = 1 by dividing by a
            let a_inv = field.inv(a);
            let mut power = 1u32; // a^{q-1-i} at i = 0
            for c in coefficients.iter_mut() {
                *c ^= field.mul(y, power);
                power = field.mul(power, a_inv);
            }
        }
    }
    Ok(FieldPolynomial::trimmed(field, coefficients))
}

/// Textbook Lagrange interpolation with node-difference denominators.
/// Quadratic-to-cubic in the table size; used as the independent route.
pub fn interpolation_polynomial_lagrange(s: &SBox, field: FieldSpec) -> Result<FieldPolynomial> {
    if s.n() != s.m() {
        return Err(Error::NotSquare { n: s.n(), m: s.m() });
    }
    if field.n() != s.n() {
        return Err(Error::UnsupportedWidth(field.n()));
    }
    let q = field.order() as usize;
    let mut acc = vec![0u32; q];
    for i in 0..q as u32 {
        let y = s.eval(i);
        if y == 0 {
            continue;
        }
        // numerator polynomial prod_{j != i} (x + j), built incrementally
        let mut basis = vec![0u32; q];
        basis[0] = 1;
        let mut deg = 0usize;
        let mut denom = 1u32;
        for j in 0..q as u32 {
            if j == i {
                continue;
            }
            denom = field.mul(denom, field.add(i, j));
            // multiply basis by (x + j)
            for k in (0..=deg).rev() {
                let c = basis[k];
                basis[k + 1] ^= c;
                basis[k] = field.mul(c, j);
            }
            deg += 1;
        }
        let scale = field.mul(y, field.inv(denom));
        for (a, &b) in acc.iter_mut().zip(basis.iter()) {
            *a ^= field.mul(scale, b);
        }
    }
    Ok(FieldPolynomial::trimmed(field, acc))
}

/// (degree, nonzero term count); low values flag interpolation-attack
/// susceptibility.
pub fn ip_summary(p: &FieldPolynomial) -> (u32, u32) {
    (p.degree(), p.term_count())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_moduli_are_irreducible() {
        for n in 1..=10 {
            FieldSpec::with_default_modulus(n).unwrap();
        }
    }

    #[test]
    fn rejects_reducible_modulus() {
        // x^4 + 1 = (x+1)^4
        assert!(matches!(
            FieldSpec::new(4, 0b1_0001),
            Err(Error::ReducibleModulus { .. })
        ));
    }

    #[test]
    fn field_inverse() {
        let f = FieldSpec::with_default_modulus(8).unwrap();
        for a in 1..256 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
    }

    #[test]
    fn interpolates_identity_to_x() {
        let f = FieldSpec::with_default_modulus(4).unwrap();
        let id = SBox::from_table((0..16).collect(), 4, "identity").unwrap();
        let p = interpolation_polynomial(&id, f).unwrap();
        assert_eq!(p.degree(), 1);
        assert_eq!(p.term_count(), 1);
        assert_eq!(p.coefficients, vec![0, 1]);
        assert_eq!(ip_summary(&p), (1, 1));
    }

    #[test]
    fn interpolates_constant() {
        let f = FieldSpec::with_default_modulus(3).unwrap();
        let c = SBox::from_table(vec![5; 8], 3, "constant").unwrap();
        let p = interpolation_polynomial(&c, f).unwrap();
        assert_eq!(ip_summary(&p), (0, 1));
        assert_eq!(p.coefficients, vec![5]);
    }

    #[test]
    fn zero_polynomial_summary() {
        let f = FieldSpec::with_default_modulus(3).unwrap();
        let z = SBox::from_table(vec![0; 8], 3, "zero").unwrap();
        let p = interpolation_polynomial(&z, f).unwrap();
        assert_eq!(ip_summary(&p), (0, 0));
        assert_eq!(p.to_monomial_string(), "0");
    }

    #[test]
    fn field_inversion_map_is_a_monomial() {
        let f = FieldSpec::new(4, 0b1_0011).unwrap();
        let table: Vec<u32> = (0..16).map(|x| if x == 0 { 0 } else { f.inv(x) }).collect();
        let s = SBox::from_table(table, 4, "inversion").unwrap();
        let p = interpolation_polynomial(&s, f).unwrap();
        assert_eq!(ip_summary(&p), (14, 1));
    }

    #[test]
    fn evaluation_consistency_and_route_agreement() {
        let f = FieldSpec::with_default_modulus(4).unwrap();
        let s = crate::sbox::parse_sbox("C56B90AD3EF84712", None).unwrap();
        let p = interpolation_polynomial(&s, f).unwrap();
        let l = interpolation_polynomial_lagrange(&s, f).unwrap();
        assert_eq!(p, l);
        for x in 0..16 {
            assert_eq!(p.eval(x), s.eval(x));
        }
        // permutations never reach the top coefficient
        assert!(p.degree() <= 14);
    }
}
