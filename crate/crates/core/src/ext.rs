//! Extension fields GF(4^m) in a polynomial basis over GF(4).
//!
//! An element is the coefficient vector of a polynomial of degree < m in the
//! generator x, coefficient j stored in bits 2j..2j+2 of a `u32`. The default
//! moduli are primitive, so x generates the multiplicative group and the
//! log/antilog tables are indexed by powers of x.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::gf4::F4;

/// Largest supported extension degree; 4^8 = 2^16 elements.
pub const MAX_DEGREE: usize = 8;

/// Primitive monic moduli over GF(4) for m = 1..=8, lowest degree first, as
/// GF(4) codes. Each is the lexicographically first primitive polynomial when
/// coefficients are read from the constant term upward.
pub const DEFAULT_MODULI: [&[u8]; MAX_DEGREE] = [
    &[2, 1],
    &[2, 1, 1],
    &[2, 1, 1, 1],
    &[3, 2, 1, 0, 1],
    &[2, 1, 0, 0, 0, 1],
    &[2, 1, 1, 0, 0, 0, 1],
    &[3, 2, 1, 0, 0, 0, 0, 1],
    &[2, 1, 0, 1, 0, 0, 0, 0, 1],
];

#[derive(Debug)]
struct Tables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// GF(4^m). Cloning is cheap; the tables are shared.
#[derive(Clone, Debug)]
pub struct ExtField {
    m: usize,
    modulus: Vec<F4>,
    tables: Arc<Tables>,
}

impl PartialEq for ExtField {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.modulus == other.modulus
    }
}

impl Eq for ExtField {}

impl ExtField {
    /// The field of degree `m` over GF(4) with the default modulus.
    pub fn build(m: usize) -> Result<Self> {
        if m == 0 || m > MAX_DEGREE {
            return Err(Error::UnsupportedDegree(m));
        }
        let modulus = DEFAULT_MODULI[m - 1].iter().map(|&c| F4::new(c)).collect();
        Self::with_modulus(modulus)
    }

    /// Builds the field for a monic `modulus` (lowest degree first). Fails
    /// unless x has multiplicative order exactly 4^m - 1.
    pub fn with_modulus(modulus: Vec<F4>) -> Result<Self> {
        let m = modulus.len().saturating_sub(1);
        if m == 0 || m > MAX_DEGREE {
            return Err(Error::UnsupportedDegree(m));
        }
        if modulus[m] != F4::ONE {
            return Err(Error::Precondition("modulus must be monic".into()));
        }
        let size = 1u32 << (2 * m);
        let group = (size - 1) as usize;
        let mut exp = vec![0u32; 2 * group];
        let mut log = vec![u32::MAX; size as usize];
        let mut cur = 1u32;
        for (i, slot) in exp.iter_mut().take(group).enumerate() {
            if i > 0 && cur == 1 {
                return Err(Error::Precondition(format!(
                    "x has order {i} modulo the given polynomial, not {group}"
                )));
            }
            *slot = cur;
            log[cur as usize] = i as u32;
            cur = mul_by_x(cur, &modulus, m);
        }
        if cur != 1 {
            return Err(Error::Precondition("modulus is not primitive".into()));
        }
        for i in group..2 * group {
            exp[i] = exp[i - group];
        }
        Ok(ExtField { m, modulus, tables: Arc::new(Tables { exp, log }) })
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn modulus(&self) -> &[F4] {
        &self.modulus
    }

    /// The primitive element x.
    pub fn generator(&self) -> u32 {
        if self.m == 1 {
            // x ≡ -c0 = c0 modulo x + c0
            self.modulus[0].code() as u32
        } else {
            4
        }
    }

    /// α^i for the primitive element α = x.
    pub fn alpha_pow(&self, i: u64) -> u32 {
        let group = self.order() as u64 - 1;
        self.tables.exp[(i % group) as usize]
    }

    pub fn log(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.tables.log[a as usize])
    }

    pub fn coeff(&self, a: u32, j: usize) -> F4 {
        F4::new((a >> (2 * j)) as u8)
    }

    pub fn from_coeffs(&self, coeffs: &[F4]) -> u32 {
        coeffs.iter().take(self.m).enumerate().fold(0, |acc, (j, c)| acc | ((c.code() as u32) << (2 * j)))
    }

    /// Embeds GF(4) as the constant polynomials.
    pub fn embed(&self, c: F4) -> u32 {
        c.code() as u32
    }

    /// The m×m matrix over GF(4) of multiplication by `a` in the basis
    /// 1, x, …, x^(m-1): column j holds the coordinates of a·x^j.
    pub fn mul_matrix(&self, a: u32) -> Vec<Vec<F4>> {
        let mut out = vec![vec![F4::ZERO; self.m]; self.m];
        let mut col = a;
        for j in 0..self.m {
            for (i, row) in out.iter_mut().enumerate() {
                row[j] = self.coeff(col, i);
            }
            col = mul_by_x(col, &self.modulus, self.m);
        }
        out
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: u32) -> Option<u64> {
        let group = self.order() as u64 - 1;
        let l = self.log(a)? as u64;
        Some(group / gcd(group, l))
    }
}

impl Field for ExtField {
    fn order(&self) -> u32 {
        1 << (2 * self.m)
    }

    #[inline]
    fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let t = &self.tables;
        t.exp[(t.log[a as usize] + t.log[b as usize]) as usize]
    }

    fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let group = self.order() - 1;
        let l = self.tables.log[a as usize];
        Some(self.tables.exp[((group - l) % group) as usize])
    }
}

fn mul_by_x(a: u32, modulus: &[F4], m: usize) -> u32 {
    let shifted = a << 2;
    let top = F4::new((shifted >> (2 * m)) as u8);
    let mut low = shifted & ((1u32 << (2 * m)) - 1);
    if !top.is_zero() {
        for (j, &c) in modulus.iter().take(m).enumerate() {
            low ^= ((top * c).code() as u32) << (2 * j);
        }
    }
    low
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Searches moduli of degree `m` in lexicographic order (constant term
/// first) and returns the first one under which x is primitive.
pub fn first_primitive_modulus(m: usize) -> Option<Vec<F4>> {
    if m == 0 || m > MAX_DEGREE {
        return None;
    }
    let total = 1u64 << (2 * m);
    (0..total).find_map(|code| {
        let mut modulus: Vec<F4> = (0..m).map(|j| F4::new((code >> (2 * j)) as u8)).collect();
        if modulus[0].is_zero() {
            return None;
        }
        modulus.push(F4::ONE);
        ExtField::with_modulus(modulus.clone()).ok().map(|_| modulus)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Gf4;

    #[test]
    fn default_moduli_are_first_primitive() {
        for m in 1..=MAX_DEGREE {
            let found = first_primitive_modulus(m).unwrap();
            let codes: Vec<u8> = found.iter().map(|c| c.code()).collect();
            assert_eq!(codes.as_slice(), DEFAULT_MODULI[m - 1], "m = {m}");
        }
    }

    #[test]
    fn degree_one_matches_gf4() {
        let f = ExtField::build(1).unwrap();
        assert_eq!(f.order(), 4);
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(f.mul(a, b), Gf4.mul(a, b));
                assert_eq!(f.add(a, b), Gf4.add(a, b));
            }
            assert_eq!(f.inv(a), Gf4.inv(a));
        }
    }

    #[test]
    fn degree_six_generator_has_full_order() {
        let f = ExtField::build(6).unwrap();
        assert_eq!(f.order(), 4096);
        let g = f.generator();
        // 4095 = 3^2 * 5 * 7 * 13: the order is full iff no maximal divisor kills g
        assert_eq!(f.pow(g, 4095), 1);
        for p in [3u64, 5, 7, 13] {
            assert_ne!(f.pow(g, 4095 / p), 1, "p = {p}");
        }
        assert_eq!(f.element_order(g), Some(4095));
    }

    #[test]
    fn degree_two_frobenius_fixes_base_field() {
        let f = ExtField::build(2).unwrap();
        let fixed: Vec<u32> = f.elements().filter(|&a| f.pow(a, 4) == a).collect();
        assert_eq!(fixed, vec![0, 1, 2, 3]);
    }

    #[test]
    fn unsupported_degrees() {
        assert_eq!(ExtField::build(0).unwrap_err(), Error::UnsupportedDegree(0));
        assert_eq!(ExtField::build(9).unwrap_err(), Error::UnsupportedDegree(9));
    }

    #[test]
    fn inverses_exhaustive_small() {
        for m in 1..=4 {
            let f = ExtField::build(m).unwrap();
            for a in 1..f.order() {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive_gf16() {
        let f = ExtField::build(2).unwrap();
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for c in f.elements() {
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }

    #[test]
    fn mul_matrix_acts_like_multiplication() {
        let f = ExtField::build(3).unwrap();
        for a in [1u32, 4, 17, 63] {
            let mat = f.mul_matrix(a);
            for s in [1u32, 5, 22, 40] {
                let coords: Vec<F4> = (0..3).map(|j| f.coeff(s, j)).collect();
                let prod: Vec<F4> = mat
                    .iter()
                    .map(|row| row.iter().zip(&coords).fold(F4::ZERO, |acc, (&x, &y)| acc + x * y))
                    .collect();
                assert_eq!(f.from_coeffs(&prod), f.mul(a, s));
            }
        }
    }
}
