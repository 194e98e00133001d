//! The four-element field GF(4) = {0, 1, ω, ω²}.
//!
//! Elements are stored as their coordinates in the basis {1, ω}: bit 0 is the
//! coefficient of 1 and bit 1 the coefficient of ω. This gives the codes
//! 0 ↔ 0, 1 ↔ 1, 2 ↔ ω, 3 ↔ ω², which are also the digits used when writing
//! generator polynomials (`1^6 2^3 1^0` is x⁶ + ωx³ + 1). Addition is XOR of
//! the codes.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct F4(u8);

const MUL: [[u8; 4]; 4] = [[0, 0, 0, 0], [0, 1, 2, 3], [0, 2, 3, 1], [0, 3, 1, 2]];
const INV: [u8; 4] = [0, 1, 3, 2];

impl F4 {
    pub const ZERO: F4 = F4(0);
    pub const ONE: F4 = F4(1);
    pub const OMEGA: F4 = F4(2);
    pub const OMEGA2: F4 = F4(3);
    pub const ALL: [F4; 4] = [F4(0), F4(1), F4(2), F4(3)];

    /// Builds an element from its 2-bit code; only the low two bits are used.
    #[inline]
    pub const fn new(code: u8) -> Self {
        F4(code & 3)
    }

    #[inline]
    pub const fn code(self) -> u8 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Frobenius conjugation x ↦ x².
    #[inline]
    pub const fn conj(self) -> Self {
        // swaps ω and ω², fixes 0 and 1
        F4([0, 1, 3, 2][self.0 as usize])
    }

    #[inline]
    pub fn inv(self) -> Option<Self> {
        (self.0 != 0).then(|| F4(INV[self.0 as usize]))
    }

    /// Absolute trace Tr(x) = x + x², which lands in GF(2).
    #[inline]
    pub fn trace(self) -> u8 {
        (self + self.conj()).0
    }
}

impl Add for F4 {
    type Output = F4;
    #[inline]
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: F4) -> F4 {
        F4(self.0 ^ rhs.0)
    }
}

impl AddAssign for F4 {
    #[inline]
    #[allow(clippy::suspicious_op_assign_impl)]
    fn add_assign(&mut self, rhs: F4) {
        self.0 ^= rhs.0;
    }
}

impl Mul for F4 {
    type Output = F4;
    #[inline]
    fn mul(self, rhs: F4) -> F4 {
        F4(MUL[self.0 as usize][rhs.0 as usize])
    }
}

impl MulAssign for F4 {
    #[inline]
    fn mul_assign(&mut self, rhs: F4) {
        *self = *self * rhs;
    }
}

impl fmt::Debug for F4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(["0", "1", "w", "w2"][self.0 as usize])
    }
}

impl fmt::Display for F4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Field sum.
pub fn f4_add(x: F4, y: F4) -> F4 {
    x + y
}

/// Field product.
pub fn f4_mul(x: F4, y: F4) -> F4 {
    x * y
}

/// Conjugate x².
pub fn f4_conj(x: F4) -> F4 {
    x.conj()
}

#[cfg(test)]
mod tests {
    use super::*;

    const W: F4 = F4::OMEGA;
    const W2: F4 = F4::OMEGA2;

    #[test]
    fn addition_examples() {
        assert_eq!(f4_add(W, W), F4::ZERO);
        assert_eq!(f4_add(F4::ONE, W), W2);
        assert_eq!(f4_add(F4::ZERO, W2), W2);
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(f4_mul(W, W), W2);
        assert_eq!(f4_mul(W, W2), F4::ONE);
        for x in F4::ALL {
            assert_eq!(f4_mul(F4::ZERO, x), F4::ZERO);
        }
    }

    #[test]
    fn conjugation_examples() {
        assert_eq!(f4_conj(W), W2);
        assert_eq!(f4_conj(F4::ONE), F4::ONE);
        assert_eq!(f4_conj(F4::ZERO), F4::ZERO);
    }

    #[test]
    fn field_axioms_exhaustive() {
        for x in F4::ALL {
            assert_eq!(x + x, F4::ZERO);
            assert_eq!(x.conj().conj(), x);
            assert_eq!(x.conj(), x * x);
            if let Some(i) = x.inv() {
                assert_eq!(x * i, F4::ONE);
            }
            for y in F4::ALL {
                assert_eq!(x + y, y + x);
                assert_eq!(x * y, y * x);
                assert_eq!((x + y).conj(), x.conj() + y.conj());
                assert_eq!((x * y).conj(), x.conj() * y.conj());
                for z in F4::ALL {
                    assert_eq!((x + y) + z, x + (y + z));
                    assert_eq!((x * y) * z, x * (y * z));
                    assert_eq!(x * (y + z), x * y + x * z);
                }
            }
        }
    }

    #[test]
    fn nonzero_elements_are_cyclic_of_order_three() {
        assert_eq!(W * W * W, F4::ONE);
        assert_ne!(W, F4::ONE);
        assert_ne!(W * W, F4::ONE);
    }

    #[test]
    fn trace_is_binary() {
        assert_eq!(F4::ZERO.trace(), 0);
        assert_eq!(F4::ONE.trace(), 0);
        assert_eq!(W.trace(), 1);
        assert_eq!(W2.trace(), 1);
    }
}
