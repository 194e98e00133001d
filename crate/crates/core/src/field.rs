//! Finite fields of characteristic two, with elements packed into `u32`.
//!
//! Every field here uses XOR for addition: GF(2) elements are `0`/`1`, GF(4)
//! elements are the 2-bit codes of [`F4`](crate::gf4::F4), and GF(4^m)
//! elements pack `m` GF(4) coefficients two bits apiece.

use std::fmt::Debug;

use crate::gf4::F4;

pub trait Field: Clone + Debug + Send + Sync {
    /// Number of elements.
    fn order(&self) -> u32;

    fn mul(&self, a: u32, b: u32) -> u32;

    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: u32) -> Option<u32>;

    #[inline]
    fn add(&self, a: u32, b: u32) -> u32 {
        a ^ b
    }

    #[inline]
    fn zero(&self) -> u32 {
        0
    }

    #[inline]
    fn one(&self) -> u32 {
        1
    }

    fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn elements(&self) -> std::ops::Range<u32> {
        0..self.order()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Gf2;

impl Field for Gf2 {
    fn order(&self) -> u32 {
        2
    }

    #[inline]
    fn mul(&self, a: u32, b: u32) -> u32 {
        a & b
    }

    fn inv(&self, a: u32) -> Option<u32> {
        (a == 1).then_some(1)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Gf4;

impl Gf4 {
    #[inline]
    pub fn conj(&self, a: u32) -> u32 {
        F4::new(a as u8).conj().code() as u32
    }
}

impl Field for Gf4 {
    fn order(&self) -> u32 {
        4
    }

    #[inline]
    fn mul(&self, a: u32, b: u32) -> u32 {
        (F4::new(a as u8) * F4::new(b as u8)).code() as u32
    }

    fn inv(&self, a: u32) -> Option<u32> {
        F4::new(a as u8).inv().map(|x| x.code() as u32)
    }
}
