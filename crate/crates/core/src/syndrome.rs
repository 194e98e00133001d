//! Linear "keys" of Pauli errors with respect to a stabilizer code.
//!
//! The key of e packs its syndrome σ(e) (products with the r stabilizer basis
//! rows) above its logical signature λ(e) (products with 2k vectors completing
//! the stabilizer to a basis of C^⊥s). For errors with equal syndromes,
//! e1 + e2 ∈ C exactly when their logical signatures agree too, so one sorted
//! key list answers both "same syndrome?" and "differ by a stabilizer?".
//! Keys are linear, so the key of a vector is the XOR of its per-qubit keys.

use crate::error::{Error, Result};
use crate::stabilizer::{StabilizerCode, SymplecticVector};

#[derive(Clone, Debug)]
pub struct KeyTable {
    n: usize,
    r: usize,
    logical_bits: usize,
    /// `cols[i][s]`: key of the single-qubit Pauli with GF(4) code `s` at qubit `i`.
    cols: Vec<[u128; 4]>,
    logicals: Vec<SymplecticVector>,
}

impl KeyTable {
    /// Fails when n + k exceeds 128 key bits.
    pub fn new(code: &StabilizerCode) -> Result<Self> {
        let n = code.n();
        let r = code.r();
        let logicals = code.logical_basis();
        let logical_bits = logicals.len();
        if r + logical_bits > 128 {
            return Err(Error::LimitExceeded(format!("{} key bits exceed 128", r + logical_bits)));
        }
        let mut cols = vec![[0u128; 4]; n];
        for (i, col) in cols.iter_mut().enumerate() {
            for (s, slot) in col.iter_mut().enumerate().skip(1) {
                let mut e = SymplecticVector::zeros(n);
                e.set_symbol(i, crate::gf4::F4::new(s as u8));
                let mut key = 0u128;
                for (j, b) in code.basis().iter().enumerate() {
                    key |= (b.ip_unchecked(&e) as u128) << (logical_bits + j);
                }
                for (j, l) in logicals.iter().enumerate() {
                    key |= (l.ip_unchecked(&e) as u128) << j;
                }
                *slot = key;
            }
        }
        Ok(KeyTable { n, r, logical_bits, cols, logicals })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// Number of logical-signature bits (2k).
    pub fn logical_bits(&self) -> usize {
        self.logical_bits
    }

    pub fn total_bits(&self) -> usize {
        self.r + self.logical_bits
    }

    pub fn logicals(&self) -> &[SymplecticVector] {
        &self.logicals
    }

    #[inline]
    pub fn col(&self, i: usize, s: usize) -> u128 {
        self.cols[i][s]
    }

    pub fn key(&self, v: &SymplecticVector) -> u128 {
        (0..self.n).fold(0, |acc, i| acc ^ self.cols[i][v.symbol(i).code() as usize])
    }

    #[inline]
    pub fn syndrome_of(&self, key: u128) -> u128 {
        key >> self.logical_bits
    }

    #[inline]
    pub fn logical_of(&self, key: u128) -> u128 {
        key & ((1u128 << self.logical_bits) - 1)
    }
}
