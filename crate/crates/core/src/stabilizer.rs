//! Pauli errors, their symplectic and GF(4) pictures, and stabilizer codes.
//!
//! A Pauli on n qubits (modulo phase) is a pair (a|b) ∈ GF(2)²ⁿ, stored as two
//! bit-packed planes. The same planes read coordinate-wise are the 2-bit GF(4)
//! codes, which fixes the correspondence X ↔ 1, Z ↔ ω, Y ↔ ω². Under it the
//! trace inner product on GF(4)ⁿ equals the symplectic inner product.

use std::fmt;

use rayon::prelude::*;

use crate::classical::{binary_dual_containing, hermitian_dual_containing, LinearCode};
use crate::error::{Error, Result};
use crate::field::{Gf2, Gf4};
use crate::gf4::F4;

const WORD: usize = 64;

#[inline]
fn words(n: usize) -> usize {
    n.div_ceil(WORD)
}

/// A vector (a|b) ∈ GF(2)²ⁿ.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymplecticVector {
    n: usize,
    x: Vec<u64>,
    z: Vec<u64>,
}

impl SymplecticVector {
    pub fn zeros(n: usize) -> Self {
        SymplecticVector { n, x: vec![0; words(n)], z: vec![0; words(n)] }
    }

    /// From the two bit strings a and b (entries 0/1).
    pub fn from_bits(a: &[u8], b: &[u8]) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::LengthMismatch { left: a.len(), right: b.len() });
        }
        let mut v = Self::zeros(a.len());
        for i in 0..a.len() {
            v.set_symbol(i, F4::new((a[i] & 1) | ((b[i] & 1) << 1)));
        }
        Ok(v)
    }

    /// Parses a Pauli string such as `XZZXI`; `I`, `X`, `Y`, `Z` only.
    pub fn from_pauli_str(s: &str) -> Result<Self> {
        let symbols: Vec<F4> = s
            .chars()
            .map(|c| match c {
                'I' => Ok(F4::ZERO),
                'X' => Ok(F4::ONE),
                'Z' => Ok(F4::OMEGA),
                'Y' => Ok(F4::OMEGA2),
                _ => Err(Error::Parse(format!("`{c}` is not a Pauli letter"))),
            })
            .collect::<Result<_>>()?;
        Ok(Self::from_f4(&F4Vector(symbols)))
    }

    /// Builds a vector with n ≤ 64 from its packed planes.
    pub fn from_words(n: usize, x: u64, z: u64) -> Self {
        assert!(n <= WORD);
        let mask = if n == WORD { u64::MAX } else { (1u64 << n) - 1 };
        let mut v = Self::zeros(n);
        if n > 0 {
            v.x[0] = x & mask;
            v.z[0] = z & mask;
        }
        v
    }

    pub fn from_f4(v: &F4Vector) -> Self {
        let mut out = Self::zeros(v.len());
        for (i, &s) in v.0.iter().enumerate() {
            out.set_symbol(i, s);
        }
        out
    }

    pub fn to_f4(&self) -> F4Vector {
        F4Vector((0..self.n).map(|i| self.symbol(i)).collect())
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn x_words(&self) -> &[u64] {
        &self.x
    }

    pub fn z_words(&self) -> &[u64] {
        &self.z
    }

    #[inline]
    pub fn symbol(&self, i: usize) -> F4 {
        let (w, b) = (i / WORD, i % WORD);
        F4::new((((self.x[w] >> b) & 1) | (((self.z[w] >> b) & 1) << 1)) as u8)
    }

    #[inline]
    pub fn set_symbol(&mut self, i: usize, s: F4) {
        let (w, b) = (i / WORD, i % WORD);
        let c = s.code() as u64;
        self.x[w] = (self.x[w] & !(1 << b)) | ((c & 1) << b);
        self.z[w] = (self.z[w] & !(1 << b)) | (((c >> 1) & 1) << b);
    }

    /// Bit `c` of the 2n-bit concatenation a‖b.
    #[inline]
    pub fn bit(&self, c: usize) -> bool {
        let (plane, i) = if c < self.n { (&self.x, c) } else { (&self.z, c - self.n) };
        (plane[i / WORD] >> (i % WORD)) & 1 == 1
    }

    pub fn is_zero(&self) -> bool {
        self.x.iter().chain(&self.z).all(|&w| w == 0)
    }

    pub fn add_assign(&mut self, other: &SymplecticVector) {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.x.iter_mut().zip(&other.x) {
            *a ^= b;
        }
        for (a, b) in self.z.iter_mut().zip(&other.z) {
            *a ^= b;
        }
    }

    pub fn add(&self, other: &SymplecticVector) -> SymplecticVector {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    /// a·b′ + a′·b, assuming equal lengths.
    #[inline]
    pub fn ip_unchecked(&self, other: &SymplecticVector) -> u8 {
        let mut acc = 0u64;
        for i in 0..self.x.len() {
            acc ^= (self.x[i] & other.z[i]) ^ (other.x[i] & self.z[i]);
        }
        (acc.count_ones() & 1) as u8
    }

    /// (a|b) ↦ (b|a); the symplectic product with v is the ordinary dot
    /// product with `v.swapped()`.
    pub fn swapped(&self) -> SymplecticVector {
        SymplecticVector { n: self.n, x: self.z.clone(), z: self.x.clone() }
    }

    /// Number of non-identity coordinates.
    pub fn weight(&self) -> usize {
        self.x.iter().zip(&self.z).map(|(a, b)| (a | b).count_ones() as usize).sum()
    }

    /// Index of first and last non-identity coordinate.
    pub fn support_range(&self) -> Option<(usize, usize)> {
        let support: Vec<u64> = self.x.iter().zip(&self.z).map(|(a, b)| a | b).collect();
        let first = support.iter().enumerate().find(|(_, w)| **w != 0).map(|(i, w)| i * WORD + w.trailing_zeros() as usize)?;
        let last = support
            .iter()
            .enumerate()
            .rev()
            .find(|(_, w)| **w != 0)
            .map(|(i, w)| i * WORD + (WORD - 1 - w.leading_zeros() as usize))?;
        Some((first, last))
    }

    /// Span from first to last non-identity coordinate; 0 for the identity.
    pub fn burst_length(&self) -> usize {
        self.support_range().map_or(0, |(a, b)| b - a + 1)
    }

    /// Multiplies coordinate `i` by a GF(4) scalar.
    pub fn scale_symbol(&mut self, i: usize, c: F4) {
        let s = self.symbol(i);
        self.set_symbol(i, s * c);
    }

    pub fn to_pauli_string(&self) -> String {
        (0..self.n).map(|i| ['I', 'X', 'Z', 'Y'][self.symbol(i).code() as usize]).collect()
    }
}

impl fmt::Debug for SymplecticVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_pauli_string())
    }
}

impl fmt::Display for SymplecticVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_pauli_string())
    }
}

/// A vector over GF(4).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct F4Vector(pub Vec<F4>);

impl F4Vector {
    pub fn zeros(n: usize) -> Self {
        F4Vector(vec![F4::ZERO; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn burst_length(&self) -> usize {
        let first = self.0.iter().position(|s| !s.is_zero());
        let last = self.0.iter().rposition(|s| !s.is_zero());
        match (first, last) {
            (Some(a), Some(b)) => b - a + 1,
            _ => 0,
        }
    }

    pub fn scale(&self, c: F4) -> F4Vector {
        F4Vector(self.0.iter().map(|&s| s * c).collect())
    }

    pub fn conj(&self) -> F4Vector {
        F4Vector(self.0.iter().map(|s| s.conj()).collect())
    }
}

/// A Pauli operator i^λ X(a) Z(b). The phase is carried along but no code
/// predicate looks at it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PauliError {
    pub phase: u8,
    pub sym: SymplecticVector,
}

impl PauliError {
    pub fn new(phase: u8, sym: SymplecticVector) -> Self {
        PauliError { phase: phase % 4, sym }
    }

    pub fn identity(n: usize) -> Self {
        PauliError { phase: 0, sym: SymplecticVector::zeros(n) }
    }

    pub fn burst_length(&self) -> usize {
        self.sym.burst_length()
    }
}

pub fn symplectic_ip(u: &SymplecticVector, v: &SymplecticVector) -> Result<u8> {
    if u.n != v.n {
        return Err(Error::LengthMismatch { left: u.n, right: v.n });
    }
    Ok(u.ip_unchecked(v))
}

/// Σ uᵢvᵢ² + uᵢ²vᵢ, which always lies in GF(2).
pub fn trace_ip(u: &F4Vector, v: &F4Vector) -> Result<u8> {
    if u.len() != v.len() {
        return Err(Error::LengthMismatch { left: u.len(), right: v.len() });
    }
    let s = u.0.iter().zip(&v.0).fold(F4::ZERO, |acc, (&a, &b)| acc + a * b.conj() + a.conj() * b);
    debug_assert!(s.code() <= 1);
    Ok(s.code())
}

pub fn f4_to_symplectic(v: &F4Vector) -> SymplecticVector {
    SymplecticVector::from_f4(v)
}

pub fn symplectic_to_f4(v: &SymplecticVector) -> F4Vector {
    v.to_f4()
}

/// Row-reduces `rows` over GF(2) in the 2n-bit a‖b coordinates. Returns the
/// independent reduced rows and their pivot columns.
pub fn gf2_row_reduce(n: usize, rows: &[SymplecticVector]) -> (Vec<SymplecticVector>, Vec<usize>) {
    let mut rows: Vec<SymplecticVector> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..2 * n {
        let Some(p) = (r..rows.len()).find(|&i| rows[i].bit(c)) else { continue };
        rows.swap(r, p);
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row.bit(c) {
                row.add_assign(&pivot);
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

/// Basis of {v : v·rᵢ = 0 for all i} (ordinary dot product on a‖b).
fn gf2_nullspace(n: usize, rows: &[SymplecticVector]) -> Vec<SymplecticVector> {
    let (red, pivots) = gf2_row_reduce(n, rows);
    let mut out = Vec::new();
    for fc in (0..2 * n).filter(|c| !pivots.contains(c)) {
        let mut v = SymplecticVector::zeros(n);
        set_bit(&mut v, fc);
        for (row, &pc) in red.iter().zip(&pivots) {
            if row.bit(fc) {
                set_bit(&mut v, pc);
            }
        }
        out.push(v);
    }
    out
}

fn set_bit(v: &mut SymplecticVector, c: usize) {
    let n = v.n;
    let (plane, i) = if c < n { (&mut v.x, c) } else { (&mut v.z, c - n) };
    plane[i / WORD] |= 1 << (i % WORD);
}

/// A stabilizer code: a self-orthogonal subspace C ⊆ GF(2)²ⁿ with
/// C ⊆ C^⊥s, encoding k = n − dim C qubits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerCode {
    n: usize,
    basis: Vec<SymplecticVector>,
    pivots: Vec<usize>,
}

impl StabilizerCode {
    pub fn n(&self) -> usize {
        self.n
    }

    /// GF(2)-rank r of the stabilizer.
    pub fn r(&self) -> usize {
        self.basis.len()
    }

    pub fn k(&self) -> usize {
        self.n - self.basis.len()
    }

    /// Reduced-echelon basis of C.
    pub fn basis(&self) -> &[SymplecticVector] {
        &self.basis
    }

    /// Reduces `v` against the echelon basis; zero iff `v ∈ C`.
    pub fn reduce(&self, v: &SymplecticVector) -> SymplecticVector {
        let mut out = v.clone();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if out.bit(p) {
                out.add_assign(row);
            }
        }
        out
    }

    pub fn contains(&self, v: &SymplecticVector) -> bool {
        self.reduce(v).is_zero()
    }

    /// The r syndrome bits of `v`, bit j = ⟨v, basis_j⟩.
    pub fn syndrome_bits(&self, v: &SymplecticVector) -> Vec<u8> {
        self.basis.iter().map(|b| b.ip_unchecked(v)).collect()
    }

    /// Whether `v` commutes with every stabilizer.
    pub fn in_normalizer(&self, v: &SymplecticVector) -> bool {
        self.basis.iter().all(|b| b.ip_unchecked(v) == 0)
    }

    /// A basis of the symplectic dual C^⊥s (dimension n + k).
    pub fn normalizer_basis(&self) -> Vec<SymplecticVector> {
        let swapped: Vec<SymplecticVector> = self.basis.iter().map(|b| b.swapped()).collect();
        gf2_nullspace(self.n, &swapped)
    }

    /// 2k vectors completing the stabilizer basis to a basis of C^⊥s.
    /// Membership of v ∈ C^⊥s in C is then equivalent to v commuting with
    /// every returned vector.
    pub fn logical_basis(&self) -> Vec<SymplecticVector> {
        let mut ext = self.basis.clone();
        let mut logicals = Vec::new();
        for u in self.normalizer_basis() {
            let (_, before) = gf2_row_reduce(self.n, &ext);
            ext.push(u.clone());
            let (_, after) = gf2_row_reduce(self.n, &ext);
            if after.len() > before.len() {
                logicals.push(u);
            } else {
                ext.pop();
            }
            if logicals.len() == 2 * self.k() {
                break;
            }
        }
        logicals
    }
}

/// The [[n, n]] code with trivial stabilizer.
pub fn trivial_code(n: usize) -> StabilizerCode {
    StabilizerCode { n, basis: Vec::new(), pivots: Vec::new() }
}

/// Builds the stabilizer spanned by `rows`. Rejects spans that are not
/// self-orthogonal, naming the first anticommuting pair of input rows.
pub fn additive_code(n: usize, rows: &[SymplecticVector]) -> Result<StabilizerCode> {
    for (i, r) in rows.iter().enumerate() {
        if r.len() != n {
            return Err(Error::LengthMismatch { left: r.len(), right: n });
        }
        for (j, s) in rows.iter().enumerate().skip(i + 1) {
            if r.ip_unchecked(s) == 1 {
                return Err(Error::CommutationViolation(i, j));
            }
        }
    }
    let (basis, pivots) = gf2_row_reduce(n, rows);
    Ok(StabilizerCode { n, basis, pivots })
}

/// Quantum code from a GF(4)-linear code `c` with c^⊥h ⊆ c. The stabilizer
/// is c^⊥h read as an additive code: the GF(2)-span of {h, ωh} over the
/// conjugated rows h of a check matrix of c.
pub fn hermitian_construct(c: &LinearCode<Gf4>) -> Result<StabilizerCode> {
    if !hermitian_dual_containing(c) {
        return Err(Error::Precondition("code does not contain its Hermitian dual".into()));
    }
    let n = c.n();
    let mut rows = Vec::with_capacity(2 * (n - c.k()));
    for h in c.check_matrix().rows() {
        let v = F4Vector(h.iter().map(|&x| F4::new(x as u8).conj()).collect());
        rows.push(SymplecticVector::from_f4(&v));
        rows.push(SymplecticVector::from_f4(&v.scale(F4::OMEGA)));
    }
    additive_code(n, &rows)
}

/// CSS code from binary codes with C2^⊥ ⊆ C1: X-type checks from H(C1) and
/// Z-type checks from H(C2), giving [[n, k1 + k2 − n]].
pub fn css_construct(c1: &LinearCode<Gf2>, c2: &LinearCode<Gf2>) -> Result<StabilizerCode> {
    if !binary_dual_containing(c2, c1)? {
        return Err(Error::Precondition("C2^⊥ is not contained in C1".into()));
    }
    let n = c1.n();
    let zero = vec![0u8; n];
    let mut rows = Vec::new();
    for h in c1.check_matrix().rows() {
        let bits: Vec<u8> = h.iter().map(|&x| x as u8).collect();
        rows.push(SymplecticVector::from_bits(&bits, &zero)?);
    }
    for h in c2.check_matrix().rows() {
        let bits: Vec<u8> = h.iter().map(|&x| x as u8).collect();
        rows.push(SymplecticVector::from_bits(&zero, &bits)?);
    }
    additive_code(n, &rows)
}

/// Which set the minimum weight is taken over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DistanceConvention {
    /// min weight over C^⊥s \ C (logical operators only).
    Logical,
    /// min weight over C^⊥s \ {0}.
    Pure,
}

pub const DEFAULT_DISTANCE_LIMIT: u64 = 1 << 28;

/// Minimum weight over C^⊥s \ C.
pub fn min_distance(code: &StabilizerCode) -> Result<usize> {
    min_distance_with(code, DistanceConvention::Logical, DEFAULT_DISTANCE_LIMIT)
}

/// Exhaustive distance over the 2^(n+k) elements of C^⊥s. Fails for k = 0
/// under the logical convention.
pub fn min_distance_with(code: &StabilizerCode, conv: DistanceConvention, limit: u64) -> Result<usize> {
    let n = code.n();
    let k = code.k();
    let dim = n + k;
    if dim >= 64 || (1u64 << dim) > limit {
        return Err(Error::LimitExceeded(format!("normalizer has 2^{dim} elements (limit {limit})")));
    }
    if k == 0 && conv == DistanceConvention::Logical {
        return Err(Error::Precondition("k = 0: no logical operators".into()));
    }
    let stab = code.basis().to_vec();
    let logical = code.logical_basis();
    let r = stab.len();
    let l = logical.len();
    // all elements c + Σ lⱼ with the logical part nonzero (Logical) or any nonzero element (Pure)
    let logical_masks: Vec<u64> = match conv {
        DistanceConvention::Logical => (1..1u64 << l).collect(),
        DistanceConvention::Pure => (0..1u64 << l).collect(),
    };
    let best = logical_masks
        .par_iter()
        .map(|&mask| {
            let mut v = SymplecticVector::zeros(n);
            for (j, lv) in logical.iter().enumerate() {
                if mask >> j & 1 == 1 {
                    v.add_assign(lv);
                }
            }
            let mut best = if mask == 0 { usize::MAX } else { v.weight() };
            // Gray-code walk over the stabilizer span
            for i in 1u64..1 << r {
                let flip = i.trailing_zeros() as usize;
                v.add_assign(&stab[flip]);
                best = best.min(v.weight());
            }
            best
        })
        .min()
        .unwrap_or(usize::MAX);
    if best == usize::MAX {
        return Err(Error::Precondition("code has no nonzero normalizer elements".into()));
    }
    Ok(best)
}
