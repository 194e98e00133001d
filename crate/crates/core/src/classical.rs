//! Classical linear and cyclic codes over GF(2), GF(4) and GF(4^m).

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::ext::ExtField;
use crate::field::{Field, Gf2, Gf4};
use crate::matrix::Matrix;
use crate::poly::Poly;

/// An [n, k] linear code with full-rank generator and check matrices.
#[derive(Clone, Debug)]
pub struct LinearCode<F: Field> {
    field: F,
    n: usize,
    gen: Matrix,
    check: Matrix,
}

impl<F: Field> LinearCode<F> {
    /// Code spanned by the rows of `gen`. Dependent rows are reduced away;
    /// an independent generator is kept as given.
    pub fn from_generator(field: F, gen: Matrix) -> Self {
        let n = gen.n_cols();
        let gen = independent_rows(gen, &field);
        let check = gen.nullspace(&field);
        LinearCode { field, n, gen, check }
    }

    /// Code with parity-check matrix `check`.
    pub fn from_check(field: F, check: Matrix) -> Self {
        let n = check.n_cols();
        let check = independent_rows(check, &field);
        let gen = check.nullspace(&field);
        LinearCode { field, n, gen, check }
    }

    pub fn full_space(field: F, n: usize) -> Self {
        LinearCode { field, n, gen: Matrix::identity(n), check: Matrix::empty(n) }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.gen.n_rows()
    }

    pub fn gen_matrix(&self) -> &Matrix {
        &self.gen
    }

    pub fn check_matrix(&self) -> &Matrix {
        &self.check
    }

    /// H·vᵀ.
    pub fn syndrome(&self, v: &[u32]) -> Vec<u32> {
        self.check
            .rows()
            .iter()
            .map(|h| h.iter().zip(v).fold(0, |acc, (&a, &b)| acc ^ self.field.mul(a, b)))
            .collect()
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        v.len() == self.n && self.syndrome(v).iter().all(|&s| s == 0)
    }

    /// Minimum Hamming weight of a nonzero codeword by listing all q^k
    /// codewords. `None` when the codebook exceeds `limit` words or k = 0.
    pub fn min_distance_exhaustive(&self, limit: u64) -> Option<usize> {
        let q = self.field.order() as u64;
        let k = self.k() as u32;
        let total = q.checked_pow(k)?;
        if total > limit || k == 0 {
            return None;
        }
        let mut best = usize::MAX;
        let mut msg = vec![0u32; k as usize];
        for idx in 1..total {
            let mut t = idx;
            for m in msg.iter_mut() {
                *m = (t % q) as u32;
                t /= q;
            }
            let mut word = vec![0u32; self.n];
            for (row, &m) in self.gen.rows().iter().zip(&msg) {
                if m == 0 {
                    continue;
                }
                for (w, &g) in word.iter_mut().zip(row) {
                    *w ^= self.field.mul(m, g);
                }
            }
            best = best.min(word.iter().filter(|&&x| x != 0).count());
        }
        Some(best)
    }
}

fn independent_rows<F: Field>(m: Matrix, f: &F) -> Matrix {
    if m.rank(f) == m.n_rows() {
        m
    } else {
        let mut r = m;
        r.rref(f);
        r
    }
}

/// A cyclic code ⟨g⟩ with g | xⁿ − 1.
#[derive(Clone, Debug)]
pub struct CyclicCode<F: Field> {
    pub base: LinearCode<F>,
    pub gen_poly: Poly,
}

/// Builds ⟨g⟩ of length n; the generator matrix rows are the first
/// n − deg g shifts of g.
pub fn cyclic_from_poly<F: Field>(g: &Poly, n: usize, field: F) -> Result<CyclicCode<F>> {
    let deg = g.degree().ok_or(Error::InvalidGenerator { n })?;
    if deg > n || !g.divides(&Poly::x_n_minus_one(n), &field) {
        return Err(Error::InvalidGenerator { n });
    }
    let k = n - deg;
    let mut gen = Matrix::zeros(k, n);
    for i in 0..k {
        for (j, &c) in g.coeffs().iter().enumerate() {
            gen.set(i, i + j, c);
        }
    }
    Ok(CyclicCode { base: LinearCode::from_generator(field, gen), gen_poly: g.clone() })
}

/// Result of the classical burst analysis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BurstCapability {
    pub l: usize,
    pub end_around: bool,
    /// Two distinct bursts of length ≤ l + 1 sharing a syndrome.
    pub witness: Option<(Vec<u32>, Vec<u32>)>,
}

/// Largest ℓ such that all error patterns of burst length ≤ ℓ have distinct
/// syndromes. With `end_around`, bursts may wrap from position n−1 to 0.
/// The zero code separates every pattern and reports ℓ = n.
pub fn classical_burst_capability<F: Field>(code: &LinearCode<F>, end_around: bool) -> BurstCapability {
    let n = code.n();
    if code.k() == 0 {
        return BurstCapability { l: n, end_around, witness: None };
    }
    let q = code.field().order();
    let mut seen: HashMap<Vec<u32>, Vec<u32>> = HashMap::new();
    seen.insert(vec![0; code.check_matrix().n_rows()], vec![0; n]);
    let mut l = 0;
    let mut witness = None;
    'grow: for len in 1..=n {
        let starts = if end_around && len < n { n } else { n + 1 - len };
        for start in 0..starts {
            let positions: Vec<usize> = (0..len).map(|j| (start + j) % n).collect();
            let inner = len.saturating_sub(2) as u32;
            let ends = if len == 1 { (q - 1) as u64 } else { ((q - 1) as u64).pow(2) };
            let total = ends * (q as u64).pow(inner);
            for idx in 0..total {
                let e = burst_pattern(n, &positions, idx, q);
                let s = code.syndrome(&e);
                match seen.get(&s) {
                    Some(prev) if *prev != e => {
                        witness = Some((prev.clone(), e));
                        break 'grow;
                    }
                    Some(_) => {}
                    None => {
                        seen.insert(s, e);
                    }
                }
            }
        }
        l = len;
    }
    let reiger = (n - code.k()) / 2;
    assert!(l <= reiger, "burst capability {l} exceeds the Reiger bound {reiger}");
    BurstCapability { l, end_around, witness }
}

/// The idx-th pattern supported on `positions` with both end symbols nonzero.
fn burst_pattern(n: usize, positions: &[usize], mut idx: u64, q: u32) -> Vec<u32> {
    let q64 = q as u64;
    let mut e = vec![0u32; n];
    let len = positions.len();
    e[positions[0]] = 1 + (idx % (q64 - 1)) as u32;
    idx /= q64 - 1;
    if len > 1 {
        e[positions[len - 1]] = 1 + (idx % (q64 - 1)) as u32;
        idx /= q64 - 1;
        for &p in &positions[1..len - 1] {
            e[p] = (idx % q64) as u32;
            idx /= q64;
        }
    }
    e
}

/// The [n2, n2 − 2ℓ2, 2ℓ2 + 1] Reed–Solomon code over `field`, as a
/// generalized RS code with check matrix rows (x_j^i) over evaluation points
/// 0, 1, α, α², … (plus the point at infinity when n2 = |F| + 1).
pub fn rs_mds(n2: usize, l2: usize, field: &ExtField) -> Result<LinearCode<ExtField>> {
    let q = field.order() as usize;
    if n2 < 1 || n2 > q + 1 {
        return Err(Error::OutOfRange(format!("length {n2} outside 1..={}", q + 1)));
    }
    if l2 > 0 && 2 * l2 > n2 - 1 {
        return Err(Error::OutOfRange(format!("burst target {l2} exceeds (n2-1)/2 for n2 = {n2}")));
    }
    if l2 == 0 {
        return Ok(LinearCode::full_space(field.clone(), n2));
    }
    let rho = 2 * l2;
    let mut points: Vec<Option<u32>> = std::iter::once(0u32)
        .chain((0..q as u64 - 1).map(|i| field.alpha_pow(i)))
        .take(n2.min(q))
        .map(Some)
        .collect();
    if n2 == q + 1 {
        points.push(None);
    }
    let mut h = Matrix::zeros(rho, n2);
    for (j, pt) in points.iter().enumerate() {
        match pt {
            Some(x) => {
                let mut v = 1u32;
                for i in 0..rho {
                    h.set(i, j, v);
                    v = field.mul(v, *x);
                }
            }
            None => h.set(rho - 1, j, 1),
        }
    }
    Ok(LinearCode::from_check(field.clone(), h))
}

/// Whether c^⊥h ⊆ c for a code over GF(4). c^⊥h is spanned by the
/// conjugated rows of the check matrix.
pub fn hermitian_dual_containing(code: &LinearCode<Gf4>) -> bool {
    let f = Gf4;
    let mut basis = code.gen_matrix().clone();
    basis.rref(&f);
    code.check_matrix()
        .rows()
        .iter()
        .all(|h| basis.row_space_contains(&h.iter().map(|&x| f.conj(x)).collect::<Vec<_>>(), &f))
}

/// Whether C2^⊥ ⊆ C1 for binary codes of equal length.
pub fn binary_dual_containing(c2: &LinearCode<Gf2>, c1: &LinearCode<Gf2>) -> Result<bool> {
    if c1.n() != c2.n() {
        return Err(Error::LengthMismatch { left: c2.n(), right: c1.n() });
    }
    Ok(c2.check_matrix().rows().iter().all(|h| c1.contains(h)))
}

/// The [7, 4] Hamming code with check matrix columns 1..7 in binary.
pub fn hamming_7_4() -> LinearCode<Gf2> {
    let rows = (0..3).map(|b| (1u32..=7).map(|c| (c >> b) & 1).collect()).collect();
    LinearCode::from_check(Gf2, Matrix::from_rows(7, rows))
}
