//! Quantum tensor product codes and the column interleaver.
//!
//! A tensor product code of C1 = [n1, k1] over GF(4) and C2 = [n2, k2] over
//! GF(4^ρ1), ρ1 = n1 − k1, has check matrix H2 ⊗ H1: an n1 × n2 array is a
//! codeword when the C1-syndromes of its columns, read as elements of
//! GF(4^ρ1), form a word of C2. Qubit `c·n1 + r` is array cell (r, c).

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classical::{hermitian_dual_containing, LinearCode};
use crate::error::{Error, Result};
use crate::ext::ExtField;
use crate::field::{Field, Gf4};
use crate::matrix::Matrix;
use crate::stabilizer::{hermitian_construct, StabilizerCode};

/// Parameters and expanded check matrix of a tensor product code.
#[derive(Clone, Debug)]
pub struct QtpcSpec {
    pub n1: usize,
    pub k1: usize,
    pub n2: usize,
    pub k2: usize,
    pub rho1: usize,
    pub rho2: usize,
    pub expanded_check: Matrix,
    pub rank: usize,
    /// [[n1·n2, n1·n2 − 2ρ1ρ2]].
    pub params: (usize, usize),
}

/// H2 ⊗ H1 over GF(4): block (i2, c) is M(H2[i2][c])·H1 where M(a) is the
/// multiplication-by-a matrix of GF(4^ρ1).
pub fn tensor_check_matrix(c1: &LinearCode<Gf4>, c2: &LinearCode<ExtField>) -> Result<Matrix> {
    let h1 = c1.check_matrix();
    let h2 = c2.check_matrix();
    let rho1 = h1.n_rows();
    let ext = c2.field();
    if ext.degree() != rho1 {
        return Err(Error::Precondition(format!(
            "C2 is over GF(4^{}) but C1 has {} checks",
            ext.degree(),
            rho1
        )));
    }
    let (n1, n2) = (c1.n(), c2.n());
    let f = Gf4;
    let mut out = Matrix::zeros(rho1 * h2.n_rows(), n1 * n2);
    for i2 in 0..h2.n_rows() {
        for c in 0..n2 {
            let a = h2.get(i2, c);
            if a == 0 {
                continue;
            }
            let m = ext.mul_matrix(a);
            for (i, mrow) in m.iter().enumerate() {
                for r in 0..n1 {
                    let v = mrow
                        .iter()
                        .enumerate()
                        .fold(0, |acc, (j, &mij)| f.add(acc, f.mul(mij.code() as u32, h1.get(j, r))));
                    out.set(i2 * rho1 + i, c * n1 + r, v);
                }
            }
        }
    }
    Ok(out)
}

/// The quantum tensor product code of a Hermitian dual-containing C1 with C2.
/// Self-orthogonality of the stabilizer is checked during construction.
pub fn qtpc_construct(c1: &LinearCode<Gf4>, c2: &LinearCode<ExtField>) -> Result<(StabilizerCode, QtpcSpec)> {
    if !hermitian_dual_containing(c1) {
        return Err(Error::Precondition("C1 does not contain its Hermitian dual".into()));
    }
    let h = tensor_check_matrix(c1, c2)?;
    let rank = h.rank(&Gf4);
    let tpc = LinearCode::from_check(Gf4, h.clone());
    let code = hermitian_construct(&tpc)?;
    let (n1, n2) = (c1.n(), c2.n());
    let (rho1, rho2) = (n1 - c1.k(), n2 - c2.k());
    let spec = QtpcSpec {
        n1,
        k1: c1.k(),
        n2,
        k2: c2.k(),
        rho1,
        rho2,
        expanded_check: h,
        rank,
        params: (n1 * n2, n1 * n2 - 2 * rho1 * rho2),
    };
    Ok((code, spec))
}

/// Row-group interleaver: the array is cut into s = n1/l1 groups of l1 rows,
/// and each group is sent column by column.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InterleaverMap {
    n1: usize,
    n2: usize,
    l1: usize,
}

impl InterleaverMap {
    pub fn new(n1: usize, n2: usize, l1: usize) -> Result<Self> {
        if l1 == 0 || !n1.is_multiple_of(l1) || n2 == 0 {
            return Err(Error::Precondition(format!("l1 = {l1} does not divide n1 = {n1}")));
        }
        Ok(InterleaverMap { n1, n2, l1 })
    }

    pub fn len(&self) -> usize {
        self.n1 * self.n2
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn l1(&self) -> usize {
        self.l1
    }

    pub fn groups(&self) -> usize {
        self.n1 / self.l1
    }

    /// Stream position of array cell (row, col).
    pub fn interleave(&self, row: usize, col: usize) -> usize {
        let (b, j) = (row / self.l1, row % self.l1);
        b * self.l1 * self.n2 + col * self.l1 + j
    }

    /// Array cell (row, col) at stream position t.
    pub fn deinterleave(&self, t: usize) -> (usize, usize) {
        let group = self.l1 * self.n2;
        let (b, rest) = (t / group, t % group);
        (b * self.l1 + rest % self.l1, rest / self.l1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DispersalReport {
    #[serde(rename = "L")]
    pub l: usize,
    #[serde(rename = "max_subblocks")]
    pub max_affected_subblocks: usize,
    pub max_inner_burst: usize,
    pub worst_start: usize,
    pub aligned_only: bool,
    /// Whether every window hit cyclically consecutive subblocks.
    pub consecutive: bool,
}

fn window_stats(map: &InterleaverMap, start: usize, len: usize) -> (usize, usize, bool) {
    let mut rows: Vec<Option<(usize, usize)>> = vec![None; map.n2];
    for t in start..start + len {
        let (r, c) = map.deinterleave(t);
        rows[c] = Some(match rows[c] {
            None => (r, r),
            Some((lo, hi)) => (lo.min(r), hi.max(r)),
        });
    }
    let hit: Vec<bool> = rows.iter().map(Option::is_some).collect();
    let count = hit.iter().filter(|&&h| h).count();
    let inner = rows.iter().flatten().map(|(lo, hi)| hi - lo + 1).max().unwrap_or(0);
    let starts = (0..map.n2).filter(|&c| hit[c] && !hit[(c + map.n2 - 1) % map.n2]).count();
    let consecutive = count == map.n2 || starts <= 1;
    (count, inner, consecutive)
}

/// Worst case over stream windows of length `l` (shorter windows are
/// dominated by longer ones). With `aligned_only`, starts are multiples of l1.
pub fn dispersal_report(map: &InterleaverMap, l: usize, aligned_only: bool) -> Result<DispersalReport> {
    let total = map.len();
    if l == 0 || l > total {
        return Err(Error::OutOfRange(format!("burst length {l} outside 1..={total}")));
    }
    let step = if aligned_only { map.l1 } else { 1 };
    let starts: Vec<usize> = (0..=total - l).step_by(step).collect();
    let stats: Vec<(usize, usize, bool)> = starts.par_iter().map(|&s| window_stats(map, s, l)).collect();
    let mut report = DispersalReport {
        l,
        max_affected_subblocks: 0,
        max_inner_burst: 0,
        worst_start: 0,
        aligned_only,
        consecutive: true,
    };
    let mut worst = (0, 0);
    for (&s, &(count, inner, consec)) in starts.iter().zip(&stats) {
        if (count, inner) > worst {
            worst = (count, inner);
            report.worst_start = s;
        }
        report.max_affected_subblocks = report.max_affected_subblocks.max(count);
        report.max_inner_burst = report.max_inner_burst.max(inner);
        report.consecutive &= consec;
    }
    Ok(report)
}

/// Pairwise commutation of the stabilizer basis, checked directly.
pub fn is_self_orthogonal(code: &StabilizerCode) -> bool {
    let b = code.basis();
    (0..b.len()).all(|i| (i + 1..b.len()).all(|j| b[i].ip_unchecked(&b[j]) == 0))
}

/// Output record of the tensor construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorReport {
    pub n1: usize,
    pub k1: usize,
    pub n2: usize,
    pub k2: usize,
    pub rho1: usize,
    pub rho2: usize,
    pub params: [usize; 2],
    pub rank: usize,
    pub self_orthogonal: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub dispersal: Option<DispersalReport>,
}

impl TensorReport {
    pub fn new(code: &StabilizerCode, spec: &QtpcSpec, dispersal: Option<DispersalReport>) -> Self {
        TensorReport {
            n1: spec.n1,
            k1: spec.k1,
            n2: spec.n2,
            k2: spec.k2,
            rho1: spec.rho1,
            rho2: spec.rho2,
            params: [code.n(), code.k()],
            rank: spec.rank,
            self_orthogonal: is_self_orthogonal(code),
            dispersal,
        }
    }
}
