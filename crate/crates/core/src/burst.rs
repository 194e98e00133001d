//! Quantum burst-error capability of stabilizer codes, located bursts, and
//! the bound predicates that every analysis must satisfy.
//!
//! A code corrects all bursts of length ≤ ℓ iff for any two distinct bursts
//! e1, e2 of length ≤ ℓ, e1 + e2 ∉ C^⊥s \ C. With [`KeyTable`] keys this is:
//! among all bursts of length ≤ ℓ (the identity included), any two sharing a
//! syndrome also share a logical signature. Equal full keys for distinct
//! bursts mean e1 + e2 ∈ C \ {0}, i.e. the code is degenerate on that set.
//!
//! Bursts are non-cyclic: the non-identity factors sit in at most ℓ
//! consecutive positions of 0..n.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf4::F4;
use crate::stabilizer::{StabilizerCode, SymplecticVector};
use crate::syndrome::KeyTable;

/// Keys held in memory per sorting pass.
pub const DEFAULT_SHARD_CAP: u64 = 1 << 24;

/// Largest window accepted by [`located_burst_check`] (4^12 vectors).
pub const MAX_LOCATED_SPAN: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AnalysisMethod {
    Oracle,
    SyndromeHash,
}

/// Certificate produced by the analyzer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BurstAnalysis {
    pub n: usize,
    pub k: usize,
    /// Largest correctable burst length.
    pub l: usize,
    pub degenerate: bool,
    /// Two bursts of length ≤ l + 1 whose sum lies in C^⊥s \ C. Present
    /// whenever l < qrb(n, k).
    pub witness: Option<(SymplecticVector, SymplecticVector)>,
    /// Bursts hashed (syndrome-hash) or pairs compared (oracle).
    pub checked_pairs: u64,
    pub method: AnalysisMethod,
}

/// ⌊(n − k)/4⌋.
pub fn qrb(n: usize, k: usize) -> usize {
    n.saturating_sub(k) / 4
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QrbCheck {
    pub qrb: usize,
    pub ok: bool,
    pub saturating: bool,
}

pub fn check_qrb(a: &BurstAnalysis) -> QrbCheck {
    let bound = qrb(a.n, a.k);
    QrbCheck { qrb: bound, ok: a.l <= bound, saturating: a.l == bound }
}

/// n > 4ℓ; the necessary condition for a code with k ≥ 1 correcting bursts
/// of length ℓ.
pub fn no_cloning_check(n: usize, l: usize) -> bool {
    n > 4 * l
}

/// Number of vectors of burst length in 1..=l on n qubits.
pub fn burst_count(n: usize, l: usize) -> u64 {
    if l == 0 {
        return 0;
    }
    (0..n).map(|i| 3 * 4u64.pow(l.min(n - i) as u32 - 1)).sum()
}

/// Iterator over every vector of burst length ≤ l: the identity first, then
/// for each start position i the vectors whose first non-identity qubit is i.
#[derive(Clone, Debug)]
pub struct BurstIterator {
    n: usize,
    l: usize,
    start: usize,
    idx: u64,
    emitted_zero: bool,
}

pub fn enumerate_bursts(n: usize, l: usize) -> BurstIterator {
    BurstIterator { n, l: l.min(n), start: 0, idx: 0, emitted_zero: false }
}

impl Iterator for BurstIterator {
    type Item = SymplecticVector;

    fn next(&mut self) -> Option<SymplecticVector> {
        if !self.emitted_zero {
            self.emitted_zero = true;
            return Some(SymplecticVector::zeros(self.n));
        }
        if self.l == 0 {
            return None;
        }
        while self.start < self.n {
            let w = self.l.min(self.n - self.start);
            let count = 3 * 4u64.pow(w as u32 - 1);
            if self.idx < count {
                let mut v = SymplecticVector::zeros(self.n);
                let mut t = self.idx;
                v.set_symbol(self.start, F4::new(1 + (t % 3) as u8));
                t /= 3;
                for j in 1..w {
                    v.set_symbol(self.start + j, F4::new((t % 4) as u8));
                    t /= 4;
                }
                self.idx += 1;
                return Some(v);
            }
            self.start += 1;
            self.idx = 0;
        }
        None
    }
}

trait PackedKey: Copy + Ord + Send + Sync + Default + std::ops::BitXor<Output = Self> {
    fn from_u128(x: u128) -> Self;
    fn to_u128(self) -> u128;
}

impl PackedKey for u64 {
    fn from_u128(x: u128) -> Self {
        x as u64
    }
    fn to_u128(self) -> u128 {
        self as u128
    }
}

impl PackedKey for u128 {
    fn from_u128(x: u128) -> Self {
        x
    }
    fn to_u128(self) -> u128 {
        self
    }
}

/// Outcome of testing a single burst length.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LevelOutcome {
    pub holds: bool,
    /// Only meaningful when `holds`; scanning stops at the first failure.
    pub degenerate: bool,
    /// A syndrome shared by two bursts with different logical signatures.
    pub bad_syndrome: Option<u128>,
    pub bursts: u64,
}

struct Scanner<'a, K> {
    kt: &'a KeyTable,
    cols: Vec<[K; 4]>,
}

impl<'a, K: PackedKey> Scanner<'a, K> {
    fn new(kt: &'a KeyTable) -> Self {
        let cols = (0..kt.n()).map(|i| std::array::from_fn(|s| K::from_u128(kt.col(i, s)))).collect();
        Scanner { kt, cols }
    }

    fn push_from(&self, start: usize, l: usize, shards: u128, shard: u128, out: &mut Vec<K>) {
        let n = self.cols.len();
        let end = start + l.min(n - start);
        let lb = self.kt.logical_bits();
        let keep = |k: K| shards == 1 || (k.to_u128() >> lb) % shards == shard;
        // iterative DFS over the window; stack holds (position, accumulated key)
        let mut stack: Vec<(usize, K)> = Vec::with_capacity(4 * (end - start) + 4);
        for s in 1..4 {
            stack.push((start + 1, self.cols[start][s]));
        }
        while let Some((pos, acc)) = stack.pop() {
            if pos == end {
                if keep(acc) {
                    out.push(acc);
                }
                continue;
            }
            let col = &self.cols[pos];
            for &c in col {
                stack.push((pos + 1, acc ^ c));
            }
        }
    }

    fn level(&self, l: usize, shard_cap: u64) -> LevelOutcome {
        let n = self.cols.len();
        let total = burst_count(n, l) + 1;
        let shards = total.div_ceil(shard_cap.max(1)).max(1) as u128;
        let lb = self.kt.logical_bits();
        let mut degenerate = false;
        for shard in 0..shards {
            let starts = if l == 0 { 0 } else { n };
            let mut keys: Vec<K> = (0..starts)
                .into_par_iter()
                .map(|start| {
                    let mut v = Vec::new();
                    self.push_from(start, l, shards, shard, &mut v);
                    v
                })
                .flatten()
                .collect();
            if shard == 0 {
                keys.push(K::default());
            }
            keys.par_sort_unstable();
            let mut i = 0;
            while i < keys.len() {
                let syn = keys[i].to_u128() >> lb;
                let mut j = i + 1;
                while j < keys.len() && keys[j].to_u128() >> lb == syn {
                    if keys[j] == keys[j - 1] {
                        degenerate = true;
                    }
                    j += 1;
                }
                if keys[i] != keys[j - 1] {
                    return LevelOutcome { holds: false, degenerate, bad_syndrome: Some(syn), bursts: total };
                }
                i = j;
            }
        }
        LevelOutcome { holds: true, degenerate, bad_syndrome: None, bursts: total }
    }
}

/// Tests burst length `l` alone, with the default shard size.
pub fn burst_level(code: &StabilizerCode, l: usize) -> Result<LevelOutcome> {
    let kt = KeyTable::new(code)?;
    Ok(level_with(&kt, l, DEFAULT_SHARD_CAP))
}

fn level_with(kt: &KeyTable, l: usize, shard_cap: u64) -> LevelOutcome {
    if kt.total_bits() <= 64 {
        Scanner::<u64>::new(kt).level(l, shard_cap)
    } else {
        Scanner::<u128>::new(kt).level(l, shard_cap)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct AnalyzerOptions {
    pub shard_cap: u64,
}

impl Default for AnalyzerOptions {
    fn default() -> Self {
        AnalyzerOptions { shard_cap: DEFAULT_SHARD_CAP }
    }
}

/// Largest ℓ ≤ qrb(n, k) for which the code corrects all bursts of length
/// ≤ ℓ, searched downward from qrb(n, k).
pub fn quantum_burst_capability(code: &StabilizerCode) -> Result<BurstAnalysis> {
    quantum_burst_capability_with(code, AnalyzerOptions::default())
}

pub fn quantum_burst_capability_with(code: &StabilizerCode, opts: AnalyzerOptions) -> Result<BurstAnalysis> {
    let kt = KeyTable::new(code)?;
    let (n, k) = (code.n(), code.k());
    let ceiling = qrb(n, k).min(n);
    let mut checked = 0;
    let mut failed_above: Option<u128> = None;
    let mut l = ceiling;
    let outcome = loop {
        let out = level_with(&kt, l, opts.shard_cap);
        checked += out.bursts;
        if out.holds {
            break out;
        }
        failed_above = out.bad_syndrome;
        // ℓ = 0 always holds: the only burst is the identity
        l -= 1;
    };
    let witness = failed_above.map(|syn| find_witness(&kt, l + 1, syn));
    let analysis = BurstAnalysis {
        n,
        k,
        l,
        degenerate: outcome.degenerate,
        witness,
        checked_pairs: checked,
        method: AnalysisMethod::SyndromeHash,
    };
    assert_bounds(&analysis);
    Ok(analysis)
}

fn assert_bounds(a: &BurstAnalysis) {
    assert!(a.l <= qrb(a.n, a.k), "ℓ = {} violates n − k ≥ 4ℓ for [[{}, {}]]", a.l, a.n, a.k);
    if a.k >= 1 {
        assert!(no_cloning_check(a.n, a.l), "ℓ = {} violates n > 4ℓ for [[{}, {}]]", a.l, a.n, a.k);
    }
}

/// Two bursts of length ≤ l sharing syndrome `syn` with different logical
/// signatures.
fn find_witness(kt: &KeyTable, l: usize, syn: u128) -> (SymplecticVector, SymplecticVector) {
    let mut first: Option<(u128, SymplecticVector)> = None;
    for v in enumerate_bursts(kt.n(), l) {
        let key = kt.key(&v);
        if kt.syndrome_of(key) != syn {
            continue;
        }
        match &first {
            None => first = Some((kt.logical_of(key), v)),
            Some((lam, e1)) if *lam != kt.logical_of(key) => return (e1.clone(), v),
            Some(_) => {}
        }
    }
    unreachable!("failing syndrome must have a witness pair")
}

/// The plain definition, pair by pair: for every two distinct bursts,
/// membership of their sum in C^⊥s and in C is decided directly. ℓ grows
/// from 0 until the condition fails (no qrb cap), so the result checks the
/// bound rather than assuming it. Intended for n ≤ 8.
pub fn oracle_burst_capability(code: &StabilizerCode) -> BurstAnalysis {
    let n = code.n();
    let mut l = 0;
    let mut degenerate = false;
    let mut pairs = 0u64;
    let mut witness = None;
    while l < n {
        let bursts: Vec<SymplecticVector> = enumerate_bursts(n, l + 1).collect();
        let mut ok = true;
        let mut degen = false;
        'pairs: for i in 0..bursts.len() {
            for j in i + 1..bursts.len() {
                pairs += 1;
                let d = bursts[i].add(&bursts[j]);
                if code.in_normalizer(&d) {
                    if code.contains(&d) {
                        degen = true;
                    } else {
                        ok = false;
                        witness = Some((bursts[i].clone(), bursts[j].clone()));
                        break 'pairs;
                    }
                }
            }
        }
        if !ok {
            break;
        }
        l += 1;
        degenerate = degen;
    }
    BurstAnalysis { n, k: code.k(), l, degenerate, witness, checked_pairs: pairs, method: AnalysisMethod::Oracle }
}

/// Whether every pair of distinct errors supported inside
/// `start..start + span` is distinguishable (sum ∉ C^⊥s \ C).
pub fn located_burst_check(code: &StabilizerCode, start: usize, span: usize) -> Result<bool> {
    let n = code.n();
    if start + span > n {
        return Err(Error::OutOfRange(format!("window {start}+{span} exceeds n = {n}")));
    }
    if span > MAX_LOCATED_SPAN {
        return Err(Error::LimitExceeded(format!("span {span} > {MAX_LOCATED_SPAN}")));
    }
    if span == 0 {
        return Ok(true);
    }
    let kt = KeyTable::new(code)?;
    let mut keys: Vec<u128> = vec![0];
    for i in start..start + span {
        let prev = keys.len();
        for s in 1..4 {
            let c = kt.col(i, s);
            for t in 0..prev {
                keys.push(keys[t] ^ c);
            }
        }
    }
    keys.sort_unstable();
    let ok = keys
        .chunk_by(|a, b| kt.syndrome_of(*a) == kt.syndrome_of(*b))
        .all(|g| g.first() == g.last());
    Ok(ok)
}
