//! Markov-correlated depolarizing memory channel, syndrome-table decoders and
//! entanglement fidelity.
//!
//! The channel acts on qubits in order: the first Pauli is drawn from the
//! depolarizing marginals p0 = 1 − p, p1 = p2 = p3 = p/3, and each later one
//! from p(l | k) = (1 − μ) p_l + μ δ(k, l) given its predecessor k.
//!
//! Decoding of e succeeds when recovery(σ(e)) · e lies in the stabilizer
//! group. With keys from [`KeyTable`] this is: the table has an entry for
//! σ(e), and that entry has the same logical signature as e.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf4::F4;
use crate::stabilizer::{StabilizerCode, SymplecticVector};
use crate::syndrome::KeyTable;

/// Neumaier-compensated running sum.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn merge(&mut self, other: &CompensatedSum) {
        self.add(other.sum);
        self.add(other.comp);
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChannelModel {
    pub p: f64,
    pub mu: f64,
}

impl ChannelModel {
    pub fn new(p: f64, mu: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) || !(0.0..=1.0).contains(&mu) {
            return Err(Error::OutOfRange(format!("p = {p} and mu = {mu} must lie in [0, 1]")));
        }
        Ok(ChannelModel { p, mu })
    }

    #[inline]
    pub fn marginal(&self, l: usize) -> f64 {
        if l == 0 {
            1.0 - self.p
        } else {
            self.p / 3.0
        }
    }

    /// p(l | k).
    #[inline]
    pub fn cond_prob(&self, l: usize, k: usize) -> f64 {
        (1.0 - self.mu) * self.marginal(l) + if l == k { self.mu } else { 0.0 }
    }

    /// `trans[k][l]` = p(l | k).
    fn transitions(&self) -> [[f64; 4]; 4] {
        let mut t = [[0.0; 4]; 4];
        for (k, row) in t.iter_mut().enumerate() {
            for (l, v) in row.iter_mut().enumerate() {
                *v = self.cond_prob(l, k);
            }
        }
        t
    }
}

pub fn cond_prob(l: usize, k: usize, ch: &ChannelModel) -> f64 {
    ch.cond_prob(l, k)
}

/// Probability of the Pauli error `e`; phases play no role.
pub fn error_prob(e: &SymplecticVector, ch: &ChannelModel) -> f64 {
    let n = e.len();
    if n == 0 {
        return 1.0;
    }
    let mut prev = e.symbol(0).code() as usize;
    let mut prob = ch.marginal(prev);
    for i in 1..n {
        let s = e.symbol(i).code() as usize;
        prob *= ch.cond_prob(s, prev);
        prev = s;
    }
    prob
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DecoderMode {
    /// Every error of weight ≤ t.
    Random { t: usize },
    /// Weight ≤ 1, then bursts of span 2..=l.
    Burst { l: usize },
    /// Weight ≤ t, then bursts of span 2..=l on syndromes still free.
    Combined { t: usize, l: usize },
}

impl DecoderMode {
    pub fn label(&self) -> String {
        match self {
            DecoderMode::Random { t } => format!("random-t{t}"),
            DecoderMode::Burst { l } => format!("burst-l{l}"),
            DecoderMode::Combined { t, l } => format!("combined-t{t}-l{l}"),
        }
    }

    fn weight_bound(&self) -> usize {
        match *self {
            DecoderMode::Random { t } | DecoderMode::Combined { t, .. } => t,
            DecoderMode::Burst { .. } => 1,
        }
    }

    fn burst_bound(&self) -> usize {
        match *self {
            DecoderMode::Random { .. } => 0,
            DecoderMode::Burst { l } | DecoderMode::Combined { l, .. } => l,
        }
    }
}

/// Default cap on the 2^r syndrome space of a decoder table.
pub const DEFAULT_SYNDROME_LIMIT: u64 = 1 << 32;

/// Largest r for which the fidelity loops use a dense syndrome array.
const DENSE_SYNDROME_BITS: usize = 28;

const UNCLAIMED: u64 = u64::MAX;

/// Syndrome → recovery table, filled in priority order.
#[derive(Clone, Debug)]
pub struct DecoderTable {
    mode: DecoderMode,
    keys: KeyTable,
    entries: HashMap<u64, SymplecticVector>,
    order: Vec<u64>,
}

impl DecoderTable {
    pub fn mode(&self) -> DecoderMode {
        self.mode
    }

    pub fn keys(&self) -> &KeyTable {
        &self.keys
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn recovery(&self, syndrome: u64) -> Option<&SymplecticVector> {
        self.entries.get(&syndrome)
    }

    /// Entries in the order they were claimed.
    pub fn iter(&self) -> impl Iterator<Item = (u64, &SymplecticVector)> {
        self.order.iter().map(move |s| (*s, &self.entries[s]))
    }

    fn logical_lookup(&self) -> Lookup {
        let r = self.keys.r();
        let logical = |v: &SymplecticVector| self.keys.logical_of(self.keys.key(v)) as u64;
        if r <= DENSE_SYNDROME_BITS {
            let mut dense = vec![UNCLAIMED; 1usize << r];
            for (s, v) in &self.entries {
                dense[*s as usize] = logical(v);
            }
            Lookup::Dense(dense)
        } else {
            Lookup::Sparse(self.entries.iter().map(|(s, v)| (*s, logical(v))).collect())
        }
    }
}

enum Lookup {
    Dense(Vec<u64>),
    Sparse(HashMap<u64, u64>),
}

impl Lookup {
    #[inline]
    fn get(&self, syndrome: u64) -> u64 {
        match self {
            Lookup::Dense(d) => d[syndrome as usize],
            Lookup::Sparse(m) => m.get(&syndrome).copied().unwrap_or(UNCLAIMED),
        }
    }
}

/// Calls `f` on every error of weight exactly `w`, positions ascending and
/// symbols in code order at each position.
fn for_each_weight(n: usize, w: usize, f: &mut impl FnMut(&SymplecticVector)) {
    fn rec(v: &mut SymplecticVector, from: usize, left: usize, f: &mut impl FnMut(&SymplecticVector)) {
        if left == 0 {
            f(v);
            return;
        }
        let n = v.len();
        for i in from..=n - left {
            for s in 1..4u8 {
                v.set_symbol(i, F4::new(s));
                rec(v, i + 1, left - 1, f);
            }
            v.set_symbol(i, F4::ZERO);
        }
    }
    if w <= n {
        rec(&mut SymplecticVector::zeros(n), 0, w, f);
    }
}

/// Calls `f` on every error whose support starts at `start` and ends at
/// `start + span − 1`.
fn for_each_burst_of_span(n: usize, start: usize, span: usize, f: &mut impl FnMut(&SymplecticVector)) {
    if span == 0 || start + span > n {
        return;
    }
    let inner = if span >= 2 { 4u64.pow(span as u32 - 2) } else { 1 };
    let ends = if span == 1 { 1 } else { 3 };
    for a in 1..4u8 {
        for b in 0..ends {
            for mid in 0..inner {
                let mut v = SymplecticVector::zeros(n);
                v.set_symbol(start, F4::new(a));
                if span >= 2 {
                    v.set_symbol(start + span - 1, F4::new(b + 1));
                }
                let mut t = mid;
                for j in 1..span.saturating_sub(1) {
                    v.set_symbol(start + j, F4::new((t % 4) as u8));
                    t /= 4;
                }
                f(&v);
            }
        }
    }
}

/// Builds the decoder table. The syndrome space has 2^r entries for r
/// stabilizer generators.
pub fn build_decoder(code: &StabilizerCode, mode: DecoderMode) -> Result<DecoderTable> {
    build_decoder_with(code, mode, DEFAULT_SYNDROME_LIMIT)
}

pub fn build_decoder_with(code: &StabilizerCode, mode: DecoderMode, limit: u64) -> Result<DecoderTable> {
    let r = code.r();
    if r >= 64 || (1u64 << r) > limit {
        return Err(Error::LimitExceeded(format!("2^{r} syndromes exceed the limit {limit}")));
    }
    let keys = KeyTable::new(code)?;
    let mut entries = HashMap::new();
    let mut order = Vec::new();
    let n = code.n();
    let mut claim = |v: &SymplecticVector| {
        let s = keys.syndrome_of(keys.key(v)) as u64;
        if let std::collections::hash_map::Entry::Vacant(slot) = entries.entry(s) {
            slot.insert(v.clone());
            order.push(s);
        }
    };
    for w in 0..=mode.weight_bound().min(n) {
        for_each_weight(n, w, &mut claim);
    }
    for span in 2..=mode.burst_bound().min(n) {
        for start in 0..=n - span {
            for_each_burst_of_span(n, start, span, &mut claim);
        }
    }
    Ok(DecoderTable { mode, keys, entries, order })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Strategy {
    /// All 4^n errors, for n up to the limit.
    Exact,
    /// Errors of weight ≤ w_max and bursts of span ≤ the decoder's l; the
    /// unenumerated probability is returned as the residual.
    Truncated { w_max: usize },
    /// Exact, by propagating probability mass over (key, last symbol) states
    /// one qubit at a time.
    Transfer,
}

impl Strategy {
    pub fn label(&self) -> String {
        match self {
            Strategy::Exact => "exact".into(),
            Strategy::Truncated { w_max } => format!("truncated-w{w_max}"),
            Strategy::Transfer => "transfer".into(),
        }
    }
}

/// Largest n for full enumeration by default.
pub const DEFAULT_EXACT_MAX_N: usize = 13;

/// Largest key width (r + 2k) for the transfer strategy.
pub const MAX_TRANSFER_BITS: usize = 26;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EfResult {
    pub ef_lower: f64,
    pub residual: f64,
    pub exact: bool,
}

impl EfResult {
    pub fn upper(&self) -> f64 {
        self.ef_lower + self.residual
    }
}

pub fn entanglement_fidelity(table: &DecoderTable, ch: &ChannelModel, strategy: Strategy) -> Result<EfResult> {
    entanglement_fidelity_with(table, ch, strategy, DEFAULT_EXACT_MAX_N)
}

pub fn entanglement_fidelity_with(
    table: &DecoderTable,
    ch: &ChannelModel,
    strategy: Strategy,
    exact_max_n: usize,
) -> Result<EfResult> {
    let keys = table.keys();
    if keys.total_bits() > 64 {
        return Err(Error::LimitExceeded(format!("{} key bits exceed 64", keys.total_bits())));
    }
    match strategy {
        Strategy::Exact => {
            if keys.n() > exact_max_n {
                return Err(Error::LimitExceeded(format!(
                    "exact enumeration of 4^{} errors exceeds n ≤ {exact_max_n}",
                    keys.n()
                )));
            }
            Ok(exact_ef(table, ch))
        }
        Strategy::Truncated { w_max } => Ok(truncated_ef(table, ch, w_max)),
        Strategy::Transfer => transfer_ef(table, ch),
    }
}

struct Ctx<'a> {
    cols: Vec<[u64; 4]>,
    trans: [[f64; 4]; 4],
    lookup: &'a Lookup,
    lbits: usize,
}

impl Ctx<'_> {
    #[inline]
    fn succeeds(&self, key: u64) -> bool {
        let mask = (1u64 << self.lbits) - 1;
        self.lookup.get(key >> self.lbits) == key & mask
    }
}

fn key_columns(keys: &KeyTable) -> Vec<[u64; 4]> {
    (0..keys.n()).map(|i| [0, 1, 2, 3].map(|s| keys.col(i, s) as u64)).collect()
}

fn dfs(ctx: &Ctx, i: usize, last: usize, prob: f64, key: u64, ok: &mut CompensatedSum, all: &mut CompensatedSum) {
    if i == ctx.cols.len() {
        all.add(prob);
        if ctx.succeeds(key) {
            ok.add(prob);
        }
        return;
    }
    let col = &ctx.cols[i];
    for (s, &c) in col.iter().enumerate() {
        dfs(ctx, i + 1, s, prob * ctx.trans[last][s], key ^ c, ok, all);
    }
}

fn exact_ef(table: &DecoderTable, ch: &ChannelModel) -> EfResult {
    let keys = table.keys();
    let lookup = table.logical_lookup();
    let ctx = Ctx { cols: key_columns(keys), trans: ch.transitions(), lookup: &lookup, lbits: keys.logical_bits() };
    let n = keys.n();
    let depth = n.min(4);
    let prefixes: Vec<usize> = (0..4usize.pow(depth as u32)).collect();
    let parts: Vec<(CompensatedSum, CompensatedSum)> = prefixes
        .par_iter()
        .map(|&idx| {
            let (mut ok, mut all) = (CompensatedSum::default(), CompensatedSum::default());
            if n == 0 {
                all.add(1.0);
                if ctx.succeeds(0) {
                    ok.add(1.0);
                }
                return (ok, all);
            }
            let mut prob = 1.0;
            let mut key = 0u64;
            let mut last = 0;
            for i in 0..depth {
                let s = (idx >> (2 * (depth - 1 - i))) & 3;
                prob *= if i == 0 { ch.marginal(s) } else { ctx.trans[last][s] };
                key ^= ctx.cols[i][s];
                last = s;
            }
            dfs(&ctx, depth, last, prob, key, &mut ok, &mut all);
            (ok, all)
        })
        .collect();
    let (mut ok, mut all) = (CompensatedSum::default(), CompensatedSum::default());
    for (o, a) in &parts {
        ok.merge(o);
        all.merge(a);
    }
    EfResult { ef_lower: ok.value(), residual: (1.0 - all.value()).abs(), exact: true }
}

fn truncated_ef(table: &DecoderTable, ch: &ChannelModel, w_max: usize) -> EfResult {
    let keys = table.keys();
    let lookup = table.logical_lookup();
    let ctx = Ctx { cols: key_columns(keys), trans: ch.transitions(), lookup: &lookup, lbits: keys.logical_bits() };
    let n = keys.n();
    let (mut ok, mut all) = (CompensatedSum::default(), CompensatedSum::default());
    let mut visit = |v: &SymplecticVector| {
        let p = error_prob(v, ch);
        all.add(p);
        if ctx.succeeds(keys.key(v) as u64) {
            ok.add(p);
        }
    };
    let w_max = w_max.min(n);
    for w in 0..=w_max {
        for_each_weight(n, w, &mut visit);
    }
    for span in 2..=table.mode().burst_bound().min(n) {
        for start in 0..=n - span {
            for_each_burst_of_span(n, start, span, &mut |v| {
                if v.weight() > w_max {
                    visit(v);
                }
            });
        }
    }
    EfResult { ef_lower: ok.value(), residual: (1.0 - all.value()).max(0.0), exact: false }
}

fn transfer_ef(table: &DecoderTable, ch: &ChannelModel) -> Result<EfResult> {
    let keys = table.keys();
    let bits = keys.total_bits();
    if bits > MAX_TRANSFER_BITS {
        return Err(Error::LimitExceeded(format!("{bits} key bits exceed {MAX_TRANSFER_BITS}")));
    }
    let lookup = table.logical_lookup();
    let ctx = Ctx { cols: key_columns(keys), trans: ch.transitions(), lookup: &lookup, lbits: keys.logical_bits() };
    let n = keys.n();
    if n == 0 {
        return Ok(EfResult { ef_lower: if ctx.succeeds(0) { 1.0 } else { 0.0 }, residual: 0.0, exact: true });
    }
    let size = 1usize << bits;
    // mass[key * 4 + last]
    let mut mass = vec![0.0f64; size * 4];
    for s in 0..4 {
        mass[ctx.cols[0][s] as usize * 4 + s] += ch.marginal(s);
    }
    let mut next = vec![0.0f64; size * 4];
    for col in &ctx.cols[1..] {
        next.par_chunks_mut(4).enumerate().for_each(|(key, out)| {
            for (s, slot) in out.iter_mut().enumerate() {
                let src = &mass[(key ^ col[s] as usize) * 4..][..4];
                *slot = (0..4).map(|k| src[k] * ctx.trans[k][s]).sum();
            }
        });
        std::mem::swap(&mut mass, &mut next);
    }
    let (mut ok, mut all) = (CompensatedSum::default(), CompensatedSum::default());
    for (key, chunk) in mass.chunks(4).enumerate() {
        let m: f64 = chunk.iter().sum();
        all.add(m);
        if ctx.succeeds(key as u64) {
            ok.add(m);
        }
    }
    Ok(EfResult { ef_lower: ok.value(), residual: (1.0 - all.value()).abs(), exact: true })
}

/// Formats with 12 significant digits, fixed-point for moderate magnitudes.
pub fn fmt_sig12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    let s = if (-5..12).contains(&exp) {
        format!("{:.*}", (11 - exp) as usize, x)
    } else {
        format!("{:.11e}", x)
    };
    trim_zeros(&s)
}

fn trim_zeros(s: &str) -> String {
    let (mant, exp) = match s.find('e') {
        Some(i) => (&s[..i], &s[i..]),
        None => (s, ""),
    };
    let mant = if mant.contains('.') { mant.trim_end_matches('0').trim_end_matches('.') } else { mant };
    format!("{mant}{exp}")
}

pub const SWEEP_CSV_HEADER: &str = "code,decoder,strategy,p,mu,ef_lower,ef_residual,exact";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub code: String,
    pub decoder: String,
    pub strategy: String,
    pub p: f64,
    pub mu: f64,
    pub ef_lower: f64,
    pub ef_residual: f64,
    pub exact: bool,
}

impl SweepRow {
    pub fn csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.code,
            self.decoder,
            self.strategy,
            fmt_sig12(self.p),
            fmt_sig12(self.mu),
            fmt_sig12(self.ef_lower),
            fmt_sig12(self.ef_residual),
            self.exact
        )
    }
}

pub fn sweep_to_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(SWEEP_CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r.csv());
        out.push('\n');
    }
    out
}

pub fn sweep_from_csv(text: &str) -> Result<Vec<SweepRow>> {
    let mut lines = text.lines();
    if lines.next() != Some(SWEEP_CSV_HEADER) {
        return Err(Error::Parse("missing sweep CSV header".into()));
    }
    let num = |s: &str| s.parse::<f64>().map_err(|_| Error::Parse(format!("bad number `{s}`")));
    lines
        .filter(|l| !l.is_empty())
        .map(|line| {
            let f: Vec<&str> = line.split(',').collect();
            if f.len() != 8 {
                return Err(Error::Parse(format!("expected 8 fields: `{line}`")));
            }
            Ok(SweepRow {
                code: f[0].into(),
                decoder: f[1].into(),
                strategy: f[2].into(),
                p: num(f[3])?,
                mu: num(f[4])?,
                ef_lower: num(f[5])?,
                ef_residual: num(f[6])?,
                exact: f[7].parse().map_err(|_| Error::Parse(format!("bad flag `{}`", f[7])))?,
            })
        })
        .collect()
}

/// One code in a sweep, with the decoders to run on it.
#[derive(Clone, Debug)]
pub struct SweepCode {
    pub id: String,
    pub code: StabilizerCode,
    pub decoders: Vec<DecoderMode>,
    pub strategy: Strategy,
}

/// Runs every (code, decoder, p, μ) point. Rows are ordered by code, decoder,
/// p, then μ, as given.
pub fn sweep(codes: &[SweepCode], ps: &[f64], mus: &[f64]) -> Result<Vec<SweepRow>> {
    let mut jobs = Vec::new();
    for c in codes {
        for mode in &c.decoders {
            let table = build_decoder(&c.code, *mode)?;
            for &p in ps {
                for &mu in mus {
                    jobs.push((c, table.clone(), ChannelModel::new(p, mu)?));
                }
            }
        }
    }
    jobs.par_iter()
        .map(|(c, table, ch)| {
            let ef = entanglement_fidelity(table, ch, c.strategy)?;
            Ok(SweepRow {
                code: c.id.clone(),
                decoder: table.mode().label(),
                strategy: c.strategy.label(),
                p: ch.p,
                mu: ch.mu,
                ef_lower: ef.ef_lower,
                ef_residual: ef.residual,
                exact: ef.exact,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cond_prob_examples() {
        let ch = ChannelModel::new(0.03, 0.5).unwrap();
        assert!((ch.cond_prob(0, 0) - 0.985).abs() < 1e-15);
        let ch = ChannelModel::new(0.2, 1.0).unwrap();
        assert_eq!(ch.cond_prob(2, 2), 1.0);
        assert_eq!(ch.cond_prob(1, 2), 0.0);
        let ch = ChannelModel::new(0.2, 0.0).unwrap();
        for k in 0..4 {
            assert_eq!(ch.cond_prob(0, k), 0.8);
        }
        assert!(ChannelModel::new(1.5, 0.0).is_err());
    }

    #[test]
    fn identity_probability() {
        let ch = ChannelModel::new(0.1, 0.3).unwrap();
        let e = SymplecticVector::zeros(5);
        let want = 0.9 * (0.7 * 0.9 + 0.3f64).powi(4);
        assert!((error_prob(&e, &ch) - want).abs() < 1e-15);
    }

    #[test]
    fn significant_digits() {
        assert_eq!(fmt_sig12(0.03), "0.03");
        assert_eq!(fmt_sig12(1.0), "1");
        assert_eq!(fmt_sig12(1e-5), "0.00001");
        assert_eq!(fmt_sig12(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt_sig12(2.5e-9), "2.5e-9");
        assert_eq!(fmt_sig12(0.0), "0");
    }

    #[test]
    fn burst_span_counts() {
        let mut count = 0;
        for_each_burst_of_span(6, 1, 3, &mut |v| {
            assert_eq!(v.burst_length(), 3);
            count += 1;
        });
        assert_eq!(count, 3 * 3 * 4);
        let mut w2 = 0;
        for_each_weight(5, 2, &mut |_| w2 += 1);
        assert_eq!(w2, 10 * 9);
    }
}
