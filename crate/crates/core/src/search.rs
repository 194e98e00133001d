//! Search over cyclic-code constructions and reproduction of the registry.
//!
//! Candidates are the monic divisors g of xⁿ − 1. Over GF(4) a divisor whose
//! code ⟨g⟩ contains its Hermitian dual yields [[n, 2(n − deg g) − n]]; over
//! GF(2) a pair (g1, g2) with ⟨g2⟩^⊥ ⊆ ⟨g1⟩ yields a CSS code
//! [[n, k1 + k2 − n]]. Every candidate passing its precondition is analyzed
//! for burst capability.

use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::burst::{qrb, quantum_burst_capability, BurstAnalysis};
use crate::classical::{binary_dual_containing, cyclic_from_poly, hermitian_dual_containing};
use crate::error::{Error, Result};
use crate::field::{Gf2, Gf4};
use crate::poly::{cyclic_divisors, Poly};
use crate::registry::{Construction, RegistryEntry};
use crate::stabilizer::{css_construct, hermitian_construct, StabilizerCode};

/// A generator polynomial as written: (coefficient code, exponent) pairs with
/// strictly decreasing exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GenPolySpec {
    pub terms: Vec<(u8, usize)>,
    pub n: usize,
}

impl GenPolySpec {
    pub fn from_poly(p: &Poly, n: usize) -> Self {
        let terms = p
            .coeffs()
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(e, &c)| (c as u8, e))
            .collect();
        GenPolySpec { terms, n }
    }

    pub fn to_poly(&self) -> Poly {
        let deg = self.terms.first().map_or(0, |t| t.1);
        let mut coeffs = vec![0u32; deg + 1];
        for &(c, e) in &self.terms {
            coeffs[e] = c as u32;
        }
        Poly::from_coeffs(coeffs)
    }

    pub fn is_binary(&self) -> bool {
        self.terms.iter().all(|t| t.0 == 1)
    }

    pub fn degree(&self) -> usize {
        self.terms.first().map_or(0, |t| t.1)
    }
}

impl fmt::Display for GenPolySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let toks: Vec<String> = self.terms.iter().map(|(c, e)| format!("{c}^{e}")).collect();
        f.write_str(&toks.join(" "))
    }
}

/// Parses the `C^E` grammar for a code of length `n`.
pub fn parse_genpoly(text: &str, n: usize) -> Result<GenPolySpec> {
    let p = Poly::parse(text)?;
    if let Some(d) = p.degree() {
        if d >= n {
            return Err(Error::Parse(format!("exponent {d} must be below the length {n}")));
        }
    }
    Ok(GenPolySpec::from_poly(&p, n))
}

/// Builds the stabilizer code for a construction from its generator(s).
pub fn build_code(construction: Construction, polys: &[GenPolySpec]) -> Result<StabilizerCode> {
    match (construction, polys) {
        (Construction::Hermitian, [g]) => {
            let c = cyclic_from_poly(&g.to_poly(), g.n, Gf4)?;
            hermitian_construct(&c.base)
        }
        (Construction::Css, [g1, g2]) => {
            if g1.n != g2.n {
                return Err(Error::LengthMismatch { left: g1.n, right: g2.n });
            }
            if !g1.is_binary() || !g2.is_binary() {
                return Err(Error::Precondition("CSS generators must have binary coefficients".into()));
            }
            let c1 = cyclic_from_poly(&g1.to_poly(), g1.n, Gf2)?;
            let c2 = cyclic_from_poly(&g2.to_poly(), g2.n, Gf2)?;
            css_construct(&c1.base, &c2.base)
        }
        (c, p) => Err(Error::Precondition(format!("{} construction takes {} generator(s), got {}",
            c.as_str(), if c == Construction::Hermitian { 1 } else { 2 }, p.len()))),
    }
}

/// Builds the code of a registry entry.
pub fn build_entry(entry: &RegistryEntry) -> Result<StabilizerCode> {
    let specs = entry.genpolys.iter().map(|t| parse_genpoly(t, entry.n)).collect::<Result<Vec<_>>>()?;
    build_code(entry.construction, &specs)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaseField {
    Gf2,
    Gf4,
}

/// All monic divisors of xⁿ − 1 over the base field, each once.
pub fn enumerate_cyclic_generators(n: usize, field: BaseField) -> Result<Vec<Poly>> {
    match field {
        BaseField::Gf2 => cyclic_divisors(n, &Gf2),
        BaseField::Gf4 => cyclic_divisors(n, &Gf4),
    }
}

#[derive(Clone, Debug)]
pub struct SearchPlan {
    pub lengths: Vec<usize>,
    pub constructions: Vec<Construction>,
    pub odd_only: bool,
    /// Stop after analyzing this many candidates.
    pub max_candidates: Option<usize>,
    /// Stop starting new candidates after this long.
    pub time_budget: Option<Duration>,
}

impl SearchPlan {
    pub fn new(lengths: Vec<usize>) -> Self {
        SearchPlan {
            lengths,
            constructions: vec![Construction::Hermitian, Construction::Css],
            odd_only: true,
            max_candidates: None,
            time_budget: None,
        }
    }

    pub fn with_constructions(mut self, c: Vec<Construction>) -> Self {
        self.constructions = c;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchRecord {
    pub n: usize,
    pub k: usize,
    pub l: usize,
    pub qrb: usize,
    pub saturates: bool,
    pub degenerate: bool,
    pub construction: Construction,
    pub genpolys: Vec<GenPolySpec>,
}

impl SearchRecord {
    fn from_analysis(a: &BurstAnalysis, construction: Construction, genpolys: Vec<GenPolySpec>) -> Self {
        let q = qrb(a.n, a.k);
        SearchRecord {
            n: a.n,
            k: a.k,
            l: a.l,
            qrb: q,
            saturates: a.l == q,
            degenerate: a.degenerate,
            construction,
            genpolys,
        }
    }

    pub fn csv_row(&self) -> String {
        let g1 = self.genpolys.first().map(|g| g.to_string()).unwrap_or_default();
        let g2 = self.genpolys.get(1).map(|g| g.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.n,
            self.k,
            self.l,
            self.qrb,
            self.saturates,
            self.degenerate,
            self.construction.as_str(),
            g1,
            g2
        )
    }
}

pub const SEARCH_CSV_HEADER: &str = "n,k,l,qrb,saturates,degenerate,construction,genpoly1,genpoly2";

pub fn records_to_csv(records: &[SearchRecord]) -> String {
    let mut out = String::from(SEARCH_CSV_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&r.csv_row());
        out.push('\n');
    }
    out
}

/// Parses CSV produced by [`records_to_csv`].
pub fn records_from_csv(text: &str) -> Result<Vec<SearchRecord>> {
    let mut lines = text.lines();
    if lines.next() != Some(SEARCH_CSV_HEADER) {
        return Err(Error::Parse("missing search CSV header".into()));
    }
    lines
        .filter(|l| !l.is_empty())
        .map(|line| {
            let f: Vec<&str> = line.split(',').collect();
            if f.len() != 9 {
                return Err(Error::Parse(format!("expected 9 fields: `{line}`")));
            }
            let num = |s: &str| s.parse::<usize>().map_err(|_| Error::Parse(format!("bad integer `{s}`")));
            let flag = |s: &str| s.parse::<bool>().map_err(|_| Error::Parse(format!("bad flag `{s}`")));
            let n = num(f[0])?;
            let mut genpolys = vec![parse_genpoly(f[7], n)?];
            if !f[8].is_empty() {
                genpolys.push(parse_genpoly(f[8], n)?);
            }
            Ok(SearchRecord {
                n,
                k: num(f[1])?,
                l: num(f[2])?,
                qrb: num(f[3])?,
                saturates: flag(f[4])?,
                degenerate: flag(f[5])?,
                construction: f[6].parse()?,
                genpolys,
            })
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub records: Vec<SearchRecord>,
    /// False when a budget stopped the search early.
    pub complete: bool,
}

#[derive(Clone, Debug)]
struct Candidate {
    construction: Construction,
    polys: Vec<GenPolySpec>,
    code: StabilizerCode,
}

fn candidates_for(n: usize, construction: Construction) -> Result<Vec<Candidate>> {
    let mut out = Vec::new();
    match construction {
        Construction::Hermitian => {
            for g in enumerate_cyclic_generators(n, BaseField::Gf4)? {
                let c = cyclic_from_poly(&g, n, Gf4)?;
                let kc = c.base.k();
                if 2 * kc <= n || kc == n || !hermitian_dual_containing(&c.base) {
                    continue;
                }
                let code = hermitian_construct(&c.base)?;
                out.push(Candidate { construction, polys: vec![GenPolySpec::from_poly(&g, n)], code });
            }
        }
        Construction::Css => {
            let divisors = enumerate_cyclic_generators(n, BaseField::Gf2)?;
            let codes: Vec<_> = divisors.iter().map(|g| cyclic_from_poly(g, n, Gf2)).collect::<Result<_>>()?;
            for i in 0..codes.len() {
                for j in i..codes.len() {
                    let (k1, k2) = (codes[i].base.k(), codes[j].base.k());
                    if k1 + k2 <= n || k1 == n || k2 == n {
                        continue;
                    }
                    if !binary_dual_containing(&codes[j].base, &codes[i].base)? {
                        continue;
                    }
                    let code = css_construct(&codes[i].base, &codes[j].base)?;
                    let polys = vec![GenPolySpec::from_poly(&divisors[i], n), GenPolySpec::from_poly(&divisors[j], n)];
                    out.push(Candidate { construction, polys, code });
                }
            }
        }
    }
    Ok(out)
}

/// Runs the plan. Codes with k = 0 or k = n are skipped. Output is sorted by
/// (n, k descending, ℓ descending, construction, generators).
pub fn search(plan: &SearchPlan) -> Result<SearchOutcome> {
    let started = Instant::now();
    let mut candidates = Vec::new();
    for &n in &plan.lengths {
        if n < 2 || (plan.odd_only && n % 2 == 0) {
            return Err(Error::OutOfRange(format!("length {n} is not an odd length ≥ 3")));
        }
        for &c in &plan.constructions {
            candidates.extend(candidates_for(n, c)?);
        }
    }
    let mut complete = true;
    if let Some(max) = plan.max_candidates {
        if candidates.len() > max {
            candidates.truncate(max);
            complete = false;
        }
    }
    let results: Vec<Option<SearchRecord>> = candidates
        .par_iter()
        .map(|cand| {
            if plan.time_budget.is_some_and(|b| started.elapsed() > b) {
                return Ok(None);
            }
            let a = quantum_burst_capability(&cand.code)?;
            Ok(Some(SearchRecord::from_analysis(&a, cand.construction, cand.polys.clone())))
        })
        .collect::<Result<_>>()?;
    if results.iter().any(Option::is_none) {
        complete = false;
    }
    let mut records: Vec<SearchRecord> = results.into_iter().flatten().collect();
    records.sort_by(|a, b| {
        (a.n, std::cmp::Reverse(a.k), std::cmp::Reverse(a.l), a.construction, &a.genpolys)
            .cmp(&(b.n, std::cmp::Reverse(b.k), std::cmp::Reverse(b.l), b.construction, &b.genpolys))
    });
    Ok(SearchOutcome { records, complete })
}

/// Per-row comparison of a registry entry against a fresh analysis.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RowReport {
    pub id: String,
    pub expected: RowValues,
    pub computed: RowValues,
    pub matches: bool,
    pub seconds: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowValues {
    pub n: usize,
    pub k: usize,
    pub l: usize,
    pub qrb: usize,
    pub degenerate: bool,
}

/// Rebuilds one entry from its generators and re-analyzes it.
pub fn reproduce_entry(entry: &RegistryEntry) -> Result<RowReport> {
    let t = Instant::now();
    let code = build_entry(entry)?;
    let a = quantum_burst_capability(&code)?;
    let expected = RowValues { n: entry.n, k: entry.k, l: entry.l, qrb: entry.qrb, degenerate: entry.degenerate };
    let computed = RowValues { n: a.n, k: a.k, l: a.l, qrb: qrb(a.n, a.k), degenerate: a.degenerate };
    Ok(RowReport { id: entry.id.clone(), expected, computed, matches: expected == computed, seconds: t.elapsed().as_secs_f64() })
}

pub fn reproduce_table1(entries: &[RegistryEntry]) -> Result<Vec<RowReport>> {
    entries.iter().map(reproduce_entry).collect()
}
