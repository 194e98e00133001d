//! Univariate polynomials over the packed fields, plus the textual generator
//! grammar and factorization of xⁿ − 1.
//!
//! Textual form: whitespace-separated `C^E` tokens with C ∈ {1,2,3} a GF(4)
//! code and E the exponent, e.g. `1^6 2^3 1^0` for x⁶ + ωx³ + 1. The
//! canonical rendering lists exponents in decreasing order.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;

/// Coefficients lowest degree first, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Poly {
    coeffs: Vec<u32>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![1] }
    }

    pub fn from_coeffs(mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// c·x^e.
    pub fn monomial(c: u32, e: usize) -> Self {
        let mut coeffs = vec![0; e + 1];
        coeffs[e] = c;
        Self::from_coeffs(coeffs)
    }

    /// xⁿ − 1 (= xⁿ + 1 in characteristic two).
    pub fn x_n_minus_one(n: usize) -> Self {
        let mut coeffs = vec![0; n + 1];
        coeffs[0] = 1;
        coeffs[n] = 1;
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        Poly::from_coeffs((0..len).map(|i| self.coeff(i) ^ other.coeff(i)).collect())
    }

    pub fn scale<F: Field>(&self, c: u32, f: &F) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn mul<F: Field>(&self, other: &Poly, f: &F) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![0u32; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] ^= f.mul(a, b);
            }
        }
        Poly::from_coeffs(out)
    }

    /// Quotient and remainder with `deg r < deg b`.
    pub fn divmod<F: Field>(&self, b: &Poly, f: &F) -> Result<(Poly, Poly)> {
        let db = b.degree().ok_or(Error::DivisionByZero)?;
        let inv_lead = f.inv(b.leading()).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= db {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![0u32; rem.len() - db];
        for i in (db..rem.len()).rev() {
            let c = rem[i];
            if c == 0 {
                continue;
            }
            let q = f.mul(c, inv_lead);
            quot[i - db] = q;
            for (j, &bc) in b.coeffs.iter().enumerate() {
                rem[i - db + j] ^= f.mul(q, bc);
            }
        }
        rem.truncate(db);
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    pub fn rem<F: Field>(&self, b: &Poly, f: &F) -> Result<Poly> {
        self.divmod(b, f).map(|(_, r)| r)
    }

    pub fn divides<F: Field>(&self, a: &Poly, f: &F) -> bool {
        a.rem(self, f).map(|r| r.is_zero()).unwrap_or(false)
    }

    pub fn make_monic<F: Field>(&self, f: &F) -> Poly {
        match f.inv(self.leading()) {
            Some(inv) => self.scale(inv, f),
            None => Poly::zero(),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd<F: Field>(&self, other: &Poly, f: &F) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b, f).expect("b nonzero");
            a = b;
            b = r;
        }
        a.make_monic(f)
    }

    /// `self^e mod m`.
    pub fn pow_mod<F: Field>(&self, mut e: u64, m: &Poly, f: &F) -> Result<Poly> {
        let mut base = self.rem(m, f)?;
        let mut acc = Poly::one().rem(m, f)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, f).rem(m, f)?;
            }
            base = base.mul(&base, f).rem(m, f)?;
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn eval<F: Field>(&self, x: u32, f: &F) -> u32 {
        self.coeffs.iter().rev().fold(0, |acc, &c| f.mul(acc, x) ^ c)
    }

    /// x^deg · p(1/x).
    pub fn reciprocal(&self) -> Poly {
        let mut c = self.coeffs.clone();
        c.reverse();
        Poly::from_coeffs(c)
    }

    /// Parses the `C^E` grammar over GF(4).
    pub fn parse(text: &str) -> Result<Poly> {
        let mut seen = BTreeSet::new();
        let mut terms = Vec::new();
        for tok in text.split_whitespace() {
            let (c, e) = tok
                .split_once('^')
                .ok_or_else(|| Error::Parse(format!("token `{tok}` is not of the form C^E")))?;
            let c: u32 = match c {
                "1" => 1,
                "2" => 2,
                "3" => 3,
                _ => return Err(Error::Parse(format!("coefficient `{c}` is not one of 1, 2, 3"))),
            };
            let e: usize = e.parse().map_err(|_| Error::Parse(format!("bad exponent in `{tok}`")))?;
            if !seen.insert(e) {
                return Err(Error::Parse(format!("duplicate exponent {e}")));
            }
            terms.push((c, e));
        }
        if terms.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let max = terms.iter().map(|t| t.1).max().unwrap_or(0);
        let mut coeffs = vec![0; max + 1];
        for (c, e) in terms {
            coeffs[e] = c;
        }
        Ok(Poly::from_coeffs(coeffs))
    }

    /// Canonical `C^E` text, exponents decreasing. Coefficients must be GF(4)
    /// codes.
    pub fn to_grammar(&self) -> String {
        let toks: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(e, c)| format!("{c}^{e}"))
            .collect();
        toks.join(" ")
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        write!(f, "[{}]", self.to_grammar())
    }
}

/// Factors a monic squarefree polynomial into monic irreducibles over the
/// base field `f` (Berlekamp). Output is sorted.
pub fn factor_squarefree<F: Field>(p: &Poly, f: &F) -> Vec<Poly> {
    let Some(d) = p.degree() else { return Vec::new() };
    if d <= 1 {
        return if d == 1 { vec![p.make_monic(f)] } else { Vec::new() };
    }
    let q = f.order() as u64;
    // row i of B: x^(q i) mod p
    let xq = Poly::monomial(1, 1).pow_mod(q, p, f).expect("p nonzero");
    let mut b_rows = Vec::with_capacity(d);
    let mut cur = Poly::one();
    for i in 0..d {
        let mut row: Vec<u32> = (0..d).map(|j| cur.coeff(j)).collect();
        row[i] ^= 1; // B - I
        b_rows.push(row);
        cur = cur.mul(&xq, f).rem(p, f).expect("p nonzero");
    }
    // v (B - I) = 0  <=>  (B - I)^T v^T = 0
    let kernel = Matrix::from_rows(d, b_rows).transpose().nullspace(f);
    let target = kernel.n_rows();
    let mut factors = vec![p.make_monic(f)];
    for v in kernel.rows() {
        if factors.len() == target {
            break;
        }
        let vpoly = Poly::from_coeffs(v.clone());
        if vpoly.degree().unwrap_or(0) == 0 {
            continue;
        }
        let mut next = Vec::new();
        for u in factors {
            if u.degree() == Some(1) {
                next.push(u);
                continue;
            }
            let mut rest = u;
            for c in f.elements() {
                if rest.degree() == Some(0) {
                    break;
                }
                let shifted = vpoly.add(&Poly::from_coeffs(vec![c]));
                let g = rest.gcd(&shifted, f);
                if g.degree().unwrap_or(0) >= 1 {
                    rest = rest.divmod(&g, f).expect("g nonzero").0;
                    next.push(g);
                }
            }
        }
        factors = next;
    }
    factors.sort_by(|a, b| (a.degree(), &a.coeffs).cmp(&(b.degree(), &b.coeffs)));
    factors
}

/// Irreducible factors of xⁿ − 1 over `f`; `n` must be odd so the polynomial
/// is squarefree.
pub fn cyclotomic_factors<F: Field>(n: usize, f: &F) -> Result<Vec<Poly>> {
    if n == 0 || n.is_multiple_of(2) {
        return Err(Error::OutOfRange(format!("length {n} must be odd")));
    }
    Ok(factor_squarefree(&Poly::x_n_minus_one(n), f))
}

/// Every monic divisor of xⁿ − 1 over `f`, each exactly once. Subsets of the
/// irreducible factors are visited in increasing bitmask order.
pub fn cyclic_divisors<F: Field>(n: usize, f: &F) -> Result<Vec<Poly>> {
    let factors = cyclotomic_factors(n, f)?;
    if factors.len() > 24 {
        return Err(Error::LimitExceeded(format!("x^{n}-1 has {} factors", factors.len())));
    }
    Ok((0u32..1 << factors.len())
        .map(|mask| {
            factors
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .fold(Poly::one(), |acc, (_, g)| acc.mul(g, f))
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Gf2, Gf4};

    #[test]
    fn divmod_examples() {
        let a = Poly::from_coeffs(vec![1, 0, 1]);
        let b = Poly::from_coeffs(vec![1, 1]);
        let (q, r) = a.divmod(&b, &Gf2).unwrap();
        assert_eq!(q, Poly::from_coeffs(vec![1, 1]));
        assert!(r.is_zero());

        let (q, r) = a.divmod(&a, &Gf4).unwrap();
        assert_eq!(q, Poly::one());
        assert!(r.is_zero());

        assert_eq!(a.divmod(&Poly::zero(), &Gf4), Err(Error::DivisionByZero));
    }

    #[test]
    fn table_generator_divides_x15_minus_one() {
        let g = Poly::parse("1^6 2^3 1^0").unwrap();
        let (_, r) = Poly::x_n_minus_one(15).divmod(&g, &Gf4).unwrap();
        assert!(r.is_zero());
        // long division by hand: x^15 + 1 = g * q with q of degree 9
        let q = Poly::x_n_minus_one(15).divmod(&g, &Gf4).unwrap().0;
        assert_eq!(q.degree(), Some(9));
        assert_eq!(q.mul(&g, &Gf4), Poly::x_n_minus_one(15));
    }

    #[test]
    fn grammar_parse_and_render() {
        let p = Poly::parse("1^6 2^3 1^0").unwrap();
        assert_eq!(p.coeffs(), &[1, 0, 0, 2, 0, 0, 1]);
        assert_eq!(p.to_grammar(), "1^6 2^3 1^0");
        assert_eq!(Poly::parse("1^0 2^3 1^6").unwrap(), p);
        assert_eq!(Poly::parse("1^0").unwrap(), Poly::one());
        assert!(matches!(Poly::parse("1^6 1^6"), Err(Error::Parse(_))));
        assert!(matches!(Poly::parse("4^2"), Err(Error::Parse(_))));
        assert!(matches!(Poly::parse("1x2"), Err(Error::Parse(_))));
        assert!(matches!(Poly::parse(""), Err(Error::Parse(_))));
    }

    #[test]
    fn x3_minus_one_over_gf2_has_four_divisors() {
        let f = cyclotomic_factors(3, &Gf2).unwrap();
        assert_eq!(f, vec![Poly::from_coeffs(vec![1, 1]), Poly::from_coeffs(vec![1, 1, 1])]);
        assert_eq!(cyclic_divisors(3, &Gf2).unwrap().len(), 4);
    }

    #[test]
    fn even_lengths_rejected() {
        assert!(cyclotomic_factors(4, &Gf4).is_err());
    }

    #[test]
    fn factors_multiply_back() {
        for n in [5usize, 7, 9, 13, 15, 21, 23, 25] {
            for q in [2u32, 4] {
                let factors = if q == 2 { cyclotomic_factors(n, &Gf2) } else { cyclotomic_factors(n, &Gf4) }.unwrap();
                let prod = factors.iter().fold(Poly::one(), |acc, g| acc.mul(g, &Gf4));
                assert_eq!(prod, Poly::x_n_minus_one(n), "n={n} q={q}");
            }
        }
    }
}
