#![allow(dead_code)]

use rand::Rng;

use qbecc::stabilizer::{additive_code, StabilizerCode, SymplecticVector};

pub fn random_vector<R: Rng>(n: usize, rng: &mut R) -> SymplecticVector {
    let x: Vec<u8> = (0..n).map(|_| rng.gen_range(0..2)).collect();
    let z: Vec<u8> = (0..n).map(|_| rng.gen_range(0..2)).collect();
    SymplecticVector::from_bits(&x, &z).unwrap()
}

/// A random stabilizer code with exactly `r` independent commuting
/// generators, grown greedily from random vectors.
pub fn random_code<R: Rng>(n: usize, r: usize, rng: &mut R) -> StabilizerCode {
    loop {
        let mut rows: Vec<SymplecticVector> = Vec::new();
        let mut code = additive_code(n, &rows).unwrap();
        for _ in 0..200 {
            if code.r() == r {
                return code;
            }
            let v = random_vector(n, rng);
            if v.is_zero() || !code.in_normalizer(&v) || code.contains(&v) {
                continue;
            }
            rows.push(v);
            code = additive_code(n, &rows).unwrap();
        }
    }
}

/// Every Pauli vector on n qubits.
pub fn all_vectors(n: usize) -> impl Iterator<Item = SymplecticVector> {
    (0..1u64 << (2 * n)).map(move |m| SymplecticVector::from_words(n, m & ((1 << n) - 1), m >> n))
}

/// A random [[n, 1]] code, n in 6..=8, that the pairwise oracle says
/// corrects every single-qubit burst. These are the only small codes where
/// degeneracy can show up.
pub fn random_burst_code<R: Rng>(rng: &mut R) -> StabilizerCode {
    let n = rng.gen_range(6..=8);
    loop {
        let code = random_code(n, n - 1, rng);
        if qbecc::burst::oracle_burst_capability(&code).l >= 1 {
            return code;
        }
    }
}
