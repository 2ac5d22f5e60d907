//! Seeded random inputs for property checks. Every generator takes the RNG
//! explicitly, so a fixed seed reproduces the same samples.

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactalg::{Matrix, Monomial, MultiPoly, PolyMatrix, VarId};
use crate::freering::{enumerate_words, FreeElem, Word};
use crate::label::Label;

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Up to `size` distinct words of length at most `max_len`, sorted.
pub fn word_set(rng: &mut SampleRng, gens: &[Label], max_len: usize, size: usize) -> Vec<Word> {
    let all = enumerate_words(gens, max_len);
    let mut picked: Vec<Word> = all.choose_multiple(rng, size.min(all.len())).cloned().collect();
    picked.sort();
    picked
}

/// Integer combination of up to `terms` words with coefficients in
/// `-bound..=bound`.
pub fn free_elem(rng: &mut SampleRng, gens: &[Label], max_len: usize, terms: usize, bound: i64) -> FreeElem {
    let mut f = FreeElem::zero();
    for w in word_set(rng, gens, max_len, terms) {
        f.add_term(w, BigInt::from(rng.gen_range(-bound..=bound)));
    }
    f
}

/// Polynomial in `vars` with up to `terms` monomials of total degree at most
/// `max_deg` and coefficients in `-bound..=bound`.
pub fn poly(rng: &mut SampleRng, vars: &[VarId], terms: usize, max_deg: u32, bound: i64) -> MultiPoly {
    let mut p = MultiPoly::zero();
    for _ in 0..terms {
        let deg = rng.gen_range(0..=max_deg);
        let powers: Vec<(VarId, u32)> = (0..deg)
            .map(|_| (vars[rng.gen_range(0..vars.len())].clone(), 1))
            .collect();
        let mut m = Monomial::one();
        for (v, e) in powers {
            m = m.mul(&Monomial::from_powers([(v, e)]));
        }
        p.add_term(m, BigInt::from(rng.gen_range(-bound..=bound)));
    }
    p
}

pub fn poly_matrix(
    rng: &mut SampleRng,
    n: usize,
    vars: &[VarId],
    terms: usize,
    max_deg: u32,
    bound: i64,
) -> PolyMatrix {
    let entries: Vec<MultiPoly> = (0..n * n).map(|_| poly(rng, vars, terms, max_deg, bound)).collect();
    Matrix::from_fn(n, n, |i, j| entries[i * n + j].clone())
}

pub fn int_matrix(rng: &mut SampleRng, n: usize, bound: i64) -> Matrix<BigInt> {
    let entries: Vec<BigInt> = (0..n * n)
        .map(|_| BigInt::from(rng.gen_range(-bound..=bound)))
        .collect();
    Matrix::from_fn(n, n, |i, j| entries[i * n + j].clone())
}
