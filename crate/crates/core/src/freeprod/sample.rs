//! Seeded random and exhaustive word generators for scans and test suites.

use rand::Rng;

use crate::freegroup::{Letter, Word};

use super::{CommutatorPair, SyllableWord};

/// Uniform length in `min_len..=max_len`, uniform letter choices avoiding cancellation.
pub fn random_word(rng: &mut impl Rng, rank: usize, min_len: usize, max_len: usize) -> Word {
    let len = rng.gen_range(min_len..=max_len.max(min_len));
    let mut letters: Vec<Letter> = Vec::with_capacity(len);
    while letters.len() < len {
        let g = rng.gen_range(1..=rank as u32);
        let l = if rng.gen_bool(0.5) {
            Letter::pos(g)
        } else {
            Letter::neg(g)
        };
        if letters.last() != Some(&l.inverse()) {
            letters.push(l);
        }
    }
    Word::from_reduced_unchecked(rank, letters)
}

pub fn random_element(
    rng: &mut impl Rng,
    rank1: usize,
    rank2: usize,
    max_len: usize,
) -> SyllableWord {
    let flat = random_word(rng, rank1 + rank2, 0, max_len);
    SyllableWord::from_flat(&flat, rank1, rank2).expect("ranks agree")
}

/// A product of random conjugated commutators `g⁻¹[a, b]^±g` of total length at most `max_len`.
pub fn random_kernel_word(
    rng: &mut impl Rng,
    rank1: usize,
    rank2: usize,
    max_len: usize,
) -> SyllableWord {
    let mut acc = SyllableWord::identity(rank1, rank2);
    let attempts = rng.gen_range(1..=4);
    for _ in 0..attempts {
        let a = random_word(rng, rank1, 1, 2);
        let b = random_word(rng, rank2, 1, 2);
        let c = CommutatorPair::new(a, b)
            .expand(rank1, rank2)
            .expect("ranks agree");
        let c = if rng.gen_bool(0.5) { c } else { c.inverse() };
        let g = random_element(rng, rank1, rank2, 3);
        let term = g
            .inverse()
            .multiply(&c)
            .and_then(|t| t.multiply(&g))
            .expect("ranks agree");
        let next = acc.multiply(&term).expect("ranks agree");
        if next.len() <= max_len {
            acc = next;
        }
    }
    acc
}

/// All reduced words of length `≤ max_len` in graded shortlex order.
pub fn enumerate_words(rank: usize, max_len: usize) -> Vec<Word> {
    let alphabet: Vec<Letter> = (1..=rank as u32)
        .flat_map(|g| [Letter::pos(g), Letter::neg(g)])
        .collect();
    let mut out = vec![Word::identity(rank)];
    let mut layer: Vec<Vec<Letter>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for prefix in &layer {
            for &l in &alphabet {
                if prefix.last() == Some(&l.inverse()) {
                    continue;
                }
                let mut w = prefix.clone();
                w.push(l);
                next.push(w);
            }
        }
        out.extend(
            next.iter()
                .map(|ls| Word::from_reduced_unchecked(rank, ls.clone())),
        );
        layer = next;
    }
    out
}
