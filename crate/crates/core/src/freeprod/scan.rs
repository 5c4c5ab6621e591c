//! Bounded search for pairs `x, y ∈ G` that commute with `[x, y]` while
//! `[x, y] ≠ 1`.
//!
//! Pairs come from an exhaustive graded-shortlex enumeration up to `max_len`
//! letters each, followed by `budget` seeded random pairs of length at most
//! `random_max_len`. Work is split across threads; results are merged in
//! enumeration order so reports do not depend on the thread count.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;

use super::sample::{enumerate_words, random_element};
use super::{eq_in_g, GContext, SyllableWord};

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ScanConfig {
    pub max_len: usize,
    pub random_max_len: usize,
    pub budget: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Counterexample {
    pub x: String,
    pub y: String,
    pub commutator: String,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ScanReport {
    pub ctx: GContext,
    pub max_len: usize,
    pub random_max_len: usize,
    pub budget: usize,
    pub seed: u64,
    pub pairs_tested: usize,
    pub commuting_pairs_found: usize,
    pub counterexamples: Vec<Counterexample>,
}

#[derive(Default)]
struct Tally {
    tested: usize,
    commuting: usize,
    counterexamples: Vec<Counterexample>,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        self.tested += other.tested;
        self.commuting += other.commuting;
        self.counterexamples.extend(other.counterexamples);
        self
    }
}

/// `Some(is_trivial)` when both `x` and `y` commute with `[x, y]` in `G`.
pub fn commuting_commutator(
    ctx: &GContext,
    x: &SyllableWord,
    y: &SyllableWord,
) -> Result<Option<bool>> {
    let c = SyllableWord::commutator(x, y)?;
    if !eq_in_g(ctx, &x.multiply(&c)?, &c.multiply(x)?)? {
        return Ok(None);
    }
    if !eq_in_g(ctx, &y.multiply(&c)?, &c.multiply(y)?)? {
        return Ok(None);
    }
    Ok(Some(eq_in_g(ctx, &c, &ctx.identity())?))
}

fn test_pair(ctx: &GContext, x: &SyllableWord, y: &SyllableWord, tally: &mut Tally) -> Result<()> {
    tally.tested += 1;
    if let Some(trivial) = commuting_commutator(ctx, x, y)? {
        tally.commuting += 1;
        if !trivial {
            tally.counterexamples.push(Counterexample {
                x: x.to_string(),
                y: y.to_string(),
                commutator: SyllableWord::commutator(x, y)?.to_string(),
            });
        }
    }
    Ok(())
}

pub fn commute_lemma_scan(ctx: &GContext, cfg: &ScanConfig) -> Result<ScanReport> {
    let (r1, r2) = (ctx.rank1(), ctx.rank2());
    let elements: Vec<SyllableWord> = enumerate_words(r1 + r2, cfg.max_len)
        .iter()
        .map(|w| SyllableWord::from_flat(w, r1, r2))
        .collect::<Result<_>>()?;

    let exhaustive = elements
        .par_iter()
        .map(|x| {
            let mut t = Tally::default();
            for y in &elements {
                test_pair(ctx, x, y, &mut t)?;
            }
            Ok(t)
        })
        .collect::<Result<Vec<Tally>>>()?;

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let pairs: Vec<(SyllableWord, SyllableWord)> = (0..cfg.budget)
        .map(|_| {
            let x = random_element(&mut rng, r1, r2, cfg.random_max_len);
            let y = random_element(&mut rng, r1, r2, cfg.random_max_len);
            (x, y)
        })
        .collect();
    let random = pairs
        .par_chunks(64)
        .map(|chunk| {
            let mut t = Tally::default();
            for (x, y) in chunk {
                test_pair(ctx, x, y, &mut t)?;
            }
            Ok(t)
        })
        .collect::<Result<Vec<Tally>>>()?;

    let total = exhaustive
        .into_iter()
        .chain(random)
        .fold(Tally::default(), Tally::merge);
    Ok(ScanReport {
        ctx: ctx.clone(),
        max_len: cfg.max_len,
        random_max_len: cfg.random_max_len,
        budget: cfg.budget,
        seed: cfg.seed,
        pairs_tested: total.tested,
        commuting_pairs_found: total.commuting,
        counterexamples: total.counterexamples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freegroup::Word;

    #[test]
    fn abelian_context_has_only_trivial_commutators() {
        // F₁ = ⟨a⟩, F₂ = ⟨c⟩, u₁ = a, u₂ = c: G ≅ ℤ²
        let ctx =
            GContext::new(Word::parse("x1", 1).unwrap(), Word::parse("x1", 1).unwrap()).unwrap();
        let cfg = ScanConfig {
            max_len: 2,
            random_max_len: 4,
            budget: 50,
            seed: 7,
        };
        let r = commute_lemma_scan(&ctx, &cfg).unwrap();
        // 17 reduced words of length ≤ 2 over two letters
        assert_eq!(r.pairs_tested, 17 * 17 + 50);
        assert_eq!(r.commuting_pairs_found, r.pairs_tested);
        assert!(r.counterexamples.is_empty());
    }

    #[test]
    fn relator_powers_commute() {
        let ctx = GContext::new(
            Word::parse("x1 x2", 2).unwrap(),
            Word::parse("x1 x2", 2).unwrap(),
        )
        .unwrap();
        for k in -2..=2 {
            for l in -2..=2 {
                let x = ctx.f1(&ctx.u1().pow(k)).unwrap();
                let y = ctx.f2(&ctx.u2().pow(l)).unwrap();
                assert!(eq_in_g(
                    &ctx,
                    &SyllableWord::commutator(&x, &y).unwrap(),
                    &ctx.identity()
                )
                .unwrap());
                assert_eq!(commuting_commutator(&ctx, &x, &y).unwrap(), Some(true));
            }
        }
    }
}
