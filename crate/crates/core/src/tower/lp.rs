//! `LP = (P ⊕ ℚ) / ⟨(x₁⁽⁰⁾, −1)⟩` and its projection onto `ℚ/ℤ`.
//!
//! An element is a word at some tower level together with a rational. The
//! identification `(x₁⁽⁰⁾, −1) ~ 1` lets any integer part of the rational move
//! into the word as a power of `x₁⁽⁰⁾`; normalized elements keep the rational
//! in `[0, 1)`. Equality of elements is not decided here.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use super::{level_rank, lift, x01_word};
use crate::error::{Error, Result};
use crate::freegroup::Word;
use crate::freeprod::sample::random_word;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LpElement {
    level: u32,
    word: Word,
    rational: BigRational,
}

impl LpElement {
    pub fn new(level: u32, word: Word, rational: BigRational) -> Result<LpElement> {
        if word.rank() != level_rank(level) {
            return Err(Error::RankMismatch {
                left: word.rank(),
                right: level_rank(level),
            });
        }
        Ok(LpElement {
            level,
            word,
            rational,
        })
    }

    /// `η(w)`: the inclusion of `P`.
    pub fn eta(level: u32, word: Word) -> Result<LpElement> {
        LpElement::new(level, word, BigRational::zero())
    }

    /// The class of a rational `p/q` at level 0.
    pub fn rational(p: i64, q: i64) -> LpElement {
        LpElement {
            level: 0,
            word: Word::identity(1),
            rational: BigRational::new(p.into(), q.into()),
        }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.rational
    }

    pub fn lift_to(&self, level: u32) -> Result<LpElement> {
        Ok(LpElement {
            level,
            word: lift(self.level, level, &self.word)?,
            rational: self.rational.clone(),
        })
    }

    pub fn inverse(&self) -> LpElement {
        lp_normalize(&LpElement {
            level: self.level,
            word: self.word.inverse(),
            rational: -&self.rational,
        })
    }

    pub fn commutator(a: &LpElement, b: &LpElement) -> Result<LpElement> {
        let ab = lp_multiply(&a.inverse(), &b.inverse())?;
        lp_multiply(&lp_multiply(&ab, a)?, b)
    }
}

/// Moves `⌊r⌋` into the word as `x₁⁽⁰⁾^⌊r⌋`, leaving `r − ⌊r⌋ ∈ [0, 1)`.
pub fn lp_normalize(e: &LpElement) -> LpElement {
    let m: BigInt = e.rational.numer().div_floor(e.rational.denom());
    if m.is_zero() {
        return e.clone();
    }
    let shift = m.to_i64().expect("integer part fits in i64");
    let word = e.word.mul_unchecked(&x01_word(e.level).pow(shift));
    LpElement {
        level: e.level,
        word,
        rational: &e.rational - BigRational::from_integer(m),
    }
}

/// Product at the higher of the two levels.
pub fn lp_multiply(a: &LpElement, b: &LpElement) -> Result<LpElement> {
    let level = a.level.max(b.level);
    let a = a.lift_to(level)?;
    let b = b.lift_to(level)?;
    Ok(lp_normalize(&LpElement {
        level,
        word: a.word.mul_unchecked(&b.word),
        rational: a.rational + b.rational,
    }))
}

/// Image in `LP / P ≅ ℚ/ℤ`, as the representative in `[0, 1)`.
pub fn lp_qz_image(e: &LpElement) -> BigRational {
    let r = &e.rational;
    r - BigRational::from_integer(r.numer().div_floor(r.denom()))
}

impl fmt::Display for LpElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})@{}", self.word, self.rational, self.level)
    }
}

impl fmt::Debug for LpElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize)]
struct LpRepr {
    level: u32,
    word: String,
    rational: String,
}

impl Serialize for LpElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LpRepr {
            level: self.level,
            word: self.word.to_string(),
            rational: self.rational.to_string(),
        }
        .serialize(s)
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct LpDemoReport {
    pub samples: usize,
    pub seed: u64,
    pub commutators_in_kernel: usize,
    pub additive_pairs: usize,
    pub normalize_idempotent: usize,
    pub half_image: String,
}

impl LpDemoReport {
    pub fn ok(&self) -> bool {
        self.commutators_in_kernel == self.samples
            && self.additive_pairs == self.samples
            && self.normalize_idempotent == self.samples
            && self.half_image == "1/2"
    }
}

pub fn random_lp_element(rng: &mut impl Rng, max_level: u32, max_len: usize) -> LpElement {
    let level = rng.gen_range(0..=max_level);
    let word = random_word(rng, level_rank(level), 0, max_len);
    let den: i64 = rng.gen_range(1..=12);
    let num: i64 = rng.gen_range(-30..=30);
    LpElement {
        level,
        word,
        rational: BigRational::new(num.into(), den.into()),
    }
}

/// The non-perfectness witness: commutators die in `ℚ/ℤ` while `1/2` does not,
/// and the projection is additive.
pub fn lp_demo(samples: usize, seed: u64) -> Result<LpDemoReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = LpDemoReport {
        samples,
        seed,
        commutators_in_kernel: 0,
        additive_pairs: 0,
        normalize_idempotent: 0,
        half_image: lp_qz_image(&LpElement::rational(1, 2)).to_string(),
    };
    for _ in 0..samples {
        let a = random_lp_element(&mut rng, 2, 4);
        let b = random_lp_element(&mut rng, 2, 4);
        if lp_qz_image(&LpElement::commutator(&a, &b)?).is_zero() {
            report.commutators_in_kernel += 1;
        }
        let sum = lp_qz_image(&a) + lp_qz_image(&b);
        let sum = &sum - BigRational::from_integer(sum.numer().div_floor(sum.denom()));
        if lp_qz_image(&lp_multiply(&a, &b)?) == sum {
            report.additive_pairs += 1;
        }
        let n = lp_normalize(&a);
        if lp_normalize(&n) == n && lp_qz_image(&n) == lp_qz_image(&a) {
            report.normalize_idempotent += 1;
        }
    }
    Ok(report)
}
