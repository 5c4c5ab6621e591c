//! Words in finitely generated free groups.
//!
//! A [`Word`] is always freely reduced and carries the rank of the alphabet it
//! lives over. Every operation returns a fresh value; words are never mutated
//! in place once handed out.
//!
//! Text form: whitespace-separated tokens `x<i>` (generator `i`) and `X<i>`
//! (its inverse), with the literal `e` for the empty word. The commutator
//! `[x1, x2]` prints as `X1 X2 x1 x2`.

mod ops;

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use ops::{coset_rep, cyclic_subgroup_member};

/// 1-based index of a free generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GeneratorId(pub u32);

impl GeneratorId {
    pub fn index(self) -> u32 {
        self.0
    }
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_i32(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_i32(s: i32) -> Option<Sign> {
        match s {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }
}

/// A generator or its inverse, packed as a nonzero signed index.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter(i32);

impl Letter {
    pub fn new(gen: GeneratorId, sign: Sign) -> Letter {
        assert!(
            gen.0 >= 1 && gen.0 <= i32::MAX as u32,
            "generator index must be positive"
        );
        Letter(gen.0 as i32 * sign.as_i32())
    }

    pub fn pos(index: u32) -> Letter {
        Letter::new(GeneratorId(index), Sign::Plus)
    }

    pub fn neg(index: u32) -> Letter {
        Letter::new(GeneratorId(index), Sign::Minus)
    }

    /// `Some` for any nonzero signed index.
    pub fn from_signed(v: i32) -> Option<Letter> {
        (v != 0).then_some(Letter(v))
    }

    pub fn signed(self) -> i32 {
        self.0
    }

    pub fn gen(self) -> GeneratorId {
        GeneratorId(self.0.unsigned_abs())
    }

    pub fn sign(self) -> Sign {
        if self.0 > 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn inverse(self) -> Letter {
        Letter(-self.0)
    }

    fn order_key(self) -> (u32, bool) {
        (self.0.unsigned_abs(), self.0 < 0)
    }
}

// generator index first, then positive before negative
impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order_key().cmp(&other.order_key())
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign() {
            Sign::Plus => write!(f, "x{}", self.gen().0),
            Sign::Minus => write!(f, "X{}", self.gen().0),
        }
    }
}

/// A freely reduced word over an alphabet of fixed rank.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word {
    rank: usize,
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity(rank: usize) -> Word {
        Word {
            rank,
            letters: Vec::new(),
        }
    }

    pub fn generator(rank: usize, index: u32) -> Result<Word> {
        Word::reduce([Letter::pos(index)], rank)
    }

    /// Freely reduces a raw letter sequence.
    pub fn reduce(raw: impl IntoIterator<Item = Letter>, rank: usize) -> Result<Word> {
        let mut letters: Vec<Letter> = Vec::new();
        for l in raw {
            if l.gen().0 as usize > rank {
                return Err(Error::Alphabet {
                    index: l.gen().0 as i64,
                    rank,
                });
            }
            push_reduced(&mut letters, l);
        }
        Ok(Word { rank, letters })
    }

    /// Builds a word from signed indices (`-2` is the inverse of `x2`).
    pub fn from_signed(rank: usize, raw: &[i32]) -> Result<Word> {
        let mut letters = Vec::with_capacity(raw.len());
        for &v in raw {
            let l = Letter::from_signed(v).ok_or(Error::Alphabet { index: 0, rank })?;
            letters.push(l);
        }
        Word::reduce(letters, rank)
    }

    /// Trusted constructor for sequences already known to be reduced.
    pub(crate) fn from_reduced_unchecked(rank: usize, letters: Vec<Letter>) -> Word {
        debug_assert!(letters.windows(2).all(|p| p[0] != p[1].inverse()));
        Word { rank, letters }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn first(&self) -> Option<Letter> {
        self.letters.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.letters.last().copied()
    }

    fn check_rank(&self, other: &Word) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        Ok(())
    }

    pub fn multiply(&self, other: &Word) -> Result<Word> {
        self.check_rank(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Word) -> Word {
        let a = &self.letters;
        let b = &other.letters;
        let mut k = 0;
        while k < a.len() && k < b.len() && a[a.len() - 1 - k] == b[k].inverse() {
            k += 1;
        }
        let mut letters = Vec::with_capacity(a.len() + b.len() - 2 * k);
        letters.extend_from_slice(&a[..a.len() - k]);
        letters.extend_from_slice(&b[k..]);
        Word {
            rank: self.rank,
            letters,
        }
    }

    pub fn inverse(&self) -> Word {
        Word {
            rank: self.rank,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// `self⁻¹ · other · self`
    pub fn conjugate_by(&self, g: &Word) -> Result<Word> {
        g.inverse().multiply(self)?.multiply(g)
    }

    /// `[a, b] = a⁻¹ b⁻¹ a b`
    pub fn commutator(a: &Word, b: &Word) -> Result<Word> {
        a.check_rank(b)?;
        Ok(a.inverse()
            .mul_unchecked(&b.inverse())
            .mul_unchecked(a)
            .mul_unchecked(b))
    }

    pub fn pow(&self, k: i64) -> Word {
        if k == 0 || self.is_empty() {
            return Word::identity(self.rank);
        }
        let (core, conj) = self.cyclic_reduce();
        let base = if k > 0 { core } else { core.inverse() };
        let reps = k.unsigned_abs() as usize;
        let mut letters = Vec::with_capacity(2 * conj.len() + reps * base.len());
        letters.extend(conj.letters.iter().rev().map(|l| l.inverse()));
        for _ in 0..reps {
            letters.extend_from_slice(&base.letters);
        }
        letters.extend_from_slice(&conj.letters);
        Word {
            rank: self.rank,
            letters,
        }
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.first(), self.last()) {
            (Some(f), Some(l)) => self.len() == 1 || f != l.inverse(),
            _ => true,
        }
    }

    /// Splits `self = conjugator⁻¹ · core · conjugator` with `core` cyclically reduced.
    pub fn cyclic_reduce(&self) -> (Word, Word) {
        let w = &self.letters;
        let (mut i, mut j) = (0, w.len());
        while j - i >= 2 && w[i] == w[j - 1].inverse() {
            i += 1;
            j -= 1;
        }
        (
            Word {
                rank: self.rank,
                letters: w[i..j].to_vec(),
            },
            Word {
                rank: self.rank,
                letters: w[j..].to_vec(),
            },
        )
    }

    /// Conjugacy in the free group: compare cyclic cores up to rotation.
    pub fn is_conjugate(&self, other: &Word) -> Result<bool> {
        self.check_rank(other)?;
        let (a, _) = self.cyclic_reduce();
        let (b, _) = other.cyclic_reduce();
        if a.len() != b.len() {
            return Ok(false);
        }
        if a.is_empty() {
            return Ok(true);
        }
        Ok(ops::is_rotation(&a.letters, &b.letters))
    }

    /// Returns `(root, exponent)` with `self = root^exponent` and `root` not a proper power.
    pub fn primitive_root(&self) -> Result<(Word, u32)> {
        if self.is_empty() {
            return Err(Error::domain("primitive root of the empty word"));
        }
        let (core, conj) = self.cyclic_reduce();
        let n = core.len();
        let period = (1..=n)
            .filter(|d| n % d == 0)
            .find(|&d| core.letters.chunks(d).all(|c| c == &core.letters[..d]))
            .expect("full length is always a period");
        let mut letters = Vec::with_capacity(2 * conj.len() + period);
        letters.extend(conj.letters.iter().rev().map(|l| l.inverse()));
        letters.extend_from_slice(&core.letters[..period]);
        letters.extend_from_slice(&conj.letters);
        Ok((
            Word {
                rank: self.rank,
                letters,
            },
            (n / period) as u32,
        ))
    }

    pub fn is_proper_power(&self) -> bool {
        matches!(self.primitive_root(), Ok((_, e)) if e > 1)
    }

    pub fn support(&self) -> BTreeSet<GeneratorId> {
        self.letters.iter().map(|l| l.gen()).collect()
    }

    /// Image in the abelianization `ℤ^rank`.
    pub fn exponent_sum(&self) -> Vec<i64> {
        let mut v = vec![0i64; self.rank];
        for l in &self.letters {
            v[l.gen().0 as usize - 1] += l.sign().as_i32() as i64;
        }
        v
    }

    /// Re-indexes into a larger alphabet: `x_i ↦ x_{i+offset}`.
    pub fn shifted(&self, offset: u32, new_rank: usize) -> Result<Word> {
        if self.rank + offset as usize > new_rank {
            return Err(Error::RankMismatch {
                left: self.rank + offset as usize,
                right: new_rank,
            });
        }
        let letters = self
            .letters
            .iter()
            .map(|l| Letter::new(GeneratorId(l.gen().0 + offset), l.sign()))
            .collect();
        Ok(Word {
            rank: new_rank,
            letters,
        })
    }

    /// Applies a letter-wise substitution and reduces the result.
    pub fn substitute(&self, new_rank: usize, image: impl Fn(Letter) -> Word) -> Result<Word> {
        let mut letters = Vec::new();
        for &l in &self.letters {
            let img = image(l);
            if img.rank != new_rank {
                return Err(Error::RankMismatch {
                    left: img.rank,
                    right: new_rank,
                });
            }
            for &m in &img.letters {
                push_reduced(&mut letters, m);
            }
        }
        Ok(Word {
            rank: new_rank,
            letters,
        })
    }

    pub fn parse(text: &str, rank: usize) -> Result<Word> {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if tokens.is_empty() {
            return Err(Error::Parse(
                "empty input (write `e` for the identity)".into(),
            ));
        }
        if tokens == ["e"] {
            return Ok(Word::identity(rank));
        }
        let mut raw = Vec::with_capacity(tokens.len());
        for tok in tokens {
            raw.push(parse_letter(tok, rank)?);
        }
        Word::reduce(raw, rank)
    }
}

pub(crate) fn push_reduced(letters: &mut Vec<Letter>, l: Letter) {
    if letters.last() == Some(&l.inverse()) {
        letters.pop();
    } else {
        letters.push(l);
    }
}

fn parse_letter(tok: &str, rank: usize) -> Result<Letter> {
    let (sign, digits) = match tok.split_at(tok.chars().next().map_or(0, |c| c.len_utf8())) {
        ("x", d) => (Sign::Plus, d),
        ("X", d) => (Sign::Minus, d),
        _ => return Err(Error::Parse(format!("bad token `{tok}`"))),
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse(format!("bad token `{tok}`")));
    }
    let index: u64 = digits
        .parse()
        .map_err(|_| Error::Parse(format!("bad token `{tok}`")))?;
    if index == 0 || index > rank as u64 {
        return Err(Error::Alphabet {
            index: index.min(i64::MAX as u64) as i64,
            rank,
        });
    }
    Ok(Letter::new(GeneratorId(index as u32), sign))
}

// shortlex: length, then letters
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank
            .cmp(&other.rank)
            .then(self.letters.len().cmp(&other.letters.len()))
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("e");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word[{}]({})", self.rank, self)
    }
}
