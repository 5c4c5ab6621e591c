use std::fmt;

use crate::error::{Error, Result};
use crate::freegroup::{GeneratorId, Letter, Sign, Word};

/// Which free factor a syllable lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Factor {
    One,
    Two,
}

impl Factor {
    pub fn other(self) -> Factor {
        match self {
            Factor::One => Factor::Two,
            Factor::Two => Factor::One,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Syllable {
    pub factor: Factor,
    pub word: Word,
}

/// Normal form in `F₁ ∗ F₂`: alternating nonempty reduced syllables.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SyllableWord {
    rank1: usize,
    rank2: usize,
    syllables: Vec<Syllable>,
}

impl SyllableWord {
    pub fn identity(rank1: usize, rank2: usize) -> SyllableWord {
        SyllableWord {
            rank1,
            rank2,
            syllables: Vec::new(),
        }
    }

    /// Free-product reduction of a raw syllable sequence: adjacent syllables
    /// from the same factor are merged and empty ones dropped.
    pub fn reduce(
        rank1: usize,
        rank2: usize,
        raw: impl IntoIterator<Item = (Factor, Word)>,
    ) -> Result<SyllableWord> {
        let mut out = SyllableWord::identity(rank1, rank2);
        for (factor, word) in raw {
            let expected = out.rank_of(factor);
            if word.rank() != expected {
                return Err(Error::RankMismatch {
                    left: word.rank(),
                    right: expected,
                });
            }
            out.push(factor, &word);
        }
        Ok(out)
    }

    pub fn from_factor(
        rank1: usize,
        rank2: usize,
        factor: Factor,
        word: Word,
    ) -> Result<SyllableWord> {
        SyllableWord::reduce(rank1, rank2, [(factor, word)])
    }

    fn push(&mut self, factor: Factor, word: &Word) {
        if word.is_empty() {
            return;
        }
        match self.syllables.last_mut() {
            Some(last) if last.factor == factor => {
                let merged = last.word.mul_unchecked(word);
                if merged.is_empty() {
                    self.syllables.pop();
                } else {
                    last.word = merged;
                }
            }
            _ => self.syllables.push(Syllable {
                factor,
                word: word.clone(),
            }),
        }
    }

    pub fn rank1(&self) -> usize {
        self.rank1
    }

    pub fn rank2(&self) -> usize {
        self.rank2
    }

    pub fn rank_of(&self, factor: Factor) -> usize {
        match factor {
            Factor::One => self.rank1,
            Factor::Two => self.rank2,
        }
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Total number of letters.
    pub fn len(&self) -> usize {
        self.syllables.iter().map(|s| s.word.len()).sum()
    }

    fn check_ranks(&self, other: &SyllableWord) -> Result<()> {
        if self.rank1 != other.rank1 {
            return Err(Error::RankMismatch {
                left: self.rank1,
                right: other.rank1,
            });
        }
        if self.rank2 != other.rank2 {
            return Err(Error::RankMismatch {
                left: self.rank2,
                right: other.rank2,
            });
        }
        Ok(())
    }

    pub fn multiply(&self, other: &SyllableWord) -> Result<SyllableWord> {
        self.check_ranks(other)?;
        let mut out = self.clone();
        for s in &other.syllables {
            out.push(s.factor, &s.word);
        }
        Ok(out)
    }

    pub fn inverse(&self) -> SyllableWord {
        SyllableWord {
            rank1: self.rank1,
            rank2: self.rank2,
            syllables: self
                .syllables
                .iter()
                .rev()
                .map(|s| Syllable {
                    factor: s.factor,
                    word: s.word.inverse(),
                })
                .collect(),
        }
    }

    pub fn commutator(a: &SyllableWord, b: &SyllableWord) -> Result<SyllableWord> {
        a.inverse().multiply(&b.inverse())?.multiply(a)?.multiply(b)
    }

    pub fn product<'a>(
        rank1: usize,
        rank2: usize,
        factors: impl IntoIterator<Item = &'a SyllableWord>,
    ) -> Result<SyllableWord> {
        let mut acc = SyllableWord::identity(rank1, rank2);
        for f in factors {
            acc = acc.multiply(f)?;
        }
        Ok(acc)
    }

    /// The projection `h` onto `F₁ ⊕ F₂`.
    pub fn h_map(&self) -> (Word, Word) {
        let mut p1 = Word::identity(self.rank1);
        let mut p2 = Word::identity(self.rank2);
        for s in &self.syllables {
            match s.factor {
                Factor::One => p1 = p1.mul_unchecked(&s.word),
                Factor::Two => p2 = p2.mul_unchecked(&s.word),
            }
        }
        (p1, p2)
    }

    /// The same element in the free group of rank `rank1 + rank2`, with
    /// `F₂`'s generators shifted past `F₁`'s.
    pub fn to_flat(&self) -> Word {
        let offset = self.rank1 as u32;
        let letters = self
            .syllables
            .iter()
            .flat_map(|s| {
                let shift = if s.factor == Factor::One { 0 } else { offset };
                s.word
                    .letters()
                    .iter()
                    .map(move |l| Letter::new(GeneratorId(l.gen().0 + shift), l.sign()))
            })
            .collect();
        Word::from_reduced_unchecked(self.rank1 + self.rank2, letters)
    }

    pub fn from_flat(w: &Word, rank1: usize, rank2: usize) -> Result<SyllableWord> {
        if w.rank() != rank1 + rank2 {
            return Err(Error::RankMismatch {
                left: w.rank(),
                right: rank1 + rank2,
            });
        }
        let mut raw: Vec<(Factor, Vec<Letter>)> = Vec::new();
        for &l in w.letters() {
            let (factor, letter) = if l.gen().0 as usize <= rank1 {
                (Factor::One, l)
            } else {
                (
                    Factor::Two,
                    Letter::new(GeneratorId(l.gen().0 - rank1 as u32), l.sign()),
                )
            };
            match raw.last_mut() {
                Some((f, ls)) if *f == factor => ls.push(letter),
                _ => raw.push((factor, vec![letter])),
            }
        }
        let raw = raw
            .into_iter()
            .map(|(f, ls)| {
                Ok((
                    f,
                    Word::reduce(ls, if f == Factor::One { rank1 } else { rank2 })?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        SyllableWord::reduce(rank1, rank2, raw)
    }

    /// Parses `a<i>`/`A<i>` (letters of `F₁` and inverses), `b<i>`/`B<i>`
    /// (letters of `F₂`), optional `|` separators, and `e` for the identity.
    pub fn parse(text: &str, rank1: usize, rank2: usize) -> Result<SyllableWord> {
        let tokens: Vec<&str> = text.split_whitespace().filter(|t| *t != "|").collect();
        if tokens.is_empty() {
            return Err(Error::Parse(
                "empty input (write `e` for the identity)".into(),
            ));
        }
        if tokens == ["e"] {
            return Ok(SyllableWord::identity(rank1, rank2));
        }
        let mut raw = Vec::with_capacity(tokens.len());
        for tok in tokens {
            let mut chars = tok.chars();
            let head = chars.next().unwrap_or(' ');
            let (factor, sign) = match head {
                'a' => (Factor::One, Sign::Plus),
                'A' => (Factor::One, Sign::Minus),
                'b' => (Factor::Two, Sign::Plus),
                'B' => (Factor::Two, Sign::Minus),
                _ => return Err(Error::Parse(format!("bad token `{tok}`"))),
            };
            let digits = chars.as_str();
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::Parse(format!("bad token `{tok}`")));
            }
            let index: u64 = digits
                .parse()
                .map_err(|_| Error::Parse(format!("bad token `{tok}`")))?;
            let rank = if factor == Factor::One { rank1 } else { rank2 };
            if index == 0 || index > rank as u64 {
                return Err(Error::Alphabet {
                    index: index.min(i64::MAX as u64) as i64,
                    rank,
                });
            }
            let letter = Letter::new(GeneratorId(index as u32), sign);
            raw.push((factor, Word::reduce([letter], rank)?));
        }
        SyllableWord::reduce(rank1, rank2, raw)
    }
}

impl fmt::Display for SyllableWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return f.write_str("e");
        }
        for (k, s) in self.syllables.iter().enumerate() {
            if k > 0 {
                f.write_str(" | ")?;
            }
            let (pos, neg) = match s.factor {
                Factor::One => ('a', 'A'),
                Factor::Two => ('b', 'B'),
            };
            for (i, l) in s.word.letters().iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                let c = if l.sign() == Sign::Plus { pos } else { neg };
                write!(f, "{c}{}", l.gen().0)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SyllableWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SyllableWord({self})")
    }
}
