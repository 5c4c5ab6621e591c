//! The quotient `G = F₁ ∗ F₂ / ⟨⟨[u₁, u₂]⟩⟩` and the machinery around its
//! kernel `K = ker(G → F₁ ⊕ F₂)`.
//!
//! Elements of `F₁ ∗ F₂` are [`SyllableWord`]s. Equality in `G` is decided by
//! comparing images in `F₁ ⊕ F₂` and then rewriting the quotient into the free
//! basis of `K` (see [`kernel`]). A [`FiniteQuotientOracle`] maps `G` into a
//! symmetric group and gives an independent soundness check.

pub mod checks;
pub mod kernel;
pub mod oracle;
pub mod sample;
pub mod scan;
mod syllable;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::freegroup::Word;

pub use checks::{conj_expansion_check, conj_support_check, relation_check};
pub use kernel::{
    cartesian_basis_express, eq_in_g, k_image, rewrite_commutator, CommutatorPair, KBasisSymbol,
    KWord, SymbolKind,
};
pub use oracle::{FiniteQuotientOracle, Perm};
pub use scan::{commute_lemma_scan, ScanConfig, ScanReport};
pub use syllable::{Factor, Syllable, SyllableWord};

/// Two free factors and the words whose commutator is killed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GContext {
    u1: Word,
    u2: Word,
}

impl GContext {
    /// Fails unless both words are nonempty and not proper powers.
    pub fn new(u1: Word, u2: Word) -> Result<GContext> {
        for (name, u) in [("u1", &u1), ("u2", &u2)] {
            if u.is_empty() {
                return Err(Error::domain(format!("{name} is empty")));
            }
            let (_, e) = u.primitive_root()?;
            if e > 1 {
                return Err(Error::domain(format!(
                    "{name} = {u} is a proper power (exponent {e})"
                )));
            }
        }
        Ok(GContext { u1, u2 })
    }

    pub fn rank1(&self) -> usize {
        self.u1.rank()
    }

    pub fn rank2(&self) -> usize {
        self.u2.rank()
    }

    pub fn u1(&self) -> &Word {
        &self.u1
    }

    pub fn u2(&self) -> &Word {
        &self.u2
    }

    pub fn u(&self, factor: Factor) -> &Word {
        match factor {
            Factor::One => &self.u1,
            Factor::Two => &self.u2,
        }
    }

    pub fn identity(&self) -> SyllableWord {
        SyllableWord::identity(self.rank1(), self.rank2())
    }

    pub fn f1(&self, w: &Word) -> Result<SyllableWord> {
        SyllableWord::from_factor(self.rank1(), self.rank2(), Factor::One, w.clone())
    }

    pub fn f2(&self, w: &Word) -> Result<SyllableWord> {
        SyllableWord::from_factor(self.rank1(), self.rank2(), Factor::Two, w.clone())
    }

    /// `[u₁, u₂]` as an element of `F₁ ∗ F₂`.
    pub fn relator(&self) -> SyllableWord {
        let a = self.f1(&self.u1).expect("u1 has rank1");
        let b = self.f2(&self.u2).expect("u2 has rank2");
        SyllableWord::commutator(&a, &b).expect("same ranks")
    }

    pub fn parse_element(&self, text: &str) -> Result<SyllableWord> {
        SyllableWord::parse(text, self.rank1(), self.rank2())
    }

    pub(crate) fn check(&self, w: &SyllableWord) -> Result<()> {
        if w.rank1() != self.rank1() {
            return Err(Error::RankMismatch {
                left: w.rank1(),
                right: self.rank1(),
            });
        }
        if w.rank2() != self.rank2() {
            return Err(Error::RankMismatch {
                left: w.rank2(),
                right: self.rank2(),
            });
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct ContextRepr {
    rank1: usize,
    rank2: usize,
    u1: String,
    u2: String,
}

impl Serialize for GContext {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ContextRepr {
            rank1: self.rank1(),
            rank2: self.rank2(),
            u1: self.u1.to_string(),
            u2: self.u2.to_string(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GContext {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = ContextRepr::deserialize(d)?;
        let u1 = Word::parse(&r.u1, r.rank1).map_err(D::Error::custom)?;
        let u2 = Word::parse(&r.u2, r.rank2).map_err(D::Error::custom)?;
        GContext::new(u1, u2).map_err(D::Error::custom)
    }
}
