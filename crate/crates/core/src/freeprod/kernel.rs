//! Free bases of the kernels `K' = ker(F₁∗F₂ → F₁⊕F₂)` and
//! `K = ker(G → F₁⊕F₂)`, and the word problem in `G` built on them.
//!
//! `K'` is free on the commutators `[v₁, v₂]` with `v₁ ∈ F₁`, `v₂ ∈ F₂` both
//! nontrivial. `K` is free on the subset where `v₁` is the canonical
//! representative of a coset `⟨u₁⟩v₁ ≠ ⟨u₁⟩` (kind A), or `v₂` is the
//! canonical representative of a coset `⟨u₂⟩v₂ ≠ ⟨u₂⟩` (kind B). When both
//! sides are canonical the symbol is kind A.
//!
//! The map `K' → K` sends `[w₁, w₂]` to `[w₁, s₂][s₂, s₁][s₁, w₂]` where
//! `s_i` is the representative of `⟨u_i⟩w_i`.

use std::fmt;

use crate::error::{Error, Result};
use crate::freegroup::{coset_rep, Sign, Word};

use super::{Factor, GContext, SyllableWord};

/// The commutator `[v₁, v₂]` with `v₁ ∈ F₁`, `v₂ ∈ F₂`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CommutatorPair {
    pub v1: Word,
    pub v2: Word,
}

impl CommutatorPair {
    pub fn new(v1: Word, v2: Word) -> CommutatorPair {
        CommutatorPair { v1, v2 }
    }

    pub fn expand(&self, rank1: usize, rank2: usize) -> Result<SyllableWord> {
        let a = SyllableWord::from_factor(rank1, rank2, Factor::One, self.v1.clone())?;
        let b = SyllableWord::from_factor(rank1, rank2, Factor::Two, self.v2.clone())?;
        SyllableWord::commutator(&a, &b)
    }
}

fn push_pair(out: &mut Vec<(CommutatorPair, Sign)>, pair: CommutatorPair, sign: Sign) {
    if pair.v1.is_empty() || pair.v2.is_empty() {
        return;
    }
    if matches!(out.last(), Some((p, s)) if *p == pair && *s == sign.flip()) {
        out.pop();
    } else {
        out.push((pair, sign));
    }
}

/// Writes an element of `K'` as a reduced product of basis commutators.
///
/// Reidemeister–Schreier with the transversal `{p₁p₂}`: an `F₁`-syllable `s`
/// read at prefix image `(p₁, p₂)` contributes `[p₁⁻¹, p₂⁻¹] · [(p₁s)⁻¹, p₂⁻¹]⁻¹`,
/// and `F₂`-syllables contribute nothing.
pub fn cartesian_basis_express(w: &SyllableWord) -> Result<Vec<(CommutatorPair, Sign)>> {
    let (h1, h2) = w.h_map();
    if !h1.is_empty() || !h2.is_empty() {
        return Err(Error::domain(format!("{w} is not in the kernel of h")));
    }
    let mut p1 = Word::identity(w.rank1());
    let mut p2 = Word::identity(w.rank2());
    let mut out = Vec::new();
    for s in w.syllables() {
        match s.factor {
            Factor::Two => p2 = p2.mul_unchecked(&s.word),
            Factor::One => {
                let next = p1.mul_unchecked(&s.word);
                if !p2.is_empty() {
                    let p2inv = p2.inverse();
                    push_pair(
                        &mut out,
                        CommutatorPair::new(p1.inverse(), p2inv.clone()),
                        Sign::Plus,
                    );
                    push_pair(
                        &mut out,
                        CommutatorPair::new(next.inverse(), p2inv),
                        Sign::Minus,
                    );
                }
                p1 = next;
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SymbolKind {
    /// `v₁` canonical for a nontrivial coset of `⟨u₁⟩`.
    A,
    /// `v₂` canonical for a nontrivial coset of `⟨u₂⟩`, `v₁` not canonical.
    B,
}

/// A free generator `[v₁, v₂]` of `K`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KBasisSymbol {
    v1: Word,
    v2: Word,
    kind: SymbolKind,
}

impl KBasisSymbol {
    /// Checks that `[v₁, v₂]` belongs to the basis of `K` and classifies it.
    pub fn classify(ctx: &GContext, v1: Word, v2: Word) -> Result<KBasisSymbol> {
        if v1.is_empty() || v2.is_empty() {
            return Err(Error::domain("basis commutators have nontrivial sides"));
        }
        if coset_rep(ctx.u1(), &v1)? == v1 {
            return Ok(KBasisSymbol {
                v1,
                v2,
                kind: SymbolKind::A,
            });
        }
        if coset_rep(ctx.u2(), &v2)? == v2 {
            return Ok(KBasisSymbol {
                v1,
                v2,
                kind: SymbolKind::B,
            });
        }
        Err(Error::domain(format!("[{v1}, {v2}] has no canonical side")))
    }

    pub fn v1(&self) -> &Word {
        &self.v1
    }

    pub fn v2(&self) -> &Word {
        &self.v2
    }

    pub fn kind(&self) -> SymbolKind {
        self.kind
    }

    pub fn expand(&self, rank1: usize, rank2: usize) -> Result<SyllableWord> {
        CommutatorPair::new(self.v1.clone(), self.v2.clone()).expand(rank1, rank2)
    }

    fn same_commutator(&self, other: &KBasisSymbol) -> bool {
        self.v1 == other.v1 && self.v2 == other.v2
    }
}

impl fmt::Display for KBasisSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (r1, r2) = (self.v1.rank(), self.v2.rank());
        let a = SyllableWord::from_factor(r1, r2, Factor::One, self.v1.clone())
            .map_err(|_| fmt::Error)?;
        let b = SyllableWord::from_factor(r1, r2, Factor::Two, self.v2.clone())
            .map_err(|_| fmt::Error)?;
        write!(f, "[{a}, {b}]")
    }
}

/// A freely reduced word in the basis of `K`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct KWord {
    symbols: Vec<(KBasisSymbol, Sign)>,
}

impl KWord {
    pub fn new() -> KWord {
        KWord::default()
    }

    pub fn symbols(&self) -> &[(KBasisSymbol, Sign)] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn push(&mut self, sym: KBasisSymbol, sign: Sign) {
        match self.symbols.last() {
            Some((last, s)) if last.same_commutator(&sym) && *s == sign.flip() => {
                self.symbols.pop();
            }
            _ => self.symbols.push((sym, sign)),
        }
    }

    pub fn append(&mut self, other: KWord) {
        for (sym, sign) in other.symbols {
            self.push(sym, sign);
        }
    }

    pub fn inverse(&self) -> KWord {
        KWord {
            symbols: self
                .symbols
                .iter()
                .rev()
                .map(|(s, e)| (s.clone(), e.flip()))
                .collect(),
        }
    }

    /// The product of the symbols as an element of `F₁ ∗ F₂`.
    pub fn expand(&self, ctx: &GContext) -> Result<SyllableWord> {
        let mut acc = ctx.identity();
        for (sym, sign) in &self.symbols {
            let c = sym.expand(ctx.rank1(), ctx.rank2())?;
            let c = if *sign == Sign::Plus { c } else { c.inverse() };
            acc = acc.multiply(&c)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for KWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.symbols.is_empty() {
            return f.write_str("e");
        }
        for (k, (sym, sign)) in self.symbols.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{sym}")?;
            if *sign == Sign::Minus {
                f.write_str("^-1")?;
            }
        }
        Ok(())
    }
}

fn rewrite_unchecked(ctx: &GContext, w1: &Word, w2: &Word) -> Result<KWord> {
    let s1 = coset_rep(ctx.u1(), w1)?;
    let s2 = coset_rep(ctx.u2(), w2)?;
    let mut out = KWord::new();
    if !s2.is_empty() {
        let kind = if &s1 == w1 && !s1.is_empty() {
            SymbolKind::A
        } else {
            SymbolKind::B
        };
        out.push(
            KBasisSymbol {
                v1: w1.clone(),
                v2: s2.clone(),
                kind,
            },
            Sign::Plus,
        );
    }
    if !s1.is_empty() && !s2.is_empty() {
        // [s₂, s₁] = [s₁, s₂]⁻¹
        out.push(
            KBasisSymbol {
                v1: s1.clone(),
                v2: s2,
                kind: SymbolKind::A,
            },
            Sign::Minus,
        );
    }
    if !s1.is_empty() {
        out.push(
            KBasisSymbol {
                v1: s1,
                v2: w2.clone(),
                kind: SymbolKind::A,
            },
            Sign::Plus,
        );
    }
    Ok(out)
}

/// Image of `[w₁, w₂] ∈ K'` in the basis of `K`.
pub fn rewrite_commutator(ctx: &GContext, w1: &Word, w2: &Word) -> Result<KWord> {
    if w1.rank() != ctx.rank1() {
        return Err(Error::RankMismatch {
            left: w1.rank(),
            right: ctx.rank1(),
        });
    }
    if w2.rank() != ctx.rank2() {
        return Err(Error::RankMismatch {
            left: w2.rank(),
            right: ctx.rank2(),
        });
    }
    if w1.is_empty() || w2.is_empty() {
        return Err(Error::domain(
            "rewrite_commutator needs nontrivial w1 and w2",
        ));
    }
    rewrite_unchecked(ctx, w1, w2)
}

/// Image in `K` of an element of `ker h`; empty exactly when `w = 1` in `G`.
pub fn k_image(ctx: &GContext, w: &SyllableWord) -> Result<KWord> {
    ctx.check(w)?;
    let mut out = KWord::new();
    for (pair, sign) in cartesian_basis_express(w)? {
        let r = rewrite_unchecked(ctx, &pair.v1, &pair.v2)?;
        out.append(if sign == Sign::Plus { r } else { r.inverse() });
    }
    Ok(out)
}

/// Equality in `G`: same image in `F₁ ⊕ F₂`, and `x y⁻¹` trivial in `K`.
pub fn eq_in_g(ctx: &GContext, x: &SyllableWord, y: &SyllableWord) -> Result<bool> {
    ctx.check(x)?;
    ctx.check(y)?;
    if x.h_map() != y.h_map() {
        return Ok(false);
    }
    Ok(k_image(ctx, &x.multiply(&y.inverse())?)?.is_empty())
}
