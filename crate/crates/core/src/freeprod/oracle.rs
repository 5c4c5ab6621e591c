//! Homomorphisms `G → Sym(m)` used to refute claimed equalities.
//!
//! One factor's generators go to uniformly random permutations; the other
//! factor's generators go to random elements of the centralizer of the first
//! relator word's image. The two relator images then commute, so the map kills
//! `[u₁, u₂]` and factors through `G`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::freegroup::{Sign, Word};

use super::{Factor, GContext, SyllableWord};

/// A permutation of `0..m`; products act on the right (`(p·q)(i) = q(p(i))`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Perm(Vec<u32>);

impl Perm {
    pub fn identity(m: usize) -> Perm {
        Perm((0..m as u32).collect())
    }

    pub fn from_images(images: Vec<u32>) -> Result<Perm> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            match seen.get_mut(i as usize) {
                Some(s) if !*s => *s = true,
                _ => return Err(Error::domain("not a permutation")),
            }
        }
        Ok(Perm(images))
    }

    pub fn random(m: usize, rng: &mut impl Rng) -> Perm {
        let mut v: Vec<u32> = (0..m as u32).collect();
        v.shuffle(rng);
        Perm(v)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, i: u32) -> u32 {
        self.0[i as usize]
    }

    pub fn then(&self, q: &Perm) -> Perm {
        Perm(self.0.iter().map(|&i| q.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut r = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            r[j as usize] = i as u32;
        }
        Perm(r)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    pub fn commutes_with(&self, q: &Perm) -> bool {
        self.then(q) == q.then(self)
    }

    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start as u32;
            while !seen[i as usize] {
                seen[i as usize] = true;
                cycle.push(i);
                i = self.0[i as usize];
            }
            out.push(cycle);
        }
        out
    }

    /// Uniform element of the centralizer: permute cycles of equal length
    /// among themselves and rotate each one.
    pub fn random_centralizing(&self, rng: &mut impl Rng) -> Perm {
        let cycles = self.cycles();
        let mut image = vec![0u32; self.0.len()];
        let mut lengths: Vec<usize> = cycles.iter().map(|c| c.len()).collect();
        lengths.sort_unstable();
        lengths.dedup();
        for len in lengths {
            let group: Vec<&Vec<u32>> = cycles.iter().filter(|c| c.len() == len).collect();
            let mut targets: Vec<usize> = (0..group.len()).collect();
            targets.shuffle(rng);
            for (src, &dst) in group.iter().zip(&targets) {
                let shift = rng.gen_range(0..len);
                for (k, &pt) in src.iter().enumerate() {
                    image[pt as usize] = group[dst][(k + shift) % len];
                }
            }
        }
        Perm(image)
    }
}

#[derive(Clone, Debug)]
pub struct FiniteQuotientOracle {
    degree: usize,
    seed: u64,
    // (image, inverse image) per generator, 0-based
    f1: Vec<(Perm, Perm)>,
    f2: Vec<(Perm, Perm)>,
}

impl FiniteQuotientOracle {
    pub fn new(ctx: &GContext, degree: usize, seed: u64) -> Result<FiniteQuotientOracle> {
        if degree < 2 {
            return Err(Error::domain("oracle degree must be at least 2"));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let free_side = if rng.gen_bool(0.5) {
            Factor::One
        } else {
            Factor::Two
        };
        let free_rank = ctx.u(free_side).rank();
        let free: Vec<Perm> = (0..free_rank)
            .map(|_| Perm::random(degree, &mut rng))
            .collect();
        let anchor = eval_word(&with_inverses(&free), ctx.u(free_side), degree);
        let bound_rank = ctx.u(free_side.other()).rank();
        let bound: Vec<Perm> = (0..bound_rank)
            .map(|_| anchor.random_centralizing(&mut rng))
            .collect();
        let (f1, f2) = match free_side {
            Factor::One => (with_inverses(&free), with_inverses(&bound)),
            Factor::Two => (with_inverses(&bound), with_inverses(&free)),
        };
        let oracle = FiniteQuotientOracle {
            degree,
            seed,
            f1,
            f2,
        };
        if !oracle.eval(&ctx.relator()).is_identity() {
            return Err(Error::Verification(format!(
                "oracle seed {seed} does not kill the relator"
            )));
        }
        Ok(oracle)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn eval(&self, w: &SyllableWord) -> Perm {
        let mut acc = Perm::identity(self.degree);
        for s in w.syllables() {
            let table = match s.factor {
                Factor::One => &self.f1,
                Factor::Two => &self.f2,
            };
            acc = acc.then(&eval_word(table, &s.word, self.degree));
        }
        acc
    }

    /// True when the images differ, proving `x ≠ y` in `G`.
    pub fn distinguishes(&self, x: &SyllableWord, y: &SyllableWord) -> bool {
        self.eval(x) != self.eval(y)
    }
}

fn with_inverses(ps: &[Perm]) -> Vec<(Perm, Perm)> {
    ps.iter().map(|p| (p.clone(), p.inverse())).collect()
}

fn eval_word(table: &[(Perm, Perm)], w: &Word, degree: usize) -> Perm {
    let mut acc = Perm::identity(degree);
    for l in w.letters() {
        let (p, pinv) = &table[l.gen().0 as usize - 1];
        acc = acc.then(if l.sign() == Sign::Plus { p } else { pinv });
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn centralizer_elements_commute() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let a = Perm::random(9, &mut rng);
            let c = a.random_centralizing(&mut rng);
            assert!(a.commutes_with(&c));
            assert!(Perm::from_images(c.0.clone()).is_ok());
        }
    }

    #[test]
    fn relator_is_killed() {
        let ctx = GContext::new(
            Word::parse("x1 x2", 2).unwrap(),
            Word::parse("x1 X2 x1", 2).unwrap(),
        )
        .unwrap();
        for seed in 0..50 {
            let o = FiniteQuotientOracle::new(&ctx, 8, seed).unwrap();
            assert!(o.eval(&ctx.relator()).is_identity());
        }
    }

    #[test]
    fn some_seed_separates_bd_from_db() {
        let ctx =
            GContext::new(Word::parse("x1", 2).unwrap(), Word::parse("x1", 2).unwrap()).unwrap();
        let bd = ctx.parse_element("a2 b2").unwrap();
        let db = ctx.parse_element("b2 a2").unwrap();
        assert!((0..20).any(|s| FiniteQuotientOracle::new(&ctx, 8, s)
            .unwrap()
            .distinguishes(&bd, &db)));
    }

    #[test]
    fn perm_basics() {
        let p = Perm::from_images(vec![1, 2, 0]).unwrap();
        assert!(p.then(&p.inverse()).is_identity());
        assert_eq!(p.then(&p).then(&p), Perm::identity(3));
        assert!(Perm::from_images(vec![0, 0]).is_err());
    }
}
