//! The direct system of free groups `F(2ⁿ)` under `x_i ↦ [x_{2i-1}, x_{2i}]`,
//! the presentations `P_n` and `R_n` built from it, and the unitriangular
//! representation `ψ_n` of `P_n`.

mod heisenberg;
mod lp;

use std::collections::BTreeMap;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bigmatrix::{evaluate_word, Assignment, IntMatrix};
use crate::error::{Error, Result};
use crate::freegroup::{GeneratorId, Letter, Sign, Word};
use crate::freeprod::GContext;

pub use heisenberg::{heisenberg_nf, heisenberg_to_matrix, Heisenberg};
pub use lp::{
    lp_demo, lp_multiply, lp_normalize, lp_qz_image, random_lp_element, LpDemoReport, LpElement,
};

/// Default number of powers checked by the order witness.
pub const ORDER_WITNESS_POWERS: u32 = 100;

pub fn level_rank(n: u32) -> usize {
    1usize << n
}

/// `φ_n`: each `x_i` goes to `[x_{2i-1}, x_{2i}]` one level up.
pub fn phi_apply(n: u32, w: &Word) -> Result<Word> {
    let rank = level_rank(n);
    if w.rank() != rank {
        return Err(Error::RankMismatch {
            left: w.rank(),
            right: rank,
        });
    }
    let up = 2 * rank;
    w.substitute(up, |l| {
        let (a, b) = (2 * l.gen().0 - 1, 2 * l.gen().0);
        let letters = match l.sign() {
            Sign::Plus => [
                Letter::neg(a),
                Letter::neg(b),
                Letter::pos(a),
                Letter::pos(b),
            ],
            Sign::Minus => [
                Letter::neg(b),
                Letter::neg(a),
                Letter::pos(b),
                Letter::pos(a),
            ],
        };
        Word::from_reduced_unchecked(up, letters.to_vec())
    })
}

/// Lifts a level-`from` word to level `to ≥ from`.
pub fn lift(from: u32, to: u32, w: &Word) -> Result<Word> {
    if to < from {
        return Err(Error::domain(format!(
            "cannot lift from level {from} down to {to}"
        )));
    }
    (from..to).try_fold(w.clone(), |acc, n| phi_apply(n, &acc))
}

/// Image of `x₁⁽⁰⁾` at level `n`; length `4ⁿ`.
pub fn x01_word(n: u32) -> Word {
    lift(0, n, &Word::generator(1, 1).expect("rank 1")).expect("upward lift")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub rank: usize,
    pub relators: Vec<Word>,
}

#[derive(Serialize, Deserialize)]
struct PresentationRepr {
    rank: usize,
    relators: Vec<String>,
}

impl Serialize for Presentation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PresentationRepr {
            rank: self.rank,
            relators: self.relators.iter().map(|w| w.to_string()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Presentation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = PresentationRepr::deserialize(d)?;
        let relators = r
            .relators
            .iter()
            .map(|s| Word::parse(s, r.rank))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        Ok(Presentation {
            rank: r.rank,
            relators,
        })
    }
}

/// `P_n = ⟨x_1 … x_{2ⁿ} | [x₁⁽⁰⁾, x_i] = 1⟩`.
pub fn presentation_p(n: u32) -> Presentation {
    let rank = level_rank(n);
    let x01 = x01_word(n);
    let relators = (1..=rank as u32)
        .map(|i| {
            Word::commutator(&x01, &Word::generator(rank, i).expect("in range")).expect("same rank")
        })
        .collect();
    Presentation { rank, relators }
}

/// `R_n = ⟨x_1 … x_{2ⁿ} | x₁⁽⁰⁾ = 1⟩`, for `n ≥ 1`.
pub fn presentation_r(n: u32) -> Result<Presentation> {
    if n == 0 {
        return Err(Error::domain("R_0 is the trivial group; levels start at 1"));
    }
    Ok(Presentation {
        rank: level_rank(n),
        relators: vec![x01_word(n)],
    })
}

/// `ψ_n(x_i) = e¹_{i,i+1}` in dimension `2ⁿ + 1`.
pub fn psi_assignment(n: u32) -> Result<Assignment> {
    if n == 0 {
        return Err(Error::domain("ψ_n is defined for n ≥ 1"));
    }
    let rank = level_rank(n);
    let dim = rank + 1;
    let mut images = BTreeMap::new();
    for i in 1..=rank {
        images.insert(
            GeneratorId(i as u32),
            IntMatrix::elementary(1, i, i + 1, dim)?,
        );
    }
    Assignment::new(dim, images)
}

#[derive(Clone, Debug)]
pub struct PsiReport {
    pub n: u32,
    pub relations_ok: bool,
    pub x01_image: IntMatrix,
    pub sign: i32,
    pub order_witness_ok: bool,
    pub order_checked_to: u32,
}

/// Per-level summary in the CLI's JSON schema.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct LevelReport {
    pub n: u32,
    pub rank: usize,
    pub x01_length: usize,
    pub relations_ok: bool,
    pub sign: i32,
    pub order_checked_to: u32,
}

impl PsiReport {
    pub fn level_report(&self) -> LevelReport {
        LevelReport {
            n: self.n,
            rank: level_rank(self.n),
            x01_length: x01_word(self.n).len(),
            relations_ok: self.relations_ok,
            sign: self.sign,
            order_checked_to: self.order_checked_to,
        }
    }
}

/// Checks that `ψ_n` kills every relator of `P_n`, that `ψ_n(x₁⁽⁰⁾) = e^{±1}_{1,2ⁿ+1}`,
/// and that its first `powers` powers are `e^{±k}_{1,2ⁿ+1}`, all distinct.
pub fn verify_psi(n: u32, powers: u32) -> Result<PsiReport> {
    let psi = psi_assignment(n)?;
    let dim = psi.dim();
    for (i, rel) in presentation_p(n).relators.iter().enumerate() {
        if !evaluate_word(&psi, rel)?.is_identity() {
            return Err(Error::Verification(format!(
                "level {n}: relator [x01, x{}] is not killed",
                i + 1
            )));
        }
    }
    let image = evaluate_word(&psi, &x01_word(n))?;
    let sign: i32 = match image.as_elementary() {
        Some((1, j, a)) if j == dim && (a == 1.into() || a == (-1).into()) => {
            if a == 1.into() {
                1
            } else {
                -1
            }
        }
        _ => {
            return Err(Error::Verification(format!(
                "level {n}: ψ(x01) = {image:?} is not e^±1_(1,{dim})"
            )));
        }
    };
    let mut seen = std::collections::BTreeSet::new();
    let mut power = IntMatrix::identity(dim);
    for k in 1..=powers {
        power = power.matmul(&image)?;
        let expected_entry = sign as i64 * k as i64;
        let expected = IntMatrix::elementary(expected_entry, 1, dim, dim)?;
        if power != expected || !seen.insert(power.entry(1, dim).clone()) {
            return Err(Error::Verification(format!(
                "level {n}: power {k} of ψ(x01) is not e^{expected_entry}_(1,{dim})"
            )));
        }
    }
    Ok(PsiReport {
        n,
        relations_ok: true,
        x01_image: image,
        sign,
        order_witness_ok: true,
        order_checked_to: powers,
    })
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct PerfectnessReport {
    pub n: u32,
    pub generators_checked: usize,
    pub all_zero: bool,
    #[serde(skip)]
    pub exponent_sums: Vec<Vec<i64>>,
}

/// Each level-`n` generator becomes a commutator at level `n + 1`, so its
/// image abelianizes to zero.
pub fn perfectness_witness(n: u32) -> PerfectnessReport {
    let rank = level_rank(n);
    let exponent_sums: Vec<Vec<i64>> = (1..=rank as u32)
        .map(|i| {
            let g = Word::generator(rank, i).expect("in range");
            phi_apply(n, &g).expect("rank matches").exponent_sum()
        })
        .collect();
    let all_zero = exponent_sums.iter().all(|v| v.iter().all(|&c| c == 0));
    PerfectnessReport {
        n,
        generators_checked: rank,
        all_zero,
        exponent_sums,
    }
}

/// `R_n` as `F₁ ∗ F₂ / ⟨⟨[u₁, u₂]⟩⟩`: both halves of the generators carry a copy
/// of the level-`(n-1)` image of `x₁⁽⁰⁾`.
pub fn split_rn_context(n: u32) -> Result<GContext> {
    if n < 2 {
        return Err(Error::domain("the two-factor splitting of R_n needs n ≥ 2"));
    }
    let half = level_rank(n - 1);
    let u = x01_word(n - 1);
    let lhs = u.shifted(0, 2 * half)?;
    let rhs = u.shifted(half as u32, 2 * half)?;
    if Word::commutator(&lhs, &rhs)? != x01_word(n) {
        return Err(Error::Verification(format!(
            "level {n}: relator is not [u1, u2]"
        )));
    }
    GContext::new(u.clone(), u)
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct RnSplitReport {
    pub n: u32,
    pub ctx_rank1: usize,
    pub ctx_rank2: usize,
    pub u_length: usize,
    pub relator_matches: bool,
    pub u1_exponent: u32,
    pub u2_exponent: u32,
}

pub fn rn_split_report(n: u32) -> Result<RnSplitReport> {
    let ctx = split_rn_context(n)?;
    Ok(RnSplitReport {
        n,
        ctx_rank1: ctx.rank1(),
        ctx_rank2: ctx.rank2(),
        u_length: ctx.u1().len(),
        relator_matches: true,
        u1_exponent: ctx.u1().primitive_root()?.1,
        u2_exponent: ctx.u2().primitive_root()?.1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(rank: usize, s: &str) -> Word {
        Word::parse(s, rank).unwrap()
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi_apply(0, &w(1, "x1")).unwrap(), w(2, "X1 X2 x1 x2"));
        assert!(phi_apply(0, &Word::identity(1)).unwrap().is_empty());
        assert_eq!(phi_apply(1, &w(2, "x2")).unwrap(), w(4, "X3 X4 x3 x4"));
        assert_eq!(phi_apply(0, &w(1, "X1")).unwrap(), w(2, "X2 X1 x2 x1"));
        assert!(phi_apply(1, &w(3, "x1")).is_err());
    }

    #[test]
    fn x01_examples() {
        assert_eq!(x01_word(0), w(1, "x1"));
        assert_eq!(x01_word(1), w(2, "X1 X2 x1 x2"));
        let c12 = w(4, "X1 X2 x1 x2");
        let c34 = w(4, "X3 X4 x3 x4");
        assert_eq!(x01_word(2), Word::commutator(&c12, &c34).unwrap());
        assert_eq!(x01_word(2).len(), 16);
    }

    #[test]
    fn presentations() {
        let p0 = presentation_p(0);
        assert_eq!(p0.rank, 1);
        assert!(p0.relators[0].is_empty());
        let p1 = presentation_p(1);
        let c = w(2, "X1 X2 x1 x2");
        assert_eq!(
            p1.relators,
            vec![
                Word::commutator(&c, &w(2, "x1")).unwrap(),
                Word::commutator(&c, &w(2, "x2")).unwrap(),
            ]
        );
        let p2 = presentation_p(2);
        assert_eq!(p2.relators.len(), 4);
        assert!(p2.relators.iter().all(|r| r.len() <= 34));
        assert!(presentation_r(0).is_err());
        assert_eq!(presentation_r(1).unwrap().relators, vec![c]);
        assert_eq!(presentation_r(2).unwrap().relators[0].len(), 16);
        let json = serde_json::to_string(&p1).unwrap();
        assert!(json.starts_with(r#"{"rank":2,"relators":["#));
        assert_eq!(serde_json::from_str::<Presentation>(&json).unwrap(), p1);
    }

    #[test]
    fn psi_images() {
        assert!(psi_assignment(0).is_err());
        let psi1 = psi_assignment(1).unwrap();
        assert_eq!(psi1.dim(), 3);
        assert_eq!(
            psi1.get(GeneratorId(1)).unwrap(),
            &IntMatrix::elementary(1, 1, 2, 3).unwrap()
        );
        assert_eq!(
            psi1.get(GeneratorId(2)).unwrap(),
            &IntMatrix::elementary(1, 2, 3, 3).unwrap()
        );
        let psi2 = psi_assignment(2).unwrap();
        assert_eq!(psi2.dim(), 5);
        assert!(psi2.iter().all(|(_, m)| m.is_unitriangular()));
    }

    #[test]
    fn psi_verification_low_levels() {
        let r1 = verify_psi(1, 100).unwrap();
        assert_eq!(r1.sign, 1);
        assert_eq!(r1.x01_image, IntMatrix::elementary(1, 1, 3, 3).unwrap());
        let r2 = verify_psi(2, 10).unwrap();
        assert!(r2.relations_ok && r2.order_witness_ok);
        assert_eq!(
            r2.x01_image,
            IntMatrix::elementary(r2.sign, 1, 5, 5).unwrap()
        );
        assert!(verify_psi(0, 1).is_err());
    }

    #[test]
    fn perfectness() {
        let r = perfectness_witness(0);
        assert_eq!(r.exponent_sums, vec![vec![0, 0]]);
        assert!(perfectness_witness(1).all_zero);
        let r3 = perfectness_witness(3);
        assert_eq!(r3.generators_checked, 8);
        assert!(r3
            .exponent_sums
            .iter()
            .all(|v| v.len() == 16 && v.iter().all(|&c| c == 0)));
    }

    #[test]
    fn rn_splitting() {
        let ctx = split_rn_context(2).unwrap();
        assert_eq!(ctx.u1(), &w(2, "X1 X2 x1 x2"));
        assert_eq!(ctx.u2(), &w(2, "X1 X2 x1 x2"));
        assert!(split_rn_context(1).is_err());
        let r = rn_split_report(3).unwrap();
        assert_eq!((r.u_length, r.u1_exponent, r.u2_exponent), (16, 1, 1));
    }
}
