//! Identity checks for the kernel rewriting formulas, and a seeded suite that
//! runs them in bulk.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::freegroup::{Sign, Word};

use super::sample::{random_kernel_word, random_word};
use super::{
    cartesian_basis_express, eq_in_g, rewrite_commutator, CommutatorPair, FiniteQuotientOracle,
    GContext, KBasisSymbol, SyllableWord,
};

fn relation_sides(ctx: &GContext, w1: &Word, w2: &Word) -> Result<(SyllableWord, SyllableWord)> {
    let a = ctx.f1(w1)?;
    let b = ctx.f2(w2)?;
    let ua = ctx.f1(&ctx.u1().multiply(w1)?)?;
    let ub = ctx.f2(&ctx.u2().multiply(w2)?)?;
    let lhs = SyllableWord::commutator(&ua, &ub)?;
    let rhs = SyllableWord::commutator(&ua, &b)?
        .multiply(&SyllableWord::commutator(&b, &a)?)?
        .multiply(&SyllableWord::commutator(&a, &ub)?)?;
    Ok((lhs, rhs))
}

/// `[u₁w₁, u₂w₂] = [u₁w₁, w₂][w₂, w₁][w₁, u₂w₂]` in `G`, and no oracle refutes it.
pub fn relation_check(
    ctx: &GContext,
    w1: &Word,
    w2: &Word,
    oracles: &[FiniteQuotientOracle],
) -> Result<()> {
    let (lhs, rhs) = relation_sides(ctx, w1, w2)?;
    if !eq_in_g(ctx, &lhs, &rhs)? {
        return Err(Error::Verification(format!(
            "relation fails for w1 = {w1}, w2 = {w2}"
        )));
    }
    if let Some(o) = oracles.iter().find(|o| o.distinguishes(&lhs, &rhs)) {
        return Err(Error::Verification(format!(
            "oracle seed {} refutes the relation for w1 = {w1}, w2 = {w2}",
            o.seed()
        )));
    }
    Ok(())
}

fn signed(w: SyllableWord, sign: Sign) -> SyllableWord {
    match sign {
        Sign::Plus => w,
        Sign::Minus => w.inverse(),
    }
}

/// Both sides of the conjugation expansion, as elements of `F₁ ∗ F₂`:
/// `x₂⁻ⁿx₁⁻ⁿ C x₁ⁿx₂ⁿ` and `∏ ([x₂ⁿ, c_j x₁ⁿ][c_j x₁ⁿ, d_j x₂ⁿ][d_j x₂ⁿ, x₁ⁿ][x₁ⁿ, x₂ⁿ])^δ_j`
/// where `C = ∏ [c_j, d_j]^δ_j`.
pub fn conj_expansion_sides(
    x1: &Word,
    x2: &Word,
    factors: &[(CommutatorPair, Sign)],
    n: u32,
) -> Result<(SyllableWord, SyllableWord)> {
    let (r1, r2) = (x1.rank(), x2.rank());
    let one = |w: Word| SyllableWord::from_factor(r1, r2, super::Factor::One, w);
    let two = |w: Word| SyllableWord::from_factor(r1, r2, super::Factor::Two, w);
    let xn1 = x1.pow(n as i64);
    let xn2 = x2.pow(n as i64);
    let sx1 = one(xn1.clone())?;
    let sx2 = two(xn2.clone())?;
    let mut c = SyllableWord::identity(r1, r2);
    let mut rhs = SyllableWord::identity(r1, r2);
    for (pair, sign) in factors {
        if pair.v1.is_empty() || pair.v2.is_empty() {
            return Err(Error::domain(
                "expansion factors need nontrivial c_j and d_j",
            ));
        }
        c = c.multiply(&signed(pair.expand(r1, r2)?, *sign))?;
        let cx = one(pair.v1.multiply(&xn1)?)?;
        let dy = two(pair.v2.multiply(&xn2)?)?;
        let block = SyllableWord::commutator(&sx2, &cx)?
            .multiply(&SyllableWord::commutator(&cx, &dy)?)?
            .multiply(&SyllableWord::commutator(&dy, &sx1)?)?
            .multiply(&SyllableWord::commutator(&sx1, &sx2)?)?;
        rhs = rhs.multiply(&signed(block, *sign))?;
    }
    let conj = sx1.multiply(&sx2)?;
    let lhs = conj.inverse().multiply(&c)?.multiply(&conj)?;
    Ok((lhs, rhs))
}

/// The conjugation expansion as an identity of the free product itself.
pub fn conj_expansion_check(
    x1: &Word,
    x2: &Word,
    factors: &[(CommutatorPair, Sign)],
    n: u32,
) -> Result<bool> {
    let (lhs, rhs) = conj_expansion_sides(x1, x2, factors, n)?;
    Ok(lhs == rhs)
}

/// Every generator of a cyclically reduced `w` survives in any conjugate `g⁻¹wg`.
pub fn conj_support_check(w: &Word, g: &Word) -> Result<bool> {
    if !w.is_cyclically_reduced() {
        return Err(Error::domain(format!("{w} is not cyclically reduced")));
    }
    let v = w.conjugate_by(g)?;
    Ok(w.support().is_subset(&v.support()))
}

#[derive(Clone, Debug, Serialize)]
pub struct KernelSuiteConfig {
    pub seed: u64,
    pub round_trip_samples: usize,
    pub kernel_max_len: usize,
    pub rewrite_samples: usize,
    pub max_len: usize,
    pub expansion_samples: usize,
    pub expansion_max_n: u32,
    pub expansion_max_factors: usize,
    pub oracle_degree: usize,
    pub oracle_seeds: u64,
}

impl Default for KernelSuiteConfig {
    fn default() -> Self {
        KernelSuiteConfig {
            seed: 1,
            round_trip_samples: 1000,
            kernel_max_len: 24,
            rewrite_samples: 500,
            max_len: 6,
            expansion_samples: 200,
            expansion_max_n: 4,
            expansion_max_factors: 3,
            oracle_degree: 8,
            oracle_seeds: 20,
        }
    }
}

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct SectionReport {
    pub tested: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl SectionReport {
    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.tested += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(describe());
            }
        }
    }

    pub fn ok(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct KernelReport {
    pub ctx: GContext,
    pub config: KernelSuiteConfig,
    pub round_trip: SectionReport,
    pub rewrite: SectionReport,
    pub symbol_kinds: SectionReport,
    pub relation: SectionReport,
    pub expansion: SectionReport,
    /// Expansion instances that fail in `F₁ ∗ F₂` but hold in `G`.
    pub expansion_needing_relator: usize,
    pub oracle: SectionReport,
}

impl KernelReport {
    pub fn all_ok(&self) -> bool {
        [
            &self.round_trip,
            &self.rewrite,
            &self.symbol_kinds,
            &self.relation,
            &self.expansion,
            &self.oracle,
        ]
        .iter()
        .all(|s| s.ok())
    }
}

/// Round trip of the `K'` basis expression, the `K`-basis rewriting, the
/// defining relations, the conjugation expansion, and oracle consistency.
pub fn run_kernel_suite(ctx: &GContext, cfg: &KernelSuiteConfig) -> Result<KernelReport> {
    let (r1, r2) = (ctx.rank1(), ctx.rank2());
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let oracles = (0..cfg.oracle_seeds)
        .map(|s| {
            FiniteQuotientOracle::new(
                ctx,
                cfg.oracle_degree,
                cfg.seed.wrapping_mul(1000).wrapping_add(s),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    let mut report = KernelReport {
        ctx: ctx.clone(),
        config: cfg.clone(),
        round_trip: SectionReport::default(),
        rewrite: SectionReport::default(),
        symbol_kinds: SectionReport::default(),
        relation: SectionReport::default(),
        expansion: SectionReport::default(),
        expansion_needing_relator: 0,
        oracle: SectionReport::default(),
    };
    let affirm = |report: &mut KernelReport, x: &SyllableWord, y: &SyllableWord| {
        for o in &oracles {
            report.oracle.record(!o.distinguishes(x, y), || {
                format!("seed {} separates {x} and {y}", o.seed())
            });
        }
    };

    for _ in 0..cfg.round_trip_samples {
        let w = random_kernel_word(&mut rng, r1, r2, cfg.kernel_max_len);
        let factors = cartesian_basis_express(&w)?;
        let mut rebuilt = ctx.identity();
        for (pair, sign) in &factors {
            rebuilt = rebuilt.multiply(&signed(pair.expand(r1, r2)?, *sign))?;
        }
        let nontrivial = factors
            .iter()
            .all(|(p, _)| !p.v1.is_empty() && !p.v2.is_empty());
        report
            .round_trip
            .record(rebuilt == w && nontrivial, || format!("{w}"));
    }

    for _ in 0..cfg.rewrite_samples {
        let w1 = random_word(&mut rng, r1, 1, cfg.max_len);
        let w2 = random_word(&mut rng, r2, 1, cfg.max_len);
        let lhs = SyllableWord::commutator(&ctx.f1(&w1)?, &ctx.f2(&w2)?)?;
        let kw = rewrite_commutator(ctx, &w1, &w2)?;
        let rhs = kw.expand(ctx)?;
        let ok = eq_in_g(ctx, &lhs, &rhs)?;
        report.rewrite.record(ok, || format!("[{w1}, {w2}]"));
        if ok {
            affirm(&mut report, &lhs, &rhs);
        }
        for (sym, _) in kw.symbols() {
            let again = KBasisSymbol::classify(ctx, sym.v1().clone(), sym.v2().clone());
            report
                .symbol_kinds
                .record(matches!(&again, Ok(s) if s.kind() == sym.kind()), || {
                    format!("{sym}")
                });
        }

        let w1 = random_word(&mut rng, r1, 0, cfg.max_len);
        let w2 = random_word(&mut rng, r2, 0, cfg.max_len);
        let (lhs, rhs) = relation_sides(ctx, &w1, &w2)?;
        let ok = eq_in_g(ctx, &lhs, &rhs)?;
        report
            .relation
            .record(ok, || format!("w1 = {w1}, w2 = {w2}"));
        if ok {
            affirm(&mut report, &lhs, &rhs);
        }
    }

    for _ in 0..cfg.expansion_samples {
        let x1 = random_word(&mut rng, r1, 0, 3);
        let x2 = random_word(&mut rng, r2, 0, 3);
        let q = rng.gen_range(1..=cfg.expansion_max_factors.max(1));
        let factors: Vec<(CommutatorPair, Sign)> = (0..q)
            .map(|_| {
                let c = random_word(&mut rng, r1, 1, 3);
                let d = random_word(&mut rng, r2, 1, 3);
                let sign = if rng.gen_bool(0.5) {
                    Sign::Plus
                } else {
                    Sign::Minus
                };
                (CommutatorPair::new(c, d), sign)
            })
            .collect();
        let n = rng.gen_range(0..=cfg.expansion_max_n);
        let (lhs, rhs) = conj_expansion_sides(&x1, &x2, &factors, n)?;
        let free = lhs == rhs;
        if !free && eq_in_g(ctx, &lhs, &rhs)? {
            report.expansion_needing_relator += 1;
        }
        report
            .expansion
            .record(free, || format!("x1 = {x1}, x2 = {x2}, n = {n}"));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> Word {
        Word::parse(s, 2).unwrap()
    }

    fn ctx_ac() -> GContext {
        GContext::new(f("x1"), f("x1")).unwrap()
    }

    #[test]
    fn relation_examples() {
        let ctx = ctx_ac();
        let oracles: Vec<_> = (0..5)
            .map(|s| FiniteQuotientOracle::new(&ctx, 8, s).unwrap())
            .collect();
        relation_check(&ctx, &Word::identity(2), &Word::identity(2), &oracles).unwrap();
        relation_check(&ctx, &f("x2"), &f("x2"), &oracles).unwrap();
        let (lhs, _) = relation_sides(&ctx, &Word::identity(2), &Word::identity(2)).unwrap();
        assert_eq!(lhs, ctx.relator());
    }

    #[test]
    fn expansion_examples() {
        let bd = vec![(CommutatorPair::new(f("x2"), f("x2")), Sign::Plus)];
        assert!(conj_expansion_check(&f("x1"), &f("x1"), &bd, 0).unwrap());
        assert!(conj_expansion_check(&f("x1"), &f("x1"), &bd, 2).unwrap());
        let (lhs, _) = conj_expansion_sides(&f("x1"), &f("x1"), &bd, 0).unwrap();
        assert_eq!(lhs, bd[0].0.expand(2, 2).unwrap());
        let mixed = vec![
            (CommutatorPair::new(f("x2 x1"), f("X2")), Sign::Minus),
            (CommutatorPair::new(f("x1"), f("x1 x2")), Sign::Plus),
        ];
        assert!(conj_expansion_check(&f("x1 X2"), &f("x2 x2"), &mixed, 3).unwrap());
        let bad = vec![(CommutatorPair::new(Word::identity(2), f("x1")), Sign::Plus)];
        assert!(conj_expansion_check(&f("x1"), &f("x1"), &bad, 1).is_err());
    }

    #[test]
    fn support_examples() {
        assert!(conj_support_check(&f("x1 x2"), &f("x2")).unwrap());
        assert!(conj_support_check(&f("x1"), &f("x2")).unwrap());
        assert!(conj_support_check(&f("x1 x2 X1"), &f("x2")).is_err());
    }

    #[test]
    fn small_suite_passes() {
        let ctx = GContext::new(f("x1 x2"), f("x1 x2")).unwrap();
        let cfg = KernelSuiteConfig {
            round_trip_samples: 50,
            rewrite_samples: 30,
            expansion_samples: 20,
            oracle_seeds: 3,
            ..KernelSuiteConfig::default()
        };
        let r = run_kernel_suite(&ctx, &cfg).unwrap();
        assert!(r.all_ok(), "{r:?}");
        assert_eq!(r.expansion_needing_relator, 0);
    }
}
