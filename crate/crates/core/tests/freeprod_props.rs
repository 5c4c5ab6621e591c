use perfloc::freeprod::sample::enumerate_words;
use perfloc::freeprod::{
    cartesian_basis_express, eq_in_g, k_image, rewrite_commutator, FiniteQuotientOracle, GContext,
    SyllableWord,
};
use perfloc::{Sign, Word};
use proptest::prelude::*;

const R1: usize = 2;
const R2: usize = 2;

fn ctx() -> GContext {
    let ab = Word::parse("x1 x2", 2).unwrap();
    GContext::new(ab.clone(), ab).unwrap()
}

fn element(max_len: usize) -> impl Strategy<Value = SyllableWord> {
    let r = (R1 + R2) as i32;
    prop::collection::vec(
        (1..=r, any::<bool>()).prop_map(|(i, neg)| if neg { -i } else { i }),
        0..=max_len,
    )
    .prop_map(|v| {
        SyllableWord::from_flat(&Word::from_signed(R1 + R2, &v).unwrap(), R1, R2).unwrap()
    })
}

fn factor_word(rank: usize, max_len: usize) -> impl Strategy<Value = Word> {
    let r = rank as i32;
    prop::collection::vec(
        (1..=r, any::<bool>()).prop_map(|(i, neg)| if neg { -i } else { i }),
        0..=max_len,
    )
    .prop_map(move |v| Word::from_signed(rank, &v).unwrap())
}

/// `x (p₁ p₂)⁻¹` where `h(x) = (p₁, p₂)`, an element of the kernel of `h`.
fn into_kernel(x: &SyllableWord) -> SyllableWord {
    let (p1, p2) = x.h_map();
    let ctx = ctx();
    let p = ctx
        .f1(&p1)
        .unwrap()
        .multiply(&ctx.f2(&p2).unwrap())
        .unwrap();
    x.multiply(&p.inverse()).unwrap()
}

/// `g⁻¹ r^{±1} g` for the relator `r`.
fn relator_conjugate(ctx: &GContext, g: &SyllableWord, invert: bool) -> SyllableWord {
    let r = if invert {
        ctx.relator().inverse()
    } else {
        ctx.relator()
    };
    g.inverse().multiply(&r).unwrap().multiply(g).unwrap()
}

/// `x` with a conjugate of the relator spliced in after its first `cut` letters.
fn splice(
    ctx: &GContext,
    x: &SyllableWord,
    cut: usize,
    g: &SyllableWord,
    invert: bool,
) -> SyllableWord {
    let flat = x.to_flat();
    let cut = cut % (flat.len() + 1);
    let head = Word::from_signed(
        R1 + R2,
        &flat.letters()[..cut]
            .iter()
            .map(|l| l.signed())
            .collect::<Vec<_>>(),
    )
    .unwrap();
    let tail = Word::from_signed(
        R1 + R2,
        &flat.letters()[cut..]
            .iter()
            .map(|l| l.signed())
            .collect::<Vec<_>>(),
    )
    .unwrap();
    let head = SyllableWord::from_flat(&head, R1, R2).unwrap();
    let tail = SyllableWord::from_flat(&tail, R1, R2).unwrap();
    head.multiply(&relator_conjugate(ctx, g, invert))
        .unwrap()
        .multiply(&tail)
        .unwrap()
}

proptest! {
    #[test]
    fn flat_round_trip(x in element(20)) {
        prop_assert_eq!(SyllableWord::from_flat(&x.to_flat(), R1, R2).unwrap(), x.clone());
        prop_assert_eq!(SyllableWord::parse(&x.to_string(), R1, R2).unwrap(), x);
    }

    #[test]
    fn syllable_product_matches_flat(x in element(12), y in element(12)) {
        let xy = x.multiply(&y).unwrap();
        prop_assert_eq!(xy.to_flat(), x.to_flat().multiply(&y.to_flat()).unwrap());
        prop_assert!(xy.syllables().windows(2).all(|p| p[0].factor != p[1].factor));
    }

    #[test]
    fn h_map_is_a_homomorphism(x in element(12), y in element(12)) {
        let (a1, a2) = x.h_map();
        let (b1, b2) = y.h_map();
        let (c1, c2) = x.multiply(&y).unwrap().h_map();
        prop_assert_eq!(c1, a1.multiply(&b1).unwrap());
        prop_assert_eq!(c2, a2.multiply(&b2).unwrap());
    }

    #[test]
    fn basis_expression_round_trips(x in element(16)) {
        let w = into_kernel(&x);
        let mut rebuilt = SyllableWord::identity(R1, R2);
        for (pair, sign) in cartesian_basis_express(&w).unwrap() {
            let c = pair.expand(R1, R2).unwrap();
            let c = if sign == Sign::Plus { c } else { c.inverse() };
            rebuilt = rebuilt.multiply(&c).unwrap();
        }
        prop_assert_eq!(rebuilt, w);
    }

    #[test]
    fn rewrite_agrees_with_commutator(
        w1 in factor_word(R1, 5).prop_filter("nonempty", |w| !w.is_empty()),
        w2 in factor_word(R2, 5).prop_filter("nonempty", |w| !w.is_empty()),
    ) {
        let ctx = ctx();
        let lhs = SyllableWord::commutator(&ctx.f1(&w1).unwrap(), &ctx.f2(&w2).unwrap()).unwrap();
        let rhs = rewrite_commutator(&ctx, &w1, &w2).unwrap().expand(&ctx).unwrap();
        prop_assert!(eq_in_g(&ctx, &lhs, &rhs).unwrap());
        prop_assert_eq!(k_image(&ctx, &lhs).unwrap(), rewrite_commutator(&ctx, &w1, &w2).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn k_image_ignores_relator_insertion(
        x in element(12), g in element(6), cut in 0usize..32, invert in any::<bool>()
    ) {
        let ctx = ctx();
        let w = into_kernel(&x);
        let spliced = splice(&ctx, &w, cut, &g, invert);
        prop_assert_eq!(k_image(&ctx, &spliced).unwrap(), k_image(&ctx, &w).unwrap());
    }

    #[test]
    fn eq_in_g_is_a_congruence(
        x in element(8), z in element(6), g in element(6), cut in 0usize..32, invert in any::<bool>()
    ) {
        let ctx = ctx();
        let y = splice(&ctx, &x, cut, &g, invert);
        prop_assert!(eq_in_g(&ctx, &x, &x).unwrap());
        prop_assert!(eq_in_g(&ctx, &x, &y).unwrap());
        prop_assert!(eq_in_g(&ctx, &y, &x).unwrap());
        prop_assert!(eq_in_g(&ctx, &x.multiply(&z).unwrap(), &y.multiply(&z).unwrap()).unwrap());
        prop_assert!(eq_in_g(&ctx, &z.multiply(&x).unwrap(), &z.multiply(&y).unwrap()).unwrap());
        prop_assert!(eq_in_g(&ctx, &x.inverse(), &y.inverse()).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn oracle_never_separates_equal_elements(
        x in element(8), y in element(8), g in element(5), cut in 0usize..32, seed in any::<u64>()
    ) {
        let ctx = ctx();
        let oracle = FiniteQuotientOracle::new(&ctx, 8, seed).unwrap();
        prop_assert!(oracle.eval(&ctx.relator()).is_identity());
        let x2 = splice(&ctx, &x, cut, &g, false);
        prop_assert!(!oracle.distinguishes(&x, &x2));
        if oracle.distinguishes(&x, &y) {
            prop_assert!(!eq_in_g(&ctx, &x, &y).unwrap());
        }
        if eq_in_g(&ctx, &x, &y).unwrap() {
            prop_assert!(!oracle.distinguishes(&x, &y));
        }
    }
}

#[test]
fn eq_in_g_agrees_with_abelian_model() {
    // With u₁ = a, u₂ = c over rank-1 factors, G is ℤ²: equality is equality of exponent sums.
    let ctx = GContext::new(Word::parse("x1", 1).unwrap(), Word::parse("x1", 1).unwrap()).unwrap();
    let words = enumerate_words(2, 4);
    let elems: Vec<SyllableWord> = words
        .iter()
        .map(|w| SyllableWord::from_flat(w, 1, 1).unwrap())
        .collect();
    for (x, wx) in elems.iter().zip(&words).step_by(3) {
        for (y, wy) in elems.iter().zip(&words).step_by(5) {
            assert_eq!(
                eq_in_g(&ctx, x, y).unwrap(),
                wx.exponent_sum() == wy.exponent_sum(),
                "{x} vs {y}"
            );
        }
    }
}
