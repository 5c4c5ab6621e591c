use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use perfloc::bigmatrix::{evaluate_word, Assignment, IntMatrix};
use perfloc::tower::{
    heisenberg_nf, heisenberg_to_matrix, lift, lp_multiply, lp_normalize, lp_qz_image, phi_apply,
    psi_assignment, LpElement,
};
use perfloc::{GeneratorId, Word};
use proptest::prelude::*;

fn word(rank: usize, max_len: usize) -> impl Strategy<Value = Word> {
    let r = rank as i32;
    prop::collection::vec(
        (1..=r, any::<bool>()).prop_map(|(i, neg)| if neg { -i } else { i }),
        0..=max_len,
    )
    .prop_map(move |v| Word::from_signed(rank, &v).unwrap())
}

fn unitriangular(dim: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(-3i64..=3, dim * dim).prop_map(move |v| {
        let rows = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| match i.cmp(&j) {
                        std::cmp::Ordering::Equal => BigInt::from(1),
                        std::cmp::Ordering::Less => BigInt::from(v[i * dim + j]),
                        std::cmp::Ordering::Greater => BigInt::zero(),
                    })
                    .collect()
            })
            .collect();
        IntMatrix::from_rows(rows).unwrap()
    })
}

fn rational() -> impl Strategy<Value = BigRational> {
    (-40i64..=40, 1i64..=12).prop_map(|(p, q)| BigRational::new(p.into(), q.into()))
}

fn lp_element() -> impl Strategy<Value = LpElement> {
    (0u32..=2).prop_flat_map(|level| {
        (word(1 << level, 5), rational())
            .prop_map(move |(w, r)| LpElement::new(level, w, r).unwrap())
    })
}

fn frac(r: BigRational) -> BigRational {
    &r - BigRational::from_integer(r.floor().to_integer())
}

proptest! {
    #[test]
    fn dense_evaluation_is_a_homomorphism(
        m1 in unitriangular(4), m2 in unitriangular(4), a in word(2, 8), b in word(2, 8)
    ) {
        let asg = Assignment::new(4, BTreeMap::from([(GeneratorId(1), m1), (GeneratorId(2), m2)])).unwrap();
        let lhs = evaluate_word(&asg, &a.multiply(&b).unwrap()).unwrap();
        let rhs = evaluate_word(&asg, &a).unwrap().matmul(&evaluate_word(&asg, &b).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let inv = evaluate_word(&asg, &a.inverse()).unwrap();
        prop_assert!(inv.matmul(&evaluate_word(&asg, &a).unwrap()).unwrap().is_identity());
    }

    #[test]
    fn psi_evaluation_is_a_homomorphism(a in word(4, 16), b in word(4, 16)) {
        let psi = psi_assignment(2).unwrap();
        let lhs = evaluate_word(&psi, &a.multiply(&b).unwrap()).unwrap();
        let rhs = evaluate_word(&psi, &a).unwrap().matmul(&evaluate_word(&psi, &b).unwrap()).unwrap();
        prop_assert!(lhs.is_unitriangular());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn heisenberg_matches_psi1(w in word(2, 14), v in word(2, 14)) {
        let psi = psi_assignment(1).unwrap();
        let h = heisenberg_nf(&w).unwrap();
        prop_assert_eq!(heisenberg_to_matrix(h), evaluate_word(&psi, &w).unwrap());
        let hv = heisenberg_nf(&v).unwrap();
        prop_assert_eq!(heisenberg_nf(&w.multiply(&v).unwrap()).unwrap(), h * hv);
    }

    #[test]
    fn phi_is_a_homomorphism(a in word(2, 8), b in word(2, 8)) {
        let lhs = phi_apply(1, &a.multiply(&b).unwrap()).unwrap();
        let rhs = phi_apply(1, &a).unwrap().multiply(&phi_apply(1, &b).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(lift(1, 3, &a).unwrap(), phi_apply(2, &phi_apply(1, &a).unwrap()).unwrap());
    }

    #[test]
    fn lp_normalize_is_idempotent(e in lp_element()) {
        let n = lp_normalize(&e);
        prop_assert_eq!(lp_normalize(&n), n.clone());
        prop_assert!(n.rational_part() >= &BigRational::zero());
        prop_assert!(n.rational_part() < &BigRational::from_integer(1.into()));
        prop_assert_eq!(lp_qz_image(&n), lp_qz_image(&e));
    }

    #[test]
    fn lp_qz_is_additive(a in lp_element(), b in lp_element()) {
        let ab = lp_multiply(&a, &b).unwrap();
        prop_assert_eq!(lp_qz_image(&ab), frac(lp_qz_image(&a) + lp_qz_image(&b)));
        prop_assert!(lp_qz_image(&LpElement::commutator(&a, &b).unwrap()).is_zero());
    }

    #[test]
    fn lp_qz_oracle(p in -200i64..=200, q in 1i64..=30) {
        // independent fractional part via integer arithmetic
        let r = LpElement::new(0, Word::identity(1), BigRational::new(p.into(), q.into())).unwrap();
        let expected = BigRational::new(p.rem_euclid(q).into(), q.into());
        prop_assert_eq!(lp_qz_image(&r), expected);
    }
}
