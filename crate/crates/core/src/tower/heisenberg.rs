use std::ops::Mul;

use serde::Serialize;

use crate::bigmatrix::IntMatrix;
use crate::error::{Error, Result};
use crate::freegroup::{Sign, Word};

/// Normal form `x₁^a x₂^b c^k` in `P₁ = ⟨x₁, x₂ | [c, x₁], [c, x₂]⟩`,
/// where `c = [x₁, x₂]` is central.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct Heisenberg {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

/// Collection: moving `x₁^a'` left past `x₂^b` costs `c^{-a'b}`.
impl Mul for Heisenberg {
    type Output = Heisenberg;

    fn mul(self, o: Heisenberg) -> Heisenberg {
        Heisenberg {
            a: self.a + o.a,
            b: self.b + o.b,
            c: self.c + o.c - self.b * o.a,
        }
    }
}

pub fn heisenberg_nf(w: &Word) -> Result<Heisenberg> {
    if w.rank() != 2 {
        return Err(Error::RankMismatch {
            left: w.rank(),
            right: 2,
        });
    }
    let mut acc = Heisenberg::default();
    for l in w.letters() {
        let e = if l.sign() == Sign::Plus { 1 } else { -1 };
        let step = if l.gen().0 == 1 {
            Heisenberg { a: e, b: 0, c: 0 }
        } else {
            Heisenberg { a: 0, b: e, c: 0 }
        };
        acc = acc * step;
    }
    Ok(acc)
}

/// `ψ₁` on normal forms: `x₁^a x₂^b c^k ↦ [[1, a, ab + k], [0, 1, b], [0, 0, 1]]`.
pub fn heisenberg_to_matrix(h: Heisenberg) -> IntMatrix {
    let rows = vec![
        vec![1.into(), h.a.into(), (h.a * h.b + h.c).into()],
        vec![0.into(), 1.into(), h.b.into()],
        vec![0.into(), 0.into(), 1.into()],
    ];
    IntMatrix::from_rows(rows).expect("square")
}
