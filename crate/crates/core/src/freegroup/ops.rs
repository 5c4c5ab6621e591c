use super::{Letter, Word};
use crate::error::{Error, Result};

pub(super) fn is_rotation(a: &[Letter], b: &[Letter]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let n = a.len();
    (0..n.max(1)).any(|s| (0..n).all(|i| a[(s + i) % n] == b[i]))
}

fn nonempty_same_rank(u: &Word, w: &Word) -> Result<()> {
    if u.rank() != w.rank() {
        return Err(Error::RankMismatch {
            left: u.rank(),
            right: w.rank(),
        });
    }
    if u.is_empty() {
        return Err(Error::domain("cyclic subgroup generated by the empty word"));
    }
    Ok(())
}

/// Returns `k` with `v = u^k`, if one exists.
///
/// With `u = c⁻¹ core c` reduced, `|u^k| = 2|c| + |k|·|core|` for `k ≠ 0`, so the
/// length of `v` pins down `|k|` and only the two signs need checking.
pub fn cyclic_subgroup_member(u: &Word, v: &Word) -> Result<Option<i64>> {
    nonempty_same_rank(u, v)?;
    if v.is_empty() {
        return Ok(Some(0));
    }
    let (core, conj) = u.cyclic_reduce();
    let rest = match v.len().checked_sub(2 * conj.len()) {
        Some(r) if r > 0 && r % core.len() == 0 => r,
        _ => return Ok(None),
    };
    let m = (rest / core.len()) as i64;
    for k in [m, -m] {
        if &u.pow(k) == v {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// Shortlex-least element of the right coset `⟨u⟩w = { u^k w }`.
///
/// Any `k` with `|k|·|core(u)| > 2|w|` produces a word longer than `w`
/// itself, so the search window `|k| ≤ 2|w|/|core(u)| + 2` is exhaustive.
pub fn coset_rep(u: &Word, w: &Word) -> Result<Word> {
    nonempty_same_rank(u, w)?;
    let (core, _) = u.cyclic_reduce();
    let bound = (2 * w.len() / core.len() + 2) as i64;
    let mut cur = u.pow(-bound).mul_unchecked(w);
    let mut best = cur.clone();
    for _ in -bound..bound {
        cur = u.mul_unchecked(&cur);
        if cur < best {
            best = cur.clone();
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(rank: usize, s: &[i32]) -> Word {
        Word::from_signed(rank, s).unwrap()
    }

    /// Independent check: scan a wide window of k by brute force.
    fn brute_coset_rep(u: &Word, v: &Word) -> Word {
        (-40..=40)
            .map(|k| u.pow(k).multiply(v).unwrap())
            .min()
            .unwrap()
    }

    #[test]
    fn subgroup_membership() {
        assert_eq!(
            cyclic_subgroup_member(&w(2, &[1, 1]), &w(2, &[1, 1, 1, 1])).unwrap(),
            Some(2)
        );
        assert_eq!(
            cyclic_subgroup_member(&w(2, &[1]), &w(2, &[2])).unwrap(),
            None
        );
        let ab = w(2, &[1, 2]);
        let v = ab
            .inverse()
            .multiply(&ab.inverse())
            .unwrap()
            .multiply(&ab.inverse())
            .unwrap();
        assert_eq!(cyclic_subgroup_member(&ab, &v).unwrap(), Some(-3));
        assert_eq!(cyclic_subgroup_member(&ab, &w(2, &[])).unwrap(), Some(0));
        assert_eq!(
            cyclic_subgroup_member(&w(2, &[1, 1]), &w(2, &[1])).unwrap(),
            None
        );
        assert!(cyclic_subgroup_member(&w(2, &[]), &w(2, &[1])).is_err());
    }

    #[test]
    fn coset_rep_examples() {
        assert_eq!(
            coset_rep(&w(2, &[1, 1]), &w(2, &[1, 1, 2])).unwrap(),
            w(2, &[2])
        );
        assert_eq!(
            coset_rep(&w(2, &[1]), &w(2, &[1, 1, 1, 1, 1])).unwrap(),
            w(2, &[])
        );
        assert_eq!(coset_rep(&w(2, &[1]), &w(2, &[2])).unwrap(), w(2, &[2]));
        assert!(coset_rep(&w(2, &[]), &w(2, &[2])).is_err());
    }

    #[test]
    fn coset_rep_matches_brute_force() {
        let us = [w(2, &[1, 2]), w(2, &[2, 1, -2]), w(2, &[1, 1, -2])];
        let vs = [
            w(2, &[-2, -1, -2, 1]),
            w(2, &[2, 1, 1, -2, 2]),
            w(2, &[1, 2, 1, 2, 1]),
            w(2, &[-1, -1, 2, 2]),
        ];
        for u in &us {
            for v in &vs {
                assert_eq!(
                    coset_rep(u, v).unwrap(),
                    brute_coset_rep(u, v),
                    "u={u} v={v}"
                );
            }
        }
    }
}
