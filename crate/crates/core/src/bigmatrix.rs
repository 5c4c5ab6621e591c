//! Exact square matrices over arbitrary-precision integers.
//!
//! Indices are 1-based throughout, matching the `e^a_{i,j}` notation for
//! elementary matrices. Only what the unitriangular representations need is
//! provided: products, unitriangular inverses, powers and word evaluation.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::freegroup::{GeneratorId, Sign, Word};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    dim: usize,
    // row-major
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(dim: usize) -> IntMatrix {
        IntMatrix {
            dim,
            entries: vec![BigInt::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> IntMatrix {
        let mut m = IntMatrix::zero(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = BigInt::one();
        }
        m
    }

    /// `e^a_{i,j}`: the identity with `a` in slot `(i, j)`.
    pub fn elementary(a: impl Into<BigInt>, i: usize, j: usize, dim: usize) -> Result<IntMatrix> {
        if i == j || i == 0 || j == 0 || i > dim || j > dim {
            return Err(Error::MatrixIndex { i, j, dim });
        }
        let mut m = IntMatrix::identity(dim);
        m.entries[(i - 1) * dim + (j - 1)] = a.into();
        Ok(m)
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<IntMatrix> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimMismatch {
                    left: dim,
                    right: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(IntMatrix { dim, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[(i - 1) * self.dim + (j - 1)]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[BigInt]> {
        self.entries.chunks(self.dim.max(1)).take(self.dim)
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().enumerate().all(|(k, v)| {
            if k / self.dim == k % self.dim {
                v.is_one()
            } else {
                v.is_zero()
            }
        })
    }

    pub fn is_unitriangular(&self) -> bool {
        self.entries.iter().enumerate().all(|(k, v)| {
            let (r, c) = (k / self.dim, k % self.dim);
            match r.cmp(&c) {
                std::cmp::Ordering::Equal => v.is_one(),
                std::cmp::Ordering::Greater => v.is_zero(),
                std::cmp::Ordering::Less => true,
            }
        })
    }

    /// `Some((i, j, a))` when `self = e^a_{i,j}` with `a ≠ 0`.
    pub fn as_elementary(&self) -> Option<(usize, usize, BigInt)> {
        let mut found = None;
        for (k, v) in self.entries.iter().enumerate() {
            let (r, c) = (k / self.dim, k % self.dim);
            if r == c {
                if !v.is_one() {
                    return None;
                }
            } else if !v.is_zero() {
                if found.is_some() {
                    return None;
                }
                found = Some((r + 1, c + 1, v.clone()));
            }
        }
        found
    }

    fn check_dim(&self, other: &IntMatrix) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(())
    }

    pub fn matmul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        self.check_dim(other)?;
        if let Some((i, j, a)) = other.as_elementary() {
            let mut out = self.clone();
            out.add_column_multiple(i, j, &a);
            return Ok(out);
        }
        let n = self.dim;
        let mut out = IntMatrix::zero(n);
        for r in 0..n {
            for k in 0..n {
                let a = &self.entries[r * n + k];
                if a.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let b = &other.entries[k * n + c];
                    if !b.is_zero() {
                        out.entries[r * n + c] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Right multiplication by `e^a_{i,j}`: column `j` += `a` · column `i`.
    fn add_column_multiple(&mut self, i: usize, j: usize, a: &BigInt) {
        let n = self.dim;
        for r in 0..n {
            let src = &self.entries[r * n + (i - 1)];
            if !src.is_zero() {
                let delta = src * a;
                self.entries[r * n + (j - 1)] += delta;
            }
        }
    }

    /// Inverse of an upper unitriangular matrix by back-substitution.
    pub fn unitriangular_inverse(&self) -> Result<IntMatrix> {
        if !self.is_unitriangular() {
            return Err(Error::domain("matrix is not upper unitriangular"));
        }
        let n = self.dim;
        let mut inv = IntMatrix::identity(n);
        for c in 0..n {
            for r in (0..c).rev() {
                let mut acc = BigInt::zero();
                for k in r + 1..=c {
                    let u = &self.entries[r * n + k];
                    if !u.is_zero() {
                        acc += u * &inv.entries[k * n + c];
                    }
                }
                inv.entries[r * n + c] = -acc;
            }
        }
        Ok(inv)
    }

    /// Integer power; negative exponents require a unitriangular base.
    pub fn pow(&self, k: i64) -> Result<IntMatrix> {
        let base = if k < 0 {
            self.unitriangular_inverse()?
        } else {
            self.clone()
        };
        let mut acc = IntMatrix::identity(self.dim);
        for _ in 0..k.unsigned_abs() {
            acc = acc.matmul(&base)?;
        }
        Ok(acc)
    }

    pub fn max_abs_entry(&self) -> BigInt {
        self.entries
            .iter()
            .map(|v| v.abs())
            .max()
            .unwrap_or_default()
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (r, row) in self.rows().enumerate() {
            if r > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (c, v) in row.iter().enumerate() {
                if c > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{v}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    dim: usize,
    rows: Vec<Vec<String>>,
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixRepr {
            dim: self.dim,
            rows: self
                .rows()
                .map(|r| r.iter().map(|v| v.to_string()).collect())
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = MatrixRepr::deserialize(d)?;
        let rows = repr
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|v| v.parse::<BigInt>().map_err(D::Error::custom))
                    .collect()
            })
            .collect::<std::result::Result<Vec<Vec<BigInt>>, _>>()?;
        let m = IntMatrix::from_rows(rows).map_err(D::Error::custom)?;
        if m.dim != repr.dim {
            return Err(D::Error::custom("dim does not match row count"));
        }
        Ok(m)
    }
}

#[derive(Clone, Debug)]
enum Factor {
    Elementary { i: usize, j: usize, a: BigInt },
    Dense { m: IntMatrix, inv: IntMatrix },
}

/// Images of generators, all unitriangular of one dimension.
#[derive(Clone, Debug)]
pub struct Assignment {
    dim: usize,
    images: BTreeMap<GeneratorId, IntMatrix>,
    factors: BTreeMap<GeneratorId, Factor>,
}

impl Assignment {
    pub fn new(dim: usize, images: BTreeMap<GeneratorId, IntMatrix>) -> Result<Assignment> {
        let mut factors = BTreeMap::new();
        for (&g, m) in &images {
            if m.dim() != dim {
                return Err(Error::DimMismatch {
                    left: dim,
                    right: m.dim(),
                });
            }
            let factor = match m.as_elementary() {
                Some((i, j, a)) => Factor::Elementary { i, j, a },
                None => Factor::Dense {
                    m: m.clone(),
                    inv: m.unitriangular_inverse()?,
                },
            };
            factors.insert(g, factor);
        }
        Ok(Assignment {
            dim,
            images,
            factors,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, g: GeneratorId) -> Option<&IntMatrix> {
        self.images.get(&g)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&GeneratorId, &IntMatrix)> {
        self.images.iter()
    }
}

/// Product of the assigned matrices (or their inverses) in letter order.
pub fn evaluate_word(assignment: &Assignment, w: &Word) -> Result<IntMatrix> {
    let mut acc = IntMatrix::identity(assignment.dim);
    for l in w.letters() {
        let factor = assignment
            .factors
            .get(&l.gen())
            .ok_or(Error::Unassigned(l.gen().0))?;
        match (factor, l.sign()) {
            (Factor::Elementary { i, j, a }, Sign::Plus) => acc.add_column_multiple(*i, *j, a),
            (Factor::Elementary { i, j, a }, Sign::Minus) => acc.add_column_multiple(*i, *j, &-a),
            (Factor::Dense { m, .. }, Sign::Plus) => acc = acc.matmul(m)?,
            (Factor::Dense { inv, .. }, Sign::Minus) => acc = acc.matmul(inv)?,
        }
    }
    Ok(acc)
}
