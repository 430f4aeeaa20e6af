//! Gauss-Jordan elimination, kernels and canonical subspaces over a [`Field`],
//! plus a fraction-free determinant over the integers.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::field::Field;

/// Reduced row echelon form with zero rows dropped. Returns the rows and
/// their pivot columns (strictly increasing).
pub fn rref<F: Field>(field: &F, mut rows: Vec<Vec<F::Elem>>) -> (Vec<Vec<F::Elem>>, Vec<usize>) {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(found) = (rank..rows.len()).find(|&r| !field.is_zero(&rows[r][col])) else {
            continue;
        };
        rows.swap(rank, found);
        let inv = field.inv(&rows[rank][col]);
        for v in rows[rank].iter_mut() {
            *v = field.mul(v, &inv);
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || field.is_zero(&row[col]) {
                continue;
            }
            let factor = row[col].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                *v = field.sub(v, &field.mul(&factor, p));
            }
        }
        pivots.push(col);
        rank += 1;
    }
    rows.truncate(rank);
    (rows, pivots)
}

pub fn rank<F: Field>(field: &F, rows: Vec<Vec<F::Elem>>) -> usize {
    rref(field, rows).1.len()
}

/// Basis of `{x : A x = 0}` for the `ncols`-column matrix `A`.
pub fn kernel<F: Field>(field: &F, rows: Vec<Vec<F::Elem>>, ncols: usize) -> Vec<Vec<F::Elem>> {
    let (reduced, pivots) = rref(field, rows);
    let free = (0..ncols).filter(|c| !pivots.contains(c));
    free.map(|f| {
        let mut v = vec![field.zero(); ncols];
        v[f] = field.one();
        for (row, &p) in reduced.iter().zip(&pivots) {
            v[p] = field.sub(&field.zero(), &row[f]);
        }
        v
    })
    .collect()
}

/// Determinant of a square integer matrix by Bareiss elimination; every
/// intermediate division is exact.
pub fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let value = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = value / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    if n == 0 {
        sign
    } else {
        sign * &m[n - 1][n - 1]
    }
}

/// A subspace of `F^n`, stored as its reduced row echelon basis so that equal
/// subspaces compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace<E> {
    ambient_dim: usize,
    basis: Vec<Vec<E>>,
}

impl<E: Clone + PartialEq> Subspace<E> {
    pub fn span<F: Field<Elem = E>>(field: &F, ambient_dim: usize, vectors: Vec<Vec<E>>) -> Self {
        assert!(
            vectors.iter().all(|v| v.len() == ambient_dim),
            "vector length mismatch"
        );
        let (basis, _) = rref(field, vectors);
        Subspace { ambient_dim, basis }
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn full<F: Field<Elem = E>>(field: &F, ambient_dim: usize) -> Self {
        Self::coordinate(field, ambient_dim, 0..ambient_dim)
    }

    /// Span of the unit vectors at `indices`.
    pub fn coordinate<F: Field<Elem = E>>(
        field: &F,
        ambient_dim: usize,
        indices: impl IntoIterator<Item = usize>,
    ) -> Self {
        let vectors = indices
            .into_iter()
            .map(|i| {
                let mut v = vec![field.zero(); ambient_dim];
                v[i] = field.one();
                v
            })
            .collect();
        Self::span(field, ambient_dim, vectors)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<E>] {
        &self.basis
    }

    pub fn contains<F: Field<Elem = E>>(&self, field: &F, v: &[E]) -> bool {
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        rank(field, rows) == self.dim()
    }
}
