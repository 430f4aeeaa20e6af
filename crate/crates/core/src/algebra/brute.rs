//! Quasi-Frobenius oracle for `F_0 S` over GF(2) by enumerating every subspace.
//!
//! Vectors are bitmasks over the basis (bit `i` = basis element `i`). This
//! path deliberately shares nothing with the generic linear algebra.

use serde::Serialize;

use super::ContractedAlgebra;
use crate::error::{Error, Result};
use crate::semigroup::Side;

pub const DEFAULT_BRUTE_DIM_CAP: usize = 8;
/// Hard ceiling regardless of the requested cap.
pub const MAX_BRUTE_DIM: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BruteQf {
    pub verdict: bool,
    /// Side of the failing one-sided ideal.
    pub failing_side: Option<Side>,
    /// Echelon basis of the failing ideal as 0/1 coordinate rows.
    pub witness: Option<Vec<Vec<u8>>>,
}

struct Gf2Algebra {
    dim: usize,
    /// `right[j][x] = x * b_j`
    right: Vec<Vec<u32>>,
    /// `left[j][x] = b_j * x`
    left: Vec<Vec<u32>>,
}

impl Gf2Algebra {
    fn new(algebra: &ContractedAlgebra) -> Self {
        let dim = algebra.dim();
        let size = 1usize << dim;
        let mut right = vec![vec![0u32; size]; dim];
        let mut left = vec![vec![0u32; size]; dim];
        for j in 0..dim {
            for x in 0..size {
                for i in (0..dim).filter(|i| x >> i & 1 == 1) {
                    if let Some(k) = algebra.basis_product(i, j) {
                        right[j][x] ^= 1 << k;
                    }
                    if let Some(k) = algebra.basis_product(j, i) {
                        left[j][x] ^= 1 << k;
                    }
                }
            }
        }
        Gf2Algebra { dim, right, left }
    }

    fn mul(&self, x: u32, y: u32) -> u32 {
        (0..self.dim)
            .filter(|j| y >> j & 1 == 1)
            .fold(0, |acc, j| acc ^ self.right[j][x as usize])
    }

    /// `x * b_j` for side right, `b_j * x` for side left.
    fn act(&self, side: Side, j: usize, x: u32) -> u32 {
        match side {
            Side::Right => self.right[j][x as usize],
            Side::Left => self.left[j][x as usize],
        }
    }

    fn is_ideal(&self, rows: &[u32], side: Side) -> bool {
        rows.iter()
            .all(|&r| (0..self.dim).all(|j| in_span(rows, self.act(side, j, r))))
    }

    /// Size of `r(l(R))` (side right) or `l(r(L))` (side left).
    fn double_annihilator_size(&self, rows: &[u32], side: Side) -> usize {
        let size = 1u32 << self.dim;
        let kills = |x: u32, y: u32| self.mul(x, y) == 0;
        // basis of the inner annihilator on the opposite side
        let mut inner: Vec<u32> = Vec::new();
        for x in 0..size {
            let annihilates = rows.iter().all(|&r| match side {
                Side::Right => kills(x, r),
                Side::Left => kills(r, x),
            });
            if annihilates {
                let reduced = reduce(&inner, x);
                if reduced != 0 {
                    inner.push(reduced);
                    inner.sort_unstable_by(|a, b| b.cmp(a));
                }
            }
        }
        (0..size)
            .filter(|&y| {
                inner.iter().all(|&x| match side {
                    Side::Right => kills(x, y),
                    Side::Left => kills(y, x),
                })
            })
            .count()
    }
}

/// Membership in the span of rows in reduced echelon form (pivot = lowest bit).
fn in_span(rows: &[u32], mut v: u32) -> bool {
    for &r in rows {
        if v >> r.trailing_zeros() & 1 == 1 {
            v ^= r;
        }
    }
    v == 0
}

/// Reduces `v` against a basis with distinct leading bits, sorted descending.
fn reduce(basis: &[u32], v: u32) -> u32 {
    basis.iter().fold(v, |acc, &b| acc.min(acc ^ b))
}

/// Calls `visit` on the reduced echelon basis of every subspace of GF(2)^dim,
/// by dimension, then pivot set in lexicographic order, then free bits.
fn for_each_subspace(dim: usize, mut visit: impl FnMut(&[u32]) -> bool) {
    for k in 0..=dim {
        let mut pivots: Vec<usize> = (0..k).collect();
        loop {
            // free positions of row i: non-pivot columns after its pivot
            let free: Vec<Vec<usize>> = pivots
                .iter()
                .map(|&p| (p + 1..dim).filter(|c| !pivots.contains(c)).collect())
                .collect();
            let total: usize = free.iter().map(Vec::len).sum();
            let mut rows = vec![0u32; k];
            for bits in 0u64..1 << total {
                let mut cursor = 0;
                for (i, cols) in free.iter().enumerate() {
                    rows[i] = 1 << pivots[i];
                    for &c in cols {
                        if bits >> cursor & 1 == 1 {
                            rows[i] |= 1 << c;
                        }
                        cursor += 1;
                    }
                }
                if !visit(&rows) {
                    return;
                }
            }
            if !next_combination(&mut pivots, dim) {
                break;
            }
        }
    }
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn to_rows(rows: &[u32], dim: usize) -> Vec<Vec<u8>> {
    rows.iter()
        .map(|&r| (0..dim).map(|i| (r >> i & 1) as u8).collect())
        .collect()
}

/// Exact quasi-Frobenius verdict for `F_2 S_0` by checking every one-sided
/// ideal against its double annihilator. Right ideals fail first.
pub fn brute_force_algebra_qf(algebra: &ContractedAlgebra, dim_cap: usize) -> Result<BruteQf> {
    let dim = algebra.dim();
    let cap = dim_cap.min(MAX_BRUTE_DIM);
    if dim > cap {
        return Err(Error::DimensionTooLarge { dim, cap });
    }
    let gf2 = Gf2Algebra::new(algebra);
    let mut right_failure: Option<Vec<u32>> = None;
    let mut left_failure: Option<Vec<u32>> = None;
    for_each_subspace(dim, |rows| {
        for side in [Side::Right, Side::Left] {
            let slot = match side {
                Side::Right => &mut right_failure,
                Side::Left => &mut left_failure,
            };
            if slot.is_some() || !gf2.is_ideal(rows, side) {
                continue;
            }
            if gf2.double_annihilator_size(rows, side) != 1 << rows.len() {
                *slot = Some(rows.to_vec());
            }
        }
        right_failure.is_none()
    });
    let (failing_side, witness) = match (right_failure, left_failure) {
        (Some(rows), _) => (Some(Side::Right), Some(rows)),
        (None, Some(rows)) => (Some(Side::Left), Some(rows)),
        (None, None) => (None, None),
    };
    Ok(BruteQf {
        verdict: witness.is_none(),
        failing_side,
        witness: witness.map(|rows| to_rows(&rows, dim)),
    })
}
