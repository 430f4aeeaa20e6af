//! Small hand-built semigroups used throughout the tests and the default corpus.
//!
//! Element 0 is the zero everywhere. For fixtures built on a cyclic group,
//! `g^k` is element `k + 1`.

use crate::semigroup::CayleyTable;

fn table(name: &str, rows: Vec<Vec<usize>>) -> CayleyTable {
    CayleyTable::new(rows)
        .expect("fixture table is valid")
        .with_name(name)
}

/// `C_n` with zero adjoined, keeping `g^i * g^j` only where `keep(i, j)` holds.
fn cyclic_pattern(name: &str, n: usize, keep: impl Fn(usize, usize) -> bool) -> CayleyTable {
    let mut rows = vec![vec![0; n + 1]; n + 1];
    for i in 0..n {
        for j in 0..n {
            if keep(i, j) {
                rows[i + 1][j + 1] = (i + j) % n + 1;
            }
        }
    }
    table(name, rows)
}

/// `{0, a}` with `a*a = 0`.
pub fn fx1() -> CayleyTable {
    table("FX1", vec![vec![0, 0], vec![0, 0]])
}

/// `C2` with an adjoined zero: `{0, e, g}`.
pub fn fx2() -> CayleyTable {
    table("FX2", vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 1]])
}

/// `{0, e, a}` with `e` the identity and `a*a = 0`.
pub fn fx3() -> CayleyTable {
    table("FX3", vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 0]])
}

/// `{0, e, a, b, c}`: the Klein group with every product of two
/// non-identity elements erased.
pub fn fx4() -> CayleyTable {
    let mut rows = vec![vec![0; 5]; 5];
    rows[1] = vec![0, 1, 2, 3, 4];
    for x in 2..5 {
        rows[x][1] = x;
    }
    table("FX4", rows)
}

/// `C8` with zero, keeping `g^i g^j` when a factor lies in `{e, g^4}` or the
/// product lies in `{g^2, g^6}`.
pub fn fx5() -> CayleyTable {
    let in_h = |k: usize| k.is_multiple_of(4);
    cyclic_pattern("FX5", 8, |i, j| in_h(i) || in_h(j) || (i + j) % 8 % 4 == 2)
}

/// Two orthogonal idempotents with zero: `{0, e, f}`, `ef = fe = 0`.
pub fn fx6() -> CayleyTable {
    table("FX6", vec![vec![0, 0, 0], vec![0, 1, 0], vec![0, 0, 2]])
}

/// `C4` with zero, keeping `g^i g^j` when a factor lies in `{e, g^2}`.
pub fn fx7() -> CayleyTable {
    cyclic_pattern("FX7", 4, |i, j| i % 2 == 0 || j % 2 == 0)
}

/// Right-zero band `{x, y}` (`uv = v`) with zero adjoined. Not 0-cancellative.
pub fn right_zero() -> CayleyTable {
    table(
        "right-zero",
        vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 1, 2]],
    )
}

/// FX1 through FX7, all 0-cancellative.
pub fn atlas() -> Vec<CayleyTable> {
    vec![fx1(), fx2(), fx3(), fx4(), fx5(), fx6(), fx7()]
}
