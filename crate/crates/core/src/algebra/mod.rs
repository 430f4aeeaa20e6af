//! The contracted semigroup algebra `F_0 S` and its Frobenius tests.
//!
//! The basis is `S \ {0}` in element order: basis index `i` is element `i + 1`.
//! Products of basis elements are again basis elements or vanish, so every
//! structure constant is 0 or 1.

mod brute;
mod field;
pub mod linalg;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub use brute::{brute_force_algebra_qf, BruteQf, DEFAULT_BRUTE_DIM_CAP, MAX_BRUTE_DIM};
pub use field::{Field, FieldSpec, PrimeField, Rationals};
pub use linalg::Subspace;

use crate::error::{Error, Result};
use crate::ideals::annihilator;
use crate::semigroup::{CayleyTable, ElementSet, Side};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractedAlgebra {
    dim: usize,
    /// `product[i * dim + j]`; `None` is the vanishing product.
    product: Vec<Option<usize>>,
}

impl ContractedAlgebra {
    pub fn from_table(table: &CayleyTable) -> Self {
        let dim = table.order() - 1;
        let mut product = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let p = table.mul(i + 1, j + 1);
                product.push(p.checked_sub(1));
            }
        }
        ContractedAlgebra { dim, product }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn basis_product(&self, i: usize, j: usize) -> Option<usize> {
        self.product[i * self.dim + j]
    }

    /// Product of two coordinate vectors.
    pub fn multiply<F: Field>(&self, field: &F, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        let mut out = vec![field.zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if field.is_zero(xi) {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if let Some(k) = self.basis_product(i, j) {
                    out[k] = field.add(&out[k], &field.mul(xi, yj));
                }
            }
        }
        out
    }
}

pub fn contracted_algebra(table: &CayleyTable) -> ContractedAlgebra {
    ContractedAlgebra::from_table(table)
}

/// `{x : x v = 0}` (left) or `{x : v x = 0}` (right) for every `v` in `space`.
pub fn algebra_annihilator<F: Field>(
    field: &F,
    algebra: &ContractedAlgebra,
    space: &Subspace<F::Elem>,
    side: Side,
) -> Subspace<F::Elem> {
    let dim = algebra.dim();
    let mut constraints = Vec::new();
    for v in space.basis() {
        // coefficient of output basis element k, as a linear form in x
        let mut forms = vec![vec![field.zero(); dim]; dim];
        for (j, vj) in v.iter().enumerate() {
            if field.is_zero(vj) {
                continue;
            }
            for i in 0..dim {
                let product = match side {
                    Side::Left => algebra.basis_product(i, j),
                    Side::Right => algebra.basis_product(j, i),
                };
                if let Some(k) = product {
                    forms[k][i] = field.add(&forms[k][i], vj);
                }
            }
        }
        constraints.extend(
            forms
                .into_iter()
                .filter(|f| f.iter().any(|c| !field.is_zero(c))),
        );
    }
    let kernel = linalg::kernel(field, constraints, dim);
    Subspace::span(field, dim, kernel)
}

/// `F_0 A`: span of the nonzero members of `set`.
pub fn span_of_elements<F: Field>(field: &F, set: &ElementSet) -> Subspace<F::Elem> {
    Subspace::coordinate(field, set.order() - 1, set.nonzero().map(|x| x - 1))
}

/// Both `l(F_0 A) = F_0 l(A)` and `r(F_0 A) = F_0 r(A)`.
pub fn check_annihilator_correspondence_in<F: Field>(
    field: &F,
    table: &CayleyTable,
    set: &ElementSet,
) -> bool {
    let algebra = ContractedAlgebra::from_table(table);
    let span = span_of_elements(field, set);
    [Side::Left, Side::Right].into_iter().all(|side| {
        let algebraic = algebra_annihilator(field, &algebra, &span, side);
        let combinatorial = span_of_elements(field, &annihilator(table, set, side));
        algebraic == combinatorial
    })
}

pub fn check_annihilator_correspondence(
    table: &CayleyTable,
    set: &ElementSet,
    field: FieldSpec,
) -> bool {
    crate::with_field!(field, |f| check_annihilator_correspondence_in(
        f, table, set
    ))
}

/// Matrix of `(s, t) ↦ coefficient of a in s t` over the basis `S \ {0}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GramMatrix {
    pub source: usize,
    pub entries: Vec<Vec<u8>>,
}

impl GramMatrix {
    pub fn as_i64(&self) -> Vec<Vec<i64>> {
        self.entries
            .iter()
            .map(|r| r.iter().map(|&v| v as i64).collect())
            .collect()
    }

    /// Exactly one 1 in every row and column.
    pub fn is_permutation(&self) -> bool {
        let n = self.entries.len();
        let ones_in_row = |i: usize| self.entries[i].iter().filter(|&&v| v == 1).count();
        let ones_in_col = |j: usize| self.entries.iter().filter(|r| r[j] == 1).count();
        (0..n).all(|i| ones_in_row(i) == 1 && ones_in_col(i) == 1)
    }
}

pub fn gram_matrix(table: &CayleyTable, a: usize) -> Result<GramMatrix> {
    table.check_element(a)?;
    if a == 0 {
        return Err(Error::ZeroOperand);
    }
    let dim = table.order() - 1;
    let entries = (1..=dim)
        .map(|s| (1..=dim).map(|t| u8::from(table.mul(s, t) == a)).collect())
        .collect();
    Ok(GramMatrix { source: a, entries })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SocleVerdict {
    pub frobenius: bool,
    /// First `a ∈ M(S) \ 0` whose Gram matrix is invertible.
    pub witness: Option<usize>,
}

/// Frobenius test through the coefficient functionals at the socle elements.
pub fn frobenius_via_socle(table: &CayleyTable, field: FieldSpec) -> Result<SocleVerdict> {
    let report = table.structure();
    if report.identity.is_none() {
        return Err(Error::NoIdentity);
    }
    let socle = report.socle.ok_or(Error::NotElementary)?;
    if socle.is_zero_set() {
        return Err(Error::NotElementary);
    }
    crate::with_field!(field, |f| {
        for a in socle.nonzero() {
            if f.is_invertible(&gram_matrix(table, a)?.as_i64()) {
                return Ok(SocleVerdict {
                    frobenius: true,
                    witness: Some(a),
                });
            }
        }
        Ok(SocleVerdict {
            frobenius: false,
            witness: None,
        })
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "mode")]
pub enum ParastrophicMode {
    Exhaustive,
    Randomized { trials: usize, seed: u64 },
}

pub const DEFAULT_TRIALS: usize = 16;
pub const EXHAUSTIVE_BOUND: u128 = 1 << 24;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "verdict")]
pub enum ParastrophicVerdict {
    /// `functional[s]` is the weight of the coefficient at basis element `s`.
    Frobenius {
        functional: Vec<i64>,
    },
    NotFrobenius,
    ProbablyNotFrobenius {
        trials: usize,
        sample_size: u64,
        failure_bound: f64,
    },
}

impl ParastrophicVerdict {
    pub fn is_frobenius(&self) -> bool {
        matches!(self, ParastrophicVerdict::Frobenius { .. })
    }
}

/// Matrix of `(s, t) ↦ λ(s t)` for the functional with weights `λ`.
fn combined_gram(algebra: &ContractedAlgebra, weights: &[i64]) -> Vec<Vec<i64>> {
    let dim = algebra.dim();
    (0..dim)
        .map(|s| {
            (0..dim)
                .map(|t| algebra.basis_product(s, t).map_or(0, |k| weights[k]))
                .collect()
        })
        .collect()
}

/// Searches for a functional whose bilinear form `(x, y) ↦ λ(x y)` is
/// nondegenerate; one exists iff the algebra is Frobenius.
pub fn frobenius_parastrophic(
    table: &CayleyTable,
    field: FieldSpec,
    mode: ParastrophicMode,
) -> Result<ParastrophicVerdict> {
    let algebra = ContractedAlgebra::from_table(table);
    let dim = algebra.dim();
    match mode {
        ParastrophicMode::Exhaustive => {
            let FieldSpec::Prime(p) = field else {
                return Err(Error::SearchSpaceTooLarge {
                    size: u128::MAX,
                    bound: EXHAUSTIVE_BOUND,
                });
            };
            let size = (p as u128).checked_pow(dim as u32).unwrap_or(u128::MAX);
            if size > EXHAUSTIVE_BOUND {
                return Err(Error::SearchSpaceTooLarge {
                    size,
                    bound: EXHAUSTIVE_BOUND,
                });
            }
            let f = PrimeField::new(p)?;
            let mut weights = vec![0i64; dim];
            for _ in 0..size {
                if f.is_invertible(&combined_gram(&algebra, &weights)) {
                    return Ok(ParastrophicVerdict::Frobenius {
                        functional: weights,
                    });
                }
                // little-endian odometer over GF(p)^dim
                for w in weights.iter_mut() {
                    *w += 1;
                    if *w < p as i64 {
                        break;
                    }
                    *w = 0;
                }
            }
            Ok(ParastrophicVerdict::NotFrobenius)
        }
        ParastrophicMode::Randomized { trials, seed } => {
            let wanted = 64u64.max(2 * (dim * trials) as u64);
            let sample_size = match field {
                FieldSpec::Prime(p) => wanted.min(p),
                FieldSpec::Rationals => wanted,
            };
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            crate::with_field!(field, |f| {
                for _ in 0..trials {
                    let weights: Vec<i64> = (0..dim)
                        .map(|_| rng.gen_range(0..sample_size) as i64)
                        .collect();
                    if f.is_invertible(&combined_gram(&algebra, &weights)) {
                        return Ok(ParastrophicVerdict::Frobenius {
                            functional: weights,
                        });
                    }
                }
            });
            let failure_bound = (dim as f64 / sample_size as f64)
                .min(1.0)
                .powi(trials as i32);
            Ok(ParastrophicVerdict::ProbablyNotFrobenius {
                trials,
                sample_size,
                failure_bound,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn contracted_algebras() {
        let a = contracted_algebra(&fixtures::fx2());
        assert_eq!(a.dim(), 2);
        assert_eq!(a.basis_product(1, 1), Some(0));
        let a = contracted_algebra(&fixtures::fx3());
        assert_eq!(a.basis_product(0, 0), Some(0));
        assert_eq!(a.basis_product(0, 1), Some(1));
        assert_eq!(a.basis_product(1, 0), Some(1));
        assert_eq!(a.basis_product(1, 1), None);
        let zero = CayleyTable::new(vec![vec![0]]).unwrap();
        assert_eq!(contracted_algebra(&zero).dim(), 0);
    }

    #[test]
    fn gram_matrices() {
        let g = gram_matrix(&fixtures::fx3(), 2).unwrap();
        assert_eq!(g.entries, vec![vec![0, 1], vec![1, 0]]);
        let g = gram_matrix(&fixtures::fx4(), 2).unwrap();
        let mut expected = vec![vec![0u8; 4]; 4];
        expected[0][1] = 1;
        expected[1][0] = 1;
        assert_eq!(g.entries, expected);
        assert_eq!(
            linalg::rank(
                &Rationals,
                g.as_i64()
                    .iter()
                    .map(|r| r.iter().map(|&v| Rationals.from_i64(v)).collect())
                    .collect()
            ),
            2
        );
        let g = gram_matrix(&fixtures::fx7(), 2).unwrap();
        let mut expected = vec![vec![0u8; 4]; 4];
        for (s, t) in [(0, 1), (1, 0), (2, 3), (3, 2)] {
            expected[s][t] = 1;
        }
        assert_eq!(g.entries, expected);
        assert!(g.is_permutation());
        assert_eq!(gram_matrix(&fixtures::fx3(), 0), Err(Error::ZeroOperand));
    }

    #[test]
    fn socle_functional() {
        let v = frobenius_via_socle(&fixtures::fx3(), FieldSpec::GF2).unwrap();
        assert_eq!(
            v,
            SocleVerdict {
                frobenius: true,
                witness: Some(2)
            }
        );
        let v = frobenius_via_socle(&fixtures::fx4(), FieldSpec::Rationals).unwrap();
        assert!(!v.frobenius);
        let v = frobenius_via_socle(&fixtures::fx5(), FieldSpec::GF3).unwrap();
        assert_eq!(v.witness, Some(3));
        assert_eq!(
            frobenius_via_socle(&fixtures::fx1(), FieldSpec::GF2),
            Err(Error::NoIdentity)
        );
        assert_eq!(
            frobenius_via_socle(&fixtures::fx6(), FieldSpec::GF2),
            Err(Error::NoIdentity)
        );
    }

    #[test]
    fn parastrophic_search() {
        let v = frobenius_parastrophic(
            &fixtures::fx3(),
            FieldSpec::GF2,
            ParastrophicMode::Exhaustive,
        )
        .unwrap();
        assert_eq!(
            v,
            ParastrophicVerdict::Frobenius {
                functional: vec![0, 1]
            }
        );
        let v = frobenius_parastrophic(
            &fixtures::fx4(),
            FieldSpec::GF2,
            ParastrophicMode::Exhaustive,
        )
        .unwrap();
        assert_eq!(v, ParastrophicVerdict::NotFrobenius);
        let mode = ParastrophicMode::Randomized { trials: 8, seed: 7 };
        assert!(
            frobenius_parastrophic(&fixtures::fx2(), FieldSpec::Rationals, mode)
                .unwrap()
                .is_frobenius()
        );
        match frobenius_parastrophic(&fixtures::fx4(), FieldSpec::Rationals, mode).unwrap() {
            ParastrophicVerdict::ProbablyNotFrobenius {
                sample_size,
                failure_bound,
                ..
            } => {
                assert_eq!(sample_size, 64);
                assert!(failure_bound <= (4.0f64 / 64.0).powi(8));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            frobenius_parastrophic(
                &fixtures::fx5(),
                FieldSpec::Prime(11),
                ParastrophicMode::Exhaustive
            ),
            Err(Error::SearchSpaceTooLarge { .. })
        ));
    }

    #[test]
    fn algebra_annihilators() {
        let f2 = PrimeField::new(2).unwrap();
        let alg = contracted_algebra(&fixtures::fx3());
        let span_a = Subspace::coordinate(&f2, 2, [1]);
        assert_eq!(algebra_annihilator(&f2, &alg, &span_a, Side::Left), span_a);

        let f3 = PrimeField::new(3).unwrap();
        let alg = contracted_algebra(&fixtures::fx4());
        let span_a = Subspace::coordinate(&f3, 4, [1]);
        assert_eq!(
            algebra_annihilator(&f3, &alg, &span_a, Side::Right),
            Subspace::coordinate(&f3, 4, [1, 2, 3])
        );
        for side in [Side::Left, Side::Right] {
            assert_eq!(
                algebra_annihilator(&Rationals, &alg, &Subspace::zero(4), side),
                Subspace::full(&Rationals, 4)
            );
        }
    }

    #[test]
    fn annihilator_correspondence_examples() {
        let set = |t: &CayleyTable, xs: &[usize]| {
            ElementSet::from_elements(t.order(), xs.iter().copied())
        };
        let fx4 = fixtures::fx4();
        assert!(check_annihilator_correspondence(
            &fx4,
            &set(&fx4, &[2]),
            FieldSpec::GF2
        ));
        let fx3 = fixtures::fx3();
        assert!(check_annihilator_correspondence(
            &fx3,
            &set(&fx3, &[1]),
            FieldSpec::Rationals
        ));
        let fx7 = fixtures::fx7();
        assert!(check_annihilator_correspondence(
            &fx7,
            &set(&fx7, &[2]),
            FieldSpec::GF5
        ));
    }

    #[test]
    fn correspondence_fails_without_cancellation() {
        // right-zero band: x*x = y*x = x, so l(F_0{x}) contains x - y
        let rz = fixtures::right_zero();
        let set = ElementSet::from_elements(3, [1]);
        assert!(!check_annihilator_correspondence(
            &rz,
            &set,
            FieldSpec::Rationals
        ));
    }
}
