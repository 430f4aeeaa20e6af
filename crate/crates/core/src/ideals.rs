//! One-sided ideals, annihilators and the quasi-Frobenius condition.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::semigroup::{CayleyTable, ElementSet, Side};

pub const DEFAULT_IDEAL_CAP: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdealSide {
    Left,
    Right,
    TwoSided,
}

impl From<Side> for IdealSide {
    fn from(side: Side) -> Self {
        match side {
            Side::Left => IdealSide::Left,
            Side::Right => IdealSide::Right,
        }
    }
}

/// Smallest ideal of the given side containing `a`; zero is always adjoined.
pub fn principal_ideal(table: &CayleyTable, a: usize, side: IdealSide) -> ElementSet {
    let n = table.order();
    let mut ideal = ElementSet::from_elements(n, [0, a]);
    for s in 0..n {
        match side {
            IdealSide::Right => {
                ideal.insert(table.mul(a, s));
            }
            IdealSide::Left => {
                ideal.insert(table.mul(s, a));
            }
            IdealSide::TwoSided => {
                let sa = table.mul(s, a);
                ideal.insert(sa);
                ideal.insert(table.mul(a, s));
                for t in 0..n {
                    ideal.insert(table.mul(sa, t));
                }
            }
        }
    }
    ideal
}

/// Left: `{x : xB = 0}`. Right: `{x : Bx = 0}`.
pub fn annihilator(table: &CayleyTable, set: &ElementSet, side: Side) -> ElementSet {
    ElementSet::from_elements(
        table.order(),
        table.elements().filter(|&x| {
            set.iter().all(|b| match side {
                Side::Left => table.mul(x, b) == 0,
                Side::Right => table.mul(b, x) == 0,
            })
        }),
    )
}

/// `r(l(R))` for `side = Right`, `l(r(L))` for `side = Left`.
pub fn double_annihilator(table: &CayleyTable, ideal: &ElementSet, side: Side) -> ElementSet {
    let inner = annihilator(table, ideal, side.opposite());
    annihilator(table, &inner, side)
}

/// Whether `set` contains zero and is closed under multiplication by `S`
/// on the given side(s).
pub fn is_ideal(table: &CayleyTable, set: &ElementSet, side: IdealSide) -> bool {
    if !set.contains(0) {
        return false;
    }
    set.iter().all(|x| {
        table.elements().all(|s| {
            let right_ok = set.contains(table.mul(x, s));
            let left_ok = set.contains(table.mul(s, x));
            match side {
                IdealSide::Right => right_ok,
                IdealSide::Left => left_ok,
                IdealSide::TwoSided => right_ok && left_ok,
            }
        })
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealFamily {
    pub side: IdealSide,
    pub ideals: Vec<ElementSet>,
    pub truncated: bool,
}

/// All ideals of one side, as the union closure of the principal ones.
///
/// Order: `{0}`, then principal ideals by generator, then unions in discovery
/// order.
pub fn enumerate_ideals(table: &CayleyTable, side: IdealSide, cap: usize) -> IdealFamily {
    let mut seen = HashSet::new();
    let mut ideals = Vec::new();
    let generators = std::iter::once(ElementSet::zero(table.order()))
        .chain((1..table.order()).map(|a| principal_ideal(table, a, side)));
    for ideal in generators {
        if seen.insert(ideal.clone()) {
            ideals.push(ideal);
        }
    }
    let mut truncated = ideals.len() > cap;
    let mut i = 0;
    'closure: while i < ideals.len() && !truncated {
        for j in 0..i {
            let union = ideals[i].union(&ideals[j]);
            if seen.insert(union.clone()) {
                ideals.push(union);
                if ideals.len() > cap {
                    truncated = true;
                    break 'closure;
                }
            }
        }
        i += 1;
    }
    ideals.truncate(cap);
    IdealFamily {
        side,
        ideals,
        truncated,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QfWitness {
    pub verdict: bool,
    pub failing_side: Option<Side>,
    pub failing_ideal: Option<ElementSet>,
    pub double_annihilator: Option<ElementSet>,
}

/// Every right ideal `R` satisfies `r(l(R)) = R` and every left ideal `L`
/// satisfies `l(r(L)) = L`. Right ideals are checked first.
pub fn is_quasi_frobenius(table: &CayleyTable, cap: usize) -> Result<QfWitness> {
    for side in [Side::Right, Side::Left] {
        let family = enumerate_ideals(table, side.into(), cap);
        if family.truncated {
            return Err(Error::CapExceeded { cap });
        }
        for ideal in family.ideals {
            let closure = double_annihilator(table, &ideal, side);
            if closure != ideal {
                return Ok(QfWitness {
                    verdict: false,
                    failing_side: Some(side),
                    failing_ideal: Some(ideal),
                    double_annihilator: Some(closure),
                });
            }
        }
    }
    Ok(QfWitness {
        verdict: true,
        failing_side: None,
        failing_ideal: None,
        double_annihilator: None,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "reason")]
pub enum LeastIdealReason {
    Holds,
    NoIdentity,
    NotElementary,
    /// `M(S) = {0}`; only possible for the trivial semigroup.
    ZeroSocle,
    /// `M(S)` is not inside the principal ideal generated by `witness`.
    NotLeast {
        witness: usize,
        side: IdealSide,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LeastIdealVerdict {
    pub holds: bool,
    #[serde(flatten)]
    pub reason: LeastIdealReason,
    pub socle: Option<ElementSet>,
}

/// `H` nonempty and `M(S)` is both the least nonzero right ideal and the
/// least nonzero left ideal.
///
/// Every nonzero one-sided ideal contains a nonzero principal one, so it
/// suffices to check `M(S) ⊆ sS ∪ 0` and `M(S) ⊆ Ss ∪ 0` for each nonzero `s`.
pub fn has_least_nonzero_ideal(table: &CayleyTable) -> LeastIdealVerdict {
    least_nonzero_ideal_on(table, &[IdealSide::Right, IdealSide::Left])
}

/// The weaker reading: `M(S)` is the least nonzero two-sided ideal.
pub fn has_least_nonzero_two_sided_ideal(table: &CayleyTable) -> LeastIdealVerdict {
    least_nonzero_ideal_on(table, &[IdealSide::TwoSided])
}

fn least_nonzero_ideal_on(table: &CayleyTable, sides: &[IdealSide]) -> LeastIdealVerdict {
    let report = table.structure();
    let verdict = |reason: LeastIdealReason| LeastIdealVerdict {
        holds: reason == LeastIdealReason::Holds,
        reason,
        socle: report.socle.clone(),
    };
    if report.identity.is_none() {
        return verdict(LeastIdealReason::NoIdentity);
    }
    let Some(socle) = &report.socle else {
        return verdict(LeastIdealReason::NotElementary);
    };
    if socle.is_zero_set() {
        return verdict(LeastIdealReason::ZeroSocle);
    }
    for &side in sides {
        for s in 1..table.order() {
            if !socle.is_subset(&principal_ideal(table, s, side)) {
                return verdict(LeastIdealReason::NotLeast { witness: s, side });
            }
        }
    }
    verdict(LeastIdealReason::Holds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn set(order: usize, xs: &[usize]) -> ElementSet {
        ElementSet::from_elements(order, xs.iter().copied())
    }

    #[test]
    fn principal_ideals() {
        // FX4 elements: 0, e, a, b, c
        assert_eq!(
            principal_ideal(&fixtures::fx4(), 2, IdealSide::Right),
            set(5, &[0, 2])
        );
        assert_eq!(
            principal_ideal(&fixtures::fx3(), 1, IdealSide::Right),
            set(3, &[0, 1, 2])
        );
        // FX7 elements: 0, e, g, g2, g3
        assert_eq!(
            principal_ideal(&fixtures::fx7(), 2, IdealSide::TwoSided),
            set(5, &[0, 2, 4])
        );
    }

    #[test]
    fn annihilators() {
        let fx3 = fixtures::fx3();
        assert_eq!(
            annihilator(&fx3, &set(3, &[2]), Side::Left),
            set(3, &[0, 2])
        );
        let fx4 = fixtures::fx4();
        assert_eq!(
            annihilator(&fx4, &set(5, &[2]), Side::Right),
            set(5, &[0, 2, 3, 4])
        );
        for t in fixtures::atlas() {
            let n = t.order();
            assert_eq!(
                annihilator(&t, &ElementSet::zero(n), Side::Left),
                ElementSet::full(n)
            );
        }
    }

    #[test]
    fn ideal_families() {
        let fam = enumerate_ideals(&fixtures::fx3(), IdealSide::Right, DEFAULT_IDEAL_CAP);
        assert_eq!(
            fam.ideals,
            vec![set(3, &[0]), set(3, &[0, 1, 2]), set(3, &[0, 2])]
        );
        assert!(!fam.truncated);

        let fam = enumerate_ideals(&fixtures::fx4(), IdealSide::Right, DEFAULT_IDEAL_CAP);
        assert_eq!(fam.ideals.len(), 9);

        let zero = CayleyTable::new(vec![vec![0]]).unwrap();
        let fam = enumerate_ideals(&zero, IdealSide::Left, DEFAULT_IDEAL_CAP);
        assert_eq!(fam.ideals, vec![set(1, &[0])]);
    }

    #[test]
    fn ideal_family_truncates_at_cap() {
        let fam = enumerate_ideals(&fixtures::fx4(), IdealSide::Right, 4);
        assert!(fam.truncated);
        assert_eq!(fam.ideals.len(), 4);
        assert_eq!(
            is_quasi_frobenius(&fixtures::fx4(), 4),
            Err(Error::CapExceeded { cap: 4 })
        );
    }

    #[test]
    fn quasi_frobenius_examples() {
        assert!(
            is_quasi_frobenius(&fixtures::fx3(), DEFAULT_IDEAL_CAP)
                .unwrap()
                .verdict
        );
        let w = is_quasi_frobenius(&fixtures::fx4(), DEFAULT_IDEAL_CAP).unwrap();
        assert!(!w.verdict);
        assert_eq!(w.failing_side, Some(Side::Right));
        assert_eq!(w.failing_ideal, Some(set(5, &[0, 2])));
        assert_eq!(w.double_annihilator, Some(set(5, &[0, 2, 3, 4])));
        assert!(
            is_quasi_frobenius(&fixtures::fx6(), DEFAULT_IDEAL_CAP)
                .unwrap()
                .verdict
        );
        assert_eq!(
            enumerate_ideals(&fixtures::fx6(), IdealSide::Right, DEFAULT_IDEAL_CAP)
                .ideals
                .len(),
            4
        );
    }

    #[test]
    fn least_ideal_examples() {
        assert!(has_least_nonzero_ideal(&fixtures::fx3()).holds);
        let v = has_least_nonzero_ideal(&fixtures::fx4());
        assert_eq!(
            v.reason,
            LeastIdealReason::NotLeast {
                witness: 2,
                side: IdealSide::Right
            }
        );
        assert!(!v.holds);
        assert_eq!(
            has_least_nonzero_ideal(&fixtures::fx1()).reason,
            LeastIdealReason::NoIdentity
        );
        assert_eq!(
            has_least_nonzero_ideal(&fixtures::fx6()).reason,
            LeastIdealReason::NoIdentity
        );
        assert!(has_least_nonzero_ideal(&fixtures::fx2()).holds);
        assert!(has_least_nonzero_two_sided_ideal(&fixtures::fx3()).holds);
        assert!(!has_least_nonzero_two_sided_ideal(&fixtures::fx4()).holds);
    }

    #[test]
    fn two_sided_reading_is_weaker() {
        use crate::modifications::{modification_h_block, GroupTable};
        // index 3: HsH covers N, but sH does not
        let d3 = GroupTable::dihedral(3).unwrap();
        let h = d3.element_set("e,s").unwrap();
        let t = modification_h_block(&d3, &h).unwrap().semigroup;
        assert!(has_least_nonzero_two_sided_ideal(&t).holds);
        assert!(!has_least_nonzero_ideal(&t).holds);
        assert!(!is_quasi_frobenius(&t, DEFAULT_IDEAL_CAP).unwrap().verdict);
    }
}
