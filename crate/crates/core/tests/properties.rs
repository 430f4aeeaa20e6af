use std::sync::OnceLock;

use proptest::prelude::*;

use qfsemi::algebra::{check_annihilator_correspondence, gram_matrix, FieldSpec};
use qfsemi::fixtures;
use qfsemi::ideals::{
    annihilator, double_annihilator, enumerate_ideals, IdealSide, DEFAULT_IDEAL_CAP,
};
use qfsemi::io;
use qfsemi::modifications::{
    catalog, coset_parameters, enumerate_modifications, modification_coset, modification_h_block,
    GroupTable, DEFAULT_BUDGET,
};
use qfsemi::{CayleyTable, ElementSet, Error, Side};

/// Modifications of small groups plus the fixtures; all 0-cancellative.
fn pool() -> &'static [CayleyTable] {
    static POOL: OnceLock<Vec<CayleyTable>> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut out = fixtures::atlas();
        for g in [
            GroupTable::cyclic(3),
            GroupTable::cyclic(4),
            GroupTable::dihedral(3),
        ] {
            let g = g.unwrap();
            out.extend(
                enumerate_modifications(&g, DEFAULT_BUDGET)
                    .unwrap()
                    .into_iter()
                    .map(|m| m.semigroup),
            );
        }
        for g in catalog(6) {
            for h in g.subgroups() {
                out.push(modification_h_block(&g, &h).unwrap().semigroup);
            }
            for (h, a) in coset_parameters(&g) {
                out.push(modification_coset(&g, &h, a).unwrap().semigroup);
            }
        }
        out
    })
}

fn member_and_subsets() -> impl Strategy<Value = (usize, u64, u64)> {
    (0..pool().len(), any::<u64>(), any::<u64>())
}

fn subset(t: &CayleyTable, bits: u64) -> ElementSet {
    ElementSet::from_elements(t.order(), (0..t.order()).filter(|&x| bits >> x & 1 == 1))
}

fn nonzero(t: &CayleyTable, raw: usize) -> usize {
    1 + raw % (t.order() - 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn annihilators_form_a_galois_connection((i, a, b) in member_and_subsets()) {
        let t = &pool()[i];
        let small = subset(t, a & b);
        let large = subset(t, a);
        for side in [Side::Left, Side::Right] {
            // antitone
            prop_assert!(annihilator(t, &large, side).is_subset(&annihilator(t, &small, side)));
            let once = annihilator(t, &large, side);
            let closed = annihilator(t, &annihilator(t, &once, side.opposite()), side);
            prop_assert_eq!(&closed, &once);
        }
        // A ⊆ r(l(A)) and A ⊆ l(r(A))
        let with_zero = large.union(&ElementSet::zero(t.order()));
        prop_assert!(with_zero.is_subset(&double_annihilator(t, &with_zero, Side::Right)));
        prop_assert!(with_zero.is_subset(&double_annihilator(t, &with_zero, Side::Left)));
    }

    #[test]
    fn gram_matrices_have_at_most_one_entry_per_line(i in 0..pool().len(), a in any::<usize>()) {
        let t = &pool()[i];
        let a = nonzero(t, a);
        let g = gram_matrix(t, a).unwrap();
        for row in &g.entries {
            prop_assert!(row.iter().filter(|&&v| v == 1).count() <= 1);
        }
        for col in 0..g.entries.len() {
            prop_assert!(g.entries.iter().filter(|r| r[col] == 1).count() <= 1);
        }
    }

    #[test]
    fn one_sided_inverses_are_two_sided(i in 0..pool().len()) {
        let t = &pool()[i];
        if let Some(e) = t.identity() {
            for x in t.elements() {
                for y in t.elements() {
                    if t.mul(x, y) == e {
                        prop_assert_eq!(t.mul(y, x), e);
                    }
                }
            }
        }
    }

    #[test]
    fn division_is_never_ambiguous(i in 0..pool().len(), a in any::<usize>(), b in any::<usize>()) {
        let t = &pool()[i];
        let (a, b) = (nonzero(t, a), nonzero(t, b));
        for side in [Side::Left, Side::Right] {
            let solution = t.solve_division(a, b, side).unwrap();
            if let Some(x) = solution {
                let product = match side {
                    Side::Left => t.mul(x, b),
                    Side::Right => t.mul(b, x),
                };
                prop_assert_eq!(product, a);
            }
        }
    }

    #[test]
    fn tables_round_trip_through_both_formats(i in 0..pool().len()) {
        let t = &pool()[i];
        let plain = io::table_to_plain(t);
        prop_assert_eq!(io::parse_table(&plain).unwrap().rows(), t.rows());
        prop_assert_eq!(io::table_to_plain(&io::parse_table(&plain).unwrap()), plain);
        prop_assert_eq!(&io::parse_table(&io::table_to_json(t)).unwrap(), t);
    }

    #[test]
    fn ideal_families_are_union_closed(i in 0..pool().len()) {
        let t = &pool()[i];
        prop_assume!(t.order() <= 7);
        for side in [IdealSide::Left, IdealSide::Right, IdealSide::TwoSided] {
            let fam = enumerate_ideals(t, side, DEFAULT_IDEAL_CAP);
            for a in &fam.ideals {
                for b in &fam.ideals {
                    prop_assert!(fam.ideals.contains(&a.union(b)));
                }
            }
        }
    }

    #[test]
    fn correspondence_holds_over_small_fields((i, a, _) in member_and_subsets(), p in prop::sample::select(vec![2u64, 3, 7])) {
        let t = &pool()[i];
        prop_assert!(check_annihilator_correspondence(t, &subset(t, a), FieldSpec::Prime(p)));
    }

    #[test]
    fn element_set_laws(a in any::<u64>(), b in any::<u64>(), n in 1usize..64) {
        let mask = |bits: u64| ElementSet::from_elements(n, (0..n).filter(|&x| bits >> x & 1 == 1));
        let (x, y) = (mask(a), mask(b));
        prop_assert_eq!(x.union(&y).complement(), x.complement().intersection(&y.complement()));
        prop_assert_eq!(x.union(&y).len() + x.intersection(&y).len(), x.len() + y.len());
        prop_assert!(x.intersection(&y).is_subset(&x));
        prop_assert_eq!(x.complement().complement(), x);
    }
}

#[test]
fn corrupted_tables_are_rejected_not_panicking() {
    let cases = [
        ("3\n0 0 0\n0 1 2\n0 0 1\n", "NotAssociative"),
        ("2\n0 0\n0 2\n", "NotClosed"),
        ("2\n0 1\n0 1\n", "ZeroNotAbsorbing"),
        ("2\n0 0 0\n0 1\n", "NotSquare"),
    ];
    for (text, kind) in cases {
        let err = io::parse_table(text).unwrap_err();
        assert_eq!(err.kind(), kind, "{text:?}");
    }
    assert!(matches!(io::parse_table(""), Err(Error::Parse(_))));
}
