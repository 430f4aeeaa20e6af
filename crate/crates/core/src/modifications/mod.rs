//! Modifications of finite groups: semigroups on `G ∪ {0}` where each product
//! is either the group product or zero and the group identity survives.
//!
//! Group element `g` becomes semigroup element `g + 1`; element 0 is the zero.

mod group;

use serde::Serialize;

pub use group::{catalog, parse_builtin_group, GroupTable};

use crate::error::{Error, Result};
use crate::semigroup::{CayleyTable, ElementSet};

pub const DEFAULT_BUDGET: usize = 25;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModificationMode {
    AdjoinZero,
    HBlock,
    Coset,
    RawPattern,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub group: String,
    pub subgroup: Option<Vec<String>>,
    pub witness: Option<String>,
    /// One character per non-identity cell in row-major order, `1` = erased.
    pub pattern: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModificationResult {
    #[serde(skip)]
    pub semigroup: CayleyTable,
    pub mode: ModificationMode,
    pub provenance: Provenance,
}

/// Builds the table of `G ∪ {0}` keeping `xy` wherever `keep(x, y)` holds
/// (group indices). Associativity is checked.
fn modified_table(group: &GroupTable, keep: impl Fn(usize, usize) -> bool) -> Result<CayleyTable> {
    let n = group.order();
    let mut cells = vec![0; (n + 1) * (n + 1)];
    for x in 0..n {
        for y in 0..n {
            if keep(x, y) {
                cells[(x + 1) * (n + 1) + y + 1] = group.mul(x, y) + 1;
            }
        }
    }
    let table = CayleyTable::from_cells_unchecked(n + 1, cells);
    match table.associativity_failure() {
        Some(Error::NotAssociative { x, y, z, .. }) => Err(Error::AssociativityFailed { x, y, z }),
        Some(other) => Err(other),
        None => Ok(table),
    }
}

fn labels_of(group: &GroupTable, set: &ElementSet) -> Vec<String> {
    set.iter().map(|x| group.label(x).to_string()).collect()
}

/// The group with an adjoined zero; nothing is erased.
pub fn adjoin_zero(group: &GroupTable) -> ModificationResult {
    let table = modified_table(group, |_, _| true).expect("a group with zero is associative");
    ModificationResult {
        semigroup: table.with_name(format!("{}/adjoin-zero", group.name())),
        mode: ModificationMode::AdjoinZero,
        provenance: Provenance {
            group: group.name().to_string(),
            subgroup: None,
            witness: None,
            pattern: None,
        },
    }
}

/// `x*y = xy` if `x ∈ H` or `y ∈ H`, else 0.
pub fn modification_h_block(
    group: &GroupTable,
    subgroup: &ElementSet,
) -> Result<ModificationResult> {
    group.require_subgroup(subgroup)?;
    let table = modified_table(group, |x, y| subgroup.contains(x) || subgroup.contains(y))?;
    let name = format!("{}/h-block/{}", group.name(), group.set_label(subgroup));
    Ok(ModificationResult {
        semigroup: table.with_name(name),
        mode: ModificationMode::HBlock,
        provenance: Provenance {
            group: group.name().to_string(),
            subgroup: Some(labels_of(group, subgroup)),
            witness: None,
            pattern: None,
        },
    })
}

/// `x*y = xy` if `x ∈ H`, `y ∈ H` or `xy ∈ Ha`, else 0, without checking
/// that `a` normalizes `H`. Fails with `AssociativityFailed` when the
/// operation is not associative.
pub fn coset_table(group: &GroupTable, subgroup: &ElementSet, a: usize) -> Result<CayleyTable> {
    group.require_subgroup(subgroup)?;
    let coset = ElementSet::from_elements(group.order(), subgroup.iter().map(|h| group.mul(h, a)));
    modified_table(group, |x, y| {
        subgroup.contains(x) || subgroup.contains(y) || coset.contains(group.mul(x, y))
    })
}

/// The `Ha`-modification for a proper subgroup `H` and `a ∈ N_G(H) \ H`.
pub fn modification_coset(
    group: &GroupTable,
    subgroup: &ElementSet,
    a: usize,
) -> Result<ModificationResult> {
    group.require_subgroup(subgroup)?;
    if subgroup.len() == group.order() {
        return Err(Error::NotASubgroup(format!(
            "{} is not proper in {}",
            group.set_label(subgroup),
            group.name()
        )));
    }
    if a >= group.order() {
        return Err(Error::UnknownElement(a.to_string()));
    }
    if subgroup.contains(a) {
        return Err(Error::WitnessInH(group.label(a).to_string()));
    }
    if !group.normalizer(subgroup)?.contains(a) {
        return Err(Error::WitnessNotNormalizing(group.label(a).to_string()));
    }
    let table = coset_table(group, subgroup, a)?;
    let name = format!(
        "{}/coset/{}/{}",
        group.name(),
        group.set_label(subgroup),
        group.label(a)
    );
    Ok(ModificationResult {
        semigroup: table.with_name(name),
        mode: ModificationMode::Coset,
        provenance: Provenance {
            group: group.name().to_string(),
            subgroup: Some(labels_of(group, subgroup)),
            witness: Some(group.label(a).to_string()),
            pattern: None,
        },
    })
}

/// Every valid `(H, a)` for [`modification_coset`]: proper subgroups `H` and
/// `a ∈ N_G(H) \ H`, in subgroup order then element order.
pub fn coset_parameters(group: &GroupTable) -> Vec<(ElementSet, usize)> {
    let mut out = Vec::new();
    for h in group.subgroups() {
        if h.len() == group.order() {
            continue;
        }
        let normalizer = group.normalizer(&h).expect("subgroups() yields subgroups");
        for a in normalizer.iter().filter(|&a| !h.contains(a)) {
            out.push((h.clone(), a));
        }
    }
    out
}

/// Depth-first search over erase patterns of the non-identity cells.
struct PatternSearch<'g> {
    group: &'g GroupTable,
    /// Non-identity group elements.
    free: Vec<usize>,
    /// `erased[cell]` for cells `(x, y)` of `free × free`, row-major.
    erased: Vec<Option<bool>>,
    /// Position of each group element in `free`.
    slot: Vec<Option<usize>>,
}

impl<'g> PatternSearch<'g> {
    fn new(group: &'g GroupTable) -> Self {
        let free: Vec<usize> = (0..group.order())
            .filter(|&x| x != group.identity())
            .collect();
        let mut slot = vec![None; group.order()];
        for (i, &x) in free.iter().enumerate() {
            slot[x] = Some(i);
        }
        let cells = free.len() * free.len();
        PatternSearch {
            group,
            free,
            erased: vec![None; cells],
            slot,
        }
    }

    /// Product in `G ∪ {0}` with `None` for the zero; the outer `None` means
    /// the cell is still undecided.
    fn star(&self, x: Option<usize>, y: Option<usize>) -> Option<Option<usize>> {
        let (Some(x), Some(y)) = (x, y) else {
            return Some(None);
        };
        let (Some(i), Some(j)) = (self.slot[x], self.slot[y]) else {
            return Some(Some(self.group.mul(x, y)));
        };
        match self.erased[i * self.free.len() + j]? {
            true => Some(None),
            false => Some(Some(self.group.mul(x, y))),
        }
    }

    /// No fully decided triple of non-identity elements violates associativity.
    fn consistent(&self) -> bool {
        for &x in &self.free {
            for &y in &self.free {
                let Some(xy) = self.star(Some(x), Some(y)) else {
                    continue;
                };
                for &z in &self.free {
                    let lhs = self.star(xy, Some(z));
                    let rhs = self
                        .star(Some(y), Some(z))
                        .and_then(|yz| self.star(Some(x), yz));
                    if let (Some(l), Some(r)) = (lhs, rhs) {
                        if l != r {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn run(&mut self, cell: usize, visit: &mut dyn FnMut(&[Option<bool>])) {
        if cell == self.erased.len() {
            visit(&self.erased);
            return;
        }
        for choice in [false, true] {
            self.erased[cell] = Some(choice);
            if self.consistent() {
                self.run(cell + 1, visit);
            }
        }
        self.erased[cell] = None;
    }
}

pub fn pattern_string(pattern: &[bool]) -> String {
    pattern.iter().map(|&e| if e { '1' } else { '0' }).collect()
}

/// Table for an erase pattern over the non-identity cells (row-major), or
/// `AssociativityFailed`.
pub fn table_from_pattern(group: &GroupTable, pattern: &[bool]) -> Result<CayleyTable> {
    let free: Vec<usize> = (0..group.order())
        .filter(|&x| x != group.identity())
        .collect();
    assert_eq!(pattern.len(), free.len() * free.len(), "pattern length");
    let slot = |x: usize| free.iter().position(|&f| f == x);
    modified_table(group, |x, y| match (slot(x), slot(y)) {
        (Some(i), Some(j)) => !pattern[i * free.len() + j],
        _ => true,
    })
}

/// Streams every modification of `group` in lexicographic pattern order
/// (`0` = keep before `1` = erase).
pub fn for_each_modification(
    group: &GroupTable,
    budget: usize,
    mut visit: impl FnMut(ModificationResult),
) -> Result<()> {
    let free = group.order() - 1;
    if free * free > budget {
        return Err(Error::BudgetExceeded {
            cells: free * free,
            budget,
        });
    }
    let mut search = PatternSearch::new(group);
    search.run(0, &mut |erased| {
        let pattern: Vec<bool> = erased
            .iter()
            .map(|c| c.expect("leaf is fully decided"))
            .collect();
        let bits = pattern_string(&pattern);
        let table = table_from_pattern(group, &pattern)
            .expect("pruned search only reaches associative patterns")
            .with_name(format!("{}/raw/{}", group.name(), bits));
        visit(ModificationResult {
            semigroup: table,
            mode: ModificationMode::RawPattern,
            provenance: Provenance {
                group: group.name().to_string(),
                subgroup: None,
                witness: None,
                pattern: Some(bits),
            },
        });
    });
    Ok(())
}

pub fn enumerate_modifications(
    group: &GroupTable,
    budget: usize,
) -> Result<Vec<ModificationResult>> {
    let mut out = Vec::new();
    for_each_modification(group, budget, |m| out.push(m))?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::ideals::{is_quasi_frobenius, DEFAULT_IDEAL_CAP};

    fn c(n: usize) -> GroupTable {
        GroupTable::cyclic(n).unwrap()
    }

    fn is_qf(t: &CayleyTable) -> bool {
        is_quasi_frobenius(t, DEFAULT_IDEAL_CAP).unwrap().verdict
    }

    #[test]
    fn adjoin_zero_examples() {
        assert_eq!(adjoin_zero(&c(2)).semigroup.rows(), fixtures::fx2().rows());
        assert_eq!(
            adjoin_zero(&c(1)).semigroup.rows(),
            vec![vec![0, 0], vec![0, 1]]
        );
        let d3 = adjoin_zero(&GroupTable::dihedral(3).unwrap()).semigroup;
        let s = d3.structure();
        assert_eq!(s.units.len(), 6);
        assert_eq!(s.nilpotency_index, Some(1));
    }

    #[test]
    fn h_block_examples() {
        let g = c(2);
        let fx3 = modification_h_block(&g, &g.element_set("e").unwrap()).unwrap();
        assert_eq!(fx3.semigroup.rows(), fixtures::fx3().rows());

        let g = c(4);
        let fx7 = modification_h_block(&g, &g.element_set("e,g2").unwrap()).unwrap();
        assert_eq!(fx7.semigroup.rows(), fixtures::fx7().rows());
        assert!(is_qf(&fx7.semigroup));

        let klein = parse_builtin_group("C2xC2").unwrap();
        let fx4 = modification_h_block(&klein, &ElementSet::from_elements(4, [0])).unwrap();
        assert_eq!(fx4.semigroup.rows(), fixtures::fx4().rows());
        assert!(!is_qf(&fx4.semigroup));

        assert!(matches!(
            modification_h_block(&g, &g.element_set("e,g").unwrap()),
            Err(Error::NotASubgroup(_))
        ));
    }

    #[test]
    fn coset_examples() {
        let c8 = c(8);
        let h = c8.element_set("e,g4").unwrap();
        let fx5 = modification_coset(&c8, &h, c8.element("g2").unwrap()).unwrap();
        assert_eq!(fx5.semigroup.rows(), fixtures::fx5().rows());
        let s = fx5.semigroup.structure();
        assert_eq!(s.nilpotency_index, Some(3));
        assert_eq!(s.socle.unwrap().to_vec(), vec![0, 3, 7]);
        assert!(is_qf(&fx5.semigroup));

        let d3 = GroupTable::dihedral(3).unwrap();
        let rot = d3.element_set("e,r,r2").unwrap();
        let m = modification_coset(&d3, &rot, d3.element("s").unwrap()).unwrap();
        assert_eq!(m.semigroup.structure().nilpotency_index, Some(2));
        assert!(is_qf(&m.semigroup));

        let c4 = c(4);
        let m = modification_coset(&c4, &c4.element_set("e").unwrap(), 1).unwrap();
        let s = m.semigroup.structure();
        assert_eq!(s.nilpotency_index, Some(3));
        assert_eq!(s.socle.unwrap().to_vec(), vec![0, 2]);
        assert!(is_qf(&m.semigroup));
    }

    #[test]
    fn coset_hypothesis_errors() {
        let c8 = c(8);
        let h = c8.element_set("e,g4").unwrap();
        assert!(matches!(
            modification_coset(&c8, &h, 4),
            Err(Error::WitnessInH(_))
        ));
        let full = ElementSet::full(8);
        assert!(matches!(
            modification_coset(&c8, &full, 1),
            Err(Error::NotASubgroup(_))
        ));
        let d3 = GroupTable::dihedral(3).unwrap();
        let refl = d3.element_set("e,s").unwrap();
        assert!(matches!(
            modification_coset(&d3, &refl, d3.element("r").unwrap()),
            Err(Error::WitnessNotNormalizing(_))
        ));
    }

    #[test]
    fn enumeration_small_groups() {
        let c2 = enumerate_modifications(&c(2), DEFAULT_BUDGET).unwrap();
        assert_eq!(c2.len(), 2);
        assert_eq!(c2[0].semigroup.rows(), fixtures::fx2().rows());
        assert_eq!(c2[1].semigroup.rows(), fixtures::fx3().rows());
        assert_eq!(c2[1].provenance.pattern.as_deref(), Some("1"));

        let c1 = enumerate_modifications(&c(1), DEFAULT_BUDGET).unwrap();
        assert_eq!(c1.len(), 1);

        assert_eq!(
            enumerate_modifications(&c(7), DEFAULT_BUDGET),
            Err(Error::BudgetExceeded {
                cells: 36,
                budget: 25
            })
        );
    }
}
