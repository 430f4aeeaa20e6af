//! A small catalog of finite groups given by Cayley tables.
//!
//! Element orderings: cyclic groups list powers of the generator
//! (`e, g, g2, ...`); dihedral groups list rotations then reflections
//! (`e, r, r2, ..., s, rs, r2s, ...`); direct products are row-major in the
//! factors.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::semigroup::ElementSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    order: usize,
    identity: usize,
    cells: Vec<usize>,
    name: String,
    labels: Vec<String>,
}

fn power_label(base: &str, k: usize) -> String {
    match k {
        0 => "e".to_string(),
        1 => base.to_string(),
        _ => format!("{base}{k}"),
    }
}

impl GroupTable {
    /// Validates the group axioms. `labels` defaults to the decimal indices.
    pub fn from_table(
        rows: Vec<Vec<usize>>,
        name: impl Into<String>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::NotAGroup("empty table".into()));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(Error::NotAGroup(format!(
                    "row {i} has {} entries",
                    row.len()
                )));
            }
            let distinct: BTreeSet<_> = row.iter().copied().collect();
            if distinct.len() != order || row.iter().any(|&v| v >= order) {
                return Err(Error::NotAGroup(format!("row {i} is not a permutation")));
            }
        }
        for j in 0..order {
            let distinct: BTreeSet<_> = rows.iter().map(|r| r[j]).collect();
            if distinct.len() != order {
                return Err(Error::NotAGroup(format!("column {j} is not a permutation")));
            }
        }
        let cells: Vec<usize> = rows.into_iter().flatten().collect();
        let at = |x: usize, y: usize| cells[x * order + y];
        for x in 0..order {
            for y in 0..order {
                for z in 0..order {
                    if at(at(x, y), z) != at(x, at(y, z)) {
                        return Err(Error::NotAGroup(format!(
                            "not associative at ({x}, {y}, {z})"
                        )));
                    }
                }
            }
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or_else(|| Error::NotAGroup("no identity".into()))?;
        // a Latin square with identity is a group once associative, inverses included
        let labels = labels.unwrap_or_else(|| (0..order).map(|i| i.to_string()).collect());
        if labels.len() != order {
            return Err(Error::NotAGroup("label count differs from order".into()));
        }
        Ok(GroupTable {
            order,
            identity,
            cells,
            name: name.into(),
            labels,
        })
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::BadGroupSpec("C0".into()));
        }
        let rows = (0..n)
            .map(|i| (0..n).map(|j| (i + j) % n).collect())
            .collect();
        let labels = (0..n).map(|k| power_label("g", k)).collect();
        Self::from_table(rows, format!("C{n}"), Some(labels))
    }

    /// Symmetries of the regular `n`-gon, order `2n`.
    pub fn dihedral(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::BadGroupSpec(format!("D{n} needs n >= 3")));
        }
        let split = |k: usize| (k % n, k / n);
        let rows = (0..2 * n)
            .map(|x| {
                (0..2 * n)
                    .map(|y| {
                        let ((i, a), (j, b)) = (split(x), split(y));
                        // r^i s^a r^j s^b = r^(i ± j) s^(a+b)
                        let rot = if a == 0 { (i + j) % n } else { (i + n - j) % n };
                        rot + n * ((a + b) % 2)
                    })
                    .collect()
            })
            .collect();
        let labels = (0..2 * n)
            .map(|k| {
                let (i, a) = split(k);
                match (i, a) {
                    (0, 1) => "s".to_string(),
                    (_, 1) => format!("{}s", power_label("r", i)),
                    _ => power_label("r", i),
                }
            })
            .collect();
        Self::from_table(rows, format!("D{n}"), Some(labels))
    }

    /// The quaternion group `{±1, ±i, ±j, ±k}`.
    pub fn quaternion() -> Self {
        // index = 2 * unit + negative, units ordered 1, i, j, k
        const UNIT_PRODUCT: [[(usize, bool); 4]; 4] = [
            [(0, false), (1, false), (2, false), (3, false)],
            [(1, false), (0, true), (3, false), (2, true)],
            [(2, false), (3, true), (0, true), (1, false)],
            [(3, false), (2, false), (1, true), (0, true)],
        ];
        let rows = (0..8)
            .map(|x| {
                (0..8)
                    .map(|y| {
                        let (unit, neg) = UNIT_PRODUCT[x / 2][y / 2];
                        2 * unit + usize::from(neg ^ (x % 2 == 1) ^ (y % 2 == 1))
                    })
                    .collect()
            })
            .collect();
        let labels = ["e", "-e", "i", "-i", "j", "-j", "k", "-k"]
            .map(String::from)
            .to_vec();
        Self::from_table(rows, "Q8", Some(labels)).expect("quaternion table is a group")
    }

    pub fn direct_product(a: &GroupTable, b: &GroupTable) -> Self {
        let (m, n) = (a.order, b.order);
        let rows = (0..m * n)
            .map(|x| {
                (0..m * n)
                    .map(|y| a.mul(x / n, y / n) * n + b.mul(x % n, y % n))
                    .collect()
            })
            .collect();
        let labels = (0..m * n)
            .map(|x| format!("({},{})", a.labels[x / n], b.labels[x % n]))
            .collect();
        Self::from_table(rows, format!("{}x{}", a.name, b.name), Some(labels))
            .expect("direct product of groups is a group")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.cells[x * self.order + y]
    }

    pub fn inverse(&self, x: usize) -> usize {
        (0..self.order)
            .find(|&y| self.mul(x, y) == self.identity)
            .expect("groups have inverses")
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.cells
            .chunks(self.order)
            .map(<[usize]>::to_vec)
            .collect()
    }

    /// Resolves an element by label, falling back to a decimal index.
    pub fn element(&self, name: &str) -> Result<usize> {
        let name = name.trim();
        if let Some(i) = self.labels.iter().position(|l| l == name) {
            return Ok(i);
        }
        match name.parse::<usize>() {
            Ok(i) if i < self.order => Ok(i),
            _ => Err(Error::UnknownElement(format!("{name} in {}", self.name))),
        }
    }

    /// Parses a comma-separated list of element names into a set.
    pub fn element_set(&self, names: &str) -> Result<ElementSet> {
        let mut set = ElementSet::empty(self.order);
        for n in names.split(',').filter(|s| !s.trim().is_empty()) {
            set.insert(self.element(n)?);
        }
        Ok(set)
    }

    pub fn set_label(&self, set: &ElementSet) -> String {
        let names: Vec<&str> = set.iter().map(|x| self.label(x)).collect();
        format!("{{{}}}", names.join(","))
    }

    pub fn is_subgroup(&self, set: &ElementSet) -> bool {
        set.order() == self.order
            && set.contains(self.identity)
            && set
                .iter()
                .all(|x| set.iter().all(|y| set.contains(self.mul(x, y))))
    }

    fn check_subgroup(&self, set: &ElementSet) -> Result<()> {
        if self.is_subgroup(set) {
            Ok(())
        } else {
            Err(Error::NotASubgroup(format!(
                "{} in {}",
                self.set_label(set),
                self.name
            )))
        }
    }

    /// Smallest subgroup containing `generators`.
    pub fn generated(&self, generators: &ElementSet) -> ElementSet {
        let mut set = ElementSet::from_elements(self.order, [self.identity]);
        let mut queue: VecDeque<usize> = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for g in generators.iter() {
                let y = self.mul(x, g);
                if set.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        set
    }

    /// Every subgroup, sorted by size and then by members.
    pub fn subgroups(&self) -> Vec<ElementSet> {
        let trivial = ElementSet::from_elements(self.order, [self.identity]);
        let mut found = BTreeSet::from([trivial.clone()]);
        let mut queue = VecDeque::from([trivial]);
        while let Some(h) = queue.pop_front() {
            for g in (0..self.order).filter(|&g| !h.contains(g)) {
                let mut gens = h.clone();
                gens.insert(g);
                let bigger = self.generated(&gens);
                if found.insert(bigger.clone()) {
                    queue.push_back(bigger);
                }
            }
        }
        let mut all: Vec<_> = found.into_iter().collect();
        all.sort_by_key(|s| (s.len(), s.to_vec()));
        all
    }

    /// `{g : gH = Hg}`.
    pub fn normalizer(&self, subgroup: &ElementSet) -> Result<ElementSet> {
        self.check_subgroup(subgroup)?;
        Ok(ElementSet::from_elements(
            self.order,
            (0..self.order).filter(|&g| {
                let left =
                    ElementSet::from_elements(self.order, subgroup.iter().map(|h| self.mul(g, h)));
                let right =
                    ElementSet::from_elements(self.order, subgroup.iter().map(|h| self.mul(h, g)));
                left == right
            }),
        ))
    }

    pub fn index_of(&self, subgroup: &ElementSet) -> usize {
        self.order / subgroup.len()
    }

    pub(crate) fn require_subgroup(&self, set: &ElementSet) -> Result<()> {
        self.check_subgroup(set)
    }
}

/// One representative of each isomorphism class of groups of order at most
/// `max_order` (complete up to order 8), sorted by order.
pub fn catalog(max_order: usize) -> Vec<GroupTable> {
    let c = |n| GroupTable::cyclic(n).expect("n >= 1");
    let mut groups: Vec<GroupTable> = (1..=max_order.min(8)).map(c).collect();
    groups.push(GroupTable::direct_product(&c(2), &c(2)));
    groups.push(GroupTable::dihedral(3).expect("n >= 3"));
    groups.push(GroupTable::direct_product(&c(2), &c(4)));
    groups.push(GroupTable::direct_product(
        &GroupTable::direct_product(&c(2), &c(2)),
        &c(2),
    ));
    groups.push(GroupTable::dihedral(4).expect("n >= 3"));
    groups.push(GroupTable::quaternion());
    groups.retain(|g| g.order() <= max_order);
    groups.sort_by_key(GroupTable::order);
    groups
}

/// Parses `C<n>`, `D<n>`, `Q8` and products such as `C2xC2`.
pub fn parse_builtin_group(spec: &str) -> Result<GroupTable> {
    let spec = spec.trim();
    let bad = || Error::BadGroupSpec(spec.to_string());
    let factors: Vec<&str> = spec.split(['x', 'X']).collect();
    if factors.len() > 1 {
        let mut groups = factors.iter().map(|f| parse_builtin_group(f));
        let first = groups.next().ok_or_else(bad)??;
        return groups.try_fold(first, |acc, g| Ok(GroupTable::direct_product(&acc, &g?)));
    }
    if spec.eq_ignore_ascii_case("q8") {
        return Ok(GroupTable::quaternion());
    }
    let (kind, n) = spec.split_at(spec.char_indices().nth(1).map_or(spec.len(), |(i, _)| i));
    let n: usize = n.parse().map_err(|_| bad())?;
    match kind {
        "C" | "c" => GroupTable::cyclic(n),
        "D" | "d" => GroupTable::dihedral(n),
        _ => Err(bad()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_groups() {
        let c1 = GroupTable::cyclic(1).unwrap();
        assert_eq!(c1.order(), 1);
        let c4 = GroupTable::cyclic(4).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(c4.mul(i, j), (i + j) % 4);
            }
        }
        assert_eq!(c4.element("g2").unwrap(), 2);
        assert_eq!(c4.labels(), ["e", "g", "g2", "g3"]);
    }

    #[test]
    fn dihedral_presentation() {
        let d3 = GroupTable::dihedral(3).unwrap();
        assert_eq!(d3.order(), 6);
        let (r, s) = (d3.element("r").unwrap(), d3.element("s").unwrap());
        let e = d3.identity();
        assert_eq!(d3.mul(d3.mul(r, r), r), e);
        assert_eq!(d3.mul(s, s), e);
        assert_eq!(d3.mul(d3.mul(s, r), s), d3.inverse(r));
        assert_ne!(d3.mul(r, s), d3.mul(s, r));
        assert_eq!(d3.labels(), ["e", "r", "r2", "s", "rs", "r2s"]);
    }

    #[test]
    fn quaternion_relations() {
        let q = GroupTable::quaternion();
        let (i, j, k, m) = (2, 4, 6, 1);
        assert_eq!(q.mul(i, i), m);
        assert_eq!(q.mul(i, j), k);
        assert_eq!(q.mul(j, i), q.mul(m, k));
        // exactly one involution
        assert_eq!((0..8).filter(|&x| x != 0 && q.mul(x, x) == 0).count(), 1);
    }

    #[test]
    fn subgroup_lattices() {
        let c4 = GroupTable::cyclic(4).unwrap();
        let subs: Vec<Vec<usize>> = c4.subgroups().iter().map(ElementSet::to_vec).collect();
        assert_eq!(subs, vec![vec![0], vec![0, 2], vec![0, 1, 2, 3]]);
        assert_eq!(GroupTable::dihedral(3).unwrap().subgroups().len(), 6);
        assert_eq!(GroupTable::dihedral(4).unwrap().subgroups().len(), 10);
        assert_eq!(GroupTable::quaternion().subgroups().len(), 6);
    }

    #[test]
    fn normalizers() {
        let d3 = GroupTable::dihedral(3).unwrap();
        let rotations = d3.element_set("e,r,r2").unwrap();
        assert_eq!(d3.normalizer(&rotations).unwrap().len(), 6);
        let reflection = d3.element_set("e,s").unwrap();
        assert_eq!(d3.normalizer(&reflection).unwrap(), reflection);
        let not_sub = d3.element_set("e,r").unwrap();
        assert!(matches!(
            d3.normalizer(&not_sub),
            Err(Error::NotASubgroup(_))
        ));
    }

    #[test]
    fn rejects_non_groups() {
        let rows = vec![vec![0, 1], vec![1, 1]];
        assert!(matches!(
            GroupTable::from_table(rows, "bad", None),
            Err(Error::NotAGroup(_))
        ));
        // Latin square without associativity
        let rows = vec![vec![0, 1, 2], vec![2, 0, 1], vec![1, 2, 0]];
        assert!(matches!(
            GroupTable::from_table(rows, "bad", None),
            Err(Error::NotAGroup(_))
        ));
    }

    #[test]
    fn catalog_of_small_groups() {
        let cat = catalog(8);
        assert_eq!(cat.len(), 14);
        let orders: Vec<usize> = cat.iter().map(GroupTable::order).collect();
        assert_eq!(orders, vec![1, 2, 3, 4, 4, 5, 6, 6, 7, 8, 8, 8, 8, 8]);
    }

    #[test]
    fn builtin_specs() {
        assert_eq!(parse_builtin_group("C4").unwrap().order(), 4);
        assert_eq!(parse_builtin_group("D4").unwrap().order(), 8);
        assert_eq!(parse_builtin_group("C2xC2").unwrap().order(), 4);
        assert!(parse_builtin_group("D2").is_err());
        assert!(parse_builtin_group("Z3").is_err());
    }
}
