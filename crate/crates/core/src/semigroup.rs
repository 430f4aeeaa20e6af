//! Finite semigroups with zero, given by Cayley tables.
//!
//! Element `0` is always the zero. Everything here is computed directly from
//! the table: the identity, the unit group `H`, its complement `N`, the set
//! powers of `N` and the socle `M(S) = N^(n-1)`.

use std::fmt;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

/// A subset of the elements `[0, order)` of a table.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementSet {
    words: Vec<u64>,
    order: usize,
}

impl ElementSet {
    pub fn empty(order: usize) -> Self {
        ElementSet {
            words: vec![0; order.div_ceil(64).max(1)],
            order,
        }
    }

    pub fn full(order: usize) -> Self {
        Self::from_elements(order, 0..order)
    }

    /// The set `{0}`.
    pub fn zero(order: usize) -> Self {
        Self::from_elements(order, [0])
    }

    pub fn from_elements(order: usize, elements: impl IntoIterator<Item = usize>) -> Self {
        let mut set = Self::empty(order);
        for x in elements {
            set.insert(x);
        }
        set
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn contains(&self, x: usize) -> bool {
        x < self.order && self.words[x / 64] >> (x % 64) & 1 == 1
    }

    pub fn insert(&mut self, x: usize) -> bool {
        assert!(x < self.order, "element {x} outside order {}", self.order);
        let fresh = !self.contains(x);
        self.words[x / 64] |= 1 << (x % 64);
        fresh
    }

    pub fn remove(&mut self, x: usize) {
        if x < self.order {
            self.words[x / 64] &= !(1 << (x % 64));
        }
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// True when the set is exactly `{0}`.
    pub fn is_zero_set(&self) -> bool {
        self.contains(0) && self.len() == 1
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.order).filter(move |&x| self.contains(x))
    }

    /// Members other than zero.
    pub fn nonzero(&self) -> impl Iterator<Item = usize> + '_ {
        self.iter().filter(|&x| x != 0)
    }

    pub fn union(&self, other: &Self) -> Self {
        debug_assert_eq!(self.order, other.order);
        ElementSet {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a | b)
                .collect(),
            order: self.order,
        }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        debug_assert_eq!(self.order, other.order);
        ElementSet {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
            order: self.order,
        }
    }

    pub fn complement(&self) -> Self {
        Self::from_elements(self.order, (0..self.order).filter(|&x| !self.contains(x)))
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for ElementSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

/// Left or right, for annihilators, division and one-sided ideals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

/// A validated multiplication table of a finite semigroup whose zero is element 0.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CayleyTable {
    order: usize,
    cells: Vec<usize>,
    name: Option<String>,
}

impl fmt::Debug for CayleyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CayleyTable")
            .field("name", &self.name)
            .field("rows", &self.rows())
            .finish()
    }
}

/// Witness that a table is not 0-cancellative: `a != b` and either
/// `a*c == b*c != 0` (side right) or `c*a == c*b != 0` (side left).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CancellationWitness {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    /// Side on which `c` multiplies.
    pub side: Side,
}

impl CayleyTable {
    /// Validates a raw grid: square, closed, zero absorbing, associative.
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::EmptyTable);
        }
        for (row, r) in rows.iter().enumerate() {
            if r.len() != order {
                return Err(Error::NotSquare {
                    row,
                    expected: order,
                    found: r.len(),
                });
            }
            for (col, &value) in r.iter().enumerate() {
                if value >= order {
                    return Err(Error::NotClosed {
                        row,
                        col,
                        value,
                        order,
                    });
                }
            }
        }
        let table = CayleyTable {
            order,
            cells: rows.into_iter().flatten().collect(),
            name: None,
        };
        for x in 0..order {
            if table.mul(0, x) != 0 {
                return Err(Error::ZeroNotAbsorbing { row: 0, col: x });
            }
            if table.mul(x, 0) != 0 {
                return Err(Error::ZeroNotAbsorbing { row: x, col: 0 });
            }
        }
        if let Some(err) = table.associativity_failure() {
            return Err(err);
        }
        Ok(table)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    /// Builds a table the caller guarantees to be valid.
    pub(crate) fn from_cells_unchecked(order: usize, cells: Vec<usize>) -> Self {
        debug_assert_eq!(cells.len(), order * order);
        CayleyTable {
            order,
            cells,
            name: None,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.cells[x * self.order + y]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.cells
            .chunks(self.order)
            .map(<[usize]>::to_vec)
            .collect()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn check_element(&self, x: usize) -> Result<()> {
        if x < self.order {
            Ok(())
        } else {
            Err(Error::ElementOutOfRange {
                element: x,
                order: self.order,
            })
        }
    }

    /// First triple (in lexicographic order) violating associativity.
    pub fn associativity_failure(&self) -> Option<Error> {
        let n = self.order;
        for x in 0..n {
            for y in 0..n {
                let xy = self.mul(x, y);
                for z in 0..n {
                    let lhs = self.mul(xy, z);
                    let rhs = self.mul(x, self.mul(y, z));
                    if lhs != rhs {
                        return Some(Error::NotAssociative { x, y, z, lhs, rhs });
                    }
                }
            }
        }
        None
    }

    pub fn zero_cancellation_witness(&self) -> Option<CancellationWitness> {
        let n = self.order;
        for a in 0..n {
            for b in a + 1..n {
                for c in 0..n {
                    let (ac, bc) = (self.mul(a, c), self.mul(b, c));
                    if ac == bc && ac != 0 {
                        return Some(CancellationWitness {
                            a,
                            b,
                            c,
                            side: Side::Right,
                        });
                    }
                    let (ca, cb) = (self.mul(c, a), self.mul(c, b));
                    if ca == cb && ca != 0 {
                        return Some(CancellationWitness {
                            a,
                            b,
                            c,
                            side: Side::Left,
                        });
                    }
                }
            }
        }
        None
    }

    pub fn is_zero_cancellative(&self) -> bool {
        self.zero_cancellation_witness().is_none()
    }

    /// The two-sided identity, if any. Zero never counts: the trivial
    /// semigroup `{0}` has no identity in this sense.
    pub fn identity(&self) -> Option<usize> {
        let mut found = None;
        for e in 1..self.order {
            if (0..self.order).all(|x| self.mul(e, x) == x && self.mul(x, e) == x) {
                assert!(found.is_none(), "two distinct identities in one semigroup");
                found = Some(e);
            }
        }
        found
    }

    /// Invertible elements; empty when there is no identity.
    pub fn unit_group(&self) -> ElementSet {
        let mut units = ElementSet::empty(self.order);
        if let Some(e) = self.identity() {
            for x in 1..self.order {
                if (1..self.order).any(|y| self.mul(x, y) == e && self.mul(y, x) == e) {
                    units.insert(x);
                }
            }
        }
        units
    }

    /// Setwise product `A * B`.
    pub fn set_product(&self, a: &ElementSet, b: &ElementSet) -> ElementSet {
        let mut out = ElementSet::empty(self.order);
        for x in a.iter() {
            for y in b.iter() {
                out.insert(self.mul(x, y));
            }
        }
        out
    }

    /// `H a = {h a : h in H}`.
    pub fn left_translate(&self, set: &ElementSet, a: usize) -> ElementSet {
        ElementSet::from_elements(self.order, set.iter().map(|h| self.mul(h, a)))
    }

    /// `a H = {a h : h in H}`.
    pub fn right_translate(&self, a: usize, set: &ElementSet) -> ElementSet {
        ElementSet::from_elements(self.order, set.iter().map(|h| self.mul(a, h)))
    }

    pub fn structure(&self) -> StructureReport {
        let identity = self.identity();
        let units = self.unit_group();
        let complement = units.complement();
        let (nilpotency_index, socle) = match nilpotency(self, &complement) {
            Some((n, socle)) => (Some(n), Some(socle)),
            None => (None, None),
        };
        StructureReport {
            identity,
            units,
            complement,
            nilpotency_index,
            socle,
            zero_cancellative: self.is_zero_cancellative(),
        }
    }

    /// Solves `x*b = a` (left) or `b*x = a` (right) for nonzero `a`, `b`.
    pub fn solve_division(&self, a: usize, b: usize, side: Side) -> Result<Option<usize>> {
        self.check_element(a)?;
        self.check_element(b)?;
        if a == 0 || b == 0 {
            return Err(Error::ZeroOperand);
        }
        let mut solution = None;
        for x in 1..self.order {
            let product = match side {
                Side::Left => self.mul(x, b),
                Side::Right => self.mul(b, x),
            };
            if product == a {
                if let Some(first) = solution {
                    return Err(Error::AmbiguousSolution { first, second: x });
                }
                solution = Some(x);
            }
        }
        Ok(solution)
    }
}

/// Least `n` with `N^n = {0}` and the socle `N^(n-1)`, with `N^0 := S`.
fn nilpotency(table: &CayleyTable, complement: &ElementSet) -> Option<(usize, ElementSet)> {
    if complement.is_zero_set() {
        return Some((1, ElementSet::full(table.order())));
    }
    let mut powers = vec![complement.clone()];
    for k in 2..=table.order() + 1 {
        let next = table.set_product(powers.last().unwrap(), complement);
        if next.is_zero_set() {
            return Some((k, powers.pop().unwrap()));
        }
        if powers.contains(&next) {
            return None;
        }
        powers.push(next);
    }
    None
}

/// The decomposition `S = H ∪ N` with the nilpotency data of `N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub identity: Option<usize>,
    pub units: ElementSet,
    pub complement: ElementSet,
    pub nilpotency_index: Option<usize>,
    pub socle: Option<ElementSet>,
    pub zero_cancellative: bool,
}

impl StructureReport {
    /// Identity present and `N` nilpotent.
    pub fn is_elementary(&self) -> bool {
        self.identity.is_some() && self.nilpotency_index.is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn trivial_semigroup_is_valid() {
        let t = CayleyTable::new(vec![vec![0]]).unwrap();
        assert_eq!(t.order(), 1);
        assert_eq!(t.identity(), None);
        let s = t.structure();
        assert_eq!(s.nilpotency_index, Some(1));
    }

    #[test]
    fn rejects_bad_grids() {
        assert_eq!(
            CayleyTable::new(vec![vec![0, 0], vec![0]]),
            Err(Error::NotSquare {
                row: 1,
                expected: 2,
                found: 1
            })
        );
        assert_eq!(
            CayleyTable::new(vec![vec![0, 0], vec![0, 2]]),
            Err(Error::NotClosed {
                row: 1,
                col: 1,
                value: 2,
                order: 2
            })
        );
        assert_eq!(
            CayleyTable::new(vec![vec![0, 1], vec![0, 1]]),
            Err(Error::ZeroNotAbsorbing { row: 0, col: 1 })
        );
        assert_eq!(CayleyTable::new(vec![]), Err(Error::EmptyTable));
    }

    #[test]
    fn corrupted_fx3_is_not_associative() {
        // {0, e, a}: a*a := e and a*e := 0
        let rows = vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 0, 1]];
        match CayleyTable::new(rows) {
            Err(Error::NotAssociative { x, y, z, lhs, rhs }) => {
                let raw = [[0, 0, 0], [0, 1, 2], [0, 0, 1]];
                assert_eq!(raw[raw[x][y]][z], lhs);
                assert_eq!(raw[x][raw[y][z]], rhs);
                assert_ne!(lhs, rhs);
            }
            other => panic!("expected NotAssociative, got {other:?}"),
        }
    }

    #[test]
    fn zero_cancellation() {
        assert!(fixtures::fx1().is_zero_cancellative());
        assert!(fixtures::fx3().is_zero_cancellative());
        let w = fixtures::right_zero().zero_cancellation_witness().unwrap();
        assert_eq!((w.a, w.b, w.c, w.side), (1, 2, 1, Side::Right));
    }

    #[test]
    fn identities_and_units() {
        assert_eq!(fixtures::fx3().identity(), Some(1));
        assert_eq!(fixtures::fx1().identity(), None);
        assert_eq!(fixtures::fx2().identity(), Some(1));
        assert_eq!(fixtures::fx2().unit_group().to_vec(), vec![1, 2]);
        assert_eq!(fixtures::fx3().unit_group().to_vec(), vec![1]);
        assert!(fixtures::fx1().unit_group().is_empty());
    }

    #[test]
    fn structure_of_fixtures() {
        let s = fixtures::fx3().structure();
        assert_eq!(s.units.to_vec(), vec![1]);
        assert_eq!(s.complement.to_vec(), vec![0, 2]);
        assert_eq!(s.nilpotency_index, Some(2));
        assert_eq!(s.socle.unwrap().to_vec(), vec![0, 2]);

        let s = fixtures::fx2().structure();
        assert_eq!(s.complement.to_vec(), vec![0]);
        assert_eq!(s.nilpotency_index, Some(1));
        assert_eq!(s.socle.unwrap().to_vec(), vec![0, 1, 2]);

        let s = fixtures::fx6().structure();
        assert!(s.units.is_empty());
        assert_eq!(s.complement.len(), 3);
        assert_eq!(s.nilpotency_index, None);
        assert_eq!(s.socle, None);
        assert!(s.zero_cancellative);
    }

    #[test]
    fn division_examples() {
        // FX7 = h-block(C4, {e, g2}); elements 0, e, g, g2, g3 -> 0..=4
        let fx7 = fixtures::fx7();
        assert_eq!(fx7.solve_division(2, 4, Side::Left), Ok(Some(3)));
        assert_eq!(fx7.solve_division(2, 2, Side::Left), Ok(Some(1)));
        // FX5 = coset(C8, {e, g4}, g2); g^k is index k + 1
        let fx5 = fixtures::fx5();
        assert_eq!(fx5.solve_division(3, 8, Side::Left), Ok(Some(4)));
        assert_eq!(
            fx5.solve_division(0, 1, Side::Left),
            Err(Error::ZeroOperand)
        );
    }

    #[test]
    fn ambiguous_division_on_non_cancellative_table() {
        let rz = fixtures::right_zero();
        assert_eq!(
            rz.solve_division(1, 1, Side::Left),
            Err(Error::AmbiguousSolution {
                first: 1,
                second: 2
            })
        );
    }

    #[test]
    fn element_set_basics() {
        let mut s = ElementSet::empty(70);
        assert!(s.insert(65));
        assert!(!s.insert(65));
        s.insert(0);
        assert_eq!(s.to_vec(), vec![0, 65]);
        assert_eq!(s.complement().len(), 68);
        assert!(ElementSet::zero(70).is_subset(&s));
        s.remove(0);
        assert!(!ElementSet::zero(70).is_subset(&s));
    }
}
