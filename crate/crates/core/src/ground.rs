//! Ground sets, element identifiers and the bitset subset representation.
//!
//! Every subset of a ground set is an [`ElementSet`]: a single `u64` whose bit `i`
//! marks element `i`. Names are carried by [`GroundSet`] and only matter for I/O.

use std::collections::HashMap;
use std::fmt;
use std::ops::{BitAnd, BitOr, BitXor, Not, Sub};

use crate::error::{MatroidError, Result};

/// Largest ground set a single-word bitset can address.
pub const MAX_ELEMENTS: usize = 64;

/// Dense index of an element inside its ground set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementId(pub usize);

impl ElementId {
    pub fn index(self) -> usize {
        self.0
    }
}

/// A subset of a ground set with at most 64 elements.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct ElementSet(u64);

impl ElementSet {
    pub const EMPTY: ElementSet = ElementSet(0);

    pub fn from_bits(bits: u64) -> Self {
        ElementSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// The set `{0, 1, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_ELEMENTS);
        if n >= 64 {
            ElementSet(u64::MAX)
        } else {
            ElementSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        debug_assert!(i < MAX_ELEMENTS);
        ElementSet(1u64 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        indices
            .into_iter()
            .fold(ElementSet::EMPTY, |acc, i| acc.with(i))
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_ELEMENTS && self.0 >> i & 1 == 1
    }

    pub fn with(self, i: usize) -> Self {
        ElementSet(self.0 | 1u64 << i)
    }

    pub fn without(self, i: usize) -> Self {
        ElementSet(self.0 & !(1u64 << i))
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1u64 << i;
    }

    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1u64 << i);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: ElementSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: ElementSet) -> bool {
        self.0 & other.0 == 0
    }

    /// Smallest index in the set.
    pub fn first(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    /// Indices in ascending order.
    pub fn iter(self) -> Indices {
        Indices(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Canonical ordering: by cardinality, then lexicographically by sorted index list.
    pub fn canonical_cmp(&self, other: &ElementSet) -> std::cmp::Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.to_vec().cmp(&other.to_vec()))
    }

    /// All subsets of `self`, including the empty set and `self`.
    pub fn subsets(self) -> Subsets {
        Subsets {
            mask: self.0,
            next: Some(0),
        }
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Serializes as the ascending list of indices.
impl serde::Serialize for ElementSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl BitOr for ElementSet {
    type Output = ElementSet;
    fn bitor(self, rhs: Self) -> Self {
        ElementSet(self.0 | rhs.0)
    }
}

impl BitAnd for ElementSet {
    type Output = ElementSet;
    fn bitand(self, rhs: Self) -> Self {
        ElementSet(self.0 & rhs.0)
    }
}

impl BitXor for ElementSet {
    type Output = ElementSet;
    fn bitxor(self, rhs: Self) -> Self {
        ElementSet(self.0 ^ rhs.0)
    }
}

impl Sub for ElementSet {
    type Output = ElementSet;
    fn sub(self, rhs: Self) -> Self {
        ElementSet(self.0 & !rhs.0)
    }
}

impl Not for ElementSet {
    type Output = ElementSet;
    fn not(self) -> Self {
        ElementSet(!self.0)
    }
}

impl FromIterator<usize> for ElementSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        ElementSet::from_indices(iter)
    }
}

#[derive(Clone, Debug)]
pub struct Indices(u64);

impl Iterator for Indices {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Indices {}

/// Enumerates submasks in increasing numeric order.
#[derive(Clone, Debug)]
pub struct Subsets {
    mask: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = ElementSet;

    fn next(&mut self) -> Option<ElementSet> {
        let cur = self.next?;
        self.next = if cur == self.mask {
            None
        } else {
            Some((cur.wrapping_sub(self.mask)) & self.mask)
        };
        Some(ElementSet(cur))
    }
}

/// Ordered, uniquely named elements `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroundSet {
    names: Vec<String>,
    lookup: HashMap<String, usize>,
}

impl GroundSet {
    pub fn new(names: Vec<String>) -> Result<Self> {
        if names.len() > MAX_ELEMENTS {
            return Err(MatroidError::TooLarge(names.len()));
        }
        let mut lookup = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() || name.chars().any(char::is_whitespace) {
                return Err(MatroidError::Domain(format!("invalid element name {name:?}")));
            }
            if lookup.insert(name.clone(), i).is_some() {
                return Err(MatroidError::Domain(format!("duplicate element name {name}")));
            }
        }
        Ok(GroundSet { names, lookup })
    }

    /// Elements named `e1, e2, ..., en`.
    pub fn numbered(n: usize) -> Result<Self> {
        GroundSet::new((1..=n).map(|i| format!("e{i}")).collect())
    }

    /// Elements named `a, b, c, ...` (falls back to [`GroundSet::numbered`] past 26).
    pub fn lettered(n: usize) -> Result<Self> {
        if n > 26 {
            return GroundSet::numbered(n);
        }
        GroundSet::new((0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect())
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn full(&self) -> ElementSet {
        ElementSet::full(self.len())
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, id: ElementId) -> &str {
        &self.names[id.0]
    }

    pub fn id(&self, name: &str) -> Option<ElementId> {
        self.lookup.get(name).copied().map(ElementId)
    }

    pub fn ids(&self) -> impl Iterator<Item = ElementId> + '_ {
        (0..self.len()).map(ElementId)
    }

    /// Parses names into a subset; unknown names are an error.
    pub fn set_of<S: AsRef<str>>(&self, names: &[S]) -> Result<ElementSet> {
        let mut set = ElementSet::EMPTY;
        for name in names {
            let id = self.id(name.as_ref()).ok_or_else(|| {
                MatroidError::MalformedQuery(format!("unknown element {}", name.as_ref()))
            })?;
            set.insert(id.0);
        }
        Ok(set)
    }

    pub fn names_of(&self, set: ElementSet) -> Vec<String> {
        set.iter().map(|i| self.names[i].clone()).collect()
    }

    /// `{e1,e3}` style rendering.
    pub fn format(&self, set: ElementSet) -> String {
        format!("{{{}}}", self.names_of(set).join(","))
    }

    /// Checks that `set` only uses indices of this ground set.
    pub fn check(&self, set: ElementSet) -> Result<()> {
        if set.is_subset(self.full()) {
            Ok(())
        } else {
            let bad = (set - self.full()).first().unwrap_or(0);
            Err(MatroidError::MalformedQuery(format!(
                "element index {bad} out of range for ground set of {}",
                self.len()
            )))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_algebra() {
        let a = ElementSet::from_indices([0, 2, 5]);
        let b = ElementSet::from_indices([2, 3]);
        assert_eq!((a | b).to_vec(), vec![0, 2, 3, 5]);
        assert_eq!((a & b).to_vec(), vec![2]);
        assert_eq!((a ^ b).to_vec(), vec![0, 3, 5]);
        assert_eq!((a - b).to_vec(), vec![0, 5]);
        assert!(ElementSet::from_indices([2]).is_subset(a));
        assert_eq!(a.first(), Some(0));
        assert_eq!(ElementSet::EMPTY.first(), None);
        assert_eq!(ElementSet::full(64).len(), 64);
    }

    #[test]
    fn subsets_enumerates_all_submasks() {
        let s = ElementSet::from_indices([1, 3, 4]);
        let subs: Vec<_> = s.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|x| x.is_subset(s)));
        assert_eq!(subs[0], ElementSet::EMPTY);
        assert_eq!(*subs.last().unwrap(), s);
    }

    #[test]
    fn canonical_order_is_size_then_lex() {
        let mut v = [
            ElementSet::from_indices([1, 2]),
            ElementSet::from_indices([3]),
            ElementSet::from_indices([0, 3]),
        ];
        v.sort_by(ElementSet::canonical_cmp);
        assert_eq!(v[0].to_vec(), vec![3]);
        assert_eq!(v[1].to_vec(), vec![0, 3]);
    }

    #[test]
    fn ground_names() {
        let g = GroundSet::numbered(9).unwrap();
        assert_eq!(g.name(ElementId(0)), "e1");
        assert_eq!(g.id("e9"), Some(ElementId(8)));
        assert_eq!(g.format(g.set_of(&["e3", "e1"]).unwrap()), "{e1,e3}");
        assert!(g.set_of(&["zz"]).is_err());
        assert!(GroundSet::new(vec!["x".into(), "x".into()]).is_err());
        assert!(g.check(ElementSet::singleton(9)).is_err());
        assert_eq!(GroundSet::lettered(4).unwrap().names(), &["a", "b", "c", "d"]);
    }
}
