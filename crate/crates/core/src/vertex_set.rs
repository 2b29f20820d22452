//! Vertex subsets packed into a single machine word.

use std::fmt;

/// Largest vertex count a [`VertexSet`] can address.
pub const MAX_SET_VERTICES: usize = 64;

/// A subset of `0..n` stored as a bitmask.
///
/// This is the carrier for visited sets, closed sets and sphere queries. All
/// operations are branch-free word operations; the owning graph decides what
/// `n` is, so [`VertexSet::complement`] takes it explicitly.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(v: usize) -> Self {
        debug_assert!(v < MAX_SET_VERTICES);
        VertexSet(1 << v)
    }

    /// The set `{0, 1, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_SET_VERTICES);
        if n == MAX_SET_VERTICES {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn contains(self, v: usize) -> bool {
        v < MAX_SET_VERTICES && self.0 & (1 << v) != 0
    }

    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | (1 << v))
    }

    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1 << v))
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1 << v);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn complement(self, n: usize) -> Self {
        VertexSet(!self.0 & Self::full(n).0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(self, other: Self) -> bool {
        self.0 & other.0 != 0
    }

    /// Smallest member, if any.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Members in ascending order.
    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

#[derive(Clone, Debug)]
pub struct Iter(u64);

impl Iterator for Iter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for Iter {}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = Iter;

    fn into_iter(self) -> Iter {
        self.iter()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn display_and_iter() {
        let s: VertexSet = [3, 0, 1].into_iter().collect();
        assert_eq!(s.to_string(), "{0,1,3}");
        assert_eq!(s.to_vec(), vec![0, 1, 3]);
        assert_eq!(s.len(), 3);
        assert_eq!(VertexSet::EMPTY.to_string(), "{}");
        assert_eq!(VertexSet::full(64).len(), 64);
        assert_eq!(VertexSet::full(33).len(), 33);
    }

    proptest! {
        #[test]
        fn set_algebra_matches_btreeset(a in any::<u64>(), b in any::<u64>(), n in 1usize..=64) {
            use std::collections::BTreeSet;
            let (sa, sb) = (VertexSet::from_bits(a).intersection(VertexSet::full(n)),
                            VertexSet::from_bits(b).intersection(VertexSet::full(n)));
            let ta: BTreeSet<usize> = sa.iter().collect();
            let tb: BTreeSet<usize> = sb.iter().collect();
            prop_assert_eq!(sa.len(), ta.len());
            prop_assert_eq!(sa.union(sb).to_vec(), ta.union(&tb).copied().collect::<Vec<_>>());
            prop_assert_eq!(sa.intersection(sb).to_vec(), ta.intersection(&tb).copied().collect::<Vec<_>>());
            prop_assert_eq!(sa.difference(sb).to_vec(), ta.difference(&tb).copied().collect::<Vec<_>>());
            prop_assert_eq!(sa.is_subset(sb), ta.is_subset(&tb));
            let comp: BTreeSet<usize> = (0..n).filter(|v| !ta.contains(v)).collect();
            prop_assert_eq!(sa.complement(n).to_vec(), comp.into_iter().collect::<Vec<_>>());
        }
    }
}
