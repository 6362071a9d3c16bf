use std::fmt;

use serde::{Serialize, Serializer};

/// A subset of the points `0..n` of a finite spectrum (n ≤ 64), as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PointSet(pub u64);

impl PointSet {
    pub const EMPTY: PointSet = PointSet(0);

    pub fn full(n: usize) -> Self {
        assert!(n <= 64, "at most 64 points");
        if n == 64 {
            PointSet(u64::MAX)
        } else {
            PointSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        PointSet(1 << i)
    }

    pub fn from_points(points: impl IntoIterator<Item = usize>) -> Self {
        PointSet(points.into_iter().fold(0, |acc, i| acc | (1 << i)))
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, o: PointSet) -> PointSet {
        PointSet(self.0 | o.0)
    }

    pub fn intersect(self, o: PointSet) -> PointSet {
        PointSet(self.0 & o.0)
    }

    pub fn minus(self, o: PointSet) -> PointSet {
        PointSet(self.0 & !o.0)
    }

    pub fn complement(self, n: usize) -> PointSet {
        PointSet::full(n).minus(self)
    }

    pub fn is_subset_of(self, o: PointSet) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&i| self.contains(i))
    }

    /// Every subset of `{0..n}` in increasing bitmask order.
    pub fn all_subsets(n: usize) -> impl Iterator<Item = PointSet> {
        assert!(n < 64, "subset enumeration needs n < 64");
        (0..1u64 << n).map(PointSet)
    }

    /// Every subset of `self`.
    pub fn subsets(self) -> Vec<PointSet> {
        let mut out = Vec::with_capacity(1 << self.len());
        let mut s = self.0;
        loop {
            out.push(PointSet(s));
            if s == 0 {
                break;
            }
            s = (s - 1) & self.0;
        }
        out.reverse();
        out
    }

    /// 1-based labels, e.g. `{1,3}`.
    pub fn label(self) -> String {
        let items: Vec<String> = self.iter().map(|i| (i + 1).to_string()).collect();
        format!("{{{}}}", items.join(","))
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl Serialize for PointSet {
    /// Serialized as the sorted list of 1-based point ids.
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter().map(|i| i + 1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_are_complete_and_ordered() {
        let s = PointSet::from_points([0, 2]);
        assert_eq!(s.subsets(), vec![PointSet(0), PointSet(1), PointSet(4), PointSet(5)]);
        assert_eq!(PointSet::all_subsets(3).count(), 8);
        assert_eq!(s.label(), "{1,3}");
        assert_eq!(s.complement(3), PointSet::singleton(1));
    }
}
