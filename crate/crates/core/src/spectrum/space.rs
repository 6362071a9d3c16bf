use std::collections::BTreeSet;

use serde::Serialize;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::points::PointSet;

/// A topology on the finite set `{0..n}`, stored as its full list of open sets
/// together with the smallest open neighbourhood of each point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSpace {
    n: usize,
    opens: BTreeSet<PointSet>,
    minimal: Vec<PointSet>,
}

impl FiniteSpace {
    /// The topology generated by a family of open sets (closed under finite
    /// intersections and arbitrary unions; `∅` and the whole space added).
    pub fn from_open_subbasis(n: usize, subbasis: &[PointSet], budget: Budget) -> Result<Self> {
        let whole = PointSet::full(n);
        if subbasis.iter().any(|s| !s.is_subset_of(whole)) {
            return Err(Error::Precondition("open set outside the space".into()));
        }
        let minimal: Vec<PointSet> =
            (0..n).map(|x| subbasis.iter().filter(|s| s.contains(x)).fold(whole, |a, s| a.intersect(*s))).collect();
        let basis: BTreeSet<PointSet> = minimal.iter().copied().collect();
        let mut opens: BTreeSet<PointSet> = BTreeSet::from([PointSet::EMPTY]);
        let mut frontier: Vec<PointSet> = vec![PointSet::EMPTY];
        while let Some(u) = frontier.pop() {
            for b in &basis {
                let v = u.union(*b);
                if opens.insert(v) {
                    budget.check("topology generation", opens.len() as u128)?;
                    frontier.push(v);
                }
            }
        }
        Ok(FiniteSpace { n, opens, minimal })
    }

    pub fn from_closed_subbasis(n: usize, closed: &[PointSet], budget: Budget) -> Result<Self> {
        let opens: Vec<PointSet> = closed.iter().map(|c| c.complement(n)).collect();
        FiniteSpace::from_open_subbasis(n, &opens, budget)
    }

    pub fn discrete(n: usize) -> Self {
        FiniteSpace { n, opens: PointSet::all_subsets(n).collect(), minimal: (0..n).map(PointSet::singleton).collect() }
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn whole(&self) -> PointSet {
        PointSet::full(self.n)
    }
    pub fn opens(&self) -> impl Iterator<Item = PointSet> + '_ {
        self.opens.iter().copied()
    }
    pub fn closed_sets(&self) -> Vec<PointSet> {
        self.opens.iter().map(|u| u.complement(self.n)).collect()
    }
    pub fn is_open(&self, u: PointSet) -> bool {
        self.opens.contains(&u)
    }
    pub fn is_closed(&self, c: PointSet) -> bool {
        self.opens.contains(&c.complement(self.n))
    }
    pub fn is_discrete(&self) -> bool {
        self.minimal.iter().all(|u| u.len() == 1)
    }

    /// `y ∈ cl(s)` iff the smallest neighbourhood of `y` meets `s`.
    pub fn closure(&self, s: PointSet) -> PointSet {
        PointSet::from_points((0..self.n).filter(|&y| !self.minimal[y].intersect(s).is_empty()))
    }

    /// Smallest open set containing `x`.
    pub fn minimal_open(&self, x: usize) -> PointSet {
        self.minimal[x]
    }

    /// `x ⤳ y`: every closed set containing `x` contains `y`.
    pub fn specializes(&self, x: usize, y: usize) -> bool {
        self.minimal[y].contains(x)
    }

    pub fn specialization_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in 0..self.n {
            let cl = self.closure(PointSet::singleton(x));
            for y in cl.iter() {
                out.push((x, y));
            }
        }
        out
    }

    fn point_closures(&self) -> Vec<PointSet> {
        (0..self.n).map(|x| self.closure(PointSet::singleton(x))).collect()
    }

    pub fn is_t0(&self) -> bool {
        let closures: BTreeSet<PointSet> = self.point_closures().into_iter().collect();
        closures.len() == self.n
    }

    /// A closed `c` is irreducible iff it is nonempty and not a union of two
    /// proper closed subsets, i.e. iff it is the closure of one of its points.
    pub fn is_irreducible(&self, c: PointSet) -> bool {
        !c.is_empty() && c.iter().any(|x| self.closure(PointSet::singleton(x)) == c)
    }

    /// A pair of proper closed subsets covering the closed set `c`, if `c` is
    /// reducible.
    pub fn decomposition(&self, c: PointSet) -> Option<(PointSet, PointSet)> {
        if c.is_empty() || self.is_irreducible(c) {
            return None;
        }
        let inside: BTreeSet<PointSet> = self.point_closures().into_iter().filter(|d| d.is_subset_of(c)).collect();
        let maximal: Vec<PointSet> =
            inside.iter().copied().filter(|d| !inside.iter().any(|e| e != d && d.is_subset_of(*e))).collect();
        let (a, rest) = maximal.split_first()?;
        let b = rest.iter().fold(PointSet::EMPTY, |acc, d| acc.union(*d));
        (a.union(b) == c && b != c).then_some((*a, b))
    }

    /// Points whose closure is exactly `c`.
    pub fn generic_points(&self, c: PointSet) -> Vec<usize> {
        c.iter().filter(|&x| self.closure(PointSet::singleton(x)) == c).collect()
    }

    pub fn irreducible_closed_sets(&self) -> Vec<PointSet> {
        let closures: BTreeSet<PointSet> = self.point_closures().into_iter().collect();
        closures.into_iter().collect()
    }

    /// Every irreducible closed set has exactly one generic point.
    pub fn is_sober(&self) -> bool {
        self.irreducible_closed_sets().iter().all(|c| self.generic_points(*c).len() == 1)
    }

    /// In a finite space every open set is compact.
    pub fn compact_opens(&self) -> Vec<PointSet> {
        self.opens.iter().copied().collect()
    }

    /// Compact, T₀, sober, with compact opens closed under finite
    /// intersection and forming a basis. Opens are unions of minimal opens,
    /// so meets are checked on those.
    pub fn is_spectral(&self) -> bool {
        let m = &self.minimal;
        let closed_under_meets = m.iter().all(|a| m.iter().all(|b| self.is_open(a.intersect(*b))));
        let basis = (0..self.n).all(|x| m[x].contains(x) && self.is_open(m[x]));
        closed_under_meets && basis && self.is_t0() && self.is_sober()
    }

    /// The Hochster dual: generated by complements of compact opens.
    pub fn hochster_dual(&self, budget: Budget) -> Result<FiniteSpace> {
        FiniteSpace::from_open_subbasis(self.n, &self.closed_sets(), budget)
    }

    /// Subspace topology on `s`, re-indexed to `0..|s|` in increasing order.
    pub fn subspace(&self, s: PointSet, budget: Budget) -> Result<FiniteSpace> {
        let index: Vec<usize> = s.iter().collect();
        let traces: Vec<PointSet> = self
            .minimal
            .iter()
            .map(|u| PointSet::from_points(index.iter().enumerate().filter(|(_, &x)| u.contains(x)).map(|(i, _)| i)))
            .collect();
        FiniteSpace::from_open_subbasis(index.len(), &traces, budget)
    }
}

/// The per-instance topology checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TopologyReport {
    pub t0: bool,
    pub ziegler_sober: bool,
    /// Ziegler specialization is the reverse of Zariski specialization.
    pub duality: bool,
    pub spectral: bool,
}

impl TopologyReport {
    pub fn from_spaces(zariski: &FiniteSpace, ziegler: &FiniteSpace) -> Self {
        let n = zariski.n();
        let duality = (0..n).all(|x| (0..n).all(|y| zariski.specializes(x, y) == ziegler.specializes(y, x)));
        TopologyReport { t0: zariski.is_t0(), ziegler_sober: ziegler.is_sober(), duality, spectral: zariski.is_spectral() }
    }

    pub fn all(&self) -> bool {
        self.t0 && self.ziegler_sober && self.duality && self.spectral
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sierpinski() -> FiniteSpace {
        // opens ∅, {0}, {0,1}: point 0 is generic, 1 is closed
        FiniteSpace::from_open_subbasis(2, &[PointSet::singleton(0)], Budget::default()).unwrap()
    }

    #[test]
    fn sierpinski_space() {
        let s = sierpinski();
        assert_eq!(s.opens().count(), 3);
        assert!(s.specializes(0, 1));
        assert!(!s.specializes(1, 0));
        assert!(s.is_t0() && s.is_sober() && s.is_spectral());
        assert_eq!(s.minimal_open(1), PointSet::full(2));
        let dual = s.hochster_dual(Budget::default()).unwrap();
        assert!(dual.specializes(1, 0));
        assert!(TopologyReport::from_spaces(&s, &dual).all());
    }

    #[test]
    fn indiscrete_two_points_is_not_t0() {
        let s = FiniteSpace::from_open_subbasis(2, &[], Budget::default()).unwrap();
        assert!(!s.is_t0());
        assert!(!s.is_sober());
        assert!(s.decomposition(PointSet::full(2)).is_none());
    }

    #[test]
    fn discrete_space_decomposes() {
        let s = FiniteSpace::discrete(2);
        assert!(s.is_discrete());
        assert!(!s.is_irreducible(PointSet::full(2)));
        assert!(s.is_irreducible(PointSet::singleton(1)));
        assert!(s.is_spectral());
    }
}
