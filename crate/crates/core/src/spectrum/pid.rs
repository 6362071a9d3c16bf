use std::collections::BTreeSet;
use std::fmt;

use serde::{Serialize, Serializer};

use super::space::{FiniteSpace, TopologyReport};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::pid::{Pid, PidModule};
use crate::points::PointSet;

/// A point of the injective spectrum of a PID: the Prüfer-type hull of
/// `R/(p)` for a prime `p`, or the fraction field `E(R)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PidPoint<E> {
    Closed(E),
    Generic,
}

impl<E: fmt::Display> fmt::Display for PidPoint<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PidPoint::Closed(p) => write!(f, "E(R/({p}))"),
            PidPoint::Generic => write!(f, "E(R)"),
        }
    }
}

impl<E: fmt::Display> Serialize for PidPoint<E> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A Zariski-closed set: a finite set of closed points, or everything.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SymbolicClosedSet<E: Ord> {
    Finite(BTreeSet<E>),
    Whole,
}

impl<E: Ord + Clone> SymbolicClosedSet<E> {
    pub fn empty() -> Self {
        SymbolicClosedSet::Finite(BTreeSet::new())
    }

    pub fn contains(&self, x: &PidPoint<E>) -> bool {
        match (self, x) {
            (SymbolicClosedSet::Whole, _) => true,
            (SymbolicClosedSet::Finite(s), PidPoint::Closed(p)) => s.contains(p),
            (SymbolicClosedSet::Finite(_), PidPoint::Generic) => false,
        }
    }

    pub fn union(&self, o: &Self) -> Self {
        match (self, o) {
            (SymbolicClosedSet::Finite(a), SymbolicClosedSet::Finite(b)) => {
                SymbolicClosedSet::Finite(a.union(b).cloned().collect())
            }
            _ => SymbolicClosedSet::Whole,
        }
    }

    pub fn intersect(&self, o: &Self) -> Self {
        match (self, o) {
            (SymbolicClosedSet::Whole, x) | (x, SymbolicClosedSet::Whole) => x.clone(),
            (SymbolicClosedSet::Finite(a), SymbolicClosedSet::Finite(b)) => {
                SymbolicClosedSet::Finite(a.intersection(b).cloned().collect())
            }
        }
    }

    /// Irreducible closed sets are `Whole` (closure of the generic point) and
    /// singletons; a finite set of two or more points splits.
    pub fn is_irreducible(&self) -> bool {
        match self {
            SymbolicClosedSet::Whole => true,
            SymbolicClosedSet::Finite(s) => s.len() == 1,
        }
    }
}

/// The symbolic injective spectrum of a PID.
#[derive(Clone, Debug)]
pub struct PidSpectrum<R: Pid> {
    ring: R,
}

impl<R: Pid> PidSpectrum<R> {
    pub fn new(ring: R) -> Self {
        PidSpectrum { ring }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    /// Closed points of size at most `bound`, followed by the generic point.
    pub fn points_up_to(&self, bound: u64) -> Vec<PidPoint<R::Elem>> {
        let mut pts: Vec<_> = self.ring.primes_up_to(bound).into_iter().map(PidPoint::Closed).collect();
        pts.push(PidPoint::Generic);
        pts
    }

    /// `(M)`: everything if `M` has a free summand, otherwise the primes
    /// dividing its invariant factors.
    pub fn basic_closed(&self, m: &PidModule<R::Elem>) -> Result<SymbolicClosedSet<R::Elem>> {
        if m.free_rank > 0 {
            return Ok(SymbolicClosedSet::Whole);
        }
        let mut s = BTreeSet::new();
        for d in &m.torsion {
            s.extend(self.ring.prime_support(d)?);
        }
        Ok(SymbolicClosedSet::Finite(s))
    }

    pub fn closure(&self, x: &PidPoint<R::Elem>) -> SymbolicClosedSet<R::Elem> {
        match x {
            PidPoint::Generic => SymbolicClosedSet::Whole,
            PidPoint::Closed(p) => SymbolicClosedSet::Finite(BTreeSet::from([p.clone()])),
        }
    }

    /// Zariski specialization `x ⤳ y`, i.e. `y ∈ cl{x}`.
    pub fn specializes(&self, x: &PidPoint<R::Elem>, y: &PidPoint<R::Elem>) -> bool {
        self.closure(x).contains(y)
    }

    pub fn generic_point_of_basic_closed(&self, m: &PidModule<R::Elem>) -> Result<Option<PidPoint<R::Elem>>> {
        Ok(match self.basic_closed(m)? {
            SymbolicClosedSet::Whole => Some(PidPoint::Generic),
            SymbolicClosedSet::Finite(s) if s.len() == 1 => s.into_iter().next().map(PidPoint::Closed),
            SymbolicClosedSet::Finite(_) => None,
        })
    }

    /// Topologies induced on the points occurring in a finite family of
    /// modules, plus the generic point.
    pub fn family_spaces(&self, family: &[PidModule<R::Elem>], budget: Budget) -> Result<PidFamilySpaces<R::Elem>> {
        let mut closed_sets = Vec::with_capacity(family.len());
        let mut primes = BTreeSet::new();
        for m in family {
            let c = self.basic_closed(m)?;
            if let SymbolicClosedSet::Finite(s) = &c {
                primes.extend(s.iter().cloned());
            }
            closed_sets.push(c);
        }
        let mut points: Vec<PidPoint<R::Elem>> = primes.into_iter().map(PidPoint::Closed).collect();
        points.push(PidPoint::Generic);
        if points.len() > 64 {
            return Err(Error::Precondition(format!("{} points exceed the finite-space limit of 64", points.len())));
        }
        let n = points.len();
        let as_points: Vec<PointSet> = closed_sets
            .iter()
            .map(|c| PointSet::from_points((0..n).filter(|&i| c.contains(&points[i]))))
            .collect();
        for c in &closed_sets {
            if c.contains(&PidPoint::Generic) && *c != SymbolicClosedSet::Whole {
                return Err(Error::invariant("generic point lies only in Whole", "finite closed set holds it"));
            }
        }
        let zariski = FiniteSpace::from_closed_subbasis(n, &as_points, budget)?;
        let ziegler = FiniteSpace::from_open_subbasis(n, &as_points, budget)?;
        let generic = n - 1;
        if zariski.closure(PointSet::singleton(generic)) != zariski.whole() {
            return Err(Error::invariant("Whole is the closure of the generic point", "closure is smaller"));
        }
        for (i, x) in points.iter().enumerate() {
            for (j, y) in points.iter().enumerate() {
                if zariski.specializes(i, j) != self.specializes(x, y) {
                    return Err(Error::invariant("symbolic specialization", format!("{x} vs {y}")));
                }
            }
        }
        Ok(PidFamilySpaces { points, zariski, ziegler })
    }

    pub fn topology_report(&self, family: &[PidModule<R::Elem>], budget: Budget) -> Result<TopologyReport> {
        let s = self.family_spaces(family, budget)?;
        Ok(TopologyReport::from_spaces(&s.zariski, &s.ziegler))
    }
}

/// The Zariski and Ziegler topologies restricted to a finite family.
#[derive(Clone, Debug)]
pub struct PidFamilySpaces<E> {
    /// Closed points in order, generic point last.
    pub points: Vec<PidPoint<E>>,
    pub zariski: FiniteSpace,
    pub ziegler: FiniteSpace,
}

/// All cyclic torsion modules `R/(f)` with `f` monic of degree `1..=max_degree`,
/// together with `R` itself.
pub fn poly_family(ring: &crate::pid::PolyRing, max_degree: usize) -> Vec<PidModule<crate::linalg::Poly>> {
    let mut out = vec![PidModule::free(1)];
    for d in 1..=max_degree {
        for f in crate::linalg::Poly::monic_of_degree(ring.field(), d) {
            out.push(PidModule { free_rank: 0, torsion: vec![f] });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Field;
    use crate::pid::{Integers, PolyRing};

    #[test]
    fn basic_closed_of_cyclic_modules() {
        let r = PolyRing::new(Field::new(2).unwrap());
        let spec = PidSpectrum::new(r);
        let m = PidModule::cyclic(&r, r.parse("x^2+x").unwrap()).unwrap();
        let expected: BTreeSet<_> = [r.parse("x").unwrap(), r.parse("x+1").unwrap()].into();
        assert_eq!(spec.basic_closed(&m).unwrap(), SymbolicClosedSet::Finite(expected));
        assert_eq!(spec.basic_closed(&PidModule::free(1)).unwrap(), SymbolicClosedSet::Whole);
        assert_eq!(spec.generic_point_of_basic_closed(&PidModule::free(1)).unwrap(), Some(PidPoint::Generic));
        assert_eq!(spec.generic_point_of_basic_closed(&m).unwrap(), None);
    }

    #[test]
    fn family_report_degree_three() {
        let r = PolyRing::new(Field::new(2).unwrap());
        let spec = PidSpectrum::new(r);
        let fam = poly_family(&r, 3);
        let s = spec.family_spaces(&fam, Budget::default()).unwrap();
        assert_eq!(s.points.len(), 6);
        assert!(TopologyReport::from_spaces(&s.zariski, &s.ziegler).all());
    }

    #[test]
    fn integers_share_the_abstraction() {
        let z = Integers::default();
        let spec = PidSpectrum::new(z);
        let fam: Vec<_> = (2..=12).map(|d| PidModule::cyclic(&z, d).unwrap()).collect();
        assert!(spec.topology_report(&fam, Budget::default()).unwrap().all());
        assert!(spec.specializes(&PidPoint::Generic, &PidPoint::Closed(7)));
        assert!(!spec.specializes(&PidPoint::Closed(7), &PidPoint::Generic));
    }
}
