//! The lattice of hereditary torsion classes on a path algebra and the
//! torsion spectrum of prime classes.

mod gabriel;

use serde::Serialize;

use crate::engine::QuiverEngine;
use crate::error::{Error, Result};
use crate::points::PointSet;
use crate::quiver::{all_submodules, Rep};
use crate::spectrum::FinSpectrum;
use crate::torsion::{cogenerated_class, generated_class, is_torsion, is_torsionfree, TorsionClass};

pub use gabriel::{
    colon_ideal, filter_admits, filter_axioms, filter_from_class, filter_roundtrip, right_ideals, FilterAxioms, GabrielFilter,
};

/// Largest point count for which the full lattice is materialized.
pub const MAX_LATTICE_POINTS: usize = 20;

/// All torsion classes, one per subset of spectrum points.
#[derive(Clone, Debug, Serialize)]
pub struct TorsionLattice {
    n: usize,
    elements: Vec<TorsionClass>,
}

impl TorsionLattice {
    pub fn new(eng: &QuiverEngine) -> Result<Self> {
        let n = eng.n();
        if n > MAX_LATTICE_POINTS {
            return Err(Error::Precondition(format!("{n} points exceed the lattice cap of {MAX_LATTICE_POINTS}")));
        }
        eng.budget().check("torsion lattice", 1u128 << n)?;
        let elements = PointSet::all_subsets(n).map(|u| TorsionClass::new(n, u)).collect::<Result<_>>()?;
        Ok(TorsionLattice { n, elements })
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn elements(&self) -> &[TorsionClass] {
        &self.elements
    }
    pub fn len(&self) -> usize {
        self.elements.len()
    }
    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// The largest class, everything torsion.
    pub fn top(&self) -> TorsionClass {
        TorsionClass::everything(self.n)
    }
    pub fn bottom(&self) -> TorsionClass {
        TorsionClass::zero(self.n)
    }

    /// Checks that inclusion of classes agrees with membership on the battery
    /// and that distinct classes are separated by some battery module.
    pub fn verify_order(&self, eng: &QuiverEngine, battery: &[Rep]) -> Result<()> {
        let mut member = Vec::with_capacity(self.len());
        for t in &self.elements {
            member.push(battery.iter().map(|m| is_torsion(eng, m, *t)).collect::<Result<Vec<bool>>>()?);
        }
        for (i, s) in self.elements.iter().enumerate() {
            for (j, t) in self.elements.iter().enumerate() {
                let by_members = member[i].iter().zip(&member[j]).all(|(a, b)| !a || *b);
                if by_members != s.is_subclass_of(t) {
                    return Err(Error::invariant(
                        "lattice order matches membership",
                        format!("{:?} vs {:?}", s.cogen(), t.cogen()),
                    ));
                }
                if i != j && member[i] == member[j] {
                    return Err(Error::invariant("classes are separated", format!("{:?} = {:?}", s.cogen(), t.cogen())));
                }
            }
        }
        Ok(())
    }

    /// `T` is not the top and `T = A ∩ B` forces `T = A` or `T = B`.
    pub fn is_cap_irreducible(&self, t: TorsionClass) -> bool {
        if t == self.top() {
            return false;
        }
        self.elements.iter().all(|a| {
            self.elements.iter().all(|b| a.meet(b) != t || *a == t || *b == t)
        })
    }

    /// Prime ⟺ ∩-irreducible on every element; returns the primes.
    pub fn check_primes(&self) -> Result<Vec<TorsionClass>> {
        let mut primes = Vec::new();
        for t in &self.elements {
            let prime = is_prime(*t);
            if prime != self.is_cap_irreducible(*t) {
                return Err(Error::invariant("prime ⟺ ∩-irreducible", format!("{:?}", t.cogen())));
            }
            if prime {
                primes.push(*t);
            }
        }
        Ok(primes)
    }

    /// Every torsionfree class is the sum of the prime torsionfree classes it
    /// contains: the meet of the primes `T_{i}` with `E_i ∈ F_T` is `T`.
    pub fn check_sum_of_primes(&self, eng: &QuiverEngine) -> Result<()> {
        for t in &self.elements {
            let mut acc = self.top();
            for i in 0..self.n {
                if is_torsionfree(eng, eng.injective(i), *t)? {
                    acc = acc.meet(&TorsionClass::new(self.n, PointSet::singleton(i))?);
                }
            }
            if acc != *t {
                return Err(Error::invariant("sum of prime torsionfree classes", format!("{:?}", t.cogen())));
            }
        }
        Ok(())
    }

    /// Each element with a finitely presented witness `M` with `T(M) = T`.
    pub fn compact_elements(&self, eng: &QuiverEngine) -> Result<Vec<(TorsionClass, Rep)>> {
        self.elements.iter().map(|t| Ok((*t, compact_witness(eng, *t)?))).collect()
    }
}

/// `T` is prime: its torsionfree class is cogenerated by one point.
pub fn is_prime(t: TorsionClass) -> bool {
    t.cogen().len() == 1
}

/// `⊕ S_i` over the torsion simples, checked to generate `T`.
pub fn compact_witness(eng: &QuiverEngine, t: TorsionClass) -> Result<Rep> {
    let parts: Vec<&Rep> = (0..eng.n()).filter(|&i| !t.cogen().contains(i)).map(|i| eng.simple(i)).collect();
    let m = if parts.is_empty() { eng.zero_module() } else { Rep::direct_sum(&parts)? };
    let g = generated_class(eng, &m)?;
    if g != t {
        return Err(Error::invariant("T(M) = T", format!("witness generates {:?}, wanted {:?}", g.cogen(), t.cogen())));
    }
    Ok(m)
}

/// Every quotient `A/C` with `C ≠ 0` is torsion for the theory cogenerated by `A`.
pub fn is_torsion_critical(eng: &QuiverEngine, a: &Rep) -> Result<bool> {
    if a.is_zero() {
        return Ok(false);
    }
    let f = cogenerated_class(eng, a)?;
    for c in all_submodules(a, eng.budget())? {
        if c.is_zero() || c.is_full() {
            continue;
        }
        let (q, _) = a.quotient(&c);
        if !is_torsion(eng, &q, f)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A nonzero subobject `A ≤ B`, smallest first, such that no quotient `A/C`
/// with `C ≠ 0` maps nonzero to `E(B)`.
pub fn critical_subobject(eng: &QuiverEngine, b: &Rep) -> Result<Rep> {
    if b.is_zero() {
        return Err(Error::Precondition("the zero module has no critical subobject".into()));
    }
    let (eb, _) = eng.hull(b)?;
    for sub in all_submodules(b, eng.budget())? {
        if sub.is_zero() {
            continue;
        }
        let (a, _) = b.restrict_to(&sub);
        let mut ok = true;
        for c in all_submodules(&a, eng.budget())? {
            if c.is_zero() || c.is_full() {
                continue;
            }
            let (q, _) = a.quotient(&c);
            if !crate::quiver::hom_basis(&q, &eb)?.is_empty() {
                ok = false;
                break;
            }
        }
        if ok {
            if !is_torsion_critical(eng, &a)? {
                return Err(Error::invariant("critical subobject is torsion-critical", format!("dims {:?}", a.dims())));
            }
            return Ok(a);
        }
    }
    Err(Error::invariant("critical subobject exists", format!("none found in module of dims {:?}", b.dims())))
}

/// For torsion-critical `A`: `A` is uniform, and every nonzero submodule is
/// torsion-critical and cogenerates the same class.
pub fn check_critical_invariants(eng: &QuiverEngine, a: &Rep) -> Result<()> {
    if a.socle().total_dim() != 1 {
        return Err(Error::invariant("torsion-critical ⇒ uniform", format!("socle dims {:?}", a.socle().dims())));
    }
    let fa = cogenerated_class(eng, a)?;
    for sub in all_submodules(a, eng.budget())? {
        if sub.is_zero() {
            continue;
        }
        let (b, _) = a.restrict_to(&sub);
        if !is_torsion_critical(eng, &b)? || cogenerated_class(eng, &b)? != fa {
            return Err(Error::invariant("submodules of torsion-critical objects", format!("dims {:?}", b.dims())));
        }
    }
    Ok(())
}

/// The map `h: E ↦ F(E)` from the injective spectrum to the prime classes.
#[derive(Clone, Debug, Serialize)]
pub struct GolanReport {
    /// `images[i]` is the cogenerating set of `h(E_i)`.
    pub images: Vec<PointSet>,
    pub bijective: bool,
    pub opens_checked: usize,
}

/// Checks that `h` is a bijection onto the primes and that `h([A]) = [T(A)]`
/// for every module of the battery and every simple.
pub fn golan_homeomorphism_check(eng: &QuiverEngine, spec: &FinSpectrum, battery: &[Rep]) -> Result<GolanReport> {
    let lattice = TorsionLattice::new(eng)?;
    let primes = lattice.check_primes()?;
    let mut images = Vec::with_capacity(spec.n());
    for p in &spec.points {
        let h = cogenerated_class(eng, &p.module)?;
        if !is_prime(h) {
            return Err(Error::invariant("h(E) is prime", format!("E{} ↦ {:?}", p.id, h.cogen())));
        }
        images.push(h);
    }
    let mut distinct = images.clone();
    distinct.sort();
    distinct.dedup();
    let bijective = distinct.len() == images.len() && distinct.len() == primes.len();
    if !bijective {
        return Err(Error::invariant("h is bijective", format!("{} points, {} primes", images.len(), primes.len())));
    }
    let mut tests: Vec<Rep> = (0..eng.n()).map(|i| eng.simple(i).clone()).collect();
    tests.extend(battery.iter().cloned());
    for a in &tests {
        let open = spec.basic_open(a)?;
        let ta = generated_class(eng, a)?;
        let lhs: Vec<TorsionClass> = open.iter().map(|i| images[i]).collect();
        let mut rhs: Vec<TorsionClass> = primes.iter().copied().filter(|p| ta.is_subclass_of(p)).collect();
        let mut lhs_sorted = lhs.clone();
        lhs_sorted.sort();
        rhs.sort();
        if lhs_sorted != rhs {
            return Err(Error::invariant("h([A]) = [T(A)]", format!("module of dims {:?}", a.dims())));
        }
    }
    Ok(GolanReport { images: images.iter().map(|t| t.cogen()).collect(), bijective, opens_checked: tests.len() })
}

/// Returns a point that is neither torsion nor torsionfree, if any.
pub fn stability_witness(eng: &QuiverEngine, t: TorsionClass) -> Result<Option<usize>> {
    for i in 0..eng.n() {
        let e = eng.injective(i);
        if !is_torsion(eng, e, t)? && !is_torsionfree(eng, e, t)? {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

pub fn is_stable(eng: &QuiverEngine, t: TorsionClass) -> Result<bool> {
    Ok(stability_witness(eng, t)?.is_none())
}

/// `T(S_i)` has only the zero class strictly below it, and distinct simples
/// generate distinct classes.
pub fn simple_class_check(eng: &QuiverEngine, lattice: &TorsionLattice, i: usize) -> Result<bool> {
    let t = generated_class(eng, eng.simple(i))?;
    let below = lattice.elements().iter().filter(|s| s.is_subclass_of(&t) && **s != t).count();
    if below != 1 {
        return Ok(false);
    }
    for j in 0..eng.n() {
        if j != i && generated_class(eng, eng.simple(j))? == t {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::injective_spectrum;

    #[test]
    fn a2_lattice_primes_and_witnesses() {
        let eng = QuiverEngine::linear(2, 2).unwrap();
        let lat = TorsionLattice::new(&eng).unwrap();
        assert_eq!(lat.len(), 4);
        let primes = lat.check_primes().unwrap();
        assert_eq!(primes.len(), 2);
        assert!(!lat.is_cap_irreducible(TorsionClass::zero(2)));
        let t1 = TorsionClass::from_points(2, &[1]).unwrap();
        assert_eq!(compact_witness(&eng, t1).unwrap(), *eng.simple(1));
        lat.check_sum_of_primes(&eng).unwrap();
    }

    #[test]
    fn a2_torsion_critical() {
        let eng = QuiverEngine::linear(2, 2).unwrap();
        let p1 = eng.projective(0).unwrap();
        assert!(is_torsion_critical(&eng, &p1).unwrap());
        check_critical_invariants(&eng, &p1).unwrap();
        let s = Rep::direct_sum(&[eng.simple(0), eng.simple(1)]).unwrap();
        assert!(!is_torsion_critical(&eng, &s).unwrap());
        assert_eq!(critical_subobject(&eng, &s).unwrap().total_dim(), 1);
    }

    #[test]
    fn a2_stability_contrast() {
        let eng = QuiverEngine::linear(2, 2).unwrap();
        let t = TorsionClass::from_points(2, &[1]).unwrap();
        assert_eq!(stability_witness(&eng, t).unwrap(), Some(1));
        let spec = injective_spectrum(&eng).unwrap();
        let rep = golan_homeomorphism_check(&eng, &spec, &[eng.regular().clone()]).unwrap();
        assert!(rep.bijective);
    }
}
