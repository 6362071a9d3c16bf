use std::collections::BTreeSet;

use serde::Serialize;

use super::{Fraction, Pid, PidModule, PolyRing};
use crate::error::{Error, Result};
use crate::linalg::{Mat, Poly, Subspace};
use crate::spectrum::PidPoint;

/// A set of primes that is finite or cofinite.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", content = "primes", rename_all = "snake_case")]
pub enum PrimeSet<E: Ord> {
    Finite(BTreeSet<E>),
    /// Every prime except the listed ones.
    Cofinite(BTreeSet<E>),
}

impl<E: Ord + Clone> PrimeSet<E> {
    pub fn contains(&self, p: &E) -> bool {
        match self {
            PrimeSet::Finite(s) => s.contains(p),
            PrimeSet::Cofinite(s) => !s.contains(p),
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, PrimeSet::Finite(s) if s.is_empty())
    }
}

/// A hereditary torsion class over a PID, stored by the closed points of its
/// cogenerating set plus a flag for the generic point.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PidTorsionClass<E: Ord> {
    cogen: PrimeSet<E>,
    generic: bool,
}

impl<E: Ord + Clone + std::fmt::Display> PidTorsionClass<E> {
    /// Canonicalized to a Ziegler-closed cogenerating set: any nonempty set of
    /// closed points also cogenerates `E(R)`.
    pub fn new(cogen: PrimeSet<E>, generic: bool) -> Self {
        let generic = generic || !cogen.is_empty();
        PidTorsionClass { cogen, generic }
    }

    pub fn everything() -> Self {
        PidTorsionClass { cogen: PrimeSet::Finite(BTreeSet::new()), generic: false }
    }

    /// The class of all torsion modules, cogenerated by `E(R)` alone.
    pub fn torsion_modules() -> Self {
        PidTorsionClass { cogen: PrimeSet::Finite(BTreeSet::new()), generic: true }
    }

    /// The zero class, cogenerated by every point.
    pub fn zero() -> Self {
        PidTorsionClass { cogen: PrimeSet::Cofinite(BTreeSet::new()), generic: true }
    }

    pub fn cogen(&self) -> &PrimeSet<E> {
        &self.cogen
    }
    pub fn generic(&self) -> bool {
        self.generic
    }

    pub fn is_torsion<R: Pid<Elem = E>>(&self, ring: &R, m: &PidModule<E>) -> Result<bool> {
        if !self.generic {
            return Ok(true);
        }
        if m.free_rank > 0 {
            return Ok(false);
        }
        for d in &m.torsion {
            if ring.prime_support(d)?.iter().any(|p| self.cogen.contains(p)) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `d` lies in the multiplicative set `{d : R/(d) ∈ T}`.
    pub fn in_multiplicative_set<R: Pid<Elem = E>>(&self, ring: &R, d: &E) -> Result<bool> {
        if ring.is_zero(d) {
            return Ok(!self.generic);
        }
        if ring.is_unit(d) {
            return Ok(true);
        }
        self.is_torsion(ring, &PidModule::cyclic(ring, d.clone())?)
    }

    /// Whether `q` lies in the localization `R_T`: the reduced denominator is
    /// in the multiplicative set.
    pub fn contains_fraction<R: Pid<Elem = E>>(&self, ring: &R, q: &Fraction<E>) -> Result<bool> {
        if !self.generic {
            return Ok(true);
        }
        self.in_multiplicative_set(ring, &q.den)
    }

    /// Whether the indecomposable injective at `x` is torsion. A closed point
    /// is the union of the layers `R/(p^k)`, the generic point the union of
    /// copies of `R`.
    pub fn point_is_torsion<R: Pid<Elem = E>>(&self, ring: &R, x: &PidPoint<E>, layers: u32) -> Result<bool> {
        match x {
            PidPoint::Closed(p) => {
                for k in 1..=layers {
                    if !self.is_torsion(ring, &PidModule::cyclic(ring, ring.pow(p, k))?)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            PidPoint::Generic => self.is_torsion(ring, &PidModule::free(1)),
        }
    }

    /// Whether the point is torsionfree: every nonzero submodule contains the
    /// socle `R/(p)` (closed) or a copy of `R` (generic), so it suffices that
    /// this one module is not torsion.
    pub fn point_is_torsionfree<R: Pid<Elem = E>>(&self, ring: &R, x: &PidPoint<E>) -> Result<bool> {
        let m = match x {
            PidPoint::Closed(p) => PidModule::cyclic(ring, p.clone())?,
            PidPoint::Generic => PidModule::free(1),
        };
        Ok(!self.is_torsion(ring, &m)?)
    }

    /// Every listed point is torsion or torsionfree; returns the first point
    /// that is neither.
    pub fn stability_witness<R: Pid<Elem = E>>(&self, ring: &R, points: &[PidPoint<E>]) -> Result<Option<PidPoint<E>>> {
        for x in points {
            if !self.point_is_torsion(ring, x, 3)? && !self.point_is_torsionfree(ring, x)? {
                return Ok(Some(x.clone()));
            }
        }
        Ok(None)
    }
}

/// The cyclic module `R/(d)` over `GF(p)[x]` split into its `T`-torsion part
/// and the part on which the multiplicative set acts invertibly.
#[derive(Clone, Debug)]
pub struct LocalizedCyclic {
    pub modulus: Poly,
    /// Multiplication by `s^N` for the `T`-torsion primes `s` dividing the modulus.
    pub nilpotent_power: Mat,
    pub torsion: Subspace,
    pub local: Subspace,
}

fn mult_matrix(modulus: &Poly, by: &Poly) -> Mat {
    let f = modulus.field();
    let n = modulus.degree().unwrap_or(0);
    let cols: Vec<Vec<u32>> = (0..n)
        .map(|i| {
            let r = Poly::x(f).pow(i as u32).mul(by).rem(modulus);
            let mut v = r.coeffs().to_vec();
            v.resize(n, 0);
            v
        })
        .collect();
    Mat::from_columns(f, n, &cols)
}

/// The map `R/(a) → R/(b)` induced by multiplication by `c` (requires `b | a c`).
pub fn cyclic_map(a: &Poly, b: &Poly, c: &Poly) -> Result<Mat> {
    if !b.divides(&a.mul(c)) {
        return Err(Error::Precondition(format!("multiplication by {c} is not defined R/({a}) → R/({b})")));
    }
    let f = a.field();
    let (n, m) = (a.degree().unwrap_or(0), b.degree().unwrap_or(0));
    let cols: Vec<Vec<u32>> = (0..n)
        .map(|i| {
            let r = Poly::x(f).pow(i as u32).mul(c).rem(b);
            let mut v = r.coeffs().to_vec();
            v.resize(m, 0);
            v
        })
        .collect();
    Ok(Mat::from_columns(f, m, &cols))
}

fn torsion_part(ring: &PolyRing, t: &PidTorsionClass<Poly>, d: &Poly) -> Result<Poly> {
    let mut s = ring.one();
    for p in ring.prime_support(d)? {
        if t.in_multiplicative_set(ring, &p)? {
            s = s.mul(&p);
        }
    }
    Ok(s)
}

/// Splits `R/(d)` as a vector space by the Fitting decomposition of
/// multiplication by the product `s` of primes of `d` lying in the
/// multiplicative set: `ker s^N` is the torsion part, `im s^N` the localization.
pub fn localize_cyclic(ring: &PolyRing, d: &Poly, s: &Poly) -> Result<LocalizedCyclic> {
    let n = d.degree().ok_or(Error::ZeroPolynomial)?;
    let m = mult_matrix(d, &s.pow(n.max(1) as u32));
    let field = ring.field();
    let torsion = Subspace::span(field, n, m.kernel_basis());
    let local = Subspace::span(field, n, m.columns());
    Ok(LocalizedCyclic { modulus: d.clone(), nilpotent_power: m, torsion, local })
}

/// Checks that localizing `0 → R/(a) → R/(ab) → R/(b) → 0` at `T` stays
/// exact, that the kernel of the unit is the torsion submodule, and that the
/// local part has the dimension predicted by factorization.
pub fn fraction_exactness_check(ring: &PolyRing, t: &PidTorsionClass<Poly>, a: &Poly, b: &Poly) -> Result<bool> {
    let ab = a.mul(b);
    let s = torsion_part(ring, t, &ab)?;
    let la = localize_cyclic(ring, a, &s)?;
    let lab = localize_cyclic(ring, &ab, &s)?;
    let lb = localize_cyclic(ring, b, &s)?;
    let f = cyclic_map(a, &ab, b)?;
    let g = cyclic_map(&ab, b, &ring.one())?;
    let fa = la.local.image_under(&f);
    if fa.dim() != la.local.dim() || !fa.is_subspace_of(&lab.local) {
        return Ok(false);
    }
    let gab = lab.local.image_under(&g);
    if gab != lb.local {
        return Ok(false);
    }
    let ker_g = lab.local.intersect(&Subspace::span(ring.field(), ab.degree().unwrap_or(0), g.kernel_basis()));
    if ker_g != fa {
        return Ok(false);
    }
    for (l, d) in [(&la, a), (&lab, &ab), (&lb, b)] {
        let mut expected = 0;
        for (p, e) in ring.factor(d)? {
            if !t.in_multiplicative_set(ring, &p)? {
                expected += p.degree().unwrap_or(0) * e as usize;
            }
        }
        if l.local.dim() != expected {
            return Ok(false);
        }
        let tors = torsion_vectors(ring, t, d)?;
        if l.torsion != tors {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The `T`-torsion submodule of `R/(d)`: the elements whose annihilator lies
/// in the multiplicative set, i.e. multiples of the `T`-free part of `d`.
fn torsion_vectors(ring: &PolyRing, t: &PidTorsionClass<Poly>, d: &Poly) -> Result<Subspace> {
    let mut free_part = ring.one();
    for (p, e) in ring.factor(d)? {
        if !t.in_multiplicative_set(ring, &p)? {
            free_part = free_part.mul(&p.pow(e));
        }
    }
    let n = d.degree().unwrap_or(0);
    let m = mult_matrix(d, &free_part);
    Ok(Subspace::span(ring.field(), n, m.columns()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Field;
    use crate::pid::Integers;

    fn gf2() -> PolyRing {
        PolyRing::new(Field::new(2).unwrap())
    }

    #[test]
    fn every_pid_class_is_stable() {
        let r = gf2();
        let x = r.parse("x").unwrap();
        let pts = vec![PidPoint::Closed(x.clone()), PidPoint::Closed(r.parse("x+1").unwrap()), PidPoint::Generic];
        let classes = vec![
            PidTorsionClass::everything(),
            PidTorsionClass::torsion_modules(),
            PidTorsionClass::zero(),
            PidTorsionClass::new(PrimeSet::Finite([x.clone()].into()), false),
            PidTorsionClass::new(PrimeSet::Cofinite([x].into()), true),
        ];
        for t in classes {
            assert_eq!(t.stability_witness(&r, &pts).unwrap(), None);
        }
    }

    #[test]
    fn integer_multiplicative_sets() {
        let z = Integers::default();
        let t = PidTorsionClass::new(PrimeSet::Cofinite([2].into()), true);
        assert!(t.in_multiplicative_set(&z, &8).unwrap());
        assert!(!t.in_multiplicative_set(&z, &6).unwrap());
        assert!(t.contains_fraction(&z, &Fraction::new(&z, 3, 4).unwrap()).unwrap());
    }

    #[test]
    fn localized_sequences_stay_exact() {
        let r = gf2();
        let t = PidTorsionClass::new(PrimeSet::Finite([r.parse("x+1").unwrap()].into()), true);
        let a = r.parse("x^2+x").unwrap();
        let b = r.parse("x^2+1").unwrap();
        assert!(fraction_exactness_check(&r, &t, &a, &b).unwrap());
    }
}
