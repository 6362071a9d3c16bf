use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pid::{Fraction, Pid, PidTorsionClass, PrimeSet};
use crate::spectrum::PidPoint;

/// A Zariski open of a PID spectrum: the complement of finitely many closed
/// points, or `∅`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PidOpen<E: Ord> {
    Complement(BTreeSet<E>),
    Empty,
}

impl<E: Ord + Clone> PidOpen<E> {
    pub fn whole() -> Self {
        PidOpen::Complement(BTreeSet::new())
    }

    /// `V ⊆ U`.
    pub fn is_subset_of(&self, u: &Self) -> bool {
        match (self, u) {
            (PidOpen::Empty, _) => true,
            (_, PidOpen::Empty) => false,
            (PidOpen::Complement(sv), PidOpen::Complement(su)) => su.is_subset(sv),
        }
    }

    pub fn intersect(&self, o: &Self) -> Self {
        match (self, o) {
            (PidOpen::Complement(a), PidOpen::Complement(b)) => PidOpen::Complement(a.union(b).cloned().collect()),
            _ => PidOpen::Empty,
        }
    }

    pub fn contains(&self, x: &PidPoint<E>) -> bool {
        match (self, x) {
            (PidOpen::Empty, _) => false,
            (PidOpen::Complement(_), PidPoint::Generic) => true,
            (PidOpen::Complement(s), PidPoint::Closed(p)) => !s.contains(p),
        }
    }
}

/// `O(U)` for `U` the complement of `S`: fractions whose reduced denominator
/// has all its prime factors in `S`. The zero ring on `∅`.
#[derive(Clone, Debug)]
pub struct PidSectionRing<R: Pid> {
    pub ring: R,
    pub open: PidOpen<R::Elem>,
}

impl<R: Pid + Clone> PidSectionRing<R> {
    pub fn new(ring: &R, open: PidOpen<R::Elem>) -> Result<Self> {
        if let PidOpen::Complement(s) = &open {
            for p in s {
                let f = ring.factor(p)?;
                if f.len() != 1 || f[0].1 != 1 || f[0].0 != *p {
                    return Err(Error::Precondition(format!("{p} is not a canonical prime")));
                }
            }
        }
        Ok(PidSectionRing { ring: ring.clone(), open })
    }

    pub fn is_zero_ring(&self) -> bool {
        self.open == PidOpen::Empty
    }

    pub fn contains(&self, q: &Fraction<R::Elem>) -> Result<bool> {
        match &self.open {
            PidOpen::Empty => Ok(true),
            PidOpen::Complement(s) => Ok(self.ring.prime_support(&q.den)?.iter().all(|p| s.contains(p))),
        }
    }

    /// The inclusion `O(U) → O(V)` for `V ⊆ U`; every section of `U` is one of `V`.
    pub fn restrict(&self, q: &Fraction<R::Elem>, target: &PidSectionRing<R>) -> Result<Fraction<R::Elem>> {
        if !target.open.is_subset_of(&self.open) {
            return Err(Error::Precondition("restriction needs V ⊆ U".into()));
        }
        if !self.contains(q)? {
            return Err(Error::Precondition(format!("{} is not a section over U", q.label())));
        }
        if !target.contains(q)? {
            return Err(Error::invariant("restriction is inclusion", q.label()));
        }
        Ok(q.clone())
    }

    /// The torsion class whose localization gives `O(U)`: cogenerated by the
    /// points of `U`.
    pub fn torsion_class(&self) -> PidTorsionClass<R::Elem> {
        match &self.open {
            PidOpen::Empty => PidTorsionClass::everything(),
            PidOpen::Complement(s) => PidTorsionClass::new(PrimeSet::Cofinite(s.clone()), true),
        }
    }
}

/// Verdict on a candidate global section.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GlobalSectionVerdict {
    pub candidate: String,
    pub reduced: String,
    pub accepted: bool,
    /// A closed point whose stalk does not contain the candidate.
    pub witness: Option<String>,
}

/// Membership in the stalk `R_(p)` at a closed point.
pub fn in_stalk<R: Pid>(ring: &R, p: &R::Elem, q: &Fraction<R::Elem>) -> bool {
    !ring.divides(p, &q.den)
}

/// A global section is a fraction lying in every stalk `R_(p)`: it is
/// rejected at a prime of its reduced denominator, and the accepted ones must
/// be exactly the elements of `R`.
pub fn global_sections_domain_check<R: Pid + Clone>(
    ring: &R,
    candidates: &[(R::Elem, R::Elem)],
) -> Result<Vec<GlobalSectionVerdict>> {
    let whole = PidSectionRing::new(ring, PidOpen::whole())?;
    let mut out = Vec::with_capacity(candidates.len());
    for (a, d) in candidates {
        let q = Fraction::new(ring, a.clone(), d.clone())?;
        let witness = ring.prime_support(&q.den)?.into_iter().next();
        let accepted = witness.is_none();
        if accepted != whole.contains(&q)? || accepted != q.is_integral(ring) {
            return Err(Error::invariant("Γ(O) = R", format!("candidate {}", q.label())));
        }
        if let Some(p) = &witness {
            if in_stalk(ring, p, &q) {
                return Err(Error::invariant("witness stalk rejects", q.label()));
            }
        }
        out.push(GlobalSectionVerdict {
            candidate: format!("({a})/({d})"),
            reduced: q.label(),
            accepted,
            witness: witness.map(|p| PidPoint::Closed(p).to_string()),
        });
    }
    Ok(out)
}

/// `d | f^n` for some `n`, by stripping common factors with `f`.
pub fn divides_power<R: Pid>(ring: &R, d: &R::Elem, f: &R::Elem) -> bool {
    let mut d = d.clone();
    loop {
        if ring.is_unit(&d) {
            return true;
        }
        let g = ring.gcd(&d, f);
        if ring.is_unit(&g) {
            return false;
        }
        d = ring.exact_div(&d, &g);
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasicOpenComparison {
    pub f: String,
    /// Every generator `1/q`, `q` a prime of `f`, lies in `R[1/f]`.
    pub torsion_in_zariski: bool,
    /// `1/f` lies in the torsion-theoretic localization.
    pub zariski_in_torsion: bool,
    pub battery: usize,
    pub battery_agrees: bool,
}

impl BasicOpenComparison {
    pub fn passed(&self) -> bool {
        self.torsion_in_zariski && self.zariski_in_torsion && self.battery_agrees
    }
}

/// On the basic open `[R/(f)]`, the localization at the class cogenerated by
/// its points equals `R[1/f]`: generators of each side lie in the other, and
/// the two membership tests agree on the given denominators.
pub fn basic_open_comparison<R: Pid + Clone>(ring: &R, f: &R::Elem, dens: &[R::Elem]) -> Result<BasicOpenComparison> {
    if ring.is_zero(f) {
        return Err(Error::Precondition("f must be nonzero".into()));
    }
    let primes: BTreeSet<R::Elem> = ring.prime_support(f)?.into_iter().collect();
    let t = PidTorsionClass::new(PrimeSet::Cofinite(primes.clone()), true);
    let torsion_in_zariski = primes.iter().all(|q| divides_power(ring, q, f));
    let zariski_in_torsion = t.contains_fraction(ring, &Fraction::new(ring, ring.one(), f.clone())?)?;
    let sections = PidSectionRing::new(ring, PidOpen::Complement(primes))?;
    let mut battery_agrees = true;
    for d in dens {
        if ring.is_zero(d) {
            continue;
        }
        let q = Fraction::new(ring, ring.one(), d.clone())?;
        let by_torsion = t.contains_fraction(ring, &q)?;
        battery_agrees &= by_torsion == divides_power(ring, &q.den, f) && by_torsion == sections.contains(&q)?;
    }
    Ok(BasicOpenComparison {
        f: f.to_string(),
        torsion_in_zariski,
        zariski_in_torsion,
        battery: dens.len(),
        battery_agrees,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{Field, Poly};
    use crate::pid::{Integers, PolyRing};

    fn gf2() -> PolyRing {
        PolyRing::new(Field::new(2).unwrap())
    }

    fn p(r: &PolyRing, s: &str) -> Poly {
        r.parse(s).unwrap()
    }

    #[test]
    fn global_sections_of_gf2x() {
        let r = gf2();
        let v = global_sections_domain_check(
            &r,
            &[(r.one(), p(&r, "x")), (r.one(), p(&r, "x^2+x")), (p(&r, "x^2+1"), r.one()), (p(&r, "x^2+x"), p(&r, "x+1"))],
        )
        .unwrap();
        assert!(!v[0].accepted);
        assert_eq!(v[0].witness.as_deref(), Some("E(R/(x))"));
        assert!(!v[1].accepted);
        assert!(v[2].accepted);
        assert!(v[3].accepted);
        assert_eq!(v[3].reduced, "(x)/(1)");
    }

    #[test]
    fn complement_of_x() {
        let r = gf2();
        let u = PidSectionRing::new(&r, PidOpen::Complement(BTreeSet::from([p(&r, "x")]))).unwrap();
        let frac = |a: &str, d: &str| Fraction::new(&r, p(&r, a), p(&r, d)).unwrap();
        assert!(u.contains(&frac("1", "x^3")).unwrap());
        assert!(!u.contains(&frac("1", "x+1")).unwrap());
        let v = PidSectionRing::new(&r, PidOpen::Empty).unwrap();
        assert!(v.is_zero_ring());
        u.restrict(&frac("x+1", "x^2"), &v).unwrap();
    }

    #[test]
    fn basic_opens_agree() {
        let r = gf2();
        let dens: Vec<Poly> = (0..=3).flat_map(|d| Poly::monic_of_degree(r.field(), d)).collect();
        for f in ["x", "x^2+x", "x^3+x+1", "x^2"] {
            assert!(basic_open_comparison(&r, &p(&r, f), &dens).unwrap().passed());
        }
        let z = Integers::default();
        let dens: Vec<i128> = (1..=60).collect();
        assert!(basic_open_comparison(&z, &12, &dens).unwrap().passed());
    }
}
