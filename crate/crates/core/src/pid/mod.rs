//! The principal ideal domains GF(p)[x] and ℤ, finitely generated modules
//! over them, and reduced fractions.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{poly_factor, Field, Poly};

mod torsion;

pub use torsion::{cyclic_map, fraction_exactness_check, localize_cyclic, LocalizedCyclic, PidTorsionClass, PrimeSet};

/// A Euclidean domain with decidable factorization.
pub trait Pid: Clone + Debug + Send + Sync {
    type Elem: Clone + Eq + Ord + Hash + Debug + Display + Send + Sync;

    fn name(&self) -> String;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Euclidean division; `b` nonzero.
    fn divrem(&self, a: &Self::Elem, b: &Self::Elem) -> (Self::Elem, Self::Elem);
    /// `a = u · c` with `u` a unit and `c` the canonical associate (monic, or
    /// nonnegative). Returns `(u, c)`.
    fn normalize(&self, a: &Self::Elem) -> (Self::Elem, Self::Elem);
    /// Canonical prime factors with multiplicities, sorted; `a` nonzero.
    fn factor(&self, a: &Self::Elem) -> Result<Vec<(Self::Elem, u32)>>;
    fn parse(&self, text: &str) -> Result<Self::Elem>;
    /// A size used to bound searches: degree, or absolute value.
    fn size(&self, a: &Self::Elem) -> u64;
    /// Canonical primes of size at most `bound`, in order.
    fn primes_up_to(&self, bound: u64) -> Vec<Self::Elem>;

    fn is_unit(&self, a: &Self::Elem) -> bool {
        !self.is_zero(a) && self.normalize(a).1 == self.one()
    }

    fn divides(&self, d: &Self::Elem, a: &Self::Elem) -> bool {
        if self.is_zero(d) {
            return self.is_zero(a);
        }
        self.is_zero(&self.divrem(a, d).1)
    }

    /// Canonical gcd.
    fn gcd(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !self.is_zero(&y) {
            let r = self.divrem(&x, &y).1;
            x = y;
            y = r;
        }
        if self.is_zero(&x) {
            x
        } else {
            self.normalize(&x).1
        }
    }

    fn pow(&self, a: &Self::Elem, e: u32) -> Self::Elem {
        (0..e).fold(self.one(), |acc, _| self.mul(&acc, a))
    }

    fn exact_div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let (q, r) = self.divrem(a, b);
        debug_assert!(self.is_zero(&r));
        q
    }

    /// Canonical primes dividing `a`.
    fn prime_support(&self, a: &Self::Elem) -> Result<Vec<Self::Elem>> {
        Ok(self.factor(a)?.into_iter().map(|(p, _)| p).collect())
    }
}

/// GF(p)[x].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PolyRing {
    field: Field,
}

impl PolyRing {
    pub fn new(field: Field) -> Self {
        PolyRing { field }
    }
    pub fn field(&self) -> Field {
        self.field
    }
}

impl Pid for PolyRing {
    type Elem = Poly;

    fn name(&self) -> String {
        format!("GF({})[x]", self.field.p())
    }
    fn zero(&self) -> Poly {
        Poly::zero(self.field)
    }
    fn one(&self) -> Poly {
        Poly::one(self.field)
    }
    fn is_zero(&self, a: &Poly) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        a.add(b)
    }
    fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        a.sub(b)
    }
    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        a.mul(b)
    }
    fn divrem(&self, a: &Poly, b: &Poly) -> (Poly, Poly) {
        a.divrem(b)
    }
    fn normalize(&self, a: &Poly) -> (Poly, Poly) {
        if a.is_zero() {
            return (self.one(), a.clone());
        }
        (Poly::constant(self.field, a.leading()), a.monic())
    }
    fn factor(&self, a: &Poly) -> Result<Vec<(Poly, u32)>> {
        Ok(poly_factor(a)?.factors)
    }
    fn parse(&self, text: &str) -> Result<Poly> {
        Poly::parse(self.field, text)
    }
    fn size(&self, a: &Poly) -> u64 {
        a.degree().unwrap_or(0) as u64
    }
    fn primes_up_to(&self, bound: u64) -> Vec<Poly> {
        (1..=bound as usize)
            .flat_map(|d| Poly::monic_of_degree(self.field, d))
            .filter(crate::linalg::is_irreducible)
            .collect()
    }
}

/// ℤ, factored by trial division up to a bound; larger cofactors that cannot
/// be certified prime are refused.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Integers {
    trial_bound: u64,
}

impl Integers {
    pub const DEFAULT_TRIAL_BOUND: u64 = 1 << 20;

    pub fn new(trial_bound: u64) -> Self {
        Integers { trial_bound }
    }
}

impl Default for Integers {
    fn default() -> Self {
        Integers::new(Self::DEFAULT_TRIAL_BOUND)
    }
}

impl Pid for Integers {
    type Elem = i128;

    fn name(&self) -> String {
        "Z".into()
    }
    fn zero(&self) -> i128 {
        0
    }
    fn one(&self) -> i128 {
        1
    }
    fn is_zero(&self, a: &i128) -> bool {
        *a == 0
    }
    fn add(&self, a: &i128, b: &i128) -> i128 {
        a.checked_add(*b).expect("integer overflow")
    }
    fn sub(&self, a: &i128, b: &i128) -> i128 {
        a.checked_sub(*b).expect("integer overflow")
    }
    fn mul(&self, a: &i128, b: &i128) -> i128 {
        a.checked_mul(*b).expect("integer overflow")
    }
    fn divrem(&self, a: &i128, b: &i128) -> (i128, i128) {
        (a.div_euclid(*b), a.rem_euclid(*b))
    }
    fn normalize(&self, a: &i128) -> (i128, i128) {
        if *a < 0 {
            (-1, -a)
        } else {
            (1, *a)
        }
    }
    fn factor(&self, a: &i128) -> Result<Vec<(i128, u32)>> {
        if *a == 0 {
            return Err(Error::Precondition("cannot factor 0".into()));
        }
        let mut n = a.unsigned_abs();
        let mut out = Vec::new();
        let mut d: u128 = 2;
        while d * d <= n {
            if d as u64 > self.trial_bound {
                return Err(Error::FactorBound { value: a.to_string(), bound: self.trial_bound });
            }
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            if e > 0 {
                out.push((d as i128, e));
            }
            d += 1;
        }
        if n > 1 {
            out.push((n as i128, 1));
        }
        Ok(out)
    }
    fn parse(&self, text: &str) -> Result<i128> {
        text.trim().parse().map_err(|_| Error::Parse(format!("not an integer: {text:?}")))
    }
    fn size(&self, a: &i128) -> u64 {
        a.unsigned_abs().min(u64::MAX as u128) as u64
    }
    fn primes_up_to(&self, bound: u64) -> Vec<i128> {
        (2..=bound as i128).filter(|&n| (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)).collect()
    }
}

/// A finitely generated module `R^r ⊕ ⊕ R/(d_i)` with nonzero nonunit `d_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PidModule<E> {
    pub free_rank: usize,
    pub torsion: Vec<E>,
}

impl<E: Clone + std::fmt::Display> PidModule<E> {
    pub fn new<R: Pid<Elem = E>>(ring: &R, free_rank: usize, torsion: Vec<E>) -> Result<Self> {
        for d in &torsion {
            if ring.is_zero(d) || ring.is_unit(d) {
                return Err(Error::Precondition(format!("invariant factor {d} must be a nonzero nonunit")));
            }
        }
        Ok(PidModule { free_rank, torsion: torsion.iter().map(|d| ring.normalize(d).1).collect() })
    }

    pub fn cyclic<R: Pid<Elem = E>>(ring: &R, d: E) -> Result<Self> {
        PidModule::new(ring, 0, vec![d])
    }

    pub fn free(rank: usize) -> Self {
        PidModule { free_rank: rank, torsion: Vec::new() }
    }

    pub fn is_torsion(&self) -> bool {
        self.free_rank == 0
    }
}

/// A reduced fraction `num / den` with canonical denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fraction<E> {
    pub num: E,
    pub den: E,
}

impl<E: Clone + Eq + Display> Fraction<E> {
    pub fn new<R: Pid<Elem = E>>(ring: &R, num: E, den: E) -> Result<Self> {
        if ring.is_zero(&den) {
            return Err(Error::Precondition("zero denominator".into()));
        }
        let g = ring.gcd(&num, &den);
        let (mut n, d) = if ring.is_zero(&num) {
            (ring.zero(), ring.one())
        } else {
            (ring.exact_div(&num, &g), ring.exact_div(&den, &g))
        };
        let (u, d) = ring.normalize(&d);
        // n/(u d) = (n u⁻¹)/d; u⁻¹ computed as one / u
        let uinv = ring.exact_div(&ring.one(), &u);
        n = ring.mul(&n, &uinv);
        Ok(Fraction { num: n, den: d })
    }

    pub fn from_elem<R: Pid<Elem = E>>(ring: &R, a: E) -> Self {
        Fraction { num: a, den: ring.one() }
    }

    pub fn is_integral<R: Pid<Elem = E>>(&self, ring: &R) -> bool {
        self.den == ring.one()
    }

    pub fn add<R: Pid<Elem = E>>(&self, ring: &R, o: &Self) -> Result<Self> {
        let num = ring.add(&ring.mul(&self.num, &o.den), &ring.mul(&o.num, &self.den));
        Fraction::new(ring, num, ring.mul(&self.den, &o.den))
    }

    pub fn mul<R: Pid<Elem = E>>(&self, ring: &R, o: &Self) -> Result<Self> {
        Fraction::new(ring, ring.mul(&self.num, &o.num), ring.mul(&self.den, &o.den))
    }

    pub fn label(&self) -> String {
        format!("({})/({})", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_factorization_and_bound() {
        let z = Integers::default();
        assert_eq!(z.factor(&360).unwrap(), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(z.factor(&-7).unwrap(), vec![(7, 1)]);
        let tiny = Integers::new(10);
        assert!(matches!(tiny.factor(&(101 * 103)), Err(Error::FactorBound { .. })));
        assert_eq!(tiny.factor(&97).unwrap(), vec![(97, 1)]);
        assert_eq!(z.primes_up_to(12), vec![2, 3, 5, 7, 11]);
    }

    #[test]
    fn fractions_reduce() {
        let r = PolyRing::new(Field::new(2).unwrap());
        let num = r.parse("x^2+x").unwrap();
        let den = r.parse("x+1").unwrap();
        let q = Fraction::new(&r, num, den).unwrap();
        assert!(q.is_integral(&r));
        assert_eq!(q.num, r.parse("x").unwrap());
        let z = Integers::default();
        let h = Fraction::new(&z, 6, -4).unwrap();
        assert_eq!((h.num, h.den), (-3, 2));
    }

    #[test]
    fn module_validation() {
        let z = Integers::default();
        assert!(PidModule::new(&z, 0, vec![1]).is_err());
        assert_eq!(PidModule::new(&z, 1, vec![-4]).unwrap().torsion, vec![4]);
    }
}
