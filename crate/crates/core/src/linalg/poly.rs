//! Univariate polynomials over GF(p), stored lowest degree first.

use std::cmp::Ordering;
use std::fmt;

use super::field::Field;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    coeffs: Vec<u32>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self)
    }
}

impl Poly {
    pub fn zero(field: Field) -> Self {
        Poly { field, coeffs: Vec::new() }
    }

    pub fn one(field: Field) -> Self {
        Self::constant(field, 1)
    }

    pub fn x(field: Field) -> Self {
        Poly { field, coeffs: vec![0, 1] }
    }

    pub fn constant(field: Field, c: u32) -> Self {
        Self::from_coeffs(field, vec![c])
    }

    pub fn from_coeffs(field: Field, coeffs: Vec<u32>) -> Self {
        let mut p = Poly { field, coeffs: coeffs.into_iter().map(|c| c % field.p()).collect() };
        p.trim();
        p
    }

    pub fn from_signed(field: Field, coeffs: &[i64]) -> Self {
        Self::from_coeffs(field, coeffs.iter().map(|&c| field.reduce(c)).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(self.field.inv(self.leading()))
    }

    pub fn scale(&self, c: u32) -> Poly {
        Poly::from_coeffs(self.field, self.coeffs.iter().map(|&a| self.field.mul(a, c)).collect())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| f.add(*self.coeffs.get(i).unwrap_or(&0), *other.coeffs.get(i).unwrap_or(&0)))
            .collect();
        Poly::from_coeffs(f, c)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(self.field.neg(1)))
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field);
        }
        let f = self.field;
        let mut c = vec![0u32; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                c[i + j] = f.add(c[i + j], f.mul(a, b));
            }
        }
        Poly::from_coeffs(f, c)
    }

    pub fn pow(&self, e: u32) -> Poly {
        (0..e).fold(Poly::one(self.field), |acc, _| acc.mul(self))
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let f = self.field;
        let dd = d.coeffs.len() - 1;
        let inv = f.inv(d.leading());
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Poly::zero(f), self.clone());
        }
        let mut q = vec![0u32; r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = f.mul(r[i + dd], inv);
            q[i] = c;
            if c == 0 {
                continue;
            }
            for (j, &dj) in d.coeffs.iter().enumerate() {
                r[i + j] = f.sub(r[i + j], f.mul(c, dj));
            }
        }
        (Poly::from_coeffs(f, q), Poly::from_coeffs(f, r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.divrem(d).1
    }

    pub fn divides(&self, other: &Poly) -> bool {
        !self.is_zero() && other.rem(self).is_zero()
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, x: u32) -> u32 {
        let f = self.field;
        self.coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// All monic polynomials of the given degree, in canonical order.
    pub fn monic_of_degree(field: Field, degree: usize) -> impl Iterator<Item = Poly> {
        let p = field.p() as u128;
        let total = field.space_size(degree);
        (0..total).map(move |mut idx| {
            let mut c = vec![0u32; degree + 1];
            c[degree] = 1;
            for i in (0..degree).rev() {
                c[i] = (idx % p) as u32;
                idx /= p;
            }
            Poly { field, coeffs: c }
        })
    }

    pub fn parse(field: Field, text: &str) -> Result<Poly> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let bad = |why: &str| Error::Parse(format!("bad polynomial `{text}`: {why}"));
        let mut terms: Vec<(i64, String)> = Vec::new();
        let mut sign = 1i64;
        let mut cur = String::new();
        for (i, ch) in s.chars().enumerate() {
            if (ch == '+' || ch == '-') && !(i > 0 && cur.ends_with('^')) {
                if !cur.is_empty() {
                    terms.push((sign, std::mem::take(&mut cur)));
                } else if i > 0 {
                    return Err(bad("dangling sign"));
                }
                sign = if ch == '-' { -1 } else { 1 };
            } else {
                cur.push(ch);
            }
        }
        if cur.is_empty() {
            return Err(bad("trailing sign"));
        }
        terms.push((sign, cur));

        let mut coeffs: Vec<i64> = Vec::new();
        for (sign, term) in terms {
            let (coef_part, exp) = match term.find('x') {
                None => (term.as_str(), 0usize),
                Some(pos) => {
                    let rest = &term[pos + 1..];
                    let exp = if rest.is_empty() {
                        1
                    } else if let Some(e) = rest.strip_prefix('^') {
                        e.parse::<usize>().map_err(|_| bad("bad exponent"))?
                    } else {
                        return Err(bad("unexpected text after x"));
                    };
                    let cp = term[..pos].strip_suffix('*').unwrap_or(&term[..pos]);
                    (cp, exp)
                }
            };
            let coef: i64 = if coef_part.is_empty() {
                if exp == 0 {
                    return Err(bad("empty term"));
                }
                1
            } else {
                coef_part.parse::<i64>().map_err(|_| bad("bad coefficient"))?
            };
            if exp > 4096 {
                return Err(bad("exponent too large"));
            }
            if coeffs.len() <= exp {
                coeffs.resize(exp + 1, 0);
            }
            coeffs[exp] += sign * coef;
        }
        Ok(Poly::from_signed(field, &coeffs))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Degree first, then coefficients lexicographically from the constant term.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs.len().cmp(&other.coeffs.len()).then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (e, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, c) => write!(f, "{c}x")?,
                (e, 1) => write!(f, "x^{e}")?,
                (e, c) => write!(f, "{c}x^{e}")?,
            }
        }
        Ok(())
    }
}

/// Factorization `unit * prod(factor^mult)` with monic irreducible factors in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: u32,
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    pub fn expand(&self, field: Field) -> Poly {
        self.factors
            .iter()
            .fold(Poly::constant(field, self.unit), |acc, (g, m)| acc.mul(&g.pow(*m)))
    }
}

/// Factors `f` into monic irreducibles by trial division with monic polynomials
/// of increasing degree, up to half the degree of the remaining cofactor.
pub fn poly_factor(f: &Poly) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let field = f.field();
    let unit = f.leading();
    let mut rest = f.monic();
    let mut factors = Vec::new();
    let mut d = 1;
    while 2 * d <= rest.degree().unwrap_or(0) {
        for g in Poly::monic_of_degree(field, d) {
            let mut mult = 0;
            loop {
                let (q, r) = rest.divrem(&g);
                if !r.is_zero() {
                    break;
                }
                rest = q;
                mult += 1;
            }
            if mult > 0 {
                factors.push((g, mult));
            }
            if 2 * d > rest.degree().unwrap_or(0) {
                break;
            }
        }
        d += 1;
    }
    if rest.degree().unwrap_or(0) > 0 {
        factors.push((rest, 1));
    }
    factors.sort();
    Ok(Factorization { unit, factors })
}

pub fn is_irreducible(f: &Poly) -> bool {
    match poly_factor(f) {
        Ok(fac) => fac.factors.len() == 1 && fac.factors[0].1 == 1,
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32) -> Field {
        Field::new(p).unwrap()
    }

    fn poly(p: u32, s: &str) -> Poly {
        Poly::parse(gf(p), s).unwrap()
    }

    #[test]
    fn factor_examples() {
        let fac = poly_factor(&poly(2, "x^2+x")).unwrap();
        assert_eq!(fac.factors, vec![(poly(2, "x"), 1), (poly(2, "x+1"), 1)]);

        let fac = poly_factor(&poly(2, "x")).unwrap();
        assert_eq!(fac.factors, vec![(poly(2, "x"), 1)]);

        let fac = poly_factor(&poly(2, "x^2+1")).unwrap();
        assert_eq!(fac.factors, vec![(poly(2, "x+1"), 2)]);
    }

    #[test]
    fn zero_is_rejected() {
        assert_eq!(poly_factor(&Poly::zero(gf(3))), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn unit_is_kept() {
        let f = poly(5, "3x^2+3");
        let fac = poly_factor(&f).unwrap();
        assert_eq!(fac.unit, 3);
        assert_eq!(fac.expand(gf(5)), f);
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(poly(2, "x^2+x+1").to_string(), "x^2+x+1");
        assert_eq!(poly(3, "x^2 - 1").to_string(), "x^2+2");
        assert_eq!(poly(3, "4x^3+x").to_string(), "x^3+x");
        assert_eq!(poly(5, "2*x^2+3").to_string(), "2x^2+3");
        assert_eq!(poly(2, "x+x").to_string(), "0");
        assert_eq!(poly(7, "-x").to_string(), "6x");
        assert!(Poly::parse(gf(2), "x^").is_err());
        assert!(Poly::parse(gf(2), "y+1").is_err());
        assert!(Poly::parse(gf(2), "x++1").is_err());
        assert!(Poly::parse(gf(2), "").is_err());
    }

    #[test]
    fn gcd_cancels() {
        let a = poly(2, "x^2+x");
        let b = poly(2, "x+1");
        assert_eq!(a.gcd(&b), b);
        let (q, r) = a.divrem(&b);
        assert_eq!(q, poly(2, "x"));
        assert!(r.is_zero());
    }
}
