use serde::Serialize;

use crate::error::{Error, Result};

/// The prime field GF(p). Elements are canonical representatives `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Field {
    p: u32,
}

impl Field {
    pub const SUPPORTED: [u32; 4] = [2, 3, 5, 7];

    pub fn new(p: u32) -> Result<Self> {
        if Self::SUPPORTED.contains(&p) {
            Ok(Field { p })
        } else {
            Err(Error::UnsupportedField(p))
        }
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce(self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        (a + b) % self.p
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        (a + self.p - b) % self.p
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        (self.p - a) % self.p
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        (a * b) % self.p
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero in GF({})", self.p);
        // Fermat: a^(p-2)
        self.pow(a, self.p - 2)
    }

    pub fn pow(self, a: u32, mut e: u32) -> u32 {
        let mut base = a % self.p;
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn elements(self) -> impl Iterator<Item = u32> {
        0..self.p
    }

    /// Number of vectors in GF(p)^dim, saturating.
    pub fn space_size(self, dim: usize) -> u128 {
        let mut n: u128 = 1;
        for _ in 0..dim {
            n = n.saturating_mul(self.p as u128);
        }
        n
    }

    /// All vectors of GF(p)^dim in lexicographic order (last coordinate fastest).
    pub fn all_vectors(self, dim: usize) -> impl Iterator<Item = Vec<u32>> {
        let total = self.space_size(dim);
        let p = self.p;
        (0..total).map(move |mut idx| {
            let mut v = vec![0u32; dim];
            for slot in v.iter_mut().rev() {
                *slot = (idx % p as u128) as u32;
                idx /= p as u128;
            }
            v
        })
    }
}

impl std::fmt::Display for Field {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GF({})", self.p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_unsupported_moduli() {
        assert!(Field::new(4).is_err());
        assert!(Field::new(11).is_err());
        assert!(Field::new(0).is_err());
    }

    #[test]
    fn inverses() {
        for p in Field::SUPPORTED {
            let f = Field::new(p).unwrap();
            for a in 1..p {
                assert_eq!(f.mul(a, f.inv(a)), 1);
            }
        }
    }

    #[test]
    fn vector_enumeration_is_complete() {
        let f = Field::new(3).unwrap();
        let all: Vec<_> = f.all_vectors(2).collect();
        assert_eq!(all.len(), 9);
        assert_eq!(all[0], vec![0, 0]);
        assert_eq!(all[1], vec![0, 1]);
        assert_eq!(all[8], vec![2, 2]);
    }
}
