//! Arithmetic in the prime field F_p.
//!
//! Scalars are plain `u32` residues in `0..p`; every operation goes through a
//! [`PrimeField`] value carrying the modulus.

use crate::error::{Error, Result, Rule};

/// A residue modulo the field characteristic, always kept in `0..p`.
pub type Scalar = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl PrimeField {
    /// Checks that `p` is a prime that fits the 32-bit residue representation.
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) || p > u32::MAX as u64 {
            return Err(Error::validation(None, Rule::PNotPrime, format!("p = {p} is not prime")));
        }
        Ok(PrimeField { p: p as u32 })
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    /// Maps any signed integer to its residue.
    #[inline]
    pub fn from_i64(self, v: i64) -> Scalar {
        v.rem_euclid(self.p as i64) as Scalar
    }

    #[inline]
    pub fn add(self, a: Scalar, b: Scalar) -> Scalar {
        ((a as u64 + b as u64) % self.p as u64) as Scalar
    }

    #[inline]
    pub fn sub(self, a: Scalar, b: Scalar) -> Scalar {
        ((a as u64 + self.p as u64 - b as u64) % self.p as u64) as Scalar
    }

    #[inline]
    pub fn neg(self, a: Scalar) -> Scalar {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: Scalar, b: Scalar) -> Scalar {
        ((a as u64 * b as u64) % self.p as u64) as Scalar
    }

    pub fn pow(self, mut base: Scalar, mut exp: u64) -> Scalar {
        let mut acc = 1 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via Fermat. Panics on zero.
    pub fn inv(self, a: Scalar) -> Scalar {
        assert!(a % self.p != 0, "inverse of zero in F_{}", self.p);
        self.pow(a, self.p as u64 - 2)
    }

    /// Representative in `-(p-1)/2 ..= (p-1)/2`.
    pub fn balanced(self, a: Scalar) -> i64 {
        let a = a as i64;
        let p = self.p as i64;
        if a > p / 2 {
            a - p
        } else {
            a
        }
    }
}
