//! Degree-2 elements of the symmetric algebra on the differential basis.
//!
//! A basis differential `ω_L = f_L df_0` is identified with its exponent tuple
//! `L ∈ A`, so a degree-2 monomial is an unordered pair of tuples.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::field::{PrimeField, Scalar};
use crate::lattice::ExpTuple;
use crate::order::colex;

/// `ω_A ω_B` with the factors stored colex-ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadMonomial {
    lo: ExpTuple,
    hi: ExpTuple,
}

impl QuadMonomial {
    pub fn new(a: ExpTuple, b: ExpTuple) -> Self {
        if a <= b {
            QuadMonomial { lo: a, hi: b }
        } else {
            QuadMonomial { lo: b, hi: a }
        }
    }

    pub fn lo(&self) -> &ExpTuple {
        &self.lo
    }

    pub fn hi(&self) -> &ExpTuple {
        &self.hi
    }

    pub fn sum(&self) -> ExpTuple {
        &self.lo + &self.hi
    }
}

/// Sum tuple in colex order first, then the smaller factor in colex order.
/// The second key is the tie-break that designates initial terms of
/// binomials whose monomials share a sum.
impl Ord for QuadMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        colex(self.sum().coords(), other.sum().coords()).then_with(|| self.lo.cmp(&other.lo))
    }
}

impl PartialOrd for QuadMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for QuadMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo == self.hi {
            write!(f, "ω{}²", self.lo)
        } else {
            write!(f, "ω{}ω{}", self.lo, self.hi)
        }
    }
}

/// A finite linear combination of degree-2 monomials with nonzero
/// coefficients in F_p. Keys iterate in ascending term order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QuadForm {
    terms: BTreeMap<QuadMonomial, Scalar>,
}

impl QuadForm {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Builds a form, merging repeated monomials and dropping zeros.
    pub fn from_terms(field: PrimeField, terms: impl IntoIterator<Item = (QuadMonomial, Scalar)>) -> Self {
        let mut q = Self::zero();
        for (m, c) in terms {
            q.add_term(field, m, c);
        }
        q
    }

    pub fn add_term(&mut self, field: PrimeField, m: QuadMonomial, c: Scalar) {
        let c = c % field.p();
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = field.add(*o.get(), c);
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &QuadMonomial) -> Scalar {
        self.terms.get(m).copied().unwrap_or(0)
    }

    /// Terms in ascending term order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&QuadMonomial, Scalar)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn monomials(&self) -> impl DoubleEndedIterator<Item = &QuadMonomial> {
        self.terms.keys()
    }

    pub fn scale(&self, field: PrimeField, c: Scalar) -> Self {
        Self::from_terms(field, self.terms().map(|(m, a)| (m.clone(), field.mul(a, c))))
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, field: PrimeField, c: Scalar, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, a) in other.terms() {
            out.add_term(field, m.clone(), field.mul(a, c));
        }
        out
    }

    /// Rescales so the largest monomial in term order has coefficient 1.
    pub fn normalized(&self, field: PrimeField) -> Self {
        match self.terms.values().next_back() {
            Some(&lead) if lead != 1 => self.scale(field, field.inv(lead)),
            _ => self.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merging_and_cancellation() {
        let f = PrimeField::new(5).unwrap();
        let a = QuadMonomial::new(ExpTuple::from(&[0, 1][..]), ExpTuple::from(&[0, 0][..]));
        assert_eq!(a.lo(), &ExpTuple::from(&[0, 0][..]));
        let q = QuadForm::from_terms(f, [(a.clone(), 2), (a.clone(), 3)]);
        assert!(q.is_zero());
        let q = QuadForm::from_terms(f, [(a.clone(), 2), (a.clone(), 4)]);
        assert_eq!(q.coefficient(&a), 1);
        assert_eq!(QuadForm::from_terms(f, [(a.clone(), 3)]).normalized(f).coefficient(&a), 1);
    }
}
