//! Normal forms in the coordinate ring `k[f_0, …, f_k]` of the tower and the
//! canonical map on degree-2 forms.
//!
//! A monomial is reduced when `deg_{f_i} < p^{n_i}` for every `i >= 1`. The
//! defining equations are used as rewrite rules
//! `f_i^{p^{n_i}} -> D_i - Σ_j a_j f_i^{p^j}`; every rewrite produces strictly
//! colex-smaller tuples, so reducing the colex-largest pending term first
//! finalizes each output coefficient the moment it is popped.

use std::collections::BTreeMap;

use crate::field::{PrimeField, Scalar};
use crate::lattice::ExpTuple;
use crate::quad::QuadForm;
use crate::tower::Tower;

/// Element of the function field written over reduced monomials.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ReducedPoly {
    terms: BTreeMap<ExpTuple, Scalar>,
}

/// Valuation at the ramified point `P`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl ReducedPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The constant `1` over a tower of the given arity.
    pub fn one(arity: usize) -> Self {
        Self::monomial(ExpTuple::zeros(arity), 1)
    }

    /// A single term; the caller guarantees the tuple is reduced.
    pub fn monomial(t: ExpTuple, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(t, c);
        }
        ReducedPoly { terms }
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

    pub fn coefficient(&self, t: &ExpTuple) -> Scalar {
        self.terms.get(t).copied().unwrap_or(0)
    }

    /// Terms in ascending colex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ExpTuple, Scalar)> {
        self.terms.iter().map(|(t, &c)| (t, c))
    }

    fn add_term(&mut self, field: PrimeField, t: ExpTuple, c: Scalar) {
        accumulate(&mut self.terms, field, t, c);
    }

    pub fn add_scaled(&self, field: PrimeField, c: Scalar, other: &Self) -> Self {
        let mut out = self.clone();
        for (t, a) in other.terms() {
            out.add_term(field, t.clone(), field.mul(a, c));
        }
        out
    }
}

fn accumulate(map: &mut BTreeMap<ExpTuple, Scalar>, field: PrimeField, t: ExpTuple, c: Scalar) {
    if c == 0 {
        return;
    }
    match map.entry(t) {
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

/// Normal form of an arbitrary polynomial given as tuple → coefficient.
pub fn reduce_poly(tower: &Tower, poly: impl IntoIterator<Item = (ExpTuple, Scalar)>) -> ReducedPoly {
    let field = tower.field();
    let mut pending: BTreeMap<ExpTuple, Scalar> = BTreeMap::new();
    for (t, c) in poly {
        accumulate(&mut pending, field, t, c % field.p());
    }
    let mut out = BTreeMap::new();
    while let Some((t, c)) = pending.pop_last() {
        // highest offending coordinate
        let offending = (1..t.len()).rev().find(|&i| t.coords()[i] >= tower.step_degree(i));
        let Some(i) = offending else {
            out.insert(t, c);
            continue;
        };
        let rel = tower.relation(i);
        let mut base = t.coords().to_vec();
        base[i] -= rel.degree;
        let base = ExpTuple::new(base);
        for (lambda, a) in &rel.rhs {
            accumulate(&mut pending, field, &base + lambda, field.mul(c, *a));
        }
        for &(power, a) in &rel.additive {
            let mut coords = base.coords().to_vec();
            coords[i] += power;
            accumulate(&mut pending, field, ExpTuple::new(coords), field.neg(field.mul(c, a)));
        }
    }
    let r = ReducedPoly { terms: out };
    debug_assert!(distinct_norms(tower, &r));
    r
}

/// Normal form of `c · f_t`.
pub fn reduce(tower: &Tower, t: &ExpTuple, c: Scalar) -> ReducedPoly {
    reduce_poly(tower, [(t.clone(), c)])
}

fn distinct_norms(tower: &Tower, r: &ReducedPoly) -> bool {
    let mut seen = std::collections::HashSet::new();
    r.terms.keys().all(|t| seen.insert(tower.norm(t)))
}

/// Product with every partial product reduced as it is formed.
pub fn multiply(tower: &Tower, a: &ReducedPoly, b: &ReducedPoly) -> ReducedPoly {
    let field = tower.field();
    let mut out = ReducedPoly::zero();
    for (ta, ca) in a.terms() {
        for (tb, cb) in b.terms() {
            let part = reduce(tower, &(ta + tb), field.mul(ca, cb));
            out = out.add_scaled(field, 1, &part);
        }
    }
    out
}

/// Product formed without reduction, then reduced once.
pub fn naive_multiply(tower: &Tower, a: &ReducedPoly, b: &ReducedPoly) -> ReducedPoly {
    let field = tower.field();
    let mut raw = BTreeMap::new();
    for (ta, ca) in a.terms() {
        for (tb, cb) in b.terms() {
            accumulate(&mut raw, field, ta + tb, field.mul(ca, cb));
        }
    }
    reduce_poly(tower, raw)
}

/// `-max ‖key‖`, attained by a single key because reduced monomials have
/// pairwise distinct pole orders.
pub fn valuation_at_p(tower: &Tower, a: &ReducedPoly) -> Valuation {
    a.terms
        .keys()
        .map(|t| tower.norm(t))
        .max()
        .map_or(Valuation::Infinite, |n| Valuation::Finite(-(n as i64)))
}

/// Image of a quadratic form under the canonical map, with the common factor
/// `df_0^{⊗2}` dropped: `ω_A ω_B ↦ f_{A+B}`.
pub fn phi_image(tower: &Tower, q: &QuadForm) -> ReducedPoly {
    reduce_poly(tower, q.terms().map(|(m, c)| (m.sum(), c)))
}

pub fn kernel_membership(tower: &Tower, q: &QuadForm) -> bool {
    phi_image(tower, q).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::QuadMonomial;
    use crate::tower::TowerSpec;

    fn e9() -> Tower {
        Tower::new(TowerSpec::artin_schreier(7, 1, 4)).unwrap()
    }

    fn t(c: &[u32]) -> ExpTuple {
        ExpTuple::from(c)
    }

    fn poly(terms: &[(&[u32], Scalar)]) -> ReducedPoly {
        let mut r = ReducedPoly::zero();
        let f = PrimeField::new(7).unwrap();
        for &(e, c) in terms {
            r.add_term(f, t(e), c);
        }
        r
    }

    #[test]
    fn curve_equation_rewrites() {
        let tw = e9();
        assert_eq!(reduce(&tw, &t(&[0, 7]), 1), poly(&[(&[0, 1], 1), (&[4, 0], 1)]));
        assert_eq!(reduce(&tw, &t(&[0, 8]), 1), poly(&[(&[0, 2], 1), (&[4, 1], 1)]));
        assert_eq!(reduce(&tw, &t(&[3, 2]), 5), poly(&[(&[3, 2], 5)]));
    }

    #[test]
    fn products() {
        let tw = e9();
        let y3 = poly(&[(&[0, 3], 1)]);
        let y4 = poly(&[(&[0, 4], 1)]);
        assert_eq!(multiply(&tw, &y4, &y4), poly(&[(&[0, 2], 1), (&[4, 1], 1)]));
        assert_eq!(multiply(&tw, &y3, &y4), poly(&[(&[0, 1], 1), (&[4, 0], 1)]));
        assert_eq!(multiply(&tw, &y3, &ReducedPoly::one(2)), y3);
    }

    #[test]
    fn valuations() {
        let tw = e9();
        assert_eq!(valuation_at_p(&tw, &poly(&[(&[4, 0], 1)])), Valuation::Finite(-28));
        assert_eq!(valuation_at_p(&tw, &ReducedPoly::zero()), Valuation::Infinite);
        assert_eq!(valuation_at_p(&tw, &poly(&[(&[2, 1], 1)])), Valuation::Finite(-18));
    }

    #[test]
    fn canonical_map() {
        let tw = e9();
        let f = tw.field();
        let m = |a: &[u32], b: &[u32]| QuadMonomial::new(t(a), t(b));
        let tri = QuadForm::from_terms(
            f,
            [(m(&[0, 3], &[0, 4]), 1), (m(&[0, 0], &[0, 1]), 6), (m(&[2, 0], &[2, 0]), 6)],
        );
        assert!(phi_image(&tw, &tri).is_zero());
        assert!(kernel_membership(&tw, &tri));
        assert!(phi_image(&tw, &QuadForm::zero()).is_zero());
        let sq = QuadForm::from_terms(f, [(m(&[0, 4], &[0, 4]), 1)]);
        assert_eq!(phi_image(&tw, &sq), poly(&[(&[0, 2], 1), (&[4, 1], 1)]));

        let bad = QuadForm::from_terms(f, [(m(&[2, 0], &[2, 0]), 1), (m(&[0, 3], &[0, 4]), 6)]);
        assert_eq!(phi_image(&tw, &bad), poly(&[(&[0, 1], 6)]));
        assert!(!kernel_membership(&tw, &bad));
    }
}
