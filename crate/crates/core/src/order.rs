//! Colexicographic term order and initial terms of quadratic forms.
//!
//! Tuples compare from the last coordinate backwards, so `f_k` is the most
//! significant variable. Products of differentials compare by the colex
//! order of their exponent sums.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::lattice::ExpTuple;
use crate::quad::{QuadForm, QuadMonomial};

/// Colex comparison of equal-length slices.
pub(crate) fn colex(u: &[u32], v: &[u32]) -> Ordering {
    debug_assert_eq!(u.len(), v.len());
    u.iter().rev().cmp(v.iter().rev())
}

pub fn colex_cmp(u: &ExpTuple, v: &ExpTuple) -> Result<Ordering> {
    if u.len() != v.len() {
        return Err(Error::Structural(format!(
            "cannot compare tuples of lengths {} and {}",
            u.len(),
            v.len()
        )));
    }
    Ok(colex(u.coords(), v.coords()))
}

/// Order on degree-2 monomials induced by their sum tuples. Monomials with
/// the same sum compare equal here; see [`QuadMonomial`]'s `Ord` for the
/// refined total order.
pub fn product_cmp(a: &QuadMonomial, b: &QuadMonomial) -> Ordering {
    colex(a.sum().coords(), b.sum().coords())
}

/// How to resolve monomials of equal sum when picking an initial term.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TieBreak {
    /// Equal maximal sums are an error.
    Strict,
    /// Among equal sums the monomial whose smaller factor is colex-largest wins.
    MinFactor,
}

/// The ≺-maximal monomial of a nonzero form.
pub fn initial_term(q: &QuadForm, tie: TieBreak) -> Result<&QuadMonomial> {
    // terms are keyed by the refined order, so the last key is the winner under MinFactor
    let mut rev = q.monomials().rev();
    let top = rev
        .next()
        .ok_or_else(|| Error::Precondition("initial term of the zero form".into()))?;
    if tie == TieBreak::Strict {
        if let Some(next) = rev.next() {
            if product_cmp(top, next) == Ordering::Equal {
                return Err(Error::AmbiguousInitial(format!(
                    "{top} and {next} share the maximal sum {}",
                    top.sum()
                )));
            }
        }
    }
    Ok(top)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn t(c: &[u32]) -> ExpTuple {
        ExpTuple::from(c)
    }

    fn m(a: &[u32], b: &[u32]) -> QuadMonomial {
        QuadMonomial::new(t(a), t(b))
    }

    #[test]
    fn colex_examples() {
        assert_eq!(colex_cmp(&t(&[4, 0]), &t(&[0, 7])).unwrap(), Ordering::Less);
        assert_eq!(colex_cmp(&t(&[0, 1]), &t(&[0, 1])).unwrap(), Ordering::Equal);
        assert_eq!(colex_cmp(&t(&[3, 2, 5]), &t(&[9, 1, 5])).unwrap(), Ordering::Greater);
        assert!(colex_cmp(&t(&[1]), &t(&[1, 0])).is_err());
    }

    #[test]
    fn product_examples() {
        assert_eq!(product_cmp(&m(&[0, 3], &[0, 4]), &m(&[2, 0], &[2, 0])), Ordering::Greater);
        assert_eq!(product_cmp(&m(&[0, 3], &[1, 1]), &m(&[1, 1], &[0, 3])), Ordering::Equal);
        assert_eq!(product_cmp(&m(&[0, 0], &[0, 1]), &m(&[0, 0], &[0, 2])), Ordering::Less);
    }

    #[test]
    fn initial_terms() {
        let f = PrimeField::new(7).unwrap();
        let tri = QuadForm::from_terms(
            f,
            [
                (m(&[0, 0], &[0, 1]), 6),
                (m(&[0, 3], &[0, 4]), 1),
                (m(&[2, 0], &[2, 0]), 6),
            ],
        );
        assert_eq!(initial_term(&tri, TieBreak::Strict).unwrap(), &m(&[0, 3], &[0, 4]));

        let bin = QuadForm::from_terms(f, [(m(&[0, 4], &[1, 0]), 1), (m(&[0, 3], &[1, 1]), 6)]);
        assert!(matches!(initial_term(&bin, TieBreak::Strict), Err(Error::AmbiguousInitial(_))));
        // smaller factors (1,0) < (1,1); the larger one is initial
        assert_eq!(initial_term(&bin, TieBreak::MinFactor).unwrap(), &m(&[0, 3], &[1, 1]));

        let single = QuadForm::from_terms(f, [(m(&[0, 0], &[0, 0]), 1)]);
        assert_eq!(initial_term(&single, TieBreak::Strict).unwrap(), &m(&[0, 0], &[0, 0]));
    }
}
