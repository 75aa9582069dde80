//! The exponent lattice `A` indexing the holomorphic differentials, its
//! Minkowski sum `A + A`, and the partition of `A + A` by pole order.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::Add;

use crate::error::{Error, Result};
use crate::order::colex;
use crate::quad::QuadMonomial;
use crate::tower::Tower;

/// Exponents `(i_0, …, i_k)` of a monomial `f_0^{i_0} ⋯ f_k^{i_k}`.
///
/// `Ord` is colex among tuples of one length; shorter tuples sort first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExpTuple(Vec<u32>);

impl ExpTuple {
    pub fn new(coords: Vec<u32>) -> Self {
        ExpTuple(coords)
    }

    pub fn zeros(len: usize) -> Self {
        ExpTuple(vec![0; len])
    }

    pub fn unit(len: usize, i: usize, scale: u32) -> Self {
        let mut v = vec![0; len];
        v[i] = scale;
        ExpTuple(v)
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Coordinatewise `self <= other`.
    pub fn le_all(&self, other: &ExpTuple) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn checked_sub(&self, other: &ExpTuple) -> Option<ExpTuple> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(ExpTuple)
    }
}

impl From<&[u32]> for ExpTuple {
    fn from(c: &[u32]) -> Self {
        ExpTuple(c.to_vec())
    }
}

impl Add for &ExpTuple {
    type Output = ExpTuple;

    fn add(self, rhs: &ExpTuple) -> ExpTuple {
        assert_eq!(self.len(), rhs.len());
        ExpTuple(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for ExpTuple {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| colex(&self.0, &other.0))
    }
}

impl PartialOrd for ExpTuple {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExpTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// Members of `A + A` sharing one pole order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormClass {
    pub norm: u64,
    /// Colex-ascending; the first member is the representative.
    pub members: Vec<ExpTuple>,
}

impl NormClass {
    pub fn representative(&self) -> &ExpTuple {
        &self.members[0]
    }
}

/// Numerical semigroup elements up to `bound` by dynamic programming.
pub(crate) fn semigroup_elements(generators: &[u64], bound: u64) -> Vec<u64> {
    let bound = bound as usize;
    let mut member = vec![false; bound + 1];
    member[0] = true;
    for h in 1..=bound {
        member[h] = generators
            .iter()
            .any(|&g| g as usize <= h && member[h - g as usize]);
    }
    (0..=bound as u64).filter(|&h| member[h as usize]).collect()
}

/// Weierstrass semigroup elements `h <= s(2g - 2)`. The count is `g` for
/// `s = 1` and `(2s - 1)(g - 1)` beyond; a mismatch means the tower is not a
/// valid HKG tower.
pub fn bounded_h(tower: &Tower, s: u64) -> Result<Vec<u64>> {
    if s == 0 {
        return Err(Error::Precondition("s must be positive".into()));
    }
    let g = tower.genus();
    let bound = s * (2 * g).saturating_sub(2);
    let elems = semigroup_elements(tower.semigroup_generators(), bound);
    let expected = if s == 1 { g } else { (2 * s - 1) * g.saturating_sub(1) };
    if elems.len() as u64 != expected {
        return Err(Error::InvalidTower(format!(
            "#H_{s} = {} but expected {expected}",
            elems.len()
        )));
    }
    Ok(elems)
}

/// The differential basis `A` of a tower with everything derived from it.
#[derive(Debug, Clone)]
pub struct Lattice {
    tower: Tower,
    basis: Vec<ExpTuple>,
    /// Every `u ∈ A + A` with its exact decompositions, sorted by smaller factor.
    decompositions: BTreeMap<ExpTuple, Vec<QuadMonomial>>,
    classes: BTreeMap<u64, NormClass>,
}

fn enumerate_reduced(tower: &Tower, bound: u64) -> Vec<ExpTuple> {
    fn rec(tower: &Tower, nu: usize, remaining: u64, cur: &mut Vec<u32>, out: &mut Vec<ExpTuple>) {
        let w = tower.semigroup_generators()[nu];
        let mut cap = remaining / w;
        if let Some(b) = tower.coordinate_bound(nu) {
            cap = cap.min(b as u64 - 1);
        }
        for c in 0..=cap {
            cur[nu] = c as u32;
            let rest = remaining - c * w;
            if nu == 0 {
                out.push(ExpTuple(cur.clone()));
            } else {
                rec(tower, nu - 1, rest, cur, out);
            }
        }
        cur[nu] = 0;
    }
    let arity = tower.arity();
    let mut cur = vec![0; arity];
    let mut out = Vec::new();
    rec(tower, arity - 1, bound, &mut cur, &mut out);
    out.sort();
    out
}

impl Lattice {
    pub fn new(tower: Tower) -> Result<Self> {
        let g = tower.genus();
        let basis = enumerate_reduced(&tower, (2 * g).saturating_sub(2));
        if basis.len() as u64 != g {
            return Err(Error::InvalidTower(format!(
                "basis count mismatch: |A| = {} but g = {g}",
                basis.len()
            )));
        }

        let mut decompositions: BTreeMap<ExpTuple, Vec<QuadMonomial>> = BTreeMap::new();
        for (i, a) in basis.iter().enumerate() {
            for b in &basis[i..] {
                decompositions
                    .entry(a + b)
                    .or_default()
                    .push(QuadMonomial::new(a.clone(), b.clone()));
            }
        }
        for list in decompositions.values_mut() {
            list.sort_by(|x, y| x.lo().cmp(y.lo()));
        }

        let mut classes: BTreeMap<u64, NormClass> = BTreeMap::new();
        for u in decompositions.keys() {
            let norm = tower.norm(u);
            classes
                .entry(norm)
                .or_insert_with(|| NormClass {
                    norm,
                    members: Vec::new(),
                })
                .members
                .push(u.clone());
        }
        // members arrive colex-ascending since the keys do
        let bound = 3 * g.saturating_sub(1);
        if classes.len() as u64 > bound {
            return Err(Error::InvalidTower(format!(
                "{} norm classes exceed 3g - 3 = {bound}",
                classes.len()
            )));
        }

        Ok(Lattice {
            tower,
            basis,
            decompositions,
            classes,
        })
    }

    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    pub fn genus(&self) -> u64 {
        self.tower.genus()
    }

    pub fn norm(&self, t: &ExpTuple) -> u64 {
        self.tower.norm(t)
    }

    /// `A`, colex-ascending.
    pub fn basis(&self) -> &[ExpTuple] {
        &self.basis
    }

    pub fn minkowski_sum(&self) -> BTreeSet<ExpTuple> {
        self.decompositions.keys().cloned().collect()
    }

    pub fn contains_sum(&self, u: &ExpTuple) -> bool {
        self.decompositions.contains_key(u)
    }

    /// Classes of `A + A` under equal pole order, by ascending norm.
    pub fn norm_classes(&self) -> impl Iterator<Item = &NormClass> {
        self.classes.values()
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of_norm(&self, norm: u64) -> Option<&NormClass> {
        self.classes.get(&norm)
    }

    /// All unordered `(A, B)` over the basis with `A + B = u`, smallest
    /// smaller-factor first. Empty when `u ∉ A + A`.
    pub fn decompose_all(&self, u: &ExpTuple) -> &[QuadMonomial] {
        self.decompositions.get(u).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Degree-2 monomials whose sum is equivalent to `u`, i.e. has the same norm.
    pub fn gamma_set(&self, u: &ExpTuple) -> Vec<QuadMonomial> {
        let Some(class) = self.classes.get(&self.norm(u)) else {
            return Vec::new();
        };
        class
            .members
            .iter()
            .flat_map(|m| self.decompose_all(m).iter().cloned())
            .collect()
    }

    /// Every degree-2 monomial in the basis differentials, ascending term order.
    pub fn quad_monomials(&self) -> Vec<QuadMonomial> {
        let mut out: Vec<QuadMonomial> = self.decompositions.values().flatten().cloned().collect();
        out.sort();
        out
    }

    pub fn bounded_h(&self, s: u64) -> Result<Vec<u64>> {
        bounded_h(&self.tower, s)
    }
}
