//! Independent certification of a generating set by linear algebra at fixed
//! degree: the degree-2 kernel of the canonical map is computed directly as a
//! nullspace and compared with the span of the generators, and the degree-3
//! kernel is compared with the span of linear multiples of the generators.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::Result;
use crate::field::Scalar;
use crate::function_field::{kernel_membership, reduce};
use crate::lattice::{ExpTuple, Lattice};
use crate::linalg::{ExactMatrix, RowSpace};
use crate::quad::{QuadForm, QuadMonomial};
use crate::relations::survivors;

/// Default bound on `#cubic monomials × #generator multiples`.
pub const DEFAULT_DEG3_CEILING: usize = 200_000;

/// Matrix whose column `c` holds the normal form of `f_{sums[c]}`.
fn image_matrix(lat: &Lattice, sums: &[ExpTuple]) -> ExactMatrix {
    let tower = lat.tower();
    let images: Vec<_> = sums.iter().map(|s| reduce(tower, s, 1)).collect();
    let mut row_of: BTreeMap<ExpTuple, usize> = BTreeMap::new();
    for img in &images {
        for (t, _) in img.terms() {
            let next = row_of.len();
            row_of.entry(t.clone()).or_insert(next);
        }
    }
    let mut m = ExactMatrix::zeros(tower.field(), row_of.len(), sums.len());
    for (c, img) in images.iter().enumerate() {
        for (t, v) in img.terms() {
            m.set(row_of[t], c, v);
        }
    }
    m
}

/// Basis of the degree-2 part of the canonical ideal, as reduced-echelon
/// nullspace vectors over all degree-2 monomials in term order.
pub fn deg2_kernel_basis(lat: &Lattice) -> Vec<QuadForm> {
    let field = lat.tower().field();
    let monomials = lat.quad_monomials();
    let sums: Vec<ExpTuple> = monomials.iter().map(QuadMonomial::sum).collect();
    image_matrix(lat, &sums)
        .nullspace()
        .into_iter()
        .map(|x| {
            QuadForm::from_terms(
                field,
                monomials.iter().cloned().zip(x).filter(|(_, c)| *c != 0),
            )
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpanVerdict {
    pub dim_j: usize,
    pub dim_kernel: usize,
    pub equal: bool,
}

impl fmt::Display for SpanVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "dim span J = {}, dim kernel = {}, {}",
            self.dim_j,
            self.dim_kernel,
            if self.equal { "equal" } else { "NOT equal" }
        )
    }
}

fn coordinates(index: &HashMap<QuadMonomial, usize>, q: &QuadForm) -> Vec<Scalar> {
    let mut v = vec![0; index.len()];
    for (m, c) in q.terms() {
        v[index[m]] = c;
    }
    v
}

/// Compares the spans of `j` and `kernel` inside the degree-2 part.
pub fn span_compare(lat: &Lattice, j: &[QuadForm], kernel: &[QuadForm]) -> SpanVerdict {
    let field = lat.tower().field();
    let index: HashMap<QuadMonomial, usize> = lat
        .quad_monomials()
        .into_iter()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect();
    let jv: Vec<_> = j.iter().map(|q| coordinates(&index, q)).collect();
    let kv: Vec<_> = kernel.iter().map(|q| coordinates(&index, q)).collect();

    let mut js = RowSpace::new(field, index.len());
    for v in &jv {
        js.insert(v);
    }
    let mut ks = RowSpace::new(field, index.len());
    for v in &kv {
        ks.insert(v);
    }
    let equal = js.rank() == ks.rank() && jv.iter().all(|v| ks.contains(v)) && kv.iter().all(|v| js.contains(v));
    SpanVerdict {
        dim_j: js.rank(),
        dim_kernel: ks.rank(),
        equal,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuotientCheck {
    pub survivors: usize,
    pub classes: usize,
    pub bound: u64,
    pub pass: bool,
}

impl fmt::Display for QuotientCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "survivors = {}, classes = {}, 3g - 3 = {}, {}",
            self.survivors,
            self.classes,
            self.bound,
            if self.pass { "pass" } else { "FAIL" }
        )
    }
}

/// Number of degree-2 monomials outside the initial monomials of `j`,
/// against the number of norm classes and `3g - 3`.
pub fn quotient_dim_check(lat: &Lattice, j: &[QuadForm]) -> Result<QuotientCheck> {
    let s = survivors(lat, j)?.len();
    let classes = lat.class_count();
    let bound = 3 * lat.genus().saturating_sub(1);
    Ok(QuotientCheck {
        survivors: s,
        classes,
        bound,
        pass: s == classes && s as u64 <= bound,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Deg3Outcome {
    Checked {
        kernel_dim: usize,
        span_dim: usize,
        passed: bool,
    },
    Skipped {
        entries: usize,
        ceiling: usize,
    },
}

impl Deg3Outcome {
    pub fn passed(&self) -> bool {
        matches!(self, Deg3Outcome::Checked { passed: true, .. })
    }
}

impl fmt::Display for Deg3Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Deg3Outcome::Checked {
                kernel_dim,
                span_dim,
                passed,
            } => write!(
                f,
                "dim kernel = {kernel_dim}, dim Sym^1 J = {span_dim}, {}",
                if *passed { "pass" } else { "FAIL" }
            ),
            Deg3Outcome::Skipped { entries, ceiling } => {
                write!(f, "skipped (size): {entries} entries exceed ceiling {ceiling}")
            }
        }
    }
}

/// Whether the degree-3 part of the canonical ideal is spanned by
/// `{ω_C · q : C ∈ A, q ∈ j}`.
pub fn deg3_generation_check(lat: &Lattice, j: &[QuadForm], ceiling: usize) -> Deg3Outcome {
    let basis = lat.basis();
    let g = basis.len();
    let cubic_count = g * (g + 1) * (g + 2) / 6;
    let entries = cubic_count.saturating_mul(g.saturating_mul(j.len()));
    if entries > ceiling {
        return Deg3Outcome::Skipped { entries, ceiling };
    }

    let mut cubics = Vec::with_capacity(cubic_count);
    for a in 0..g {
        for b in a..g {
            for c in b..g {
                cubics.push([a, b, c]);
            }
        }
    }
    let cubic_index: HashMap<[usize; 3], usize> = cubics.iter().enumerate().map(|(i, &t)| (t, i)).collect();
    let sums: Vec<ExpTuple> = cubics
        .iter()
        .map(|&[a, b, c]| &(&basis[a] + &basis[b]) + &basis[c])
        .collect();
    let image_rank = image_matrix(lat, &sums).rank();
    let kernel_dim = cubic_count - image_rank;

    let tower = lat.tower();
    let field = tower.field();
    let pos: HashMap<&ExpTuple, usize> = basis.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let all_in_kernel = j.iter().all(|q| kernel_membership(tower, q));

    let mut span = RowSpace::new(field, cubic_count);
    for q in j {
        let terms: Vec<(usize, usize, Scalar)> =
            q.terms().map(|(m, c)| (pos[m.lo()], pos[m.hi()], c)).collect();
        for c in 0..g {
            let mut v = vec![0; cubic_count];
            for &(a, b, coeff) in &terms {
                let mut key = [a, b, c];
                key.sort_unstable();
                let e = &mut v[cubic_index[&key]];
                *e = field.add(*e, coeff);
            }
            span.insert(&v);
            if span.rank() == kernel_dim {
                break;
            }
        }
    }
    Deg3Outcome::Checked {
        kernel_dim,
        span_dim: span.rank(),
        passed: all_in_kernel && span.rank() == kernel_dim,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relations::{assemble_j, G0Mode};
    use crate::tower::{Tower, TowerSpec};

    fn e9() -> Lattice {
        Lattice::new(Tower::new(TowerSpec::artin_schreier(7, 1, 4)).unwrap()).unwrap()
    }

    #[test]
    fn e9_degree_two() {
        let l = e9();
        let kernel = deg2_kernel_basis(&l);
        assert_eq!(kernel.len(), 21);
        assert!(kernel.iter().all(|q| kernel_membership(l.tower(), q)));
        let j = assemble_j(&l, G0Mode::AllPairs).unwrap().forms();
        let v = span_compare(&l, &j, &kernel);
        assert_eq!(v, SpanVerdict { dim_j: 21, dim_kernel: 21, equal: true });
        let q = quotient_dim_check(&l, &j).unwrap();
        assert_eq!((q.survivors, q.classes, q.bound, q.pass), (24, 24, 24, true));
    }

    #[test]
    fn degenerate_inputs() {
        let l = e9();
        let kernel = deg2_kernel_basis(&l);
        assert!(!span_compare(&l, &[], &kernel).equal);
        let q = quotient_dim_check(&l, &[]).unwrap();
        assert_eq!(q.survivors, 45);
        assert!(!q.pass);
        let mut j = assemble_j(&l, G0Mode::AllPairs).unwrap().forms();
        j.pop();
        let v = span_compare(&l, &j, &kernel);
        assert_eq!(v.dim_j, 20);
        assert!(!v.equal);
    }

    #[test]
    fn e9_degree_three() {
        let l = e9();
        let mut j = assemble_j(&l, G0Mode::AllPairs).unwrap().forms();
        let out = deg3_generation_check(&l, &j, DEFAULT_DEG3_CEILING);
        assert_eq!(
            out,
            Deg3Outcome::Checked { kernel_dim: 125, span_dim: 125, passed: true }
        );
        j.pop();
        assert!(!deg3_generation_check(&l, &j, DEFAULT_DEG3_CEILING).passed());
        assert!(matches!(deg3_generation_check(&l, &j, 10), Deg3Outcome::Skipped { .. }));
    }
}
