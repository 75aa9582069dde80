//! Generators of the canonical ideal: the binomials `G_0` coming from equal
//! exponent sums, and the forms `G_{v,i}` obtained by multiplying the `i`-th
//! defining equation by `f_v` and reading every term as a quadratic
//! differential.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::{ExpTuple, Lattice};
use crate::order::{colex, initial_term, TieBreak};
use crate::quad::{QuadForm, QuadMonomial};

/// How binomials are emitted for an exponent sum with `d` decompositions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum G0Mode {
    /// All `d(d-1)/2` pairs.
    #[default]
    AllPairs,
    /// `d - 1` binomials, each against the colex-first decomposition.
    Star,
}

/// Where a generator came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Origin {
    /// Equal-sum binomial for the sum tuple `u`.
    G0 { sum: ExpTuple },
    /// Defining equation of step `step` multiplied by `f_v`.
    Gvi { v: ExpTuple, step: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub form: QuadForm,
    pub origin: Origin,
}

/// A `G_{v,i}` candidate that was dropped because one of its terms has no
/// exact decomposition in `A + A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkipDiagnostic {
    pub v: ExpTuple,
    pub step: usize,
    pub tuple: ExpTuple,
    pub reason: String,
}

impl fmt::Display for SkipDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "skipped v = {}, i = {}: {}", self.v, self.step, self.reason)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GviOutcome {
    Form(QuadForm),
    Skipped(SkipDiagnostic),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ideal {
    pub generators: Vec<Generator>,
    pub diagnostics: Vec<SkipDiagnostic>,
}

impl Ideal {
    pub fn forms(&self) -> Vec<QuadForm> {
        self.generators.iter().map(|g| g.form.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }
}

/// `ω_L ω_K - ω_{L'} ω_{K'}` for `L + K = L' + K'`, leading coefficient `+1`
/// on the designated initial monomial.
pub fn build_g0(lat: &Lattice, mode: G0Mode) -> Vec<QuadForm> {
    g0_generators(lat, mode).into_iter().map(|g| g.form).collect()
}

fn g0_generators(lat: &Lattice, mode: G0Mode) -> Vec<Generator> {
    let field = lat.tower().field();
    let minus_one = field.neg(1);
    let mut out = Vec::new();
    for u in lat.minkowski_sum() {
        let decs = lat.decompose_all(&u);
        // decs ascend in term order, so the later monomial is the initial one
        for (j, later) in decs.iter().enumerate().skip(1) {
            let earlier: &[QuadMonomial] = match mode {
                G0Mode::AllPairs => &decs[..j],
                G0Mode::Star => &decs[..1],
            };
            for e in earlier {
                out.push(Generator {
                    form: QuadForm::from_terms(field, [(later.clone(), 1), (e.clone(), minus_one)]),
                    origin: Origin::G0 { sum: u.clone() },
                });
            }
        }
    }
    out
}

/// Multipliers `v` with `‖v‖ + p^{n_i} m̄_i <= 4g - 4`, colex-ascending.
pub fn enumerate_v(lat: &Lattice, step: usize) -> Result<Vec<ExpTuple>> {
    let tower = lat.tower();
    if step == 0 || step > tower.height() {
        return Err(Error::Precondition(format!("step {step} outside 1..={}", tower.height())));
    }
    let gens = tower.semigroup_generators();
    let lead = tower.step_degree(step) as u64 * gens[step];
    let cap = (4 * lat.genus()).saturating_sub(4);
    let Some(budget) = cap.checked_sub(lead) else {
        return Ok(Vec::new());
    };
    let mut out = Vec::new();
    let mut cur = vec![0u32; tower.arity()];
    fn rec(gens: &[u64], nu: usize, remaining: u64, cur: &mut Vec<u32>, out: &mut Vec<ExpTuple>) {
        for c in 0..=remaining / gens[nu] {
            cur[nu] = c as u32;
            if nu == 0 {
                out.push(ExpTuple::new(cur.clone()));
            } else {
                rec(gens, nu - 1, remaining - c * gens[nu], cur, out);
            }
        }
        cur[nu] = 0;
    }
    rec(gens, tower.arity() - 1, budget, &mut cur, &mut out);
    out.sort();
    Ok(out)
}

/// The tuples `γ_{v,i,ν}` (with coefficient) and `β_{v,i,λ}` (with coefficient)
/// of one candidate, `γ_{v,i,0}` first.
fn candidate_terms(lat: &Lattice, v: &ExpTuple, step: usize) -> Vec<(ExpTuple, u32)> {
    let tower = lat.tower();
    let field = tower.field();
    let rel = tower.relation(step);
    let arity = tower.arity();
    let mut terms = vec![(v + &ExpTuple::unit(arity, step, rel.degree), 1)];
    // γ_ν carries p^{n_i - ν}, whose coefficient is the one on X^{p^{n_i - ν}}
    let mut additive: Vec<_> = rel.additive.clone();
    additive.sort_by_key(|&(power, _)| std::cmp::Reverse(power));
    for (power, a) in additive {
        terms.push((v + &ExpTuple::unit(arity, step, power), a));
    }
    for (lambda, a) in &rel.rhs {
        terms.push((v + lambda, field.neg(*a)));
    }
    terms
}

pub fn build_gvi(lat: &Lattice, v: &ExpTuple, step: usize) -> Result<GviOutcome> {
    let tower = lat.tower();
    if v.len() != tower.arity() {
        return Err(Error::Structural(format!("v has length {}, expected {}", v.len(), tower.arity())));
    }
    if step == 0 || step > tower.height() {
        return Err(Error::Precondition(format!("step {step} outside 1..={}", tower.height())));
    }
    let lead = tower.step_degree(step) as u64 * tower.semigroup_generators()[step];
    if lat.norm(v) + lead > (4 * lat.genus()).saturating_sub(4) {
        return Err(Error::Precondition(format!("v = {v} is outside the enumerated region for step {step}")));
    }
    let field = tower.field();
    let mut q = QuadForm::zero();
    for (tuple, c) in candidate_terms(lat, v, step) {
        let Some(first) = lat.decompose_all(&tuple).first() else {
            return Ok(GviOutcome::Skipped(SkipDiagnostic {
                v: v.clone(),
                step,
                reason: format!("{tuple} has no decomposition in A + A (norm {})", lat.norm(&tuple)),
                tuple,
            }));
        };
        q.add_term(field, first.clone(), c);
    }
    Ok(GviOutcome::Form(q))
}

/// `G_0` together with every resolvable `G_{v,i}`. Refuses towers failing the
/// Petri gates.
pub fn assemble_j(lat: &Lattice, mode: G0Mode) -> Result<Ideal> {
    let report = lat.tower().petri_report();
    if !report.verdict {
        let failed: Vec<String> = report
            .failures()
            .map(|g| format!("step {} {}", g.step, g.gate.name()))
            .collect();
        return Err(Error::PetriUnmet(failed.join(", ")));
    }
    let mut generators = g0_generators(lat, mode);
    let mut diagnostics = Vec::new();
    for step in 1..=lat.tower().height() {
        for v in enumerate_v(lat, step)? {
            match build_gvi(lat, &v, step)? {
                GviOutcome::Form(form) if !form.is_zero() => generators.push(Generator {
                    form,
                    origin: Origin::Gvi { v, step },
                }),
                GviOutcome::Form(_) => {}
                GviOutcome::Skipped(d) => diagnostics.push(d),
            }
        }
    }
    Ok(Ideal {
        generators,
        diagnostics,
    })
}

/// Designated initial monomials of the given forms.
pub fn initial_monomials<'a>(forms: impl IntoIterator<Item = &'a QuadForm>) -> Result<BTreeSet<QuadMonomial>> {
    forms
        .into_iter()
        .filter(|q| !q.is_zero())
        .map(|q| initial_term(q, TieBreak::MinFactor).cloned())
        .collect()
}

/// Degree-2 monomials that are not the initial monomial of any form in `j`.
pub fn survivors<'a>(lat: &Lattice, j: impl IntoIterator<Item = &'a QuadForm>) -> Result<Vec<QuadMonomial>> {
    let initials = initial_monomials(j)?;
    Ok(lat
        .quad_monomials()
        .into_iter()
        .filter(|m| !initials.contains(m))
        .collect())
}

/// `ω_L ω_K ↦ [L + K]`, checked to be a bijection onto the norm classes.
/// Classes are identified by their norm.
pub fn phi_class_map(lat: &Lattice, survivors: &[QuadMonomial]) -> Result<BTreeMap<QuadMonomial, u64>> {
    let mut map = BTreeMap::new();
    let mut hit: BTreeMap<u64, &QuadMonomial> = BTreeMap::new();
    for m in survivors {
        let norm = lat.norm(&m.sum());
        if lat.class_of_norm(norm).is_none() {
            return Err(Error::PhiBijection(format!("{m} has norm {norm} outside every class")));
        }
        if let Some(prev) = hit.insert(norm, m) {
            return Err(Error::PhiBijection(format!("{prev} and {m} both map to the class of norm {norm}")));
        }
        map.insert(m.clone(), norm);
    }
    if let Some(missed) = lat.norm_classes().find(|c| !hit.contains_key(&c.norm)) {
        return Err(Error::PhiBijection(format!(
            "class of norm {} (representative {}) has no preimage",
            missed.norm,
            missed.representative()
        )));
    }
    Ok(map)
}

/// Checks the shape guaranteed for every `G_{v,i}`: the initial monomial
/// resolves `γ_{v,i,0}`, and another term has the same norm with a smaller sum.
pub fn check_initial_shape(lat: &Lattice, v: &ExpTuple, step: usize, form: &QuadForm) -> Result<()> {
    let tower = lat.tower();
    let gamma0 = v + &ExpTuple::unit(tower.arity(), step, tower.step_degree(step));
    let init = initial_term(form, TieBreak::Strict)?;
    if init.sum() != gamma0 {
        return Err(Error::Invariant(format!("initial term {init} does not resolve {gamma0}")));
    }
    let norm = lat.norm(&gamma0);
    let partner = form.monomials().any(|m| {
        let s = m.sum();
        s != gamma0 && lat.norm(&s) == norm && colex(s.coords(), gamma0.coords()).is_lt()
    });
    if !partner {
        return Err(Error::Invariant(format!(
            "no smaller term of norm {norm} next to {init} in G_{{{v},{step}}}"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function_field::kernel_membership;
    use crate::tower::{Tower, TowerSpec};

    fn e9() -> Lattice {
        Lattice::new(Tower::new(TowerSpec::artin_schreier(7, 1, 4)).unwrap()).unwrap()
    }

    fn t(c: &[u32]) -> ExpTuple {
        ExpTuple::from(c)
    }

    fn m(a: &[u32], b: &[u32]) -> QuadMonomial {
        QuadMonomial::new(t(a), t(b))
    }

    #[test]
    fn g0_counts() {
        let l = e9();
        let all = build_g0(&l, G0Mode::AllPairs);
        assert_eq!(all.len(), 25);
        assert_eq!(build_g0(&l, G0Mode::Star).len(), 20);
        let f = l.tower().field();
        let want = QuadForm::from_terms(f, [(m(&[0, 3], &[1, 1]), 1), (m(&[0, 4], &[1, 0]), 6)]);
        assert!(all.contains(&want));
        // unique decompositions contribute nothing
        assert!(all.iter().all(|q| q.len() == 2));
    }

    #[test]
    fn multipliers() {
        let l = e9();
        assert_eq!(enumerate_v(&l, 1).unwrap(), vec![t(&[0, 0]), t(&[0, 1])]);
        let l = Lattice::new(Tower::new(TowerSpec::artin_schreier(5, 1, 7)).unwrap()).unwrap();
        // budget 44 - 35 = 9 admits norms 0, 5, 7
        assert_eq!(enumerate_v(&l, 1).unwrap(), vec![t(&[0, 0]), t(&[1, 0]), t(&[0, 1])]);
        assert!(enumerate_v(&l, 2).is_err());
    }

    #[test]
    fn e9_trinomial_and_skip() {
        let l = e9();
        let f = l.tower().field();
        let GviOutcome::Form(q) = build_gvi(&l, &t(&[0, 0]), 1).unwrap() else {
            panic!("expected a form");
        };
        let want = QuadForm::from_terms(
            f,
            [(m(&[0, 3], &[0, 4]), 1), (m(&[0, 0], &[0, 1]), 6), (m(&[2, 0], &[2, 0]), 6)],
        );
        assert_eq!(q, want);
        check_initial_shape(&l, &t(&[0, 0]), 1, &q).unwrap();

        let GviOutcome::Skipped(d) = build_gvi(&l, &t(&[0, 1]), 1).unwrap() else {
            panic!("expected a skip");
        };
        assert_eq!(d.tuple, t(&[4, 1]));
        assert!(build_gvi(&l, &t(&[0, 2]), 1).is_err());
    }

    #[test]
    fn e9_ideal() {
        let l = e9();
        let j = assemble_j(&l, G0Mode::AllPairs).unwrap();
        assert_eq!(j.len(), 26);
        assert_eq!(j.diagnostics.len(), 1);
        assert!(j.generators.iter().all(|g| kernel_membership(l.tower(), &g.form)));

        let s = survivors(&l, j.forms().iter()).unwrap();
        assert_eq!(s.len(), 24);
        assert!(!s.contains(&m(&[0, 3], &[0, 4])));
        let phi = phi_class_map(&l, &s).unwrap();
        assert_eq!(phi.len(), 24);
        assert_eq!(phi[&m(&[0, 0], &[0, 0])], 0);
        let to28: Vec<_> = phi.iter().filter(|(_, &n)| n == 28).map(|(k, _)| k.clone()).collect();
        assert_eq!(to28, vec![m(&[2, 0], &[2, 0])]);
    }

    #[test]
    fn empty_j_keeps_everything() {
        let l = e9();
        assert_eq!(survivors(&l, std::iter::empty()).unwrap().len(), 45);
        assert!(matches!(
            phi_class_map(&l, &survivors(&l, std::iter::empty()).unwrap()),
            Err(Error::PhiBijection(_))
        ));
    }

    #[test]
    fn petri_gate_refuses() {
        let l = Lattice::new(Tower::new(TowerSpec::artin_schreier(5, 1, 3)).unwrap()).unwrap();
        assert!(matches!(assemble_j(&l, G0Mode::AllPairs), Err(Error::PetriUnmet(_))));
    }
}
