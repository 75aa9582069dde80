//! Curve towers `F_1 = k(f_0) ⊂ F_2 ⊂ … ⊂ F_{k+1}` and their numeric invariants.
//!
//! Step `i` adjoins `f_i` subject to
//! `f_i^{p^{n_i}} + Σ_j a_j f_i^{p^j} = D_i(f_0, …, f_{i-1})`.
//! Everything here is derived from the step data: ramification jumps, the
//! genus of every intermediate field, the Weierstrass semigroup generators
//! at the unique ramified point, and the gates required before a quadratic
//! generating set can exist.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result, Rule};
use crate::field::{PrimeField, Scalar};
use crate::lattice::ExpTuple;

/// One extension step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerStep {
    /// Step degree is `p^n`.
    pub n: u32,
    /// Power index `j` (coefficient of `X^{p^j}`) to coefficient. Zero entries
    /// are ignored.
    pub additive: BTreeMap<u32, Scalar>,
    /// Monomials of the right-hand side `D_i`, keyed by `(l_0, …, l_{i-1})`.
    pub rhs: BTreeMap<Vec<u32>, Scalar>,
}

/// Unvalidated tower data with coefficients already reduced mod `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerSpec {
    pub p: u64,
    pub steps: Vec<TowerStep>,
}

impl TowerSpec {
    /// The classic Artin-Schreier curve `y^{p^n} - y = x^m`.
    pub fn artin_schreier(p: u64, n: u32, m: u32) -> Self {
        let minus_one = (p - 1) as Scalar;
        TowerSpec {
            p,
            steps: vec![TowerStep {
                n,
                additive: BTreeMap::from([(0, minus_one)]),
                rhs: BTreeMap::from([(vec![m], 1)]),
            }],
        }
    }
}

/// Per-step data in the shape the rewriting code wants it.
#[derive(Debug, Clone)]
pub(crate) struct StepRelation {
    /// `p^{n_i}`.
    pub degree: u32,
    /// `(p^j, a_j)` for the nonzero additive coefficients.
    pub additive: Vec<(u32, Scalar)>,
    /// `(λ padded to k+1 coordinates, coefficient)`.
    pub rhs: Vec<(ExpTuple, Scalar)>,
}

/// A validated tower together with its derived invariants.
#[derive(Debug, Clone)]
pub struct Tower {
    spec: TowerSpec,
    field: PrimeField,
    jumps: Vec<u64>,
    genera: Vec<u64>,
    generators: Vec<u64>,
    relations: Vec<StepRelation>,
}

fn checked_pow(p: u64, e: u32, step: Option<usize>) -> Result<u64> {
    p.checked_pow(e)
        .ok_or_else(|| Error::validation(step, Rule::Overflow, format!("{p}^{e} overflows")))
}

fn overflow(step: usize) -> Error {
    Error::validation(Some(step), Rule::Overflow, "intermediate quantity overflows 64 bits")
}

/// Pole order at `P` of `f_0^{l_0} ⋯ f_{i-1}^{l_{i-1}}` inside `F_i`, given the
/// step degree exponents `ns` and the jumps `b_1..b_{i-1}` derived so far.
fn level_norm_raw(p: u64, ns: &[u32], jumps: &[u64], lambda: &[u32], level: usize) -> Option<u64> {
    // weight of l_0 is p^{n_1+…+n_{i-1}}, weight of l_ν is b_ν p^{n_{ν+1}+…+n_{i-1}}
    let mut total: u64 = 0;
    for (nu, &l) in lambda.iter().enumerate() {
        let tail: u32 = ns[nu..level - 1].iter().sum();
        let mut w = p.checked_pow(tail)?;
        if nu > 0 {
            w = w.checked_mul(jumps[nu - 1])?;
        }
        total = total.checked_add(w.checked_mul(l as u64)?)?;
    }
    Some(total)
}

/// Ramification jumps `b_1 < … < b_k`: `b_i` is the largest pole order among the
/// monomials of `D_i` measured in `F_i`.
pub fn derive_jumps(spec: &TowerSpec) -> Result<Vec<u64>> {
    let ns: Vec<u32> = spec.steps.iter().map(|s| s.n).collect();
    let mut jumps: Vec<u64> = Vec::with_capacity(spec.steps.len());
    for (idx, step) in spec.steps.iter().enumerate() {
        let level = idx + 1;
        let mut best: Option<(u64, usize)> = None;
        for key in step.rhs.keys() {
            if key.len() != level {
                return Err(Error::Structural(format!(
                    "rhs key of step {level} has length {}",
                    key.len()
                )));
            }
            let norm = level_norm_raw(spec.p, &ns, &jumps, key, level).ok_or_else(|| overflow(level))?;
            best = match best {
                Some((b, c)) if norm < b => Some((b, c)),
                Some((b, c)) if norm == b => Some((b, c + 1)),
                _ => Some((norm, 1)),
            };
        }
        let (b, count) = best.ok_or_else(|| Error::validation(Some(level), Rule::EmptyRhs, "D_i has no monomials"))?;
        if count > 1 {
            return Err(Error::Invariant(format!(
                "step {level}: {count} monomials of D_i share the maximal pole order {b}"
            )));
        }
        if b % spec.p == 0 {
            return Err(Error::validation(
                Some(level),
                Rule::JumpNotCoprime,
                format!("jump not coprime to p: b_{level} = {b}"),
            ));
        }
        if let Some(&prev) = jumps.last() {
            if b <= prev {
                return Err(Error::validation(
                    Some(level),
                    Rule::JumpsNotIncreasing,
                    format!("jumps not strictly increasing: b_{level} = {b} <= {prev}"),
                ));
            }
        }
        jumps.push(b);
    }
    Ok(jumps)
}

/// `g_{F_1}, …, g_{F_{k+1}}` from the Riemann-Hurwitz recursion
/// `2(g' - 1) = p^n 2(g - 1) + (b + 1)(p^n - 1)`.
pub fn genus_sequence(spec: &TowerSpec, jumps: &[u64]) -> Result<Vec<u64>> {
    let mut genera = vec![0u64];
    for (idx, (step, &b)) in spec.steps.iter().zip(jumps).enumerate() {
        let q = checked_pow(spec.p, step.n, Some(idx + 1))? as i128;
        let g = *genera.last().unwrap() as i128;
        let twice = q * 2 * (g - 1) + (b as i128 + 1) * (q - 1);
        if twice % 2 != 0 {
            return Err(Error::Invariant(format!("2(g-1) = {twice} is odd at step {}", idx + 1)));
        }
        let next = twice / 2 + 1;
        if next < 0 || next > u64::MAX as i128 {
            return Err(Error::Invariant(format!("genus {next} out of range at step {}", idx + 1)));
        }
        genera.push(next as u64);
    }
    Ok(genera)
}

impl Tower {
    pub fn new(spec: TowerSpec) -> Result<Self> {
        if spec.p == 2 {
            return Err(Error::validation(None, Rule::PEven, "p = 2 is not supported"));
        }
        let field = PrimeField::new(spec.p)?;
        if spec.steps.is_empty() {
            return Err(Error::validation(None, Rule::EmptyTower, "tower has no steps"));
        }
        let k = spec.steps.len();
        let mut degrees = Vec::with_capacity(k);
        for (idx, step) in spec.steps.iter().enumerate() {
            let level = idx + 1;
            if step.n == 0 {
                return Err(Error::validation(Some(level), Rule::StepDegree, "n must be positive"));
            }
            let q = checked_pow(spec.p, step.n, Some(level))?;
            if q > u32::MAX as u64 {
                return Err(overflow(level));
            }
            degrees.push(q as u32);
            for (&j, &c) in &step.additive {
                if j >= step.n {
                    return Err(Error::validation(
                        Some(level),
                        Rule::AdditivePower,
                        format!("additive power {j} outside 0..{}", step.n),
                    ));
                }
                if c >= field.p() {
                    return Err(Error::Structural(format!("coefficient {c} not reduced mod p")));
                }
            }
            if step.additive.get(&0).copied().unwrap_or(0) == 0 {
                return Err(Error::validation(
                    Some(level),
                    Rule::Separability,
                    "coefficient of X must be nonzero",
                ));
            }
            if step.rhs.is_empty() {
                return Err(Error::validation(Some(level), Rule::EmptyRhs, "D_i has no monomials"));
            }
            for (key, &c) in &step.rhs {
                if key.len() != level {
                    return Err(Error::validation(
                        Some(level),
                        Rule::RhsArity,
                        format!("exponent tuple {key:?} must have length {level}"),
                    ));
                }
                for nu in 1..level {
                    if key[nu] >= degrees[nu - 1] {
                        return Err(Error::validation(
                            Some(level),
                            Rule::ExponentBound,
                            format!(
                                "exponent bound: l_{nu} = {} must be below p^n_{nu} = {}",
                                key[nu],
                                degrees[nu - 1]
                            ),
                        ));
                    }
                }
                if c % field.p() == 0 {
                    return Err(Error::validation(
                        Some(level),
                        Rule::ZeroCoefficient,
                        format!("coefficient of {key:?} vanishes mod p"),
                    ));
                }
            }
        }
        let jumps = derive_jumps(&spec)?;
        let genera = genus_sequence(&spec, &jumps)?;

        // |G_0| = p^{n_1+…+n_k}, m̄_i = p^{n_{i+1}+…+n_k} b_i
        let total_n: u32 = spec.steps.iter().map(|s| s.n).sum();
        let mut generators = vec![checked_pow(spec.p, total_n, None)?];
        for (idx, &b) in jumps.iter().enumerate() {
            let tail: u32 = spec.steps[idx + 1..].iter().map(|s| s.n).sum();
            let w = checked_pow(spec.p, tail, None)?;
            generators.push(w.checked_mul(b).ok_or_else(|| overflow(idx + 1))?);
        }
        let genus = *genera.last().unwrap();
        if genus.checked_mul(8).is_none() {
            return Err(overflow(k));
        }

        let relations = spec
            .steps
            .iter()
            .zip(&degrees)
            .map(|(step, &degree)| StepRelation {
                degree,
                additive: step
                    .additive
                    .iter()
                    .filter(|(_, &c)| c != 0)
                    .map(|(&j, &c)| ((spec.p as u32).pow(j), c))
                    .collect(),
                rhs: step
                    .rhs
                    .iter()
                    .map(|(key, &c)| {
                        let mut coords = key.clone();
                        coords.resize(k + 1, 0);
                        (ExpTuple::new(coords), c)
                    })
                    .collect(),
            })
            .collect();

        Ok(Tower {
            spec,
            field,
            jumps,
            genera,
            generators,
            relations,
        })
    }

    pub fn spec(&self) -> &TowerSpec {
        &self.spec
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn p(&self) -> u64 {
        self.spec.p
    }

    /// Number of steps `k`.
    pub fn height(&self) -> usize {
        self.spec.steps.len()
    }

    /// Length of exponent tuples over the top field.
    pub fn arity(&self) -> usize {
        self.height() + 1
    }

    pub fn jumps(&self) -> &[u64] {
        &self.jumps
    }

    pub fn genus_sequence(&self) -> &[u64] {
        &self.genera
    }

    /// Genus of the top field.
    pub fn genus(&self) -> u64 {
        *self.genera.last().unwrap()
    }

    /// `(|G_0|, m̄_1, …, m̄_k)`.
    pub fn semigroup_generators(&self) -> &[u64] {
        &self.generators
    }

    /// `p^{n_i}` for step `i` (1-based).
    pub fn step_degree(&self, i: usize) -> u32 {
        self.relations[i - 1].degree
    }

    /// Exponent bound for coordinate `nu` of a reduced tuple; `None` for `nu = 0`.
    pub fn coordinate_bound(&self, nu: usize) -> Option<u32> {
        (nu > 0).then(|| self.relations[nu - 1].degree)
    }

    pub(crate) fn relation(&self, i: usize) -> &StepRelation {
        &self.relations[i - 1]
    }

    /// Pole order of `f_0^{l_0} ⋯ f_{i-1}^{l_{i-1}}` inside `F_i`.
    pub fn level_norm(&self, lambda: &[u32], level: usize) -> Result<u64> {
        if level == 0 || level > self.arity() {
            return Err(Error::Structural(format!("level {level} outside 1..={}", self.arity())));
        }
        if lambda.len() != level {
            return Err(Error::Structural(format!(
                "tuple of length {} used at level {level}",
                lambda.len()
            )));
        }
        let ns: Vec<u32> = self.spec.steps.iter().map(|s| s.n).collect();
        level_norm_raw(self.spec.p, &ns, &self.jumps, lambda, level)
            .ok_or_else(|| Error::Structural("level norm overflows".into()))
    }

    /// Pole order at `P` in the top field of the monomial `f_t`.
    pub fn norm(&self, t: &ExpTuple) -> u64 {
        assert_eq!(t.len(), self.arity(), "tuple arity mismatch");
        t.coords()
            .iter()
            .zip(&self.generators)
            .map(|(&c, &w)| c as u64 * w)
            .sum()
    }

    /// Whether every coordinate past the first is below its step degree.
    pub fn is_reduced(&self, t: &ExpTuple) -> bool {
        t.coords()
            .iter()
            .enumerate()
            .skip(1)
            .all(|(nu, &c)| c < self.relations[nu - 1].degree)
    }

    pub fn petri_report(&self) -> PetriReport {
        let mut gates = Vec::new();
        for (idx, &b) in self.jumps.iter().enumerate() {
            let step = idx + 1;
            let q = self.step_degree(step) as u64;
            let g_below = self.genera[idx];
            let g_above = self.genera[idx + 1];
            let rational = g_below == 0;

            gates.push(PetriGate {
                step,
                gate: Gate::NonHyperelliptic,
                passed: q > 2 && (!rational || b > 2),
                detail: format!("p^n = {q} > 2 and b = {b} > 2 over a rational base"),
            });
            if rational {
                gates.push(PetriGate {
                    step,
                    gate: Gate::NonTrigonal,
                    passed: b > 3,
                    detail: format!("b = {b} > 3"),
                });
                // b (p^n - 2) >= 2 p^n + 2
                gates.push(PetriGate {
                    step,
                    gate: Gate::RationalBaseBound,
                    passed: q > 2 && b as u128 * (q as u128 - 2) >= 2 * q as u128 + 2,
                    detail: format!("b = {b} >= (2p^n + 2)/(p^n - 2) with p^n = {q}"),
                });
            }
            let lhs = q as u128 * b as u128;
            let rhs = 4 * g_above as i128 - 4;
            gates.push(PetriGate {
                step,
                gate: Gate::CanonicalDegree,
                passed: rhs >= 0 && lhs <= rhs as u128,
                detail: format!("p^n b = {lhs} <= 4g - 4 = {rhs}"),
            });
        }
        if self.height() == 1 {
            let m = self.jumps[0];
            let q = self.step_degree(1) as u64;
            let passed = match m {
                0..=3 => false,
                4 | 5 => q >= 5,
                _ => q > 3,
            };
            gates.push(PetriGate {
                step: 1,
                gate: Gate::ArtinSchreierTable,
                passed,
                detail: format!("m = {m}, p^n = {q}: m > 5 needs p^n > 3, m = 4,5 need p^n >= 5"),
            });
        }
        let verdict = gates.iter().all(|g| g.passed);
        PetriReport { gates, verdict }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gate {
    NonHyperelliptic,
    NonTrigonal,
    RationalBaseBound,
    CanonicalDegree,
    ArtinSchreierTable,
}

impl Gate {
    pub fn name(self) -> &'static str {
        match self {
            Gate::NonHyperelliptic => "non-hyperellipticity",
            Gate::NonTrigonal => "non-trigonality",
            Gate::RationalBaseBound => "rational-base bound",
            Gate::CanonicalDegree => "canonical degree",
            Gate::ArtinSchreierTable => "Artin-Schreier table",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PetriGate {
    pub step: usize,
    pub gate: Gate,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PetriReport {
    pub gates: Vec<PetriGate>,
    pub verdict: bool,
}

impl PetriReport {
    pub fn failures(&self) -> impl Iterator<Item = &PetriGate> {
        self.gates.iter().filter(|g| !g.passed)
    }
}

impl fmt::Display for PetriReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.gates {
            writeln!(
                f,
                "  step {} {:<22} {}  ({})",
                g.step,
                g.gate.name(),
                if g.passed { "pass" } else { "FAIL" },
                g.detail
            )?;
        }
        write!(f, "  verdict: {}", if self.verdict { "pass" } else { "fail" })
    }
}
