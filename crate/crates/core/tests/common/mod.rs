//! Curves and properties shared by the property suite and the acceptance run.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::OnceLock;

use hkg_core::function_field::{multiply, naive_multiply, reduce_poly, valuation_at_p, ReducedPoly, Valuation};
use hkg_core::order::colex_cmp;
use hkg_core::relations::{assemble_j, build_gvi, check_initial_shape, enumerate_v, phi_class_map, survivors, G0Mode, GviOutcome};
use hkg_core::{ExpTuple, Lattice, Scalar, Tower, TowerSpec, TowerStep};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

/// `y^q + ... - y = x^m` with `q = p^n`; for `n = 2` the additive part is
/// `y^p - y`.
pub fn as_curve(p: u64, n: u32, m: u32) -> TowerSpec {
    let mut spec = TowerSpec::artin_schreier(p, n, m);
    if n > 1 {
        spec.steps[0].additive.insert(1, 1);
    }
    spec
}

/// Two steps over F_3: `f_1^3 - f_1 = f_0^8`, then `f_2^3 - f_2 = f_0 f_1 + f_0^2`.
pub fn two_step_f3() -> TowerSpec {
    TowerSpec {
        p: 3,
        steps: vec![
            TowerStep {
                n: 1,
                additive: BTreeMap::from([(0, 2)]),
                rhs: BTreeMap::from([(vec![8], 1)]),
            },
            TowerStep {
                n: 1,
                additive: BTreeMap::from([(0, 2)]),
                rhs: BTreeMap::from([(vec![1, 1], 1), (vec![2, 0], 1)]),
            },
        ],
    }
}

pub fn lattice(spec: TowerSpec) -> Lattice {
    Lattice::new(Tower::new(spec).expect("valid tower")).expect("basis")
}

/// Curves that pass every Petri gate, small enough for thousands of cases.
pub fn pool() -> &'static [Lattice] {
    static POOL: OnceLock<Vec<Lattice>> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut out = Vec::new();
        for (p, n) in [(3u64, 1u32), (5, 1), (7, 1), (11, 1), (3, 2)] {
            for m in 4..=9u32 {
                if m as u64 % p == 0 {
                    continue;
                }
                let Ok(tower) = Tower::new(as_curve(p, n, m)) else { continue };
                if !tower.petri_report().verdict || tower.genus() > 20 {
                    continue;
                }
                out.push(Lattice::new(tower).expect("basis"));
            }
        }
        out.push(lattice(two_step_f3()));
        out
    })
}

fn pick() -> impl Strategy<Value = &'static Lattice> {
    let pool = pool();
    (0..pool.len()).prop_map(move |i| &pool[i])
}

/// Tuple whose coordinates `ν >= 1` are below their bounds.
fn reduced_tuple(lat: &'static Lattice) -> impl Strategy<Value = ExpTuple> {
    let t = lat.tower();
    let coords: Vec<BoxedStrategy<u32>> = (0..t.arity())
        .map(|nu| match t.coordinate_bound(nu) {
            Some(b) => (0..b).boxed(),
            None => (0u32..40).boxed(),
        })
        .collect();
    coords.prop_map(ExpTuple::new)
}

/// Tuple with coordinates up to three times their bounds.
fn raw_tuple(lat: &'static Lattice) -> impl Strategy<Value = ExpTuple> {
    let t = lat.tower();
    let coords: Vec<BoxedStrategy<u32>> = (0..t.arity())
        .map(|nu| match t.coordinate_bound(nu) {
            Some(b) => (0..3 * b).boxed(),
            None => (0u32..20).boxed(),
        })
        .collect();
    coords.prop_map(ExpTuple::new)
}

fn reduced_poly(lat: &'static Lattice) -> impl Strategy<Value = ReducedPoly> {
    let p = lat.tower().p() as Scalar;
    prop::collection::vec((reduced_tuple(lat), 1..p), 0..5)
        .prop_map(move |terms| reduce_poly(lat.tower(), terms))
}

pub type Check = Result<(), TestCaseError>;

pub fn norm_injectivity() -> impl Strategy<Value = (&'static Lattice, ExpTuple, ExpTuple)> {
    pick().prop_flat_map(|l| (Just(l), reduced_tuple(l), reduced_tuple(l)))
}

pub fn check_norm_injectivity((l, a, b): (&'static Lattice, ExpTuple, ExpTuple)) -> Check {
    if a != b {
        prop_assert_ne!(l.norm(&a), l.norm(&b), "{} and {} share a norm", a, b);
    }
    Ok(())
}

pub fn downward_closure() -> impl Strategy<Value = (&'static Lattice, usize, Vec<u32>)> {
    pick().prop_flat_map(|l| {
        let len = l.minkowski_sum().len();
        (Just(l), 0..len, prop::collection::vec(0u32..=100, l.tower().arity()))
    })
}

pub fn check_downward_closure((l, idx, percent): (&'static Lattice, usize, Vec<u32>)) -> Check {
    let u = l.minkowski_sum().into_iter().nth(idx).expect("index in range");
    let w = ExpTuple::new(u.coords().iter().zip(&percent).map(|(&c, &pc)| c * pc / 100).collect());
    prop_assert!(w.le_all(&u));
    prop_assert!(l.contains_sum(&w), "{} <= {} but not in A + A", w, u);
    Ok(())
}

pub fn colex_laws() -> impl Strategy<Value = (Vec<u32>, Vec<u32>, Vec<u32>)> {
    (1usize..5).prop_flat_map(|n| {
        let v = || prop::collection::vec(0u32..6, n);
        (v(), v(), v())
    })
}

pub fn check_colex_laws((a, b, c): (Vec<u32>, Vec<u32>, Vec<u32>)) -> Check {
    let (a, b, c) = (ExpTuple::new(a), ExpTuple::new(b), ExpTuple::new(c));
    let ab = colex_cmp(&a, &b).unwrap();
    let bc = colex_cmp(&b, &c).unwrap();
    let ac = colex_cmp(&a, &c).unwrap();
    prop_assert_eq!(ab, colex_cmp(&b, &a).unwrap().reverse());
    prop_assert_eq!(ab.is_eq(), a == b);
    if ab.is_le() && bc.is_le() {
        prop_assert!(ac.is_le());
    }
    prop_assert_eq!(colex_cmp(&(&a + &c), &(&b + &c)).unwrap(), ab);
    // last coordinate dominates
    let rev = |t: &ExpTuple| t.coords().iter().rev().copied().collect::<Vec<_>>();
    prop_assert_eq!(ab, rev(&a).cmp(&rev(&b)));
    Ok(())
}

pub fn valuation_pair() -> impl Strategy<Value = (&'static Lattice, ReducedPoly, ReducedPoly)> {
    pick().prop_flat_map(|l| (Just(l), reduced_poly(l), reduced_poly(l)))
}

pub fn check_valuation_multiplicativity((l, f, g): (&'static Lattice, ReducedPoly, ReducedPoly)) -> Check {
    let t = l.tower();
    let fg = multiply(t, &f, &g);
    let expected = match (valuation_at_p(t, &f), valuation_at_p(t, &g)) {
        (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
        _ => Valuation::Infinite,
    };
    prop_assert_eq!(valuation_at_p(t, &fg), expected);
    Ok(())
}

pub fn reduce_inputs() -> impl Strategy<Value = (&'static Lattice, Vec<(ExpTuple, Scalar)>, ReducedPoly, ReducedPoly)> {
    pick().prop_flat_map(|l| {
        let p = l.tower().p() as Scalar;
        (
            Just(l),
            prop::collection::vec((raw_tuple(l), 0..p), 0..4),
            reduced_poly(l),
            reduced_poly(l),
        )
    })
}

pub fn check_reduce((l, raw, f, g): (&'static Lattice, Vec<(ExpTuple, Scalar)>, ReducedPoly, ReducedPoly)) -> Check {
    let t = l.tower();
    let r = reduce_poly(t, raw);
    prop_assert!(r.terms().all(|(k, _)| t.is_reduced(k)));
    let again = reduce_poly(t, r.terms().map(|(k, c)| (k.clone(), c)));
    prop_assert_eq!(&again, &r);
    prop_assert_eq!(multiply(t, &f, &g), naive_multiply(t, &f, &g));
    prop_assert_eq!(multiply(t, &f, &g), multiply(t, &g, &f));
    Ok(())
}

pub fn initial_shape() -> impl Strategy<Value = (&'static Lattice, usize, usize)> {
    pick().prop_flat_map(|l| (Just(l), 1..=l.tower().height(), 0usize..1000))
}

pub fn check_initial_shape_prop((l, step, pick_v): (&'static Lattice, usize, usize)) -> Check {
    let vs = enumerate_v(l, step).unwrap();
    if vs.is_empty() {
        return Ok(());
    }
    let v = &vs[pick_v % vs.len()];
    if let GviOutcome::Form(q) = build_gvi(l, v, step).unwrap() {
        check_initial_shape(l, v, step, &q).map_err(|e| TestCaseError::fail(e.to_string()))?;
    }
    Ok(())
}

pub fn phi_inputs() -> impl Strategy<Value = (&'static Lattice, u64, bool)> {
    (pick(), any::<u64>(), any::<bool>())
}

pub fn check_phi_bijective((l, seed, star): (&'static Lattice, u64, bool)) -> Check {
    let mode = if star { G0Mode::Star } else { G0Mode::AllPairs };
    let mut forms = assemble_j(l, mode).unwrap().forms();
    // order of the generators must not matter
    let mut state = seed | 1;
    for i in (1..forms.len()).rev() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        forms.swap(i, (state % (i as u64 + 1)) as usize);
    }
    let s = survivors(l, &forms).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let map = phi_class_map(l, &s).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(map.len(), l.class_count());
    prop_assert_eq!(s.len(), l.class_count());
    Ok(())
}
