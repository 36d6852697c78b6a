mod common;

use std::collections::BTreeSet;

use asg_core::cone::{analyze_cone, primitive};
use asg_core::conductor::{conductor_membership, conductor_min_gens, conductor_min_gens_unpruned, distinct_f_vectors};
use asg_core::linalg::{coords_in_basis, lattice_of, lp_feasible_nonneg, nonneg_witness, CoordinateSystem, Rat};
use asg_core::membership::in_parallelotope;
use asg_core::oracle::{enumerate_box, oracle_conductor_elements};
use asg_core::report::{analyze, Limits};
use asg_core::structure::{classify, quasi_frobenius};
use asg_core::{IntVec, Semigroup};
use common::{random_instance, Shape, CAP};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn vec_strategy(d: usize, lo: i64, hi: i64) -> impl Strategy<Value = IntVec> {
    proptest::collection::vec(lo..=hi, d).prop_map(|xs| IntVec::from_i64s(&xs))
}

fn basis_strategy(d: usize) -> impl Strategy<Value = Vec<IntVec>> {
    proptest::collection::vec(vec_strategy(d, -6, 6), d)
        .prop_filter("singular", |b| CoordinateSystem::new(b.clone()).is_ok())
}

fn instance(seed: u64, d: usize, shape: Shape) -> common::Instance {
    random_instance(&mut ChaCha8Rng::seed_from_u64(seed), d, shape)
}

fn sum_in(vs: &[IntVec], coeffs: &[i64], d: usize) -> IntVec {
    vs.iter()
        .zip(coeffs)
        .fold(IntVec::zero(d), |acc, (v, &c)| &acc + &v.scale(&BigInt::from(c)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn coordinates_recompose(
        (basis, v) in (1usize..=3).prop_flat_map(|d| (basis_strategy(d), vec_strategy(d, -20, 20)))
    ) {
        let d = v.dim();
        let coords = coords_in_basis(&basis, &v).unwrap();
        let mut total = vec![Rat::zero(); d];
        for (c, b) in coords.0.iter().zip(&basis) {
            for (t, x) in total.iter_mut().zip(&b.0) {
                *t += c * Rat::from(x.clone());
            }
        }
        let expected: Vec<Rat> = v.0.iter().map(|x| Rat::from(x.clone())).collect();
        prop_assert_eq!(total, expected);
        prop_assert_eq!(CoordinateSystem::new(basis).unwrap().coords(&v), coords);
    }

    #[test]
    fn lattice_membership_matches_bounded_search(
        d in 2usize..=3,
        gens in proptest::collection::vec(vec_strategy(3, -3, 3), 2..=3),
        target in vec_strategy(3, -4, 4),
    ) {
        let gens: Vec<IntVec> = gens.into_iter().map(|g| IntVec(g.0[..d].to_vec())).collect();
        let target = IntVec(target.0[..d].to_vec());
        let l = lattice_of(&gens, d);
        let n = gens.len();
        let mut found = false;
        let mut coeffs = vec![-12i64; n];
        'search: loop {
            if sum_in(&gens, &coeffs, d) == target {
                found = true;
                break;
            }
            for c in coeffs.iter_mut() {
                *c += 1;
                if *c <= 12 {
                    continue 'search;
                }
                *c = -12;
            }
            break;
        }
        if found {
            prop_assert!(l.contains(&target));
        }
        let combo = sum_in(&gens, &(0..n as i64).map(|i| i - 1).collect::<Vec<_>>(), d);
        prop_assert!(l.contains(&combo));
        if n == d {
            if let Ok(coords) = coords_in_basis(&gens, &target) {
                prop_assert_eq!(l.contains(&target), coords.0.iter().all(|c| c.is_integer()));
            }
        }
    }

    #[test]
    fn lp_witness_verifies_and_infeasibility_survives_grid_search(
        cols in proptest::collection::vec(vec_strategy(2, -3, 4), 1..=3),
        target in vec_strategy(2, -4, 4),
    ) {
        match nonneg_witness(&cols, &target) {
            Some(w) => {
                prop_assert!(w.iter().all(|x| !x.is_negative()));
                let mut total = [Rat::zero(), Rat::zero()];
                for (x, c) in w.iter().zip(&cols) {
                    for (t, e) in total.iter_mut().zip(&c.0) {
                        *t += x * Rat::from(e.clone());
                    }
                }
                prop_assert_eq!(total.to_vec(), target.0.iter().map(|x| Rat::from(x.clone())).collect::<Vec<_>>());
                prop_assert!(lp_feasible_nonneg(&cols, &target));
            }
            None => {
                // numerators ≤ 10 over denominators ≤ 6
                for den in 1..=6i64 {
                    let n = cols.len();
                    let mut num = vec![0i64; n];
                    loop {
                        let lhs = sum_in(&cols, &num, 2);
                        prop_assert_ne!(lhs, target.scale(&BigInt::from(den)));
                        let mut carry = true;
                        for x in num.iter_mut() {
                            if !carry { break; }
                            *x += 1;
                            carry = *x > 10;
                            if carry { *x = 0; }
                        }
                        if carry { break; }
                    }
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cone_invariants(seed in any::<u64>(), d in 1usize..=3) {
        let inst = instance(seed, d, Shape::Any);
        let cone = analyze_cone(&inst.generators).unwrap();
        let basis = cone.basis().unwrap();
        for g in &inst.generators {
            prop_assert!(basis.in_cone(g));
        }
        for dir in &cone.extreme_ray_directions {
            let rest: Vec<IntVec> = cone.generators.iter().filter(|g| primitive(g) != *dir).cloned().collect();
            prop_assert!(!lp_feasible_nonneg(&rest, dir));
        }
        if d == 1 {
            let min = inst.s.generators().iter().min().unwrap();
            prop_assert_eq!(&inst.s.extremal()[0], min);
        }
    }

    #[test]
    fn membership_invariants(seed in any::<u64>(), d in 1usize..=3) {
        let inst = instance(seed, d, Shape::Any);
        let s = &inst.s;
        let e = enumerate_box(s, inst.box_bound.min(12)).unwrap();
        for v in e.all_points() {
            let r = s.remainder(&v);
            if let Ok(r) = r {
                prop_assert!(in_parallelotope(s, &r.vector));
                prop_assert!(r.floors.iter().all(|f| !f.is_negative()));
                prop_assert_eq!(&v - &r.vector, s.basis().combine(&r.floors));
            }
            if s.in_semigroup(&v) {
                prop_assert!(s.in_normalization(&v));
                let o = s.ord(&v).unwrap();
                for g in s.generators() {
                    prop_assert!(s.ord(&(&v + g)).unwrap() >= o + 1);
                }
            }
        }
        prop_assert!(!s.in_semigroup(&IntVec(vec![BigInt::from(-1); d])));
        prop_assert!(!s.is_pseudo_frobenius(&IntVec(vec![BigInt::from(-1); d])));
    }

    #[test]
    fn apery_invariants(seed in any::<u64>(), d in 1usize..=3) {
        let inst = instance(seed, d, Shape::Any);
        let (s, t) = (&inst.s, &inst.table);
        for w in &t.elements {
            prop_assert!(s.in_semigroup(w));
            for a in s.extremal() {
                prop_assert!(!s.in_semigroup(&(w - a)));
            }
        }
        for w in &t.elements {
            for z in &t.elements {
                let diff = w - z;
                if s.in_semigroup(&diff) {
                    prop_assert!(t.contains(&diff));
                }
            }
        }
        let l = s.lattice_extremal();
        for (i, b) in t.remainders.iter().enumerate() {
            for c in &t.remainders[i + 1..] {
                prop_assert!(!l.contains(&(b - c)));
            }
        }
        let max_s: BTreeSet<&IntVec> = t.max_s.iter().collect();
        prop_assert!(t.max_c.iter().all(|m| max_s.contains(m)));
        let mut sorted = t.elements.clone();
        sorted.sort();
        prop_assert_eq!(&sorted, &t.elements);
    }

    #[test]
    fn structure_invariants(seed in any::<u64>(), d in 1usize..=3) {
        let inst = instance(seed, d, Shape::Any);
        let (s, t) = (&inst.s, &inst.table);
        let c = classify(s, t);
        prop_assert_eq!(c.typ, t.max_s.len());

        let e = enumerate_box(s, inst.box_bound).unwrap();
        let gap_in_box = e.sbar_points().any(|p| !e.in_s(&p));
        prop_assert_eq!(c.is_normal, !gap_in_box, "{:?}", inst.generators);

        let gcd = s.generators().iter().fold(BigInt::zero(), |acc, g| num_integer::Integer::gcd(&acc, &g.0[0]));
        if d == 1 && gcd.is_one() {
            // brute-force pseudo-Frobenius numbers below the largest Apéry element
            let top = t.elements.iter().map(|w| w.0[0].to_i64().unwrap()).max().unwrap();
            let pf: Vec<IntVec> = (1..=top)
                .map(|x| IntVec::from_i64s(&[x]))
                .filter(|v| s.is_pseudo_frobenius(v))
                .collect();
            prop_assert_eq!(quasi_frobenius(s, t), pf);
        }
    }

    #[test]
    fn equal_length_expressions_in_embedding_dimension_d_plus_two(seed in any::<u64>(), d in 1usize..=3) {
        let inst = instance(seed, d, Shape::Two);
        let (s, t) = (&inst.s, &inst.table);
        let g = s.non_extremal();
        for w in &t.elements {
            let mut lengths = BTreeSet::new();
            let cap = w.total().to_i64().unwrap();
            for m in 0..=cap {
                for n in 0..=cap - m {
                    let x = &g[0].scale(&BigInt::from(m)) + &g[1].scale(&BigInt::from(n));
                    if &x == w {
                        prop_assert!(lengths.insert(m + n), "{} has two expressions of length {}", w, m + n);
                    }
                }
            }
        }
    }

    #[test]
    fn conductor_invariants(seed in any::<u64>(), d in 1usize..=3) {
        let inst = instance(seed, d, Shape::Any);
        let (s, t) = (&inst.s, &inst.table);
        let fs = distinct_f_vectors(s, t, CAP).unwrap();
        for f in &fs {
            prop_assert!(conductor_membership(s, t, &f.value));
        }
        let general = conductor_min_gens(s, t, CAP).unwrap();
        let unpruned = conductor_min_gens_unpruned(s, t, CAP).unwrap();
        prop_assert_eq!(&general.minimal_generators, &unpruned.minimal_generators);
        let mut sorted = general.minimal_generators.clone();
        sorted.sort();
        prop_assert_eq!(&sorted, &general.minimal_generators);

        // integral conductor elements dominate some f-vector coordinatewise
        let bound = general.minimal_generators.iter().flat_map(|g| g.0.iter()).max().unwrap().to_u64().unwrap() + 2;
        if let Ok(found) = oracle_conductor_elements(s, bound.min(3 * inst.box_bound + 2)) {
            let basis = s.basis();
            for c in found {
                let nums = basis.numerators(&c);
                if nums.iter().any(|n| !(n % basis.denominator()).is_zero()) {
                    continue;
                }
                let coords: Vec<BigInt> = nums.iter().map(|n| n / basis.denominator()).collect();
                prop_assert!(fs.iter().any(|f| coords.iter().zip(&f.floors).all(|(x, y)| x >= y)), "{}", c);
            }
        }
    }

    #[test]
    fn report_round_trip_and_thread_independence(seed in any::<u64>(), d in 1usize..=3) {
        let inst = instance(seed, d, Shape::Any);
        let run = |threads: usize| {
            rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap()
                .install(|| analyze(&inst.generators, Limits::default()).unwrap())
        };
        let one = run(1);
        let four = run(4);
        let json = serde_json::to_string_pretty(&one).unwrap();
        prop_assert_eq!(&json, &serde_json::to_string_pretty(&four).unwrap());
        let back: asg_core::AnalysisReport = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, one);
    }
}

#[test]
fn semigroup_generators_are_minimal() {
    let s = Semigroup::new(&[IntVec::from_i64s(&[2, 0]), IntVec::from_i64s(&[0, 2]), IntVec::from_i64s(&[2, 2]), IntVec::from_i64s(&[1, 1])]).unwrap();
    assert_eq!(s.generators().len(), 3);
    assert!(s.cone().removed.contains(&IntVec::from_i64s(&[2, 2])));
}
