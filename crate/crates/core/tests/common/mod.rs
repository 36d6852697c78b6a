#![allow(dead_code)]

use std::collections::BTreeSet;

use asg_core::apery::{apery_set, gamma_bounds, AperyTable};
use asg_core::cone::primitive;
use asg_core::linalg::CoordinateSystem;
use asg_core::oracle::apery_box_bound;
use asg_core::{IntVec, Semigroup};
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const CAP: u64 = 10_000_000;

pub fn set(vs: &[IntVec]) -> BTreeSet<IntVec> {
    vs.iter().cloned().collect()
}

pub fn v(xs: &[i64]) -> IntVec {
    IntVec::from_i64s(xs)
}

/// Largest box side the random instances may need, per dimension; keeps
/// the brute-force sweeps small.
pub fn box_side_cap(d: usize) -> u64 {
    match d {
        1 => 400,
        2 => 60,
        _ => 22,
    }
}

fn random_vec(rng: &mut ChaCha8Rng, d: usize, max: i64) -> IntVec {
    IntVec((0..d).map(|_| BigInt::from(rng.gen_range(0..=max))).collect())
}

fn random_extremals(rng: &mut ChaCha8Rng, d: usize, max: i64) -> (Vec<IntVec>, CoordinateSystem) {
    loop {
        let basis: Vec<IntVec> = (0..d).map(|_| random_vec(rng, d, max)).collect();
        if basis.iter().any(IntVec::is_zero) {
            continue;
        }
        if let Ok(cs) = CoordinateSystem::new(basis.clone()) {
            return (basis, cs);
        }
    }
}

/// Random points of the cone over `cs`, none of them zero.
fn random_interior(rng: &mut ChaCha8Rng, cs: &CoordinateSystem, d: usize, max: i64, count: usize) -> Vec<IntVec> {
    let mut out = Vec::new();
    while out.len() < count {
        let p = random_vec(rng, d, max);
        if !p.is_zero() && cs.in_cone(&p) {
            out.push(p);
        }
    }
    out
}

/// Shape of the non-extremal part of a random instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    /// One to three arbitrary points of the cone.
    Any,
    /// Exactly two, so embedding dimension `d + 2` if both survive.
    Two,
    /// Multiples of a single direction.
    Collinear,
}

fn raw_generators(rng: &mut ChaCha8Rng, d: usize, shape: Shape) -> Vec<IntVec> {
    if d == 1 {
        let count = match shape {
            Shape::Two => 3,
            _ => rng.gen_range(2..=4),
        };
        return (0..count).map(|_| IntVec::from_i64s(&[rng.gen_range(2..=23)])).collect();
    }
    let max = if d == 2 { 7 } else { 4 };
    let (mut gens, cs) = random_extremals(rng, d, max);
    match shape {
        Shape::Any => {
            let r = rng.gen_range(1..=3);
            gens.extend(random_interior(rng, &cs, d, max + 2, r));
        }
        Shape::Two => gens.extend(random_interior(rng, &cs, d, max + 2, 2)),
        Shape::Collinear => {
            let mut p = IntVec::zero(d);
            while p.is_zero() {
                for a in &gens {
                    p = &p + &a.scale(&BigInt::from(rng.gen_range(0..=2)));
                }
            }
            let p = primitive(&p);
            let r = rng.gen_range(1..=3);
            for _ in 0..r {
                gens.push(p.scale(&BigInt::from(rng.gen_range(1..=4))));
            }
        }
    }
    gens
}

pub struct Instance {
    pub generators: Vec<IntVec>,
    pub s: Semigroup,
    pub table: AperyTable,
    pub box_bound: u64,
}

/// A random simplicial semigroup in dimension `d` whose Apéry box fits the
/// brute-force caps (`Π l_i ≤ 10^4`, side ≤ [`box_side_cap`]).
pub fn random_instance(rng: &mut ChaCha8Rng, d: usize, shape: Shape) -> Instance {
    loop {
        let generators = raw_generators(rng, d, shape);
        let Ok(s) = Semigroup::new(&generators) else { continue };
        if shape == Shape::Two && s.embedding_dimension() != d + 2 {
            continue;
        }
        let bound = apery_box_bound(&s);
        if bound > box_side_cap(d) {
            continue;
        }
        let product: BigInt = gamma_bounds(&s).iter().fold(BigInt::one(), |acc, l| acc * l);
        if product.to_u64().is_none_or(|p| p > 10_000) {
            continue;
        }
        let Ok(table) = apery_set(&s, CAP) else { continue };
        return Instance {
            generators,
            s,
            table,
            box_bound: bound,
        };
    }
}

/// Dimension cycling 1, 2, 3 so every dimension gets a third of the draws.
pub fn dim_for(i: usize) -> usize {
    i % 3 + 1
}
