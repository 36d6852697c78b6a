//! Extreme rays of the cone spanned by the generators, simpliciality, and
//! selection of the extremal generators `a_1..a_d`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{lattice_of, lp_feasible_nonneg, CoordinateSystem};
use crate::vector::IntVec;

#[derive(Clone, Debug)]
pub struct ConeInfo {
    /// Ambient dimension `d`.
    pub ambient_dim: usize,
    /// Rank of the generator matrix.
    pub dimension: usize,
    /// Minimal generators; the extremal ones come first, in input order,
    /// followed by the rest, also in input order.
    pub generators: Vec<IntVec>,
    /// For each entry of `generators`, its index in the caller's list.
    pub input_indices: Vec<usize>,
    /// Primitive direction of each extreme ray, aligned with the extremal
    /// generators at the front of `generators`.
    pub extreme_ray_directions: Vec<IntVec>,
    /// Input generators dropped because the others already generate them
    /// (duplicates included).
    pub removed: Vec<IntVec>,
    pub is_simplicial: bool,
    basis: Option<CoordinateSystem>,
}

impl ConeInfo {
    /// Number of extremal generators at the front of `generators`.
    pub fn num_extremal(&self) -> usize {
        self.extreme_ray_directions.len()
    }

    pub fn extremal_generators(&self) -> &[IntVec] {
        &self.generators[..self.num_extremal()]
    }

    pub fn other_generators(&self) -> &[IntVec] {
        &self.generators[self.num_extremal()..]
    }

    /// Indices (into `generators`) of the extremal generators.
    pub fn extremal_generator_indices(&self) -> std::ops::Range<usize> {
        0..self.num_extremal()
    }

    /// Coordinates in the extremal basis; present iff the cone is simplicial.
    pub fn basis(&self) -> Option<&CoordinateSystem> {
        self.basis.as_ref()
    }
}

/// `v / gcd(entries)`.
pub fn primitive(v: &IntVec) -> IntVec {
    let g = v.0.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v.clone();
    }
    IntVec(v.0.iter().map(|x| x / &g).collect())
}

/// Whether `v` is an ℕ-combination of `gens` (all nonzero and nonnegative).
///
/// Each subtraction lowers the coordinate sum, so the search terminates.
pub(crate) fn expressible(gens: &[IntVec], v: &IntVec, memo: &mut HashMap<IntVec, bool>) -> bool {
    if v.is_zero() {
        return true;
    }
    if !v.is_nonneg() {
        return false;
    }
    if let Some(&known) = memo.get(v) {
        return known;
    }
    let found = gens
        .iter()
        .filter(|g| g.le_componentwise(v))
        .any(|g| expressible(gens, &(v - g), memo));
    memo.insert(v.clone(), found);
    found
}

fn validate(generators: &[IntVec]) -> Result<usize> {
    let first = generators
        .first()
        .ok_or_else(|| Error::InvalidInput("no generators given".into()))?;
    let d = first.dim();
    if d == 0 {
        return Err(Error::InvalidInput("generators must have dimension at least 1".into()));
    }
    for g in generators {
        if g.dim() != d {
            return Err(Error::InvalidInput(format!(
                "generator {g} has dimension {}, expected {d}",
                g.dim()
            )));
        }
        if g.0.iter().any(Signed::is_negative) {
            return Err(Error::InvalidInput(format!("generator {g} has a negative entry")));
        }
        if g.is_zero() {
            return Err(Error::InvalidInput("the zero vector is not a valid generator".into()));
        }
    }
    Ok(d)
}

/// Minimalizes the generator list, finds the extreme rays of its cone and
/// picks the extremal generator on each.
///
/// A non-simplicial cone is not an error here (`is_simplicial` is false);
/// a rank-deficient generator set is.
pub fn analyze_cone(generators: &[IntVec]) -> Result<ConeInfo> {
    let d = validate(generators)?;

    let rank = lattice_of(generators, d).rank();
    if rank < d {
        return Err(Error::RankDeficient { rank, dim: d });
    }

    let mut removed = Vec::new();
    let mut distinct: Vec<(usize, IntVec)> = Vec::new();
    for (i, g) in generators.iter().enumerate() {
        if distinct.iter().any(|(_, h)| h == g) {
            removed.push(g.clone());
        } else {
            distinct.push((i, g.clone()));
        }
    }

    // In a pointed monoid the irreducibles are exactly the generators not
    // expressible by the others, so all redundant ones can go at once.
    let mut kept: Vec<(usize, IntVec)> = Vec::new();
    for (pos, (i, g)) in distinct.iter().enumerate() {
        let others: Vec<IntVec> = distinct
            .iter()
            .enumerate()
            .filter(|&(p, _)| p != pos)
            .map(|(_, (_, h))| h.clone())
            .collect();
        if expressible(&others, g, &mut HashMap::new()) {
            removed.push(g.clone());
        } else {
            kept.push((*i, g.clone()));
        }
    }

    // parallel classes keyed by primitive direction, in order of first appearance
    let mut classes: BTreeMap<IntVec, Vec<usize>> = BTreeMap::new();
    let mut class_order: Vec<IntVec> = Vec::new();
    for (pos, (_, g)) in kept.iter().enumerate() {
        let dir = primitive(g);
        let entry = classes.entry(dir.clone()).or_default();
        if entry.is_empty() {
            class_order.push(dir);
        }
        entry.push(pos);
    }

    let mut extremal_pos: Vec<(usize, IntVec)> = Vec::new();
    for dir in &class_order {
        let members = &classes[dir];
        let outside: Vec<IntVec> = kept
            .iter()
            .enumerate()
            .filter(|(p, _)| !members.contains(p))
            .map(|(_, (_, g))| g.clone())
            .collect();
        if lp_feasible_nonneg(&outside, dir) {
            continue;
        }
        // members are positive multiples of `dir`; the smallest is componentwise smallest
        let smallest = *members
            .iter()
            .min_by(|&&a, &&b| kept[a].1.total().cmp(&kept[b].1.total()))
            .expect("parallel class is nonempty");
        extremal_pos.push((smallest, dir.clone()));
    }
    extremal_pos.sort_by_key(|(p, _)| *p);

    let is_simplicial = extremal_pos.len() == d;
    let mut ordered: Vec<(usize, IntVec)> = extremal_pos.iter().map(|(p, _)| kept[*p].clone()).collect();
    for (p, entry) in kept.iter().enumerate() {
        if !extremal_pos.iter().any(|(q, _)| *q == p) {
            ordered.push(entry.clone());
        }
    }

    let generators: Vec<IntVec> = ordered.iter().map(|(_, g)| g.clone()).collect();
    let basis = if is_simplicial {
        Some(CoordinateSystem::new(generators[..d].to_vec())?)
    } else {
        None
    };

    Ok(ConeInfo {
        ambient_dim: d,
        dimension: rank,
        input_indices: ordered.iter().map(|(i, _)| *i).collect(),
        extreme_ray_directions: extremal_pos.into_iter().map(|(_, dir)| dir).collect(),
        generators,
        removed,
        is_simplicial,
        basis,
    })
}

/// Whether `v` lies in the closed cone spanned by the generators.
pub fn in_cone(cone: &ConeInfo, v: &IntVec) -> bool {
    match cone.basis() {
        Some(b) => b.in_cone(v),
        None => lp_feasible_nonneg(&cone.generators, v),
    }
}
