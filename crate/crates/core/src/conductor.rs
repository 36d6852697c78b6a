//! Generators of the normalization `S̄` and of the conductor `𝔠(S)` as an
//! ideal of `S̄`.
//!
//! Every minimal generator of the conductor has the form
//! `f − b_j + Σ_{i∈I} a_i` where `f` is an f-vector (built from one Apéry
//! element per nonzero remainder class), `b_j` is a remainder (including
//! `b_0 = 0`) and `I` is a proper subset of the extremal indices. The
//! general path enumerates exactly that family, filters it by conductor
//! membership and drops dominated candidates.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::apery::{apery_set, AperyTable};
use crate::error::{Error, Result, Stage};
use crate::membership::Semigroup;
use crate::structure::is_cohen_macaulay;
use crate::vector::IntVec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizationGens {
    pub generators: Vec<IntVec>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FVector {
    /// One representative per nonzero class, `C_1..C_k` in order.
    pub tuple: Vec<IntVec>,
    pub floors: Vec<BigInt>,
    pub value: IntVec,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FastPath {
    None,
    /// One class dominates every other Apéry element in the cone order.
    SingleClass,
    /// Cohen-Macaulay with a unique cone-maximal Apéry element.
    Principal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConductorSet {
    /// Sorted lexicographically.
    pub minimal_generators: Vec<IntVec>,
    pub candidates_examined: usize,
    pub fast_path_used: FastPath,
    /// Distinct f-vectors the candidates were built from (general path only).
    pub f_vectors: Vec<FVector>,
}

/// Keeps `c` unless `c − c′ ∈ S̄` for another `c′` in the set.
pub fn minimalize(s: &Semigroup, set: &BTreeSet<IntVec>) -> Vec<IntVec> {
    set.iter()
        .filter(|c| !set.iter().any(|other| other != *c && s.in_normalization(&(*c - other))))
        .cloned()
        .collect()
}

/// `{b_1..b_k} ∪ {a_1..a_d}` with the reducible elements removed.
pub fn normalization_generators(s: &Semigroup, table: &AperyTable) -> NormalizationGens {
    let all: BTreeSet<IntVec> = table
        .remainders
        .iter()
        .filter(|b| !b.is_zero())
        .chain(s.extremal())
        .cloned()
        .collect();
    NormalizationGens {
        generators: minimalize(s, &all),
    }
}

/// `c ∈ S` and `c + b_j ∈ S` for every remainder.
pub fn conductor_membership(s: &Semigroup, table: &AperyTable, c: &IntVec) -> bool {
    s.in_semigroup(c) && table.remainders[1..].iter().all(|b| s.in_semigroup(&(c + b)))
}

/// `Σ f_i a_i` with `f_i = max_j ⌊[w_j]_i⌋` over the chosen representatives.
pub fn f_vector(s: &Semigroup, table: &AperyTable, tuple: &[IntVec]) -> Result<FVector> {
    let k = table.k();
    if tuple.len() != k {
        return Err(Error::InvalidTuple(format!(
            "expected one element for each of the {k} nonzero classes, got {}",
            tuple.len()
        )));
    }
    let mut floors = vec![BigInt::zero(); s.dim()];
    for (j, w) in tuple.iter().enumerate() {
        let idx = table
            .elements
            .binary_search(w)
            .map_err(|_| Error::InvalidTuple(format!("{w} is not in the Apéry set")))?;
        if table.class_of[idx] != j + 1 {
            return Err(Error::InvalidTuple(format!("{w} is not in class C_{}", j + 1)));
        }
        for (f, x) in floors.iter_mut().zip(&table.floors[idx]) {
            if x > f {
                *f = x.clone();
            }
        }
    }
    let value = s.basis().combine(&floors);
    debug_assert!(conductor_membership(s, table, &value));
    Ok(FVector {
        tuple: tuple.to_vec(),
        floors,
        value,
    })
}

/// Distinct f-vectors over `C_1 × … × C_k`.
///
/// `f` depends only on the componentwise maximum of the members' floors, so
/// the product is folded one class at a time, keeping one representative
/// tuple per distinct running maximum. `max_tuples` caps the number of
/// combinations formed at any step.
pub fn distinct_f_vectors(s: &Semigroup, table: &AperyTable, max_tuples: u64) -> Result<Vec<FVector>> {
    let d = s.dim();
    let mut frontier: BTreeMap<Vec<BigInt>, Vec<IntVec>> = BTreeMap::new();
    frontier.insert(vec![BigInt::zero(); d], Vec::new());
    for j in 1..=table.k() {
        let mut options: BTreeMap<&Vec<BigInt>, &IntVec> = BTreeMap::new();
        for i in table.class_indices(j) {
            options.entry(&table.floors[i]).or_insert(&table.elements[i]);
        }
        let combos = (frontier.len() as u128) * (options.len() as u128);
        if combos > max_tuples as u128 {
            return Err(Error::ResourceLimit {
                stage: Stage::Conductor,
                what: "class tuples",
                required: combos.to_string(),
                cap: max_tuples,
            });
        }
        let mut next: BTreeMap<Vec<BigInt>, Vec<IntVec>> = BTreeMap::new();
        for (f, tuple) in &frontier {
            for (floors, w) in &options {
                let key: Vec<BigInt> = f.iter().zip(floors.iter()).map(|(a, b)| a.max(b).clone()).collect();
                next.entry(key).or_insert_with(|| {
                    let mut t = tuple.clone();
                    t.push((*w).clone());
                    t
                });
            }
        }
        frontier = next;
    }
    Ok(frontier
        .into_iter()
        .map(|(floors, tuple)| FVector {
            value: s.basis().combine(&floors),
            tuple,
            floors,
        })
        .collect())
}

/// The minimal generating set of `𝔠(S)` as an ideal of `S̄`.
pub fn conductor_min_gens(s: &Semigroup, table: &AperyTable, max_tuples: u64) -> Result<ConductorSet> {
    candidate_search(s, table, max_tuples, false)
}

/// The general path with the `l_i = 1 for all i` candidates included too.
/// Only useful for checking that leaving them out is harmless.
pub fn conductor_min_gens_unpruned(s: &Semigroup, table: &AperyTable, max_tuples: u64) -> Result<ConductorSet> {
    candidate_search(s, table, max_tuples, true)
}

fn candidate_search(s: &Semigroup, table: &AperyTable, max_tuples: u64, include_full: bool) -> Result<ConductorSet> {
    let d = s.dim();
    let f_vectors = distinct_f_vectors(s, table, max_tuples)?;
    let masks: u64 = if include_full { 1 << d } else { (1 << d) - 1 };

    let mut candidates = BTreeSet::new();
    let mut examined = 0usize;
    for f in &f_vectors {
        for b in &table.remainders {
            let base = &f.value - b;
            for mask in 0..masks {
                let mut c = base.clone();
                for (i, a) in s.extremal().iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        c = &c + a;
                    }
                }
                examined += 1;
                candidates.insert(c);
            }
        }
    }

    let members: BTreeSet<IntVec> = candidates
        .into_iter()
        .collect::<Vec<_>>()
        .into_par_iter()
        .filter(|c| c.is_nonneg() && conductor_membership(s, table, c))
        .collect::<Vec<_>>()
        .into_iter()
        .collect();

    Ok(ConductorSet {
        minimal_generators: minimalize(s, &members),
        candidates_examined: examined,
        fast_path_used: FastPath::None,
        f_vectors,
    })
}

/// `x ≼_c y` on numerators over the common denominator.
fn cone_le(s: &Semigroup, x: &IntVec, y: &IntVec) -> bool {
    s.in_cone(&(y - x))
}

/// Maximal elements of `set` under `≼_c`.
fn cone_maxima<'a>(s: &Semigroup, set: &[&'a IntVec]) -> Vec<&'a IntVec> {
    set.iter()
        .filter(|m| !set.iter().any(|w| w != *m && cone_le(s, m, w)))
        .copied()
        .collect()
}

/// Closed-form conductor generators when one remainder class dominates the
/// whole Apéry set in the cone order. Returns `None` when neither shortcut
/// applies; when it returns a set, it equals [`conductor_min_gens`].
pub fn conductor_fast_path(s: &Semigroup, table: &AperyTable) -> Option<ConductorSet> {
    let k = table.k();
    if k == 0 {
        return None;
    }
    let nonzero: Vec<&IntVec> = table.remainders[1..].iter().collect();
    let top_remainders = cone_maxima(s, &nonzero);

    let build = |class: Vec<&IntVec>, path: FastPath| {
        let raw: BTreeSet<IntVec> = class
            .iter()
            .flat_map(|w| top_remainders.iter().map(move |b| *w - *b))
            .collect();
        debug_assert!(raw.iter().all(|c| conductor_membership(s, table, c)));
        ConductorSet {
            candidates_examined: raw.len(),
            minimal_generators: minimalize(s, &raw),
            fast_path_used: path,
            f_vectors: Vec::new(),
        }
    };

    if is_cohen_macaulay(s, table) && table.max_c.len() == 1 {
        return Some(build(vec![&table.max_c[0]], FastPath::Principal));
    }

    for j in 1..=k {
        let class = table.class(j);
        let dominates = class.iter().all(|w| {
            table
                .elements
                .iter()
                .zip(&table.class_of)
                .filter(|(_, &c)| c != j)
                .all(|(other, _)| cone_le(s, other, w))
        });
        if !dominates {
            continue;
        }
        let b = &table.remainders[j];
        let is_min = nonzero.iter().all(|other| cone_le(s, b, other));
        if class.len() == 1 || is_min {
            return Some(build(class, FastPath::SingleClass));
        }
    }
    None
}

/// Frobenius number of a numerical semigroup: the conductor generator
/// minus one, `−1` for `ℕ` itself.
pub fn frobenius_number(s: &Semigroup, max_tuples: u64) -> Result<BigInt> {
    if s.dim() != 1 {
        return Err(Error::NotNumerical(format!("dimension is {}, not 1", s.dim())));
    }
    let g = s.generators().iter().fold(BigInt::zero(), |acc, v| acc.gcd(&v.0[0]));
    if !g.is_one() {
        return Err(Error::NotNumerical(format!("generators have gcd {g}")));
    }
    let table = apery_set(s, max_tuples)?;
    let gens = conductor_min_gens(s, &table, max_tuples)?.minimal_generators;
    assert_eq!(gens.len(), 1, "the conductor of a numerical semigroup is principal");
    let frobenius = &gens[0].0[0] - BigInt::one();
    let e = &s.extremal()[0].0[0];
    let top = table.elements.iter().map(|w| &w.0[0]).max().expect("0 is always present");
    debug_assert_eq!(frobenius, top - e);
    Ok(frobenius)
}
