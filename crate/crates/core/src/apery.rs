//! `Ap(S,E)` for `E = {a_1,…,a_d}`, computed by scanning the finite box
//! `Γ = {Σ n_i a_{d+i} : 0 ≤ n_i < l_i}` and keeping the elements from
//! which no extremal generator can be subtracted.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, Stage};
use crate::membership::Semigroup;
use crate::vector::IntVec;

/// Partial order used to pick maximal Apéry elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Order {
    /// `x ≼_S y` iff `y − x ∈ S`.
    Semigroup,
    /// `x ≼_c y` iff `y − x ∈ co(S)`.
    Cone,
}

#[derive(Clone, Debug)]
pub struct AperyTable {
    /// Sorted lexicographically.
    pub elements: Vec<IntVec>,
    /// `⌊[w]_i⌋` for each element, aligned with `elements`.
    pub floors: Vec<Vec<BigInt>>,
    /// Index into `remainders` of `r(w)`, aligned with `elements`.
    pub class_of: Vec<usize>,
    /// `b_0 = 0` followed by the other distinct remainders in sorted order.
    pub remainders: Vec<IntVec>,
    /// `l_1..l_r`, one per non-extremal generator.
    pub gamma_bounds: Vec<BigInt>,
    pub max_s: Vec<IntVec>,
    pub max_c: Vec<IntVec>,
}

impl AperyTable {
    /// Number of nonzero remainders.
    pub fn k(&self) -> usize {
        self.remainders.len() - 1
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, v: &IntVec) -> bool {
        self.elements.binary_search(v).is_ok()
    }

    /// Members of `C_j`, in sorted order.
    pub fn class(&self, j: usize) -> Vec<&IntVec> {
        self.elements
            .iter()
            .zip(&self.class_of)
            .filter(|(_, &c)| c == j)
            .map(|(w, _)| w)
            .collect()
    }

    /// Indices (into `elements`) of the members of `C_j`.
    pub fn class_indices(&self, j: usize) -> Vec<usize> {
        (0..self.elements.len()).filter(|&i| self.class_of[i] == j).collect()
    }

    /// All classes `C_0..C_k`.
    pub fn classes(&self) -> Vec<Vec<&IntVec>> {
        (0..self.remainders.len()).map(|j| self.class(j)).collect()
    }

    /// Every floor is zero, i.e. `Ap(S,E) ⊆ P_S`.
    pub fn inside_parallelotope(&self) -> bool {
        self.floors.iter().all(|f| f.iter().all(Zero::is_zero))
    }

    pub fn maxima(&self, order: Order) -> &[IntVec] {
        match order {
            Order::Semigroup => &self.max_s,
            Order::Cone => &self.max_c,
        }
    }
}

/// Smallest `l_i > 0` with `l_i · a_{d+i}` in the ℕ-span of the extremal
/// generators: the lcm of the denominators of its extremal coordinates.
pub fn gamma_bounds(s: &Semigroup) -> Vec<BigInt> {
    let basis = s.basis();
    let den = basis.denominator();
    s.non_extremal()
        .iter()
        .map(|g| {
            basis
                .numerators(g)
                .iter()
                .fold(BigInt::one(), |acc, n| acc.lcm(&(den / n.gcd(den))))
        })
        .collect()
}

/// Computes `Ap(S,E)` together with its remainder classes and maxima.
///
/// Fails with `ResourceLimit` when `Π l_i` exceeds `max_tuples`.
pub fn apery_set(s: &Semigroup, max_tuples: u64) -> Result<AperyTable> {
    let bounds = gamma_bounds(s);
    let total: BigInt = bounds.iter().product();
    if total > BigInt::from(max_tuples) {
        return Err(Error::ResourceLimit {
            stage: Stage::Apery,
            what: "Γ tuples",
            required: total.to_string(),
            cap: max_tuples,
        });
    }
    let limits: Vec<usize> = bounds
        .iter()
        .map(|l| l.to_usize().expect("bounded by max_tuples"))
        .collect();

    let d = s.dim();
    let others = s.non_extremal();
    let mut values = BTreeSet::new();
    let mut counter = vec![0usize; limits.len()];
    // running sum Σ counter_i · a_{d+i}, updated odometer-style
    let mut current = IntVec::zero(d);
    'outer: loop {
        values.insert(current.clone());
        for i in 0..limits.len() {
            if counter[i] + 1 < limits[i] {
                counter[i] += 1;
                current = &current + &others[i];
                continue 'outer;
            }
            current = &current - &others[i].scale(&BigInt::from(counter[i]));
            counter[i] = 0;
        }
        break;
    }

    let candidates: Vec<IntVec> = values.into_iter().collect();
    let elements: Vec<IntVec> = candidates
        .into_par_iter()
        .filter(|v| {
            s.extremal().iter().all(|a| {
                let rest = v - a;
                !s.in_semigroup(&rest)
            })
        })
        .collect();

    Ok(build_table(s, elements, bounds))
}

/// Attaches remainders, classes and maxima to a sorted Apéry set.
pub(crate) fn build_table(s: &Semigroup, elements: Vec<IntVec>, gamma_bounds: Vec<BigInt>) -> AperyTable {
    let basis = s.basis();
    let floors: Vec<Vec<BigInt>> = elements.iter().map(|w| basis.floors(w)).collect();
    let rems: Vec<IntVec> = elements
        .iter()
        .zip(&floors)
        .map(|(w, f)| w - &basis.combine(f))
        .collect();

    let zero = IntVec::zero(s.dim());
    let nonzero: BTreeSet<&IntVec> = rems.iter().filter(|r| !r.is_zero()).collect();
    let mut remainders = vec![zero];
    remainders.extend(nonzero.into_iter().cloned());
    let index: BTreeMap<&IntVec, usize> = remainders.iter().enumerate().map(|(i, r)| (r, i)).collect();
    let class_of = rems.iter().map(|r| index[r]).collect();

    let mut table = AperyTable {
        elements,
        floors,
        class_of,
        remainders,
        gamma_bounds,
        max_s: Vec::new(),
        max_c: Vec::new(),
    };
    table.max_s = maxima(s, &table, Order::Semigroup);
    table.max_c = maxima(s, &table, Order::Cone);
    table
}

/// Maximal elements of the Apéry set under `order`.
///
/// For `≼_S` this uses that `Ap(S,E)` is closed downward: `m` is
/// dominated iff `m + g` stays in the set for some generator `g`.
pub fn maxima(s: &Semigroup, table: &AperyTable, order: Order) -> Vec<IntVec> {
    match order {
        Order::Semigroup => table
            .elements
            .iter()
            .filter(|m| !s.non_extremal().iter().any(|g| table.contains(&(*m + g))))
            .cloned()
            .collect(),
        Order::Cone => {
            let basis = s.basis();
            let nums: Vec<Vec<BigInt>> = table.elements.iter().map(|w| basis.numerators(w)).collect();
            (0..table.elements.len())
                .filter(|&m| {
                    !(0..table.elements.len()).any(|w| {
                        w != m && nums[w].iter().zip(&nums[m]).all(|(x, y)| x >= y)
                    })
                })
                .map(|m| table.elements[m].clone())
                .collect()
        }
    }
}

/// Maximal elements under `≼_S` by the definition: no other element `w`
/// with `w − m ∈ S`. Quadratic in `|Ap(S,E)|`.
pub fn maxima_by_definition(s: &Semigroup, table: &AperyTable) -> Vec<IntVec> {
    table
        .elements
        .iter()
        .filter(|m| {
            !table
                .elements
                .iter()
                .any(|w| w != *m && s.in_semigroup(&(w - m)))
        })
        .cloned()
        .collect()
}
