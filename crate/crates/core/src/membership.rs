//! The validated semigroup and its decision procedures: membership in `S`,
//! `Gr(S)` and the normalization, order, remainders, and the
//! pseudo-Frobenius predicate.

use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::cone::{analyze_cone, ConeInfo};
use crate::error::{Error, Result};
use crate::linalg::{lattice_of, CoordinateSystem, LatticeBasis, RatCoords};
use crate::vector::IntVec;

/// A simplicial affine semigroup `S ⊆ ℕ^d` given by its minimal generators.
///
/// The first `d` generators are the extremal ones `a_1..a_d`. Membership
/// answers are memoized; the cache is shared between threads behind a mutex
/// and never changes an answer, only how fast it arrives.
#[derive(Debug)]
pub struct Semigroup {
    cone: ConeInfo,
    lattice_full: LatticeBasis,
    lattice_extremal: LatticeBasis,
    // generator indices by descending coordinate sum
    dfs_order: Vec<usize>,
    membership_cache: Mutex<HashMap<IntVec, bool>>,
    order_cache: Mutex<HashMap<IntVec, u64>>,
}

/// `r(a)` and the floors `n_i = ⌊[a]_i⌋` with `a = Σ n_i a_i + r(a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Remainder {
    pub vector: IntVec,
    pub floors: Vec<BigInt>,
}

impl Semigroup {
    /// Validates, minimalizes and analyzes `generators`.
    pub fn new(generators: &[IntVec]) -> Result<Self> {
        Self::from_cone(analyze_cone(generators)?)
    }

    pub fn from_cone(cone: ConeInfo) -> Result<Self> {
        if !cone.is_simplicial {
            return Err(Error::NotSimplicial {
                extreme_rays: cone.num_extremal(),
                dim: cone.ambient_dim,
            });
        }
        let d = cone.ambient_dim;
        let lattice_full = lattice_of(&cone.generators, d);
        let lattice_extremal = lattice_of(cone.extremal_generators(), d);
        debug_assert!(lattice_full.contains_lattice(&lattice_extremal));
        let mut dfs_order: Vec<usize> = (0..cone.generators.len()).collect();
        dfs_order.sort_by(|&a, &b| {
            cone.generators[b]
                .total()
                .cmp(&cone.generators[a].total())
                .then(a.cmp(&b))
        });
        Ok(Semigroup {
            cone,
            lattice_full,
            lattice_extremal,
            dfs_order,
            membership_cache: Mutex::new(HashMap::new()),
            order_cache: Mutex::new(HashMap::new()),
        })
    }

    /// Ambient (and cone) dimension `d`.
    pub fn dim(&self) -> usize {
        self.cone.ambient_dim
    }

    /// Minimal generators, extremal ones first.
    pub fn generators(&self) -> &[IntVec] {
        &self.cone.generators
    }

    /// `a_1..a_d`.
    pub fn extremal(&self) -> &[IntVec] {
        self.cone.extremal_generators()
    }

    /// `a_{d+1}..a_{d+r}`.
    pub fn non_extremal(&self) -> &[IntVec] {
        self.cone.other_generators()
    }

    pub fn embedding_dimension(&self) -> usize {
        self.cone.generators.len()
    }

    pub fn cone(&self) -> &ConeInfo {
        &self.cone
    }

    /// Coordinates with respect to `a_1..a_d`.
    pub fn basis(&self) -> &CoordinateSystem {
        self.cone.basis().expect("semigroup is simplicial")
    }

    pub fn coords(&self, v: &IntVec) -> RatCoords {
        self.basis().coords(v)
    }

    /// `Gr(S)`.
    pub fn lattice_full(&self) -> &LatticeBasis {
        &self.lattice_full
    }

    /// `Gr(a_1,…,a_d)`.
    pub fn lattice_extremal(&self) -> &LatticeBasis {
        &self.lattice_extremal
    }

    /// Number of memoized membership answers.
    pub fn cache_len(&self) -> usize {
        self.membership_cache.lock().unwrap().len()
    }

    pub fn in_cone(&self, v: &IntVec) -> bool {
        self.basis().in_cone(v)
    }

    /// `v ∈ S`.
    pub fn in_semigroup(&self, v: &IntVec) -> bool {
        if !v.is_nonneg() || !self.in_cone(v) || !self.lattice_full.contains(v) {
            return false;
        }
        self.search(v)
    }

    fn search(&self, v: &IntVec) -> bool {
        if v.is_zero() {
            return true;
        }
        if let Some(&known) = self.membership_cache.lock().unwrap().get(v) {
            return known;
        }
        let basis = self.basis();
        let gens = self.generators();
        let found = self.dfs_order.iter().any(|&i| {
            let g = &gens[i];
            if !g.le_componentwise(v) {
                return false;
            }
            let rest = v - g;
            basis.in_cone(&rest) && self.search(&rest)
        });
        self.membership_cache.lock().unwrap().insert(v.clone(), found);
        found
    }

    /// Maximal length of an expression of `v` in the generators.
    pub fn ord(&self, v: &IntVec) -> Result<u64> {
        if !self.in_semigroup(v) {
            return Err(Error::NotInSemigroup(v.to_string()));
        }
        Ok(self.order_of_member(v))
    }

    fn order_of_member(&self, v: &IntVec) -> u64 {
        if v.is_zero() {
            return 0;
        }
        if let Some(&known) = self.order_cache.lock().unwrap().get(v) {
            return known;
        }
        let best = self
            .generators()
            .iter()
            .filter(|g| g.le_componentwise(v))
            .map(|g| v - g)
            .filter(|rest| self.in_semigroup(rest))
            .map(|rest| self.order_of_member(&rest))
            .max()
            .expect("a nonzero member has at least one generator below it");
        self.order_cache.lock().unwrap().insert(v.clone(), best + 1);
        best + 1
    }

    /// Splits `v ∈ co(S)` as `Σ ⌊[v]_i⌋ a_i + r(v)`.
    pub fn remainder(&self, v: &IntVec) -> Result<Remainder> {
        if !self.in_cone(v) {
            return Err(Error::OutsideCone(v.to_string()));
        }
        let floors = self.basis().floors(v);
        let vector = v - &self.basis().combine(&floors);
        Ok(Remainder { vector, floors })
    }

    /// `v ∈ S̄ = co(S) ∩ Gr(S)`.
    pub fn in_normalization(&self, v: &IntVec) -> bool {
        self.lattice_full.contains(v) && self.in_cone(v)
    }

    /// `v ∈ ℕ^d \ S` and `v + g ∈ S` for every generator `g`.
    pub fn is_pseudo_frobenius(&self, v: &IntVec) -> bool {
        v.is_nonneg()
            && !self.in_semigroup(v)
            && self.generators().iter().all(|g| self.in_semigroup(&(v + g)))
    }
}

/// `v` has all coordinates in `[0, 1)` with respect to the extremal basis.
pub fn in_parallelotope(s: &Semigroup, v: &IntVec) -> bool {
    let den = s.basis().denominator();
    s.basis()
        .numerators(v)
        .iter()
        .all(|n| !n.is_negative() && n < den)
}
