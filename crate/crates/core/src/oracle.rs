//! Brute-force reference computations over a box `[0,B]^d`, for
//! differential tests. Only the linear algebra layer is shared with the
//! main path; membership here is a plain reachability sweep.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

use crate::error::{Error, Result, Stage};
use crate::linalg::{coords_in_basis, lattice_of, CoordinateSystem};
use crate::membership::Semigroup;
use crate::vector::IntVec;

/// Largest box (in points) the oracle will sweep.
pub const MAX_BOX_POINTS: u64 = 1_000_000;

/// Membership bitmaps for `S` and `S̄` on `[0,B]^d`.
#[derive(Clone, Debug)]
pub struct BoxEnumeration {
    pub bound: u64,
    dim: usize,
    in_s: Vec<bool>,
    in_sbar: Vec<bool>,
}

impl BoxEnumeration {
    pub fn dim(&self) -> usize {
        self.dim
    }

    fn side(&self) -> u64 {
        self.bound + 1
    }

    fn index(&self, v: &IntVec) -> Option<usize> {
        if v.dim() != self.dim {
            return None;
        }
        let mut idx = 0u64;
        for x in v.0.iter().rev() {
            let x = x.to_u64().filter(|&x| x <= self.bound)?;
            idx = idx * self.side() + x;
        }
        Some(idx as usize)
    }

    fn point(&self, mut idx: usize) -> IntVec {
        let side = self.side() as usize;
        let mut v = Vec::with_capacity(self.dim);
        for _ in 0..self.dim {
            v.push(BigInt::from(idx % side));
            idx /= side;
        }
        IntVec(v)
    }

    /// Whether `v` is inside the box.
    pub fn covers(&self, v: &IntVec) -> bool {
        self.index(v).is_some()
    }

    /// `v ∈ S`; `false` outside the box.
    pub fn in_s(&self, v: &IntVec) -> bool {
        self.index(v).is_some_and(|i| self.in_s[i])
    }

    /// `v ∈ S̄`; `false` outside the box.
    pub fn in_sbar(&self, v: &IntVec) -> bool {
        self.index(v).is_some_and(|i| self.in_sbar[i])
    }

    pub fn s_points(&self) -> impl Iterator<Item = IntVec> + '_ {
        (0..self.in_s.len()).filter(|&i| self.in_s[i]).map(|i| self.point(i))
    }

    pub fn sbar_points(&self) -> impl Iterator<Item = IntVec> + '_ {
        (0..self.in_sbar.len()).filter(|&i| self.in_sbar[i]).map(|i| self.point(i))
    }

    pub fn all_points(&self) -> impl Iterator<Item = IntVec> + '_ {
        (0..self.in_s.len()).map(|i| self.point(i))
    }
}

fn box_points(dim: usize, bound: u64) -> Option<u64> {
    (bound + 1).checked_pow(dim as u32).filter(|&n| n <= MAX_BOX_POINTS)
}

fn box_limit(dim: usize, bound: u64) -> Error {
    let required = BigInt::from(bound + 1).pow(dim as u32);
    Error::ResourceLimit {
        stage: Stage::Oracle,
        what: "box points",
        required: required.to_string(),
        cap: MAX_BOX_POINTS,
    }
}

pub fn enumerate_box(s: &Semigroup, bound: u64) -> Result<BoxEnumeration> {
    let dim = s.dim();
    let n = box_points(dim, bound).ok_or_else(|| box_limit(dim, bound))? as usize;
    let mut e = BoxEnumeration {
        bound,
        dim,
        in_s: vec![false; n],
        in_sbar: vec![false; n],
    };

    // Generator offsets as flat index deltas; points are visited in
    // increasing index order, so v − g is always decided before v.
    let gens: Vec<(Vec<u64>, usize)> = s
        .generators()
        .iter()
        .filter_map(|g| {
            let coords: Option<Vec<u64>> = g.0.iter().map(|x| x.to_u64().filter(|&x| x <= bound)).collect();
            let coords = coords?;
            let offset = e.index(g)?;
            Some((coords, offset))
        })
        .collect();
    let side = e.side() as usize;
    let mut digits = vec![0u64; dim];
    for idx in 0..n {
        if idx == 0 {
            e.in_s[0] = true;
        } else {
            e.in_s[idx] = gens
                .iter()
                .any(|(g, off)| g.iter().zip(&digits).all(|(gi, vi)| gi <= vi) && e.in_s[idx - off]);
        }
        for digit in digits.iter_mut() {
            *digit += 1;
            if (*digit as usize) < side {
                break;
            }
            *digit = 0;
        }
    }

    let lattice = lattice_of(s.generators(), dim);
    let cone = CoordinateSystem::new(s.extremal().to_vec())?;
    for idx in 0..n {
        let v = e.point(idx);
        e.in_sbar[idx] = cone.in_cone(&v) && lattice.contains(&v);
    }
    Ok(e)
}

/// A bound `B` such that `[0,B]^d` contains `Σ (l_i − 1) a_{d+i}`, hence all
/// of `Ap(S,E)`.
pub fn apery_box_bound(s: &Semigroup) -> u64 {
    let mut top = IntVec::zero(s.dim());
    for g in s.non_extremal() {
        let coords = coords_in_basis(s.extremal(), g).expect("extremal generators are a basis");
        let l = coords.0.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        top = &top + &g.scale(&(l - 1));
    }
    top.0.iter().max().and_then(|x| x.to_u64()).unwrap_or(0)
}

/// `{v ∈ S : v − a_j ∉ S for every extremal a_j}` from a box sweep.
pub fn oracle_apery(s: &Semigroup, bound: u64) -> Result<BTreeSet<IntVec>> {
    let e = enumerate_box(s, bound.max(apery_box_bound(s)))?;
    Ok(apery_from_box(s, &e))
}

fn apery_from_box(s: &Semigroup, e: &BoxEnumeration) -> BTreeSet<IntVec> {
    e.s_points()
        .filter(|v| {
            s.extremal().iter().all(|a| {
                let w = v - a;
                !w.is_nonneg() || !e.in_s(&w)
            })
        })
        .collect()
}

/// Points of `Gr(S)` in the half-open parallelotope `{Σ λ_i a_i : 0 ≤ λ_i < 1}`,
/// by scanning the box under `Σ a_i`.
pub fn parallelotope_points(s: &Semigroup) -> Result<BTreeSet<IntVec>> {
    let d = s.dim();
    let corner = s.extremal().iter().fold(IntVec::zero(d), |acc, a| &acc + a);
    let bound = corner.0.iter().max().and_then(|x| x.to_u64()).unwrap_or(0);
    let n = box_points(d, bound).ok_or_else(|| box_limit(d, bound))?;
    let lattice = lattice_of(s.generators(), d);
    let side = bound + 1;
    let mut out = BTreeSet::new();
    for mut idx in 0..n {
        let mut v = Vec::with_capacity(d);
        for _ in 0..d {
            v.push(BigInt::from(idx % side));
            idx /= side;
        }
        let v = IntVec(v);
        if !lattice.contains(&v) {
            continue;
        }
        let coords = coords_in_basis(s.extremal(), &v)?;
        if coords.0.iter().all(|c| !c.is_negative() && c < &num_rational::BigRational::one()) {
            out.insert(v);
        }
    }
    Ok(out)
}

/// `{c ∈ S ∩ [0,B]^d : c + b ∈ S for every parallelotope point b}`.
pub fn oracle_conductor_elements(s: &Semigroup, bound: u64) -> Result<BTreeSet<IntVec>> {
    let remainders = parallelotope_points(s)?;
    let reach = remainders
        .iter()
        .flat_map(|b| b.0.iter())
        .max()
        .and_then(|x| x.to_u64())
        .unwrap_or(0);
    let e = enumerate_box(s, bound + reach)?;
    let bound = BigInt::from(bound);
    Ok(e.s_points()
        .filter(|c| c.0.iter().all(|x| x <= &bound))
        .filter(|c| remainders.iter().all(|b| e.in_s(&(c + b))))
        .collect())
}

/// Whether `v` lies in `g + S̄` for some `g` in `gens`.
pub fn covered_by(e: &BoxEnumeration, gens: &[IntVec], v: &IntVec) -> bool {
    gens.iter().any(|g| {
        let diff = v - g;
        diff.is_nonneg() && e.in_sbar(&diff)
    })
}
