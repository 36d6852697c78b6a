//! Type, quasi-Frobenius elements, and the Cohen-Macaulay / Buchsbaum /
//! Gorenstein / normality verdicts, all read off the Apéry table.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::apery::AperyTable;
use crate::conductor::conductor_membership;
use crate::membership::Semigroup;
use crate::vector::IntVec;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    /// `|QF(S)|`; equals the Cohen-Macaulay type of `K[S]` when CM.
    pub typ: usize,
    pub qf: Vec<IntVec>,
    pub is_cm: bool,
    pub is_buchsbaum: bool,
    pub is_gorenstein: bool,
    pub is_normal: bool,
    pub neg_qf_in_cone: bool,
}

/// `Σ a_i` over the extremal generators.
fn extremal_sum(s: &Semigroup) -> IntVec {
    s.extremal()
        .iter()
        .fold(IntVec::zero(s.dim()), |acc, a| &acc + a)
}

/// `{m − Σ a_i : m ∈ Max_{≼S} Ap(S,E)}`, sorted.
pub fn quasi_frobenius(s: &Semigroup, table: &AperyTable) -> Vec<IntVec> {
    let sum = extremal_sum(s);
    let qf: BTreeSet<IntVec> = table.max_s.iter().map(|m| m - &sum).collect();
    qf.into_iter().collect()
}

/// Every nonzero remainder class is a singleton.
pub fn is_cohen_macaulay(s: &Semigroup, table: &AperyTable) -> bool {
    let mut seen = vec![false; table.remainders.len()];
    let cm = table.class_of.iter().all(|&j| {
        let first = !seen[j];
        seen[j] = true;
        first
    });
    debug_assert_eq!(cm, cm_by_lattice_differences(s, table));
    cm
}

/// No two distinct Apéry elements differ by an element of `Gr(a_1,…,a_d)`.
pub fn cm_by_lattice_differences(s: &Semigroup, table: &AperyTable) -> bool {
    let l = s.lattice_extremal();
    let els = &table.elements;
    (0..els.len()).all(|i| (i + 1..els.len()).all(|j| !l.contains(&(&els[i] - &els[j]))))
}

/// Each class is a singleton, or `{c + a_1,…,c + a_d}` for some `c ∈ ℕ^d`
/// with `c + g ∈ S` for every generator `g`.
pub fn is_buchsbaum(s: &Semigroup, table: &AperyTable) -> bool {
    (0..table.remainders.len()).all(|j| {
        let class = table.class(j);
        class.len() == 1 || buchsbaum_shift(s, &class).is_some()
    })
}

/// The shift `c` witnessing the non-singleton branch for one class.
pub fn buchsbaum_shift(s: &Semigroup, class: &[&IntVec]) -> Option<IntVec> {
    let d = s.dim();
    if class.len() != d {
        return None;
    }
    let members: BTreeSet<&IntVec> = class.iter().copied().collect();
    for v in class {
        for a in s.extremal() {
            let c = *v - a;
            if !c.is_nonneg() {
                continue;
            }
            let shifted: BTreeSet<IntVec> = s.extremal().iter().map(|a| &c + a).collect();
            if shifted.len() != d || !shifted.iter().all(|x| members.contains(x)) {
                continue;
            }
            if s.generators().iter().all(|g| s.in_semigroup(&(&c + g))) {
                return Some(c);
            }
        }
    }
    None
}

pub fn is_gorenstein(s: &Semigroup, table: &AperyTable) -> bool {
    is_cohen_macaulay(s, table) && table.max_s.len() == 1
}

/// `Ap(S,E) ⊆ P_S`.
pub fn is_normal(s: &Semigroup, table: &AperyTable) -> bool {
    let normal = table.inside_parallelotope();
    if cfg!(debug_assertions) {
        let zero = IntVec::zero(s.dim());
        debug_assert_eq!(normal, conductor_membership(s, table, &zero));
        debug_assert_eq!(normal, normal_by_quasi_frobenius(s, table));
    }
    normal
}

/// `−QF(S) ⊆ S ∩ relint(co(S))`, relint meaning all extremal coordinates
/// strictly positive.
pub fn normal_by_quasi_frobenius(s: &Semigroup, table: &AperyTable) -> bool {
    quasi_frobenius(s, table).iter().all(|f| {
        let neg = -f;
        in_relative_interior(s, &neg) && s.in_semigroup(&neg)
    })
}

/// `Ap(S,E) ⊆ P̄_S`: every coordinate at most 1. Equivalent to
/// `−QF(S) ⊆ co(S)`.
pub fn neg_qf_in_cone(s: &Semigroup, table: &AperyTable) -> bool {
    let basis = s.basis();
    let den = basis.denominator();
    table
        .elements
        .iter()
        .all(|w| basis.numerators(w).iter().all(|n| n <= den))
}

pub fn classify(s: &Semigroup, table: &AperyTable) -> Classification {
    let qf = quasi_frobenius(s, table);
    let is_cm = is_cohen_macaulay(s, table);
    Classification {
        typ: qf.len(),
        is_cm,
        is_buchsbaum: is_cm || is_buchsbaum(s, table),
        is_gorenstein: is_cm && table.max_s.len() == 1,
        is_normal: is_normal(s, table),
        neg_qf_in_cone: neg_qf_in_cone(s, table),
        qf,
    }
}

/// Whether every non-extremal generator lies on one line through the origin.
pub fn non_extremal_collinear(s: &Semigroup) -> bool {
    let others = s.non_extremal();
    let Some(first) = others.first() else { return true };
    others.iter().all(|g| {
        // g ∥ first iff all 2×2 minors vanish
        (0..g.dim()).all(|i| {
            (i + 1..g.dim()).all(|j| {
                let minor: BigInt = &g.0[i] * &first.0[j] - &g.0[j] * &first.0[i];
                minor.is_zero()
            })
        })
    })
}

/// All extremal coordinates strictly positive.
pub fn in_relative_interior(s: &Semigroup, v: &IntVec) -> bool {
    s.basis().numerators(v).iter().all(Signed::is_positive)
}
