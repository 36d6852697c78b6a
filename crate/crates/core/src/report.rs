//! One-shot analysis of a generator list, as a serializable record.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::apery::{apery_set, AperyTable};
use crate::conductor::{conductor_fast_path, conductor_membership, conductor_min_gens, frobenius_number, normalization_generators, FastPath};
use crate::error::Result;
use crate::membership::Semigroup;
use crate::oracle::{apery_box_bound, covered_by, enumerate_box, oracle_conductor_elements};
use crate::structure::{classify, Classification};
use crate::vector::IntVec;

pub const SCHEMA: &str = "asg-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Cap on Γ tuples and on class-tuple combinations.
    pub max_tuples: u64,
    /// Record wall-clock time and cache size.
    pub stats: bool,
    /// Cross-check against the brute-force sweeps on `[0,B]^d`.
    pub oracle_box: Option<u64>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_tuples: 10_000_000,
            stats: false,
            oracle_box: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema: String,
    pub input: InputEcho,
    pub cone: ConeSummary,
    pub apery: AperySummary,
    pub classification: Classification,
    pub normalization: Vec<IntVec>,
    pub conductor: ConductorSummary,
    /// Only for `d = 1` with coprime generators.
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_bigint")]
    pub frobenius: Option<BigInt>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle_check: Option<OracleCheck>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stats: Option<Stats>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputEcho {
    pub generators: Vec<IntVec>,
    /// Minimal generators, extremal ones first.
    pub minimal: Vec<IntVec>,
    pub removed: Vec<IntVec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeSummary {
    pub dim: usize,
    pub extremal: Vec<IntVec>,
    pub non_extremal: Vec<IntVec>,
    pub extreme_ray_directions: Vec<IntVec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AperySummary {
    pub size: usize,
    /// `l_1..l_r`, the box sides used to enumerate the Apéry set.
    pub gamma_bounds: IntVec,
    pub elements: Vec<IntVec>,
    /// `b_0 = 0, b_1, …, b_k`.
    pub remainders: Vec<IntVec>,
    /// `C_0, C_1, …, C_k`, aligned with `remainders`.
    pub classes: Vec<Vec<IntVec>>,
    pub max_semigroup: Vec<IntVec>,
    pub max_cone: Vec<IntVec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConductorSummary {
    pub generators: Vec<IntVec>,
    pub candidates_examined: usize,
    pub f_vectors: Vec<IntVec>,
    pub fast_path: FastPath,
    /// Whether the closed form matched the general search; absent when no
    /// closed form applies.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fast_path_agrees: Option<bool>,
}

/// Agreement with the brute-force sweeps. The Apéry comparison needs a box
/// containing all of `Ap(S,E)` and is skipped (absent) otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleCheck {
    pub bound: u64,
    pub membership_agrees: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub apery_agrees: Option<bool>,
    pub conductor_agrees: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    pub elapsed_ms: u64,
    pub membership_cache_entries: usize,
}

mod opt_bigint {
    use num_bigint::BigInt;
    use num_traits::ToPrimitive;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Int(i64),
        Str(String),
    }

    pub fn serialize<S: Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
        let repr = v.as_ref().map(|x| match x.to_i64() {
            Some(i) => Repr::Int(i),
            None => Repr::Str(x.to_string()),
        });
        repr.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigInt>, D::Error> {
        match Option::<Repr>::deserialize(d)? {
            None => Ok(None),
            Some(Repr::Int(i)) => Ok(Some(BigInt::from(i))),
            Some(Repr::Str(s)) => s.parse().map(Some).map_err(serde::de::Error::custom),
        }
    }
}

/// Notes about the input that do not stop the analysis.
pub fn input_notes(s: &Semigroup) -> Vec<String> {
    let mut notes: Vec<String> = s
        .cone()
        .removed
        .iter()
        .map(|g| format!("generator {g} is redundant and was dropped"))
        .collect();
    if s.dim() == 1 {
        let g = s.generators().iter().fold(BigInt::zero(), |acc, v| acc.gcd(&v.0[0]));
        if g > BigInt::from(1) {
            notes.push(format!(
                "generators have gcd {g}; analyzed as given, dividing by {g} gives an isomorphic numerical semigroup"
            ));
        }
    }
    notes
}

pub fn analyze(generators: &[IntVec], limits: Limits) -> Result<AnalysisReport> {
    let start = Instant::now();
    let s = Semigroup::new(generators)?;
    let table = apery_set(&s, limits.max_tuples)?;
    let classification = classify(&s, &table);
    let normalization = normalization_generators(&s, &table).generators;
    let general = conductor_min_gens(&s, &table, limits.max_tuples)?;
    let fast = conductor_fast_path(&s, &table);
    let fast_path_agrees = fast.as_ref().map(|f| f.minimal_generators == general.minimal_generators);
    debug_assert_ne!(fast_path_agrees, Some(false));
    debug_assert!(general.minimal_generators.iter().all(|c| conductor_membership(&s, &table, c)));

    let frobenius = if s.dim() == 1 {
        frobenius_number(&s, limits.max_tuples).ok()
    } else {
        None
    };

    let mut f_vectors: Vec<IntVec> = general.f_vectors.iter().map(|f| f.value.clone()).collect();
    f_vectors.sort();
    f_vectors.dedup();

    let oracle_check = match limits.oracle_box {
        Some(bound) => Some(oracle_check(&s, &table, &general.minimal_generators, bound)?),
        None => None,
    };

    let stats = limits.stats.then(|| Stats {
        elapsed_ms: start.elapsed().as_millis().to_u64().unwrap_or(u64::MAX),
        membership_cache_entries: s.cache_len(),
    });

    Ok(AnalysisReport {
        schema: SCHEMA.to_string(),
        input: InputEcho {
            generators: generators.to_vec(),
            minimal: s.generators().to_vec(),
            removed: s.cone().removed.clone(),
        },
        cone: ConeSummary {
            dim: s.dim(),
            extremal: s.extremal().to_vec(),
            non_extremal: s.non_extremal().to_vec(),
            extreme_ray_directions: s.cone().extreme_ray_directions.clone(),
        },
        apery: apery_summary(&table),
        classification,
        normalization,
        conductor: ConductorSummary {
            generators: general.minimal_generators,
            candidates_examined: general.candidates_examined,
            f_vectors,
            fast_path: fast.map_or(FastPath::None, |f| f.fast_path_used),
            fast_path_agrees,
        },
        frobenius,
        notes: input_notes(&s),
        oracle_check,
        stats,
    })
}

/// Compares membership, the Apéry set and the conductor with the box
/// sweeps on `[0,bound]^d`.
pub fn oracle_check(s: &Semigroup, table: &AperyTable, conductor: &[IntVec], bound: u64) -> Result<OracleCheck> {
    let e = enumerate_box(s, bound)?;
    let membership_agrees = e.all_points().all(|p| s.in_semigroup(&p) == e.in_s(&p));
    let apery_agrees = (apery_box_bound(s) <= bound).then(|| {
        let found: BTreeSet<IntVec> = e
            .s_points()
            .filter(|v| s.extremal().iter().all(|a| !e.in_s(&(v - a))))
            .collect();
        found.into_iter().eq(table.elements.iter().cloned())
    });
    let found = oracle_conductor_elements(s, bound)?;
    let conductor_agrees = e
        .all_points()
        .all(|p| found.contains(&p) == covered_by(&e, conductor, &p));
    Ok(OracleCheck {
        bound,
        membership_agrees,
        apery_agrees,
        conductor_agrees,
    })
}

pub fn apery_summary(table: &AperyTable) -> AperySummary {
    AperySummary {
        size: table.len(),
        gamma_bounds: IntVec(table.gamma_bounds.clone()),
        elements: table.elements.clone(),
        remainders: table.remainders.clone(),
        classes: table
            .classes()
            .into_iter()
            .map(|c| c.into_iter().cloned().collect())
            .collect(),
        max_semigroup: table.max_s.clone(),
        max_cone: table.max_c.clone(),
    }
}

fn list(vs: &[IntVec]) -> String {
    let parts: Vec<String> = vs.iter().map(ToString::to_string).collect();
    format!("{{{}}}", parts.join(", "))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

impl fmt::Display for AnalysisReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        let c = &self.classification;
        writeln!(out, "generators:        {}", list(&self.input.minimal))?;
        if !self.input.removed.is_empty() {
            writeln!(out, "dropped:           {}", list(&self.input.removed))?;
        }
        writeln!(out, "extremal:          {}", list(&self.cone.extremal))?;
        writeln!(out, "|Ap(S,E)|:         {}", self.apery.size)?;
        writeln!(out, "remainders:        {}", list(&self.apery.remainders))?;
        writeln!(out, "max (semigroup):   {}", list(&self.apery.max_semigroup))?;
        writeln!(out, "max (cone):        {}", list(&self.apery.max_cone))?;
        writeln!(out, "QF(S):             {}", list(&c.qf))?;
        writeln!(out, "typ(S) (equals Cohen-Macaulay type of K[S] when CM): {}", c.typ)?;
        writeln!(out, "Cohen-Macaulay:    {}", yes_no(c.is_cm))?;
        if c.is_cm {
            writeln!(out, "Buchsbaum:         {}", yes_no(c.is_buchsbaum))?;
        } else {
            writeln!(out, "Buchsbaum:         {} (per criterion)", yes_no(c.is_buchsbaum))?;
        }
        writeln!(out, "Gorenstein:        {}", yes_no(c.is_gorenstein))?;
        writeln!(out, "normal:            {}", yes_no(c.is_normal))?;
        writeln!(out, "-QF(S) in cone:    {}", yes_no(c.neg_qf_in_cone))?;
        writeln!(out, "normalization:     {}", list(&self.normalization))?;
        writeln!(out, "conductor:         {}", list(&self.conductor.generators))?;
        if self.conductor.fast_path != FastPath::None {
            let label = match self.conductor.fast_path {
                FastPath::Principal => "principal",
                _ => "single class",
            };
            writeln!(out, "closed form:       {label}")?;
        }
        if let Some(fr) = &self.frobenius {
            writeln!(out, "Frobenius number:  {fr}")?;
        }
        for note in &self.notes {
            writeln!(out, "note: {note}")?;
        }
        if let Some(o) = &self.oracle_check {
            let apery = o.apery_agrees.map_or("skipped (box too small)", yes_no);
            writeln!(
                out,
                "oracle [0,{}]:     membership {}, Apéry {}, conductor {}",
                o.bound,
                yes_no(o.membership_agrees),
                apery,
                yes_no(o.conductor_agrees)
            )?;
        }
        if let Some(st) = &self.stats {
            writeln!(out, "elapsed:           {} ms", st.elapsed_ms)?;
            writeln!(out, "cache entries:     {}", st.membership_cache_entries)?;
        }
        f.write_str(&out)
    }
}
