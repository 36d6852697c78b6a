//! Apéry sets, Cohen-Macaulay type, normalization and conductor of
//! simplicial affine semigroups, in exact integer arithmetic.

pub mod apery;
pub mod conductor;
pub mod cone;
pub mod error;
pub mod linalg;
pub mod membership;
pub mod oracle;
pub mod report;
pub mod structure;
pub mod vector;

pub use apery::{apery_set, AperyTable, Order};
pub use conductor::{conductor_fast_path, conductor_min_gens, frobenius_number, ConductorSet, FastPath};
pub use error::{Error, Result, Stage};
pub use membership::Semigroup;
pub use structure::{classify, Classification};
pub use vector::IntVec;
pub use report::{analyze, AnalysisReport, Limits};
