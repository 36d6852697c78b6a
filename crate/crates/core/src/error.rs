use thiserror::Error;

/// Pipeline stage that raised a resource-limit error.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stage {
    Apery,
    Conductor,
    Oracle,
}

impl std::fmt::Display for Stage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Stage::Apery => "apery",
            Stage::Conductor => "conductor",
            Stage::Oracle => "oracle",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("basis is singular (determinant zero)")]
    SingularBasis,

    #[error("generators span a rank {rank} lattice, expected full rank {dim}")]
    RankDeficient { rank: usize, dim: usize },

    #[error("semigroup is not simplicial: cone has {extreme_rays} extreme rays in dimension {dim}")]
    NotSimplicial { extreme_rays: usize, dim: usize },

    #[error("[{stage}] resource limit exceeded: {required} {what} needed, cap is {cap}")]
    ResourceLimit {
        stage: Stage,
        what: &'static str,
        required: String,
        cap: u64,
    },

    #[error("{0} is not in the semigroup")]
    NotInSemigroup(String),

    #[error("{0} lies outside the cone of the semigroup")]
    OutsideCone(String),

    #[error("invalid class tuple: {0}")]
    InvalidTuple(String),

    #[error("not a numerical semigroup: {0}")]
    NotNumerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;
