use thiserror::Error;

use crate::poly::Basis;
use crate::subset::Subset;

/// Which rank-function axiom a witness pair violates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axiom {
    Normalization,
    Monotonicity,
    Submodularity,
    UnitIncrease,
}

impl std::fmt::Display for Axiom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Axiom::Normalization => "normalization",
            Axiom::Monotonicity => "monotonicity",
            Axiom::Submodularity => "submodularity",
            Axiom::UnitIncrease => "unit increase",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("{axiom} fails at witness pair ({a}, {b})")]
    AxiomViolation { axiom: Axiom, a: Subset, b: Subset },

    #[error("cage violated at element {element}: rank {rank} exceeds cage {cage}")]
    CageViolation { element: usize, rank: u32, cage: u32 },

    #[error("ground set of size {n} exceeds the implementation cap {cap}")]
    SizeExceeded { n: usize, cap: usize },

    #[error("invalid rank {r} for ground set of size {n}")]
    InvalidRank { r: usize, n: usize },

    #[error("deleted and contracted sets overlap in {overlap}")]
    OverlapError { overlap: Subset },

    #[error("{set} is not a flat (closure is {closure})")]
    NotAFlat { set: Subset, closure: Subset },

    #[error("subset at position {index} is empty")]
    EmptySubset { index: usize },

    #[error("matroid has a loop at element {element}")]
    LoopyMatroid { element: usize },

    #[error("element {element} is a {kind}")]
    HasLoopOrColoop { element: usize, kind: &'static str },

    #[error("expected a polynomial in the {expected} basis, found {found}")]
    BasisMismatch { expected: Basis, found: Basis },

    #[error("total degree {degree} exceeds the bound {bound}")]
    DegreeExceeded { degree: usize, bound: usize },

    #[error("polynomial is not a quadratic form")]
    NotQuadratic,

    #[error("exponent {term:?} exceeds the cage")]
    DegreeExceedsCage { term: Vec<u32> },

    #[error("no subset has full rank; the closed-form route needs one")]
    NoSpanningSubset,

    #[error("polymatroid is not a matroid: {reason}")]
    NotAMatroidPolymatroid { reason: String },

    #[error("top Snapper coefficient times (r-1)! is not an integer")]
    NonIntegralDegree,

    #[error("base polytopes are not nested: {reason}")]
    NotNested { reason: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Stable machine-readable code, used by the CLI error envelope.
    pub fn code(&self) -> &'static str {
        match self {
            Error::AxiomViolation { .. } => "axiom_violation",
            Error::CageViolation { .. } => "cage_violation",
            Error::SizeExceeded { .. } => "size_exceeded",
            Error::InvalidRank { .. } => "invalid_rank",
            Error::OverlapError { .. } => "overlap_error",
            Error::NotAFlat { .. } => "not_a_flat",
            Error::EmptySubset { .. } => "empty_subset",
            Error::LoopyMatroid { .. } => "loopy_matroid",
            Error::HasLoopOrColoop { .. } => "has_loop_or_coloop",
            Error::BasisMismatch { .. } => "basis_mismatch",
            Error::DegreeExceeded { .. } => "degree_exceeded",
            Error::NotQuadratic => "not_quadratic",
            Error::DegreeExceedsCage { .. } => "degree_exceeds_cage",
            Error::NoSpanningSubset => "no_spanning_subset",
            Error::NotAMatroidPolymatroid { .. } => "not_a_matroid_polymatroid",
            Error::NonIntegralDegree => "non_integral_degree",
            Error::NotNested { .. } => "not_nested",
            Error::InvalidInput(_) => "invalid_input",
        }
    }

    /// Human-readable witness payload, when the error carries one.
    pub fn witness(&self) -> Option<String> {
        match self {
            Error::AxiomViolation { a, b, .. } => Some(format!("{a}, {b}")),
            Error::CageViolation { element, .. } => Some(format!("element {element}")),
            Error::NotAFlat { closure, .. } => Some(format!("closure {closure}")),
            Error::OverlapError { overlap } => Some(format!("{overlap}")),
            Error::LoopyMatroid { element } => Some(format!("element {element}")),
            Error::HasLoopOrColoop { element, .. } => Some(format!("element {element}")),
            Error::DegreeExceedsCage { term } => Some(format!("{term:?}")),
            _ => None,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
