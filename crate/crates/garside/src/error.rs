use thiserror::Error;

use crate::lattice::AtomId;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element does not divide on the requested side")]
    NotADivisor,
    #[error("atom `{0}` already belongs to the parabolic")]
    AtomInParabolic(String),
    #[error("atom set {0:?} is not closed under parabolic closure")]
    NotClosed(Vec<String>),
    #[error("group enumeration exceeded the cap of {cap} elements")]
    GroupNotFinite { cap: usize },
    #[error("lattice would have {count} simples, above the cap of {cap}")]
    TooManySimples { count: usize, cap: usize },
    #[error("invalid coxeter matrix: {0}")]
    InvalidCoxeterMatrix(String),
    #[error("invalid coxeter element: {0}")]
    InvalidCoxeterElement(String),
    #[error("invalid monoid spec: {0}")]
    InvalidSpec(String),
    #[error("input exceeds the configured bound of {bound}")]
    BoundExceeded { bound: usize },
    #[error("inconsistent lattice data: {0}")]
    LatticeInconsistent(String),
    #[error("unknown atom name `{0}`")]
    UnknownAtom(String),
    #[error(transparent)]
    Ribbon(#[from] RibbonError),
    #[error("ribbon target does not match the source of the next ribbon")]
    SourceMismatch,
    #[error("the two parabolics are not conjugate")]
    NotConjugate,
}

/// Reasons an element can fail to be a ribbon for a parabolic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RibbonError {
    #[error("element is not reduced for the parabolic")]
    NotReduced,
    #[error("conjugate of atom {0:?} by the element is not in the monoid")]
    ConjugateUndefined(AtomId),
    #[error("ribbon data inconsistent: {0}")]
    Inconsistent(String),
}

impl Error {
    /// Stable machine-readable code, used by the command-line frontend.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotADivisor => "not_a_divisor",
            Error::AtomInParabolic(_) => "atom_in_parabolic",
            Error::NotClosed(_) => "not_closed",
            Error::GroupNotFinite { .. } => "group_not_finite",
            Error::TooManySimples { .. } => "too_many_simples",
            Error::InvalidCoxeterMatrix(_) => "invalid_coxeter_matrix",
            Error::InvalidCoxeterElement(_) => "invalid_coxeter_element",
            Error::InvalidSpec(_) => "invalid_spec",
            Error::BoundExceeded { .. } => "bound_exceeded",
            Error::LatticeInconsistent(_) => "lattice_inconsistent",
            Error::UnknownAtom(_) => "unknown_atom",
            Error::Ribbon(RibbonError::NotReduced) => "not_reduced",
            Error::Ribbon(RibbonError::ConjugateUndefined(_)) => "conjugate_undefined",
            Error::Ribbon(RibbonError::Inconsistent(_)) => "ribbon_inconsistent",
            Error::SourceMismatch => "source_mismatch",
            Error::NotConjugate => "not_conjugate",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
