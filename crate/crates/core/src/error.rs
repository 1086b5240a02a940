use thiserror::Error;

use crate::budget::BudgetExceeded;
use crate::typeb::{AdlerError, FamilyError, Violation};
use crate::word::WordError;

/// Errors from the bijection maps.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BijectionError {
    #[error("partition is not canonical: {}", join_violations(.0))]
    NonCanonical(Vec<Violation>),
    #[error("the bijection is only defined for multiplicity 2, got {0}")]
    Multiplicity(usize),
    #[error("the empty word has no preimage (order must be at least 1)")]
    EmptyWord,
    #[error("word is not flattened: run starting at index {index} has leading term {letter} below the previous leading term")]
    NotFlattened { index: usize, letter: u16 },
    #[error("word is not decomposable into N/P segments at index {index}")]
    Malformed { index: usize },
}

pub(crate) fn join_violations(v: &[Violation]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

/// Crate-wide error, used where several modules meet (tables, the CLI).
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Adler(#[from] AdlerError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Bijection(#[from] BijectionError),
    #[error(transparent)]
    Precision(#[from] crate::enumeration::PrecisionError),
    #[error(transparent)]
    BFile(#[from] crate::oeis::BFileError),
    #[error(transparent)]
    Table(#[from] crate::table::TableError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
