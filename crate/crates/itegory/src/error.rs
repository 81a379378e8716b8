use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by the core operations.
///
/// Every operation that takes two maps checks their shapes first; shape
/// errors name both offending objects. Disjointness violations carry a
/// witness (a clashing element or pair) so a failing precondition can be
/// reported back to the caller verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{context}: objects do not match ({left} vs {right})")]
    ShapeMismatch {
        context: &'static str,
        left: String,
        right: String,
    },
    #[error("{context}: {detail}")]
    Invalid {
        context: &'static str,
        detail: String,
    },
    #[error("{context}: maps are not disjoint ({detail})")]
    NotDisjoint {
        context: &'static str,
        detail: String,
    },
    #[error("{context}: {detail}")]
    Precondition {
        context: &'static str,
        detail: String,
    },
    #[error("{context}: capacity exceeded ({detail})")]
    Capacity {
        context: &'static str,
        detail: String,
    },
    #[error("unknown law id `{0}`")]
    UnknownLaw(String),
}

pub(crate) fn shape_mismatch(
    context: &'static str,
    left: impl std::fmt::Display,
    right: impl std::fmt::Display,
) -> Error {
    Error::ShapeMismatch {
        context,
        left: left.to_string(),
        right: right.to_string(),
    }
}
