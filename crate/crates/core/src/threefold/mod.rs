//! Intersections of two quadrics in P⁵: symbol validity, singular points,
//! the planes of the maximal class-group variety, and reduction decisions.

mod classify;
mod singular;

pub use classify::{classify, is_smooth, reduction_center, validate_symbol, Center, ReductionDecision, ReductionTag};
pub use singular::{jacobian_rank_at_most_one, planes_on_max_cl, singular_points, Plane, SingularKind, SingularPointReport};

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::pencil::PencilError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ThreefoldError {
    #[error(transparent)]
    Pencil(#[from] PencilError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("expected a threefold in P^5 (entries summing to 6), got entry sum {0}")]
    WrongDimension(u32),
    #[error("unvalidated symbol: {}", .0.join("; "))]
    Unvalidated(Vec<String>),
    #[error("pencil is not in the coordinates of the maximal class-group variety")]
    UnsupportedCoordinates,
    #[error("decision {0} has no projection center")]
    NoCenter(String),
    #[error("internal consistency error: {0}")]
    Internal(String),
}
