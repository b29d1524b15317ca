//! Curve-facing computations: Thomae formulas, going down from level 4 to
//! level 2 and back up, Rosenhain recovery and the √3-RM decision.
//!
//! Theta null points are projective; every comparison here is up to a
//! common nonzero scalar.

mod curve;
mod lift;
mod mumford;
mod point;
mod rm;

use thiserror::Error;

use crate::field::FieldError;
use crate::index::Index;
use crate::relation::RelationError;

pub use curve::{
    format_curve_file, parse_curve_file, rosenhain_from_level2, rosenhain_from_squares,
    thomae_squares, BranchPoints, CurveInput, RosenhainCurve,
};
pub use lift::{
    level2_point_from_data, level2_points_from_squares, level2_squares_from_thomae,
    level2_to_level4, level4_to_level2, lift_candidates, SqrtCache,
};
pub use mumford::{mumford_holds, mumford_residuals};
pub use point::{
    format_level2_data, format_point2, format_point4, parse_level2_file, parse_point4_file,
    Level2Data, Level2Input, ThetaPoint2, ThetaPoint4,
};
pub use rm::{is_elliptic_theta_null, product_point, rm_test, Decision, SearchConfig};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PipelineError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Relation(#[from] RelationError),
    #[error("coordinates at {0} and its negative differ")]
    Asymmetric(Index),
    #[error("all coordinates are zero")]
    AllZero,
    #[error("missing coordinate {0}")]
    MissingCoordinate(String),
    #[error("not a theta null point: relation {0} fails")]
    NotAThetaNullPoint(String),
    #[error("level-2 data is inconsistent: squares and products disagree")]
    InconsistentLevel2Data,
    #[error("branch points are not pairwise distinct")]
    RepeatedBranchPoint,
    #[error("invalid Rosenhain invariants: {0}")]
    InvalidCurve(String),
    #[error("the required square roots do not exist in the field")]
    NoSquareRoots,
    #[error("no lift: the required square roots do not exist in the field")]
    NoLift,
    #[error("degenerate level-2 theta point: a Thomae combination vanishes")]
    DegenerateThetaPoint,
    #[error("no Rosenhain model is defined over this field")]
    NoSolutionInField,
    #[error("characteristic {0} divides 6")]
    CharacteristicDividesSix(String),
    #[error("field too small: every branch needs square roots outside it; {hint}")]
    FieldTooSmall { hint: String },
    #[error("not an elliptic theta null point: {0}")]
    NotEllipticThetaNull(String),
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
}
