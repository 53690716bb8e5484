//! Projective incidence over `K`: the flex and sextactic configurations of
//! the Fermat cubic, their line arrangements and the census of conics through
//! six sextactic points.

mod arrangement;
mod census;
mod configs;
mod fivepoint;
mod objects;

use thiserror::Error;

use crate::cayley::CayleyError;
use crate::exactfield::FieldError;

pub use arrangement::ArrangementSummary;
pub use census::{
    conic_census, conic_through, lines_product_integrality, split_conic_lines, CensusConic, ConicCensus, ConicSpan,
    Integrality, PointCounts, SplitLines,
};
pub use configs::{
    dual_hesse_lines, dual_hesse_triple_points, flex_points, hesse_lines, intersect_line_cubic, name_points,
    sextactic_lines, sextactic_lines_with, sextactic_points, sextactic_points_computed, Sextactic,
};
pub use fivepoint::{five_point_scan, FivePointReport};
pub use objects::{conic_row, cross, dot, gradient_at, Conic, ConicClass, Line, ProjPoint, CONIC_MONOMIALS};

#[derive(Debug, Error)]
pub enum IncidenceError {
    #[error("the zero vector is not a projective object")]
    ZeroVector,
    #[error("points are not pairwise distinct")]
    DuplicatePoints,
    #[error("lines coincide")]
    DuplicateLines,
    #[error("expected a form of degree {expected}, found {found:?}")]
    WrongDegree { expected: u32, found: Option<u32> },
    #[error("line is a component of the curve")]
    LineOnCurve,
    #[error("line-cubic intersection does not reduce to a binomial cubic")]
    NonBinomial,
    #[error("{what}: expected {expected}, found {found}")]
    Unexpected { what: String, expected: String, found: String },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Cayley(#[from] CayleyError),
}

impl IncidenceError {
    pub(crate) fn unexpected(what: &str, expected: impl ToString, found: impl ToString) -> Self {
        Self::Unexpected { what: what.to_string(), expected: expected.to_string(), found: found.to_string() }
    }
}
