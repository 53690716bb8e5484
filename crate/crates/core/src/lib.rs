//! Exact computations on the Fermat cubic `x^3 + y^3 + z^3`.
//!
//! Everything is computed over the degree-6 number field `K = Q(eps, mu)` with
//! `eps^2 + eps + 1 = 0` and `mu^3 = 2`: the Hessian and the (corrected) second
//! Hessian of a plane curve, the flexes and sextactic points of the Fermat
//! cubic, the census of conics through six sextactic points, the line
//! arrangements they induce, and a chord-tangent group law that cross-checks
//! every count combinatorially.
//!
//! The arithmetic core is generic: [`exactfield::Tower`] is parameterised by
//! its exact base field and [`polyring::HomPoly`] by its coefficient ring.
//! The aliases below fix the concrete types used by the geometry.

pub mod cayley;
pub mod exactfield;
pub mod linalg;
pub mod expected;
pub mod grouplaw;
pub mod incidence;
pub mod polyring;
pub mod report;
pub mod scalar;
pub mod verify;

pub use scalar::{BaseField, CheckedInt, Field, Ring};

/// Arbitrary-precision rationals.
pub type Rational = num_rational::BigRational;

/// An element of `K = Q(eps, mu)` over arbitrary-precision rationals.
pub type FieldElement = exactfield::Tower<Rational>;

/// Homogeneous in `x, y, z` over `K`.
pub type Poly = polyring::HomPoly<FieldElement>;

/// 3x3 matrix of polynomials over `K`.
pub type Matrix = polyring::PolyMatrix<FieldElement>;
