//! Exact computation of dual span bundles of linear series on the projective
//! line, their splitting types, and the three stability notions attached to
//! a linear series on a curve.
//!
//! The algebra is generic over [`scalar::Field`]; the concrete aliases below
//! fix the exact rational instance used throughout.

pub mod algebra;
pub mod criteria;
pub mod dsb;
pub mod error;
pub mod linear;
pub mod repro;
pub mod scalar;

pub use error::{Error, Result, ValidationError};

/// Exact rationals.
pub type Rational = num_rational::BigRational;
/// Binary forms with rational coefficients.
pub type Form = algebra::BinaryForm<Rational>;
/// Univariate rational polynomials.
pub type QPoly = algebra::Poly<Rational>;
/// Rational matrices.
pub type QMatrix = algebra::Matrix<Rational>;
/// Linear series with rational coefficients.
pub type LinearSeriesP1 = dsb::LinearSeries<Rational>;
