//! Polynomial and linear algebra over exact and floating fields.

pub mod bivariate;
pub mod factor;
pub mod form;
pub mod matrix;
pub mod poly;
pub mod prime_field;
pub mod resultant;
pub mod zp;

pub use bivariate::{bivariate_gcd, BivariatePoly};
pub use form::BinaryForm;
pub use matrix::Matrix;
pub use poly::Poly;
pub use prime_field::{Fp, F1, F2, F3};
pub use factor::{factor_form, factor_poly, qpoly_gcd, qpoly_squarefree, FACTOR_DEGREE_CEILING};
pub use resultant::resultant_formal;
