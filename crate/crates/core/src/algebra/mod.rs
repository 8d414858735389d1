//! Exact arithmetic: prime fields, Eisenstein integers, weighted polynomials and
//! their text form.

pub mod coeff;
pub mod field;
pub mod modp;
pub mod parse;
pub mod poly;

pub use coeff::{Coefficient, EisensteinInt};
pub use field::PrimeField;
pub use modp::ModPoly;
pub use parse::{parse_polynomial, variables_in_order};
pub use poly::{Monomial, WPolynomial};

/// Rational coefficients.
pub type Rational = num_rational::BigRational;
