//! Sparse multivariate polynomials with exact rational coefficients.

mod monomial;
mod order;
mod parse;
mod polynomial;

pub use monomial::Monomial;
pub use num_rational::BigRational;
pub(crate) use order::key_with;
pub use order::TermOrder;
pub(crate) use parse::parse_polynomial_at;
pub use parse::{parse_polynomial, parse_rational};
pub use polynomial::{format_rational, Polynomial, Ring};
