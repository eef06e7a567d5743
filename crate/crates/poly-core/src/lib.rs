//! Exact sparse multivariate polynomials with rational coefficients.
//!
//! Terms are kept in a `BTreeMap` keyed by exponent vectors in graded
//! lexicographic order. A [`TimePolynomial`] is an ordinary polynomial whose
//! variable 0 is reserved for time.

pub mod catalog;
mod error;
mod json;
mod monomial;
mod polynomial;
pub mod rational;
mod time;

pub use error::PolyError;
pub use json::{default_var_names, PolynomialDoc, TermDoc};
pub use monomial::{monomials_up_to, Monomial};
pub use num_bigint::BigInt;
pub use num_rational::BigRational;
pub use polynomial::{Degree, Polynomial};
pub use rational::{format_rational, parse_number, parse_rational, rat, ratio};
pub use time::TimePolynomial;

pub type Result<T> = std::result::Result<T, PolyError>;
