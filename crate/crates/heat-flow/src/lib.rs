//! Heat-equation evolution of polynomials.
//!
//! A polynomial initial datum stays polynomial under the heat flow: each
//! monomial `x^k` evolves into the explicit solution
//! `Σ_j k!/((k−2j)!·j!) · t^j · x^{k−2j}` and products of coordinates evolve
//! coordinate-wise. Everything here is exact over the rationals.

mod basis;
mod dual;
mod error;
mod evolve;
mod oracle;
mod waring;

pub use basis::{heat_basis, HeatBasisCache};
pub use dual::{evolve_dual_const_coeff, Diffusivity, DriftScaleSpec, DualEvolution};
pub use error::HeatError;
pub use evolve::{asymptotic_constant, evolve, evolve_anisotropic, evolve_at, evolve_at_anisotropic};
pub use oracle::gaussian_convolution_oracle;
pub use waring::{evolve_waring_term, waring_terms, WaringTerm};

pub type Result<T> = std::result::Result<T, HeatError>;
