use poly_core::PolyError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HeatError {
    #[error("domain error: {0}")]
    Domain(String),

    #[error(transparent)]
    Poly(#[from] PolyError),
}
