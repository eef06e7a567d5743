//! Sum-of-squares decisions through Gram matrices.
//!
//! A polynomial `p` of degree `2d` is a sum of squares iff `p = vᵀQv` for a
//! positive semidefinite `Q` over the monomial vector `v`. The search for `Q`
//! maximizes the smallest eigenvalue over the affine set of matching Gram
//! matrices with a small dense interior-point solver. Kernel directions
//! forced by the top-degree part are factored out first, and margins inside
//! the tolerance band are settled only by exactly validated certificates.

mod basis;
mod certificate;
mod error;
pub mod exact;
mod feasibility;
mod gram;
mod scaling;
pub mod sdp;

pub use basis::{diagonal_elimination, gram_basis, in_convex_hull, GramBasis};
pub use certificate::{certificate_validate, certificate_validate_with, CertificateDoc, GramCertificate};
pub use error::SosError;
pub use feasibility::{
    analyze_top, highest_degree_obstruction, sos_feasibility, sos_feasibility_with, sos_feasibility_with_top,
    SosOptions, SosStatus, SosVerdict, TopAnalysis,
};

pub type Result<T> = std::result::Result<T, SosError>;
