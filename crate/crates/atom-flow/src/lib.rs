//! Finitely atomic measures carried by a drift field `g` and rescaled by a
//! rate `h`.
//!
//! An atom `c·δ_{x₀}` stays a single atom: its location follows
//! `x' = g(x, t)` and its weight picks up `exp(∫ h(x(s), s) ds)`. Locations
//! are integrated with fixed-step RK4, weights with Simpson's rule on the
//! same grid. Escapes past 10¹² are reported as blow-up.

mod error;
mod field;
mod measure;
mod moments;
mod trajectory;

pub use error::AtomError;
pub use field::VectorFieldSpec;
pub use measure::{
    evolve_measure, evolve_measure_path, evolve_measure_path_until_blow_up, Atom, AtomicMeasure, BlowUpEvent, MeasurePath,
};
pub use moments::{moment_matrix_rank, moments_at, moments_of_measure, MomentEntry, MomentSequence};
pub use trajectory::{cumulative_simpson, integrate_trajectory, time_grid, Trajectory, BLOW_UP_THRESHOLD};

/// Relative singular-value cut-off used for moment-matrix ranks.
pub const DEFAULT_SVD_TOLERANCE: f64 = 1e-8;
