use crate::trajectory::Trajectory;
use poly_core::PolyError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AtomError {
    /// The trajectory left the ball of radius 10¹². `time` is the last grid
    /// time before the escape; `partial` holds the samples up to it.
    #[error("BLOW_UP at t ≈ {time} (atom {atom:?})")]
    BlowUp { time: f64, atom: Option<usize>, partial: Box<Trajectory> },
    #[error("domain error: {0}")]
    Domain(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

impl AtomError {
    pub(crate) fn with_atom(self, index: usize) -> Self {
        match self {
            AtomError::BlowUp { time, partial, .. } => AtomError::BlowUp { time, atom: Some(index), partial },
            other => other,
        }
    }
}
