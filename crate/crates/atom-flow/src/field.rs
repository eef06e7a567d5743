use crate::error::AtomError;
use poly_core::{rational::to_f64, TimePolynomial};
use std::fmt;
use std::sync::Arc;

type Drift = dyn Fn(&[f64], f64) -> Vec<f64> + Send + Sync;
type Rate = dyn Fn(&[f64], f64) -> f64 + Send + Sync;

/// Drift `g(x, t)` moving the atoms and rate `h(x, t)` scaling their
/// weights. `bounded` records the caller's claim that `g` is bounded; it is
/// not checked.
#[derive(Clone)]
pub struct VectorFieldSpec {
    dim: usize,
    drift: Arc<Drift>,
    rate: Arc<Rate>,
    pub bounded: bool,
}

impl fmt::Debug for VectorFieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("VectorFieldSpec").field("dim", &self.dim).field("bounded", &self.bounded).finish_non_exhaustive()
    }
}

/// Polynomial in `(t, x)` flattened to float terms for fast evaluation.
#[derive(Debug, Clone)]
struct FloatPoly {
    terms: Vec<(f64, Vec<i32>)>,
}

impl FloatPoly {
    fn new(p: &TimePolynomial) -> Self {
        let terms = p
            .as_polynomial()
            .terms()
            .map(|(m, c)| (to_f64(c), m.exponents().iter().map(|&e| e as i32).collect()))
            .collect();
        FloatPoly { terms }
    }

    fn eval(&self, x: &[f64], t: f64) -> f64 {
        self.terms
            .iter()
            .map(|(c, e)| e[1..].iter().zip(x).fold(c * t.powi(e[0]), |acc, (&k, xi)| acc * xi.powi(k)))
            .sum()
    }
}

impl VectorFieldSpec {
    pub fn new<G, H>(dim: usize, drift: G, rate: H, bounded: bool) -> Self
    where
        G: Fn(&[f64], f64) -> Vec<f64> + Send + Sync + 'static,
        H: Fn(&[f64], f64) -> f64 + Send + Sync + 'static,
    {
        VectorFieldSpec { dim, drift: Arc::new(drift), rate: Arc::new(rate), bounded }
    }

    /// Fields given as polynomials in `(t, x_1, …, x_n)`, one per drift
    /// component.
    pub fn from_polynomials(drift: &[TimePolynomial], rate: &TimePolynomial, bounded: bool) -> Result<Self, AtomError> {
        let dim = drift.len();
        if dim == 0 {
            return Err(AtomError::Domain("drift needs at least one component".into()));
        }
        if let Some(p) = drift.iter().chain([rate]).find(|p| p.spatial_nvars() != dim) {
            return Err(AtomError::Domain(format!(
                "field has {} spatial variables but the drift has {dim} components",
                p.spatial_nvars()
            )));
        }
        let g: Vec<FloatPoly> = drift.iter().map(FloatPoly::new).collect();
        let h = FloatPoly::new(rate);
        Ok(Self::new(dim, move |x, t| g.iter().map(|gi| gi.eval(x, t)).collect(), move |x, t| h.eval(x, t), bounded))
    }

    /// Pure transport: `h = 0`.
    pub fn transport<G>(dim: usize, drift: G, bounded: bool) -> Self
    where
        G: Fn(&[f64], f64) -> Vec<f64> + Send + Sync + 'static,
    {
        Self::new(dim, drift, |_, _| 0.0, bounded)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn drift(&self, x: &[f64], t: f64) -> Vec<f64> {
        (self.drift)(x, t)
    }

    pub fn rate(&self, x: &[f64], t: f64) -> f64 {
        (self.rate)(x, t)
    }
}
