use crate::error::AtomError;
use crate::field::VectorFieldSpec;
use crate::trajectory::{cumulative_simpson, integrate_trajectory, time_grid};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    #[serde(rename = "c")]
    pub weight: f64,
    #[serde(rename = "x")]
    pub location: Vec<f64>,
}

/// `Σ c_i δ_{x_i}` with positive weights and distinct locations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Atom>", into = "Vec<Atom>")]
pub struct AtomicMeasure {
    atoms: Vec<Atom>,
}

impl TryFrom<Vec<Atom>> for AtomicMeasure {
    type Error = AtomError;

    fn try_from(atoms: Vec<Atom>) -> Result<Self, AtomError> {
        AtomicMeasure::new(atoms)
    }
}

impl From<AtomicMeasure> for Vec<Atom> {
    fn from(m: AtomicMeasure) -> Self {
        m.atoms
    }
}

impl AtomicMeasure {
    pub fn new(atoms: Vec<Atom>) -> Result<Self, AtomError> {
        let dim = atoms.first().map_or(0, |a| a.location.len());
        for (i, a) in atoms.iter().enumerate() {
            if !(a.weight > 0.0 && a.weight.is_finite()) {
                return Err(AtomError::Domain(format!("atom {i} has non-positive weight {}", a.weight)));
            }
            if a.location.len() != dim || dim == 0 {
                return Err(AtomError::Domain(format!("atom {i} has {} coordinates, expected {dim}", a.location.len())));
            }
            if a.location.iter().any(|v| !v.is_finite()) {
                return Err(AtomError::Domain(format!("atom {i} has a non-finite coordinate")));
            }
            if atoms[..i].iter().any(|b| b.location == a.location) {
                return Err(AtomError::Domain(format!("atom {i} repeats an earlier location")));
            }
        }
        Ok(AtomicMeasure { atoms })
    }

    /// Unit point mass.
    pub fn dirac(location: Vec<f64>) -> Self {
        AtomicMeasure { atoms: vec![Atom { weight: 1.0, location }] }
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.atoms.first().map_or(0, |a| a.location.len())
    }
}

/// Locations and weights of every atom on the common time grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasurePath {
    pub times: Vec<f64>,
    /// `locations[i][k]` is atom `i` at `times[k]`.
    pub locations: Vec<Vec<Vec<f64>>>,
    pub weights: Vec<Vec<f64>>,
    pub error_estimate: f64,
}

impl MeasurePath {
    /// The measure at grid index `k`. Atoms that merged numerically are
    /// kept apart, so this skips the distinctness check.
    pub fn at(&self, k: usize) -> AtomicMeasure {
        let atoms = self
            .locations
            .iter()
            .zip(&self.weights)
            .map(|(loc, w)| Atom { weight: w[k], location: loc[k].clone() })
            .collect();
        AtomicMeasure { atoms }
    }

    /// Grid index closest to `t`.
    pub fn index_of(&self, t: f64) -> usize {
        self.times
            .iter()
            .enumerate()
            .min_by(|a, b| (a.1 - t).abs().total_cmp(&(b.1 - t).abs()))
            .map_or(0, |(k, _)| k)
    }

    pub fn last(&self) -> AtomicMeasure {
        self.at(self.times.len() - 1)
    }
}

/// Moves each atom along its integral curve and rescales its weight by
/// `exp(∫ h(x_i(s), s) ds)`, the integral by Simpson's rule on the RK grid.
pub fn evolve_measure_path(spec: &VectorFieldSpec, mu0: &AtomicMeasure, t_end: f64, step: f64) -> Result<MeasurePath, AtomError> {
    if mu0.dim() != spec.dim() {
        return Err(AtomError::Domain(format!("measure lives in dimension {}, field in {}", mu0.dim(), spec.dim())));
    }
    let times = time_grid(t_end, step)?;
    let h = if times.len() > 1 { times[1] - times[0] } else { 0.0 };
    let mut locations = Vec::with_capacity(mu0.len());
    let mut weights = Vec::with_capacity(mu0.len());
    let mut error_estimate: f64 = 0.0;
    for (i, atom) in mu0.atoms().iter().enumerate() {
        let tr = integrate_trajectory(spec, &atom.location, t_end, step).map_err(|e| e.with_atom(i))?;
        let rates: Vec<f64> = tr.times.iter().zip(&tr.states).map(|(t, x)| spec.rate(x, *t)).collect();
        let w = cumulative_simpson(&rates, h).into_iter().map(|a| atom.weight * a.exp()).collect();
        error_estimate = error_estimate.max(tr.error_estimate);
        locations.push(tr.states);
        weights.push(w);
    }
    Ok(MeasurePath { times, locations, weights, error_estimate })
}

/// Where and for which atom a path stopped early.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlowUpEvent {
    pub time: f64,
    pub atom: usize,
}

/// Like [`evolve_measure_path`], but an escaping atom truncates the path
/// for every atom at the last grid time before the earliest escape instead
/// of discarding it.
pub fn evolve_measure_path_until_blow_up(
    spec: &VectorFieldSpec,
    mu0: &AtomicMeasure,
    t_end: f64,
    step: f64,
) -> Result<(MeasurePath, Option<BlowUpEvent>), AtomError> {
    if mu0.dim() != spec.dim() {
        return Err(AtomError::Domain(format!("measure lives in dimension {}, field in {}", mu0.dim(), spec.dim())));
    }
    let times = time_grid(t_end, step)?;
    let h = if times.len() > 1 { times[1] - times[0] } else { 0.0 };
    let mut event: Option<BlowUpEvent> = None;
    let mut curves = Vec::with_capacity(mu0.len());
    for (i, atom) in mu0.atoms().iter().enumerate() {
        let tr = match integrate_trajectory(spec, &atom.location, t_end, step) {
            Ok(tr) => tr,
            Err(AtomError::BlowUp { time, partial, .. }) => {
                if event.is_none_or(|e| time < e.time) {
                    event = Some(BlowUpEvent { time, atom: i });
                }
                *partial
            }
            Err(e) => return Err(e),
        };
        curves.push(tr);
    }
    let len = curves.iter().map(|tr| tr.times.len()).min().unwrap_or(times.len());
    let mut locations = Vec::with_capacity(curves.len());
    let mut weights = Vec::with_capacity(curves.len());
    let mut error_estimate: f64 = 0.0;
    for (atom, mut tr) in mu0.atoms().iter().zip(curves) {
        tr.times.truncate(len);
        tr.states.truncate(len);
        let rates: Vec<f64> = tr.times.iter().zip(&tr.states).map(|(t, x)| spec.rate(x, *t)).collect();
        let w = cumulative_simpson(&rates, h).into_iter().map(|a| atom.weight * a.exp()).collect();
        error_estimate = error_estimate.max(tr.error_estimate);
        locations.push(tr.states);
        weights.push(w);
    }
    let times = times[..len].to_vec();
    Ok((MeasurePath { times, locations, weights, error_estimate }, event))
}

/// The evolved measure at `t_end`.
pub fn evolve_measure(spec: &VectorFieldSpec, mu0: &AtomicMeasure, t_end: f64, step: f64) -> Result<AtomicMeasure, AtomError> {
    Ok(evolve_measure_path(spec, mu0, t_end, step)?.last())
}
