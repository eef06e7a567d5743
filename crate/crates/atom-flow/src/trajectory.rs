use crate::error::AtomError;
use crate::field::VectorFieldSpec;
use serde::{Deserialize, Serialize};

/// Norm beyond which a trajectory counts as escaped.
pub const BLOW_UP_THRESHOLD: f64 = 1e12;

/// Samples of one integral curve on a uniform grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<Vec<f64>>,
    /// Richardson estimate `max ‖x_h − x_{h/2}‖ / 15` over the grid;
    /// infinite when the half-step run escaped.
    pub error_estimate: f64,
}

impl Trajectory {
    pub fn last(&self) -> &[f64] {
        self.states.last().expect("a trajectory has its starting point")
    }
}

/// Uniform grid `0, h, …, t_end` whose step is the largest `h ≤ step`
/// dividing `t_end`.
pub fn time_grid(t_end: f64, step: f64) -> Result<Vec<f64>, AtomError> {
    if !(step > 0.0 && step.is_finite()) {
        return Err(AtomError::Domain(format!("step must be positive, got {step}")));
    }
    if !(t_end >= 0.0 && t_end.is_finite()) {
        return Err(AtomError::Domain(format!("end time must be non-negative, got {t_end}")));
    }
    let n = (t_end / step - 1e-9).ceil().max(0.0) as usize;
    Ok((0..=n).map(|k| if k == n { t_end } else { t_end * k as f64 / n as f64 }).collect())
}

fn rk4_step(spec: &VectorFieldSpec, x: &[f64], t: f64, h: f64) -> Vec<f64> {
    let shift = |base: &[f64], k: &[f64], s: f64| -> Vec<f64> { base.iter().zip(k).map(|(b, k)| b + s * k).collect() };
    let k1 = spec.drift(x, t);
    let k2 = spec.drift(&shift(x, &k1, h / 2.0), t + h / 2.0);
    let k3 = spec.drift(&shift(x, &k2, h / 2.0), t + h / 2.0);
    let k4 = spec.drift(&shift(x, &k3, h), t + h);
    (0..x.len()).map(|i| x[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])).collect()
}

fn escaped(x: &[f64]) -> bool {
    x.iter().any(|v| !v.is_finite()) || x.iter().map(|v| v * v).sum::<f64>().sqrt() > BLOW_UP_THRESHOLD
}

/// Classical RK4 on `grid` (`substeps` RK4 steps per grid interval).
fn run(spec: &VectorFieldSpec, x0: &[f64], grid: &[f64], substeps: usize) -> Result<Vec<Vec<f64>>, AtomError> {
    let mut states = vec![x0.to_vec()];
    let mut x = x0.to_vec();
    for w in grid.windows(2) {
        let h = (w[1] - w[0]) / substeps as f64;
        for s in 0..substeps {
            x = rk4_step(spec, &x, w[0] + s as f64 * h, h);
        }
        if escaped(&x) {
            let partial = Trajectory { times: grid[..states.len()].to_vec(), states, error_estimate: f64::INFINITY };
            return Err(AtomError::BlowUp { time: w[0], atom: None, partial: Box::new(partial) });
        }
        states.push(x.clone());
    }
    Ok(states)
}

/// Integrates `x' = g(x, t)`, `x(0) = x0` with fixed-step RK4 up to `t_end`.
pub fn integrate_trajectory(spec: &VectorFieldSpec, x0: &[f64], t_end: f64, step: f64) -> Result<Trajectory, AtomError> {
    if x0.len() != spec.dim() {
        return Err(AtomError::Domain(format!("start point has {} coordinates, field has {}", x0.len(), spec.dim())));
    }
    let grid = time_grid(t_end, step)?;
    let states = run(spec, x0, &grid, 1)?;
    let error_estimate = match run(spec, x0, &grid, 2) {
        Ok(fine) => states
            .iter()
            .zip(&fine)
            .map(|(a, b)| a.iter().zip(b).map(|(u, v)| (u - v) * (u - v)).sum::<f64>().sqrt() / 15.0)
            .fold(0.0, f64::max),
        Err(_) => f64::INFINITY,
    };
    Ok(Trajectory { times: grid, states, error_estimate })
}

/// Running integrals `∫₀^{t_k} f` of samples on a uniform grid: composite
/// Simpson on even prefixes, with a closing 3/8 panel on odd ones (a single
/// interval falls back to the trapezoid).
pub fn cumulative_simpson(values: &[f64], h: f64) -> Vec<f64> {
    let n = values.len();
    let mut out = vec![0.0; n];
    for k in (2..n).step_by(2) {
        out[k] = out[k - 2] + h / 3.0 * (values[k - 2] + 4.0 * values[k - 1] + values[k]);
    }
    for k in (1..n).step_by(2) {
        out[k] = if k == 1 {
            h / 2.0 * (values[0] + values[1])
        } else {
            out[k - 3] + 3.0 * h / 8.0 * (values[k - 3] + 3.0 * values[k - 2] + 3.0 * values[k - 1] + values[k])
        };
    }
    out
}
