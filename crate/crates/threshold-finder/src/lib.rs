//! Bisection for the SOS entry time of a heat-evolved polynomial.
//!
//! Once the evolution of `f` is a sum of squares it stays one, so the set of
//! SOS times is a half-line `[T, ∞)` and plain bisection on exact rational
//! midpoints brackets `T`. Only the feasibility solves are approximate.

use heat_flow::evolve_at;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use poly_core::{format_rational, rat, Polynomial};
use serde::{Deserialize, Serialize};
use sos_engine::{analyze_top, sos_feasibility_with_top, SosError, SosOptions, SosStatus, TopAnalysis};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ThresholdError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("feasibility stayed inconclusive near t = {time} after {attempts} attempts: {diagnostics:?}")]
    Inconclusive { time: String, attempts: usize, diagnostics: Vec<String> },
    #[error(transparent)]
    Sos(#[from] SosError),
}

pub type Result<T> = std::result::Result<T, ThresholdError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ThresholdStatus {
    /// NOT_SOS at `lower`, SOS at `upper`.
    Bracketed,
    /// SOS already at time zero; both ends are 0.
    AlreadySos,
    /// The top-degree part is not SOS, so no time works; both ends are 0.
    Obstructed,
    /// Still not SOS at `tMax`; both ends are `tMax`. Not a proof that the
    /// evolution never enters.
    NoEntryFound,
}

impl std::fmt::Display for ThresholdStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ThresholdStatus::Bracketed => "BRACKETED",
            ThresholdStatus::AlreadySos => "ALREADY_SOS",
            ThresholdStatus::Obstructed => "OBSTRUCTED",
            ThresholdStatus::NoEntryFound => "NO_ENTRY_FOUND",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdResult {
    #[serde(with = "poly_core::rational::as_string")]
    pub lower: BigRational,
    #[serde(with = "poly_core::rational::as_string")]
    pub upper: BigRational,
    pub status: ThresholdStatus,
    /// Feasibility solves, retries and the top-degree test included.
    pub probes: usize,
}

impl ThresholdResult {
    pub fn center(&self) -> BigRational {
        (&self.lower + &self.upper) / rat(2)
    }
}

#[derive(Debug, Clone)]
pub struct ThresholdOptions {
    pub sos: SosOptions,
    /// Retries at shifted times after an inconclusive probe.
    pub retries: usize,
}

impl Default for ThresholdOptions {
    fn default() -> Self {
        ThresholdOptions { sos: SosOptions::default(), retries: 3 }
    }
}

/// Brackets the SOS entry time of `f` within `[0, t_max]` to the given width.
pub fn find_sos_threshold(f: &Polynomial, width: &BigRational, t_max: &BigRational) -> Result<ThresholdResult> {
    find_sos_threshold_with(f, width, t_max, &ThresholdOptions::default())
}

pub fn find_sos_threshold_with(
    f: &Polynomial,
    width: &BigRational,
    t_max: &BigRational,
    opts: &ThresholdOptions,
) -> Result<ThresholdResult> {
    if !width.is_positive() {
        return Err(ThresholdError::Domain(format!("width must be positive, got {}", format_rational(width))));
    }
    if !t_max.is_positive() {
        return Err(ThresholdError::Domain(format!("tMax must be positive, got {}", format_rational(t_max))));
    }
    let mut search = Search::new(f, opts)?;
    if search.top.status == SosStatus::NotSos {
        return Ok(search.result(rat(0), rat(0), ThresholdStatus::Obstructed));
    }
    let zero = BigRational::zero();
    match search.probe(&zero)? {
        SosStatus::Sos => return Ok(search.result(zero.clone(), zero, ThresholdStatus::AlreadySos)),
        SosStatus::Obstructed => return Ok(search.result(zero.clone(), zero, ThresholdStatus::Obstructed)),
        SosStatus::NotSos => {}
        SosStatus::Inconclusive => return Err(search.stuck(&zero, 1)),
    }
    match search.probe_with_retries(t_max, &zero, t_max, width)? {
        (SosStatus::Sos, t) => bisect(search, zero, t, width),
        _ => Ok(search.result(t_max.clone(), t_max.clone(), ThresholdStatus::NoEntryFound)),
    }
}

/// Narrows an existing bracket (NOT_SOS at `lower`, SOS at `upper`) to the
/// given width without re-checking its ends.
pub fn refine_bracket(
    f: &Polynomial,
    lower: &BigRational,
    upper: &BigRational,
    width: &BigRational,
    opts: &ThresholdOptions,
) -> Result<ThresholdResult> {
    if !width.is_positive() {
        return Err(ThresholdError::Domain(format!("width must be positive, got {}", format_rational(width))));
    }
    if lower >= upper {
        return Err(ThresholdError::Domain("bracket must have lower < upper".into()));
    }
    let search = Search::new(f, opts)?;
    bisect(search, lower.clone(), upper.clone(), width)
}

fn bisect(mut search: Search, mut lo: BigRational, mut hi: BigRational, width: &BigRational) -> Result<ThresholdResult> {
    while &hi - &lo > *width {
        let mid = (&lo + &hi) / rat(2);
        match search.probe_with_retries(&mid, &lo, &hi, width)? {
            (SosStatus::Sos, t) => hi = t,
            (_, t) => lo = t,
        }
    }
    Ok(search.result(lo, hi, ThresholdStatus::Bracketed))
}

struct Search<'a> {
    f: &'a Polynomial,
    opts: &'a ThresholdOptions,
    top: TopAnalysis,
    probes: usize,
    last_diagnostics: Vec<String>,
}

impl<'a> Search<'a> {
    fn new(f: &'a Polynomial, opts: &'a ThresholdOptions) -> Result<Self> {
        // the top-degree part does not move under the flow, so one analysis
        // serves every probe
        let top = analyze_top(f, &opts.sos)?;
        Ok(Search { f, opts, top, probes: 1, last_diagnostics: Vec::new() })
    }

    fn probe(&mut self, t: &BigRational) -> Result<SosStatus> {
        self.probes += 1;
        let p = evolve_at(self.f, t);
        let v = sos_feasibility_with_top(&p, &self.opts.sos, &self.top)?;
        self.last_diagnostics = v.diagnostics;
        Ok(v.status)
    }

    /// Probes `t`; an inconclusive answer is retried at `t + k·width/10`
    /// for `k = 1, 2, …`, kept inside `(lo, hi]`. Returns the verdict and the
    /// time it belongs to. When `t` is `hi` itself the shifts go downwards.
    fn probe_with_retries(
        &mut self,
        t: &BigRational,
        lo: &BigRational,
        hi: &BigRational,
        width: &BigRational,
    ) -> Result<(SosStatus, BigRational)> {
        let room = hi - lo;
        let step = if &room < width { room } else { width.clone() } / rat(10);
        let mut time = t.clone();
        for k in 0..=self.opts.retries {
            if k > 0 {
                let shift = &step * rat(k as i64);
                time = if t == hi { t - &shift } else { t + &shift };
                if &time <= lo || &time > hi {
                    break;
                }
            }
            let status = self.probe(&time)?;
            if status != SosStatus::Inconclusive {
                return Ok((status, time));
            }
        }
        Err(self.stuck(t, self.opts.retries + 1))
    }

    fn stuck(&self, t: &BigRational, attempts: usize) -> ThresholdError {
        ThresholdError::Inconclusive {
            time: format_rational(t),
            attempts,
            diagnostics: self.last_diagnostics.clone(),
        }
    }

    fn result(&self, lower: BigRational, upper: BigRational, status: ThresholdStatus) -> ThresholdResult {
        ThresholdResult { lower, upper, status, probes: self.probes }
    }
}
