use super::positive;
use crate::config::FileConfig;
use crate::error::CliError;
use crate::io::{read_json, to_json, write_text};
use atom_flow::{evolve_measure_path_until_blow_up, moments_at, AtomicMeasure, MomentSequence, VectorFieldSpec};
use clap::Args;
use poly_core::{PolynomialDoc, TimePolynomial};
use serde::Deserialize;
use std::path::PathBuf;

/// Transports an atomic measure along a drift field with a weight rate.
#[derive(Debug, Args)]
pub struct AtomsArgs {
    /// Scenario JSON: `{"atoms": [{"c": 1.0, "x": [1.0]}], "drift": [..], "rate": ..}`.
    pub input: PathBuf,
    /// Final time [default: 1].
    #[arg(long)]
    pub t_end: Option<f64>,
    /// Largest RK4 step [default: 1e-3].
    #[arg(long)]
    pub step: Option<f64>,
    /// Trajectory CSV destination (stdout if absent).
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// Moment snapshots as JSON.
    #[arg(long)]
    pub moments_output: Option<PathBuf>,
    /// Truncation degree of the moment snapshots [default: 2].
    #[arg(long)]
    pub moment_degree: Option<u32>,
    /// Snapshot times; repeatable [default: 0 and the final time].
    #[arg(long = "snapshot")]
    pub snapshots: Vec<f64>,
}

/// Field components are polynomials in the atom coordinates, optionally
/// preceded by `"t"`. A missing rate means constant weights.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub atoms: AtomicMeasure,
    pub drift: Vec<PolynomialDoc>,
    #[serde(default)]
    pub rate: Option<PolynomialDoc>,
    /// Declares the field globally bounded.
    #[serde(default)]
    pub bounded: bool,
}

fn time_polynomial(doc: &PolynomialDoc, dim: usize, what: &str) -> Result<TimePolynomial, CliError> {
    let tp = if doc.vars.first().map(String::as_str) == Some("t") {
        doc.to_time_polynomial()?
    } else {
        TimePolynomial::from_spatial(&doc.to_polynomial()?)
    };
    if tp.spatial_nvars() != dim {
        return Err(CliError::Input(format!("{what} has {} spatial variables, atoms live in dimension {dim}", tp.spatial_nvars())));
    }
    Ok(tp)
}

impl Scenario {
    pub fn field(&self) -> Result<VectorFieldSpec, CliError> {
        let dim = self.atoms.dim();
        if self.drift.len() != dim {
            return Err(CliError::Input(format!("drift has {} components for dimension {dim}", self.drift.len())));
        }
        let drift = self
            .drift
            .iter()
            .enumerate()
            .map(|(i, d)| time_polynomial(d, dim, &format!("drift component {i}")))
            .collect::<Result<Vec<_>, _>>()?;
        let rate = match &self.rate {
            Some(doc) => time_polynomial(doc, dim, "rate")?,
            None => TimePolynomial::from_spatial(&poly_core::Polynomial::zero(dim)),
        };
        Ok(VectorFieldSpec::from_polynomials(&drift, &rate, self.bounded)?)
    }
}

pub fn run(args: &AtomsArgs, config: &FileConfig) -> Result<u8, CliError> {
    let scenario: Scenario = read_json(&args.input)?;
    let t_end = args.t_end.or(config.t_end).unwrap_or(1.0);
    let step = positive(args.step.or(config.step).unwrap_or(1e-3), "step")?;
    let degree = args.moment_degree.or(config.moment_degree).unwrap_or(2);
    let spec = scenario.field()?;
    let (path, blow_up) = evolve_measure_path_until_blow_up(&spec, &scenario.atoms, t_end, step)?;

    let mut csv = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
    let dim = scenario.atoms.dim();
    let mut header = vec!["t".to_string(), "atom".to_string()];
    header.extend((1..=dim).map(|j| format!("x{j}")));
    header.push("weight".into());
    csv.write_record(&header).map_err(csv_error)?;
    for (k, t) in path.times.iter().enumerate() {
        for i in 0..path.locations.len() {
            let mut row = vec![t.to_string(), i.to_string()];
            row.extend(path.locations[i][k].iter().map(f64::to_string));
            row.push(path.weights[i][k].to_string());
            csv.write_record(&row).map_err(csv_error)?;
        }
    }
    if let Some(event) = blow_up {
        csv.write_record(["BLOW_UP".to_string(), event.time.to_string(), event.atom.to_string()]).map_err(csv_error)?;
    }
    let bytes = csv.into_inner().map_err(|e| CliError::Engine(e.to_string()))?;
    write_text(args.output.as_deref(), &String::from_utf8(bytes).expect("csv output is UTF-8"))?;

    if let Some(dest) = &args.moments_output {
        let requested = if !args.snapshots.is_empty() {
            args.snapshots.clone()
        } else {
            config.snapshots.clone().unwrap_or_else(|| vec![0.0, t_end])
        };
        let reached = *path.times.last().expect("grid contains t = 0");
        let snapshots: Vec<MomentSequence> = requested
            .iter()
            .filter(|&&t| t <= reached + 1e-12)
            .map(|&t| {
                let k = path.index_of(t);
                moments_at(&path.at(k), degree, path.times[k])
            })
            .collect();
        write_text(Some(dest), &to_json(&snapshots))?;
    }
    Ok(0)
}

fn csv_error(e: csv::Error) -> CliError {
    CliError::Engine(e.to_string())
}
