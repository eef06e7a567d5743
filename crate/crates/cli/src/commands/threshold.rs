use super::{rational_option, sos_options};
use crate::config::FileConfig;
use crate::error::CliError;
use crate::io::{load_polynomial, to_json, write_text};
use clap::Args;
use serde::Serialize;
use std::path::PathBuf;
use threshold_finder::{find_sos_threshold_with, ThresholdOptions, ThresholdResult, ThresholdStatus};

/// Brackets the time at which the heat evolution becomes SOS.
#[derive(Debug, Args)]
pub struct ThresholdArgs {
    /// Polynomial JSON file (`-` for stdin).
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub example: Option<String>,
    /// Target bracket width [default: 1e-5].
    #[arg(long)]
    pub width: Option<String>,
    /// Largest time probed [default: 1].
    #[arg(long)]
    pub t_max: Option<String>,
    #[arg(long)]
    pub tolerance: Option<f64>,
    #[arg(long)]
    pub newton_filter: bool,
    /// Shifted re-probes after an inconclusive solve [default: 3].
    #[arg(long)]
    pub retries: Option<usize>,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct Report<'a> {
    #[serde(flatten)]
    result: &'a ThresholdResult,
    center: f64,
}

pub fn run(args: &ThresholdArgs, config: &FileConfig) -> Result<u8, CliError> {
    let (f, _) = load_polynomial(args.input.as_deref(), args.example.as_deref())?;
    let width = rational_option(args.width.as_deref(), config.width.as_ref(), Some("1e-5"), "width")?.expect("defaulted");
    let t_max = rational_option(args.t_max.as_deref(), config.t_max.as_ref(), Some("1"), "t-max")?.expect("defaulted");
    let opts = ThresholdOptions {
        sos: sos_options(args.tolerance, args.newton_filter, config)?,
        retries: args.retries.or(config.retries).unwrap_or(3),
    };
    let result = find_sos_threshold_with(&f, &width, &t_max, &opts)?;
    let center = poly_core::rational::to_f64(&result.center());
    write_text(args.output.as_deref(), &to_json(&Report { result: &result, center }))?;
    Ok(match result.status {
        ThresholdStatus::Obstructed => 1,
        _ => 0,
    })
}
