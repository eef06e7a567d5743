pub mod atoms;
pub mod burgers;
pub mod evolve;
pub mod reproduce;
pub mod sos;
pub mod threshold;

use crate::config::{FileConfig, NumberValue};
use crate::error::CliError;
use num_rational::BigRational;
use poly_core::parse_number;

/// Exact number from a flag, else from the config file, else the default.
pub(crate) fn rational_option(
    flag: Option<&str>,
    file: Option<&NumberValue>,
    default: Option<&str>,
    name: &str,
) -> Result<Option<BigRational>, CliError> {
    if let Some(text) = flag {
        return parse_number(text).map(Some).map_err(|e| CliError::Input(format!("--{name} {text:?}: {e}")));
    }
    if let Some(v) = file {
        return v.to_rational().map(Some);
    }
    default.map(|d| parse_number(d).map_err(|e| CliError::Input(e.to_string()))).transpose()
}

pub(crate) fn positive(value: f64, name: &str) -> Result<f64, CliError> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(CliError::Input(format!("{name} must be positive, got {value}")))
    }
}

pub(crate) fn sos_options(tolerance: Option<f64>, newton: bool, config: &FileConfig) -> Result<sos_engine::SosOptions, CliError> {
    let tolerance = positive(tolerance.or(config.tolerance).unwrap_or(1e-9), "tolerance")?;
    Ok(sos_engine::SosOptions {
        newton_filter: newton || config.newton_filter.unwrap_or(false),
        ..sos_engine::SosOptions::with_tolerance(tolerance)
    })
}
