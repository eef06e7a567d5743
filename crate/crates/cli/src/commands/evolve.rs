use super::rational_option;
use crate::config::FileConfig;
use crate::error::CliError;
use crate::io::{load_polynomial, to_json, write_text};
use clap::Args;
use poly_core::PolynomialDoc;
use std::path::PathBuf;

/// Heat evolution of a polynomial.
#[derive(Debug, Args)]
pub struct EvolveArgs {
    /// Polynomial JSON file (`-` for stdin).
    pub input: Option<PathBuf>,
    /// Use a built-in fixture instead of a file.
    #[arg(long)]
    pub example: Option<String>,
    /// Evaluate at this time (e.g. `1`, `1/9`, `2e-4`); without it the full
    /// polynomial in `t` is written.
    #[arg(long)]
    pub at: Option<String>,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

pub fn run(args: &EvolveArgs, config: &FileConfig) -> Result<u8, CliError> {
    let (f, vars) = load_polynomial(args.input.as_deref(), args.example.as_deref())?;
    let doc = match rational_option(args.at.as_deref(), config.at.as_ref(), None, "at")? {
        Some(t) => {
            if t < num_rational::BigRational::from_integer(0.into()) {
                return Err(CliError::Input("time must be non-negative".into()));
            }
            PolynomialDoc::from_polynomial(&heat_flow::evolve_at(&f, &t), &vars)?
        }
        None => {
            if vars.iter().any(|v| v == "t") {
                return Err(CliError::Input("the name \"t\" is reserved for time".into()));
            }
            PolynomialDoc::from_time_polynomial(&heat_flow::evolve(&f), &vars)?
        }
    };
    write_text(args.output.as_deref(), &to_json(&doc))?;
    Ok(0)
}
