use super::{rational_option, sos_options};
use crate::config::FileConfig;
use crate::error::CliError;
use crate::io::{load_polynomial, to_json, write_text};
use clap::Args;
use serde::Serialize;
use sos_engine::{analyze_top, certificate_validate, sos_feasibility_with, CertificateDoc, SosStatus, SosVerdict};
use std::path::PathBuf;

/// SOS decision through a Gram matrix search.
#[derive(Debug, Args)]
pub struct SosArgs {
    /// Polynomial JSON file (`-` for stdin).
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub example: Option<String>,
    /// Decide the heat evolution at this time instead of the input itself.
    #[arg(long)]
    pub at: Option<String>,
    /// Ask whether any time of the evolution can be SOS; answered only by
    /// the top-degree obstruction.
    #[arg(long)]
    pub evolved_any_t: bool,
    #[arg(long)]
    pub tolerance: Option<f64>,
    /// Restrict the Gram basis with the Newton polytope.
    #[arg(long)]
    pub newton_filter: bool,
    /// Exit 4 unless an SOS verdict comes with an exactly validated
    /// certificate.
    #[arg(long)]
    pub validate: bool,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SosReport {
    pub status: SosStatus,
    pub margin: f64,
    pub iterations: usize,
    pub diagnostics: Vec<String>,
    pub certificate: Option<CertificateDoc>,
}

impl SosReport {
    fn from_verdict(v: &SosVerdict) -> Self {
        SosReport {
            status: v.status,
            margin: v.margin,
            iterations: v.iterations,
            diagnostics: v.diagnostics.clone(),
            certificate: v.certificate.as_ref().map(|c| c.to_doc()),
        }
    }
}

pub fn run(args: &SosArgs, config: &FileConfig) -> Result<u8, CliError> {
    let (f, _) = load_polynomial(args.input.as_deref(), args.example.as_deref())?;
    let opts = sos_options(args.tolerance, args.newton_filter, config)?;
    let validate = args.validate || config.validate.unwrap_or(false);

    if args.evolved_any_t {
        let top = analyze_top(&f, &opts)?;
        let report = if top.status == SosStatus::NotSos {
            SosReport {
                status: SosStatus::Obstructed,
                margin: top.margin,
                iterations: 0,
                diagnostics: vec!["top-degree part is not SOS, so no time of the evolution is".into()],
                certificate: None,
            }
        } else {
            SosReport {
                status: SosStatus::Inconclusive,
                margin: top.margin,
                iterations: 0,
                diagnostics: vec![format!("top-degree part is {}; no obstruction found", top.status)],
                certificate: None,
            }
        };
        write_text(args.output.as_deref(), &to_json(&report))?;
        return Ok(exit_code(report.status));
    }

    let p = match rational_option(args.at.as_deref(), config.at.as_ref(), None, "at")? {
        Some(t) => heat_flow::evolve_at(&f, &t),
        None => f,
    };
    let mut verdict = sos_feasibility_with(&p, &opts)?;
    let mut validated = false;
    if let Some(cert) = verdict.certificate.as_mut() {
        validated = cert.validated || certificate_validate(&p, cert)?;
    }
    write_text(args.output.as_deref(), &to_json(&SosReport::from_verdict(&verdict)))?;
    if validate && verdict.status == SosStatus::Sos && !validated {
        return Ok(4);
    }
    Ok(exit_code(verdict.status))
}

fn exit_code(status: SosStatus) -> u8 {
    match status {
        SosStatus::Sos => 0,
        SosStatus::NotSos | SosStatus::Obstructed => 1,
        SosStatus::Inconclusive => 3,
    }
}
