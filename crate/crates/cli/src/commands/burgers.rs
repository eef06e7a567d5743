use crate::config::FileConfig;
use crate::error::CliError;
use crate::io::{read_json, to_json, write_text};
use burgers_moments::{burgers_moment, nonneg_violation_witness, one_tooth_initial_moments, BreakdownTime, BurgersMomentTable};
use clap::Args;
use poly_core::{format_rational, Polynomial, PolynomialDoc};
use serde::Serialize;
use std::path::PathBuf;

/// Closed-form Burgers moments and the non-negativity witness.
#[derive(Debug, Args)]
pub struct BurgersArgs {
    /// Initial-moment table as a JSON map `"k,p" -> "p/q"`; the one-tooth
    /// profile when absent.
    #[arg(long)]
    pub table: Option<PathBuf>,
    /// Moment `s_{k,p}(t)` to print, written `k,p`; repeatable.
    #[arg(long = "moment")]
    pub moments: Vec<String>,
    /// Also print the witness `q(t)` (the default when no moment is asked).
    #[arg(long)]
    pub witness: bool,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Serialize)]
struct MomentReport {
    k: u32,
    p: u32,
    polynomial: String,
    terms: PolynomialDoc,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
struct WitnessReport {
    polynomial: String,
    terms: PolynomialDoc,
    t_star: Option<BreakdownTime>,
    t_star_squared: Option<String>,
}

#[derive(Debug, Serialize)]
struct Report {
    #[serde(skip_serializing_if = "Vec::is_empty")]
    moments: Vec<MomentReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<WitnessReport>,
}

fn parse_kp(text: &str) -> Result<(u32, u32), CliError> {
    let bad = || CliError::Input(format!("--moment expects k,p with non-negative integers, got {text:?}"));
    let (k, p) = text.split_once(',').ok_or_else(bad)?;
    Ok((k.trim().parse().map_err(|_| bad())?, p.trim().parse().map_err(|_| bad())?))
}

fn in_t(p: &Polynomial) -> Result<(String, PolynomialDoc), CliError> {
    let names = vec!["t".to_string()];
    Ok((p.format_with(&names, true)?, PolynomialDoc::from_polynomial(p, &names)?))
}

pub fn run(args: &BurgersArgs, _config: &FileConfig) -> Result<u8, CliError> {
    let requests = args.moments.iter().map(|m| parse_kp(m)).collect::<Result<Vec<_>, _>>()?;
    let want_witness = args.witness || requests.is_empty();
    let table: BurgersMomentTable = match &args.table {
        Some(path) => read_json(path)?,
        None => {
            // s_{k,p} needs the anti-diagonal up to (0, p + k)
            let mut max_k = requests.iter().map(|r| r.0).max().unwrap_or(0);
            let mut max_p = requests.iter().map(|r| r.0 + r.1).max().unwrap_or(0);
            if want_witness {
                max_k = max_k.max(2);
                max_p = max_p.max(3);
            }
            one_tooth_initial_moments(max_k, max_p)
        }
    };
    let mut moments = Vec::new();
    for (k, p) in requests {
        let (polynomial, terms) = in_t(&burgers_moment(&table, k, p)?)?;
        moments.push(MomentReport { k, p, polynomial, terms });
    }
    let witness = if want_witness {
        let w = nonneg_violation_witness(&table)?;
        let (polynomial, terms) = in_t(&w.polynomial)?;
        let t_star_squared = w.breakdown.as_ref().and_then(BreakdownTime::squared).map(|s| format_rational(&s));
        Some(WitnessReport { polynomial, terms, t_star: w.breakdown, t_star_squared })
    } else {
        None
    };
    write_text(args.output.as_deref(), &to_json(&Report { moments, witness }))?;
    Ok(0)
}
