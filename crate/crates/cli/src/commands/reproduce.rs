use crate::checks::{example_checks, Check, Outcome};
use crate::config::FileConfig;
use crate::error::CliError;
use crate::io::{to_json, write_text};
use clap::Args;
use rayon::prelude::*;
use serde::Serialize;
use std::path::PathBuf;
use std::time::Instant;

/// Thread count for the check runner.
pub const THREADS_ENV: &str = "POLYHEAT_THREADS";

/// Runs the regression checks over the named examples and prints a
/// PASS/FAIL table.
#[derive(Debug, Args)]
pub struct ReproduceArgs {
    /// Restrict to these check ids; repeatable.
    #[arg(long)]
    pub only: Vec<u32>,
    /// Also write the table as JSON.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckRow {
    pub id: u32,
    pub title: String,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

fn run_one(check: &Check) -> CheckRow {
    let start = Instant::now();
    let Outcome { passed, detail } = (check.run)();
    CheckRow { id: check.id, title: check.title.to_string(), passed, detail, seconds: start.elapsed().as_secs_f64() }
}

/// Independent checks run concurrently; the certificate sweep (the last
/// check) runs afterwards because it reads their solves.
pub fn run_checks(only: &[u32]) -> Result<Vec<CheckRow>, CliError> {
    let mut checks: Vec<Check> = example_checks().into_iter().filter(|c| only.is_empty() || only.contains(&c.id)).collect();
    let last = match checks.last() {
        Some(c) if c.id == 13 => checks.pop(),
        _ => None,
    };
    let threads = match std::env::var(THREADS_ENV) {
        Ok(v) => v.parse::<usize>().map_err(|_| CliError::Input(format!("{THREADS_ENV}={v:?} is not a thread count")))?,
        Err(_) => 0,
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Engine(e.to_string()))?;
    let mut rows: Vec<CheckRow> = pool.install(|| checks.par_iter().map(run_one).collect());
    if let Some(c) = last {
        rows.push(run_one(&c));
    }
    Ok(rows)
}

pub fn format_row(row: &CheckRow) -> String {
    format!(
        "{} {:>2} {} ({:.2} s): {}",
        if row.passed { "PASS" } else { "FAIL" },
        row.id,
        row.title,
        row.seconds,
        row.detail
    )
}

pub fn run(args: &ReproduceArgs, _config: &FileConfig) -> Result<u8, CliError> {
    let rows = run_checks(&args.only)?;
    for row in &rows {
        println!("{}", format_row(row));
    }
    let failed = rows.iter().filter(|r| !r.passed).count();
    println!("{} of {} checks passed", rows.len() - failed, rows.len());
    if let Some(path) = &args.output {
        write_text(Some(path), &to_json(&rows))?;
    }
    Ok(if failed == 0 { 0 } else { 1 })
}
