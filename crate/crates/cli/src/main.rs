use clap::Parser;
use polyheat_cli::{execute, Cli};
use std::process::ExitCode;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("polyheat: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
